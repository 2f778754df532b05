// Minimal XML reader: enough for attribute-driven documents like GEXF.
// Parses elements, attributes and nesting; text content is ignored.

export interface XmlElement {
  tag: string;
  attrs: Record<string, string>;
  children: XmlElement[];
}

export class XmlError extends Error {
  readonly offset: number;

  constructor(message: string, offset: number) {
    super(`${message} (at offset ${offset})`);
    this.offset = offset;
  }
}

const ENTITIES: Record<string, string> = {
  amp: "&",
  lt: "<",
  gt: ">",
  quot: '"',
  apos: "'",
};

function unescapeXml(value: string, offset: number): string {
  return value.replace(/&(#x?[0-9a-fA-F]+|\w+);/g, (_, body: string) => {
    if (body.startsWith("#x") || body.startsWith("#X")) {
      return String.fromCodePoint(parseInt(body.slice(2), 16));
    }
    if (body.startsWith("#")) {
      return String.fromCodePoint(parseInt(body.slice(1), 10));
    }
    const known = ENTITIES[body];
    if (known === undefined) {
      throw new XmlError(`unknown entity &${body};`, offset);
    }
    return known;
  });
}

export function localName(tag: string): string {
  const colon = tag.indexOf(":");
  return colon >= 0 ? tag.slice(colon + 1) : tag;
}

export function parseXml(text: string): XmlElement {
  let pos = 0;

  const fail = (message: string): never => {
    throw new XmlError(message, pos);
  };

  const skipMisc = (): void => {
    for (;;) {
      while (pos < text.length && /\s/.test(text[pos])) pos += 1;
      if (text.startsWith("<?", pos)) {
        const end = text.indexOf("?>", pos);
        if (end < 0) fail("unterminated processing instruction");
        pos = end + 2;
      } else if (text.startsWith("<!--", pos)) {
        const end = text.indexOf("-->", pos);
        if (end < 0) fail("unterminated comment");
        pos = end + 3;
      } else if (text.startsWith("<!", pos)) {
        const end = text.indexOf(">", pos);
        if (end < 0) fail("unterminated declaration");
        pos = end + 1;
      } else {
        return;
      }
    }
  };

  const readName = (): string => {
    const start = pos;
    while (pos < text.length && /[^\s=/>]/.test(text[pos])) pos += 1;
    if (pos === start) fail("expected a name");
    return text.slice(start, pos);
  };

  const readElement = (): XmlElement => {
    if (text[pos] !== "<") fail("expected element start");
    pos += 1;
    const tag = readName();
    const attrs: Record<string, string> = {};
    for (;;) {
      while (pos < text.length && /\s/.test(text[pos])) pos += 1;
      if (pos >= text.length) fail("unterminated tag");
      if (text.startsWith("/>", pos)) {
        pos += 2;
        return { tag, attrs, children: [] };
      }
      if (text[pos] === ">") {
        pos += 1;
        break;
      }
      const name = readName();
      while (pos < text.length && /\s/.test(text[pos])) pos += 1;
      if (text[pos] !== "=") fail(`attribute ${name} missing value`);
      pos += 1;
      while (pos < text.length && /\s/.test(text[pos])) pos += 1;
      const quote = text[pos];
      if (quote !== '"' && quote !== "'") fail(`attribute ${name} must be quoted`);
      pos += 1;
      const end = text.indexOf(quote, pos);
      if (end < 0) fail(`unterminated value for attribute ${name}`);
      attrs[name] = unescapeXml(text.slice(pos, end), pos);
      pos = end + 1;
    }

    const children: XmlElement[] = [];
    for (;;) {
      // Skip text content and comments between child elements.
      while (pos < text.length && text[pos] !== "<") pos += 1;
      if (pos >= text.length) fail(`unterminated element <${tag}>`);
      if (text.startsWith("<!--", pos)) {
        const end = text.indexOf("-->", pos);
        if (end < 0) fail("unterminated comment");
        pos = end + 3;
        continue;
      }
      if (text.startsWith("</", pos)) {
        pos += 2;
        const closing = readName();
        if (closing !== tag) fail(`mismatched closing tag </${closing}> for <${tag}>`);
        while (pos < text.length && /\s/.test(text[pos])) pos += 1;
        if (text[pos] !== ">") fail("malformed closing tag");
        pos += 1;
        return { tag, attrs, children };
      }
      children.push(readElement());
    }
  };

  skipMisc();
  if (pos >= text.length) fail("document has no root element");
  const root = readElement();
  skipMisc();
  if (pos < text.length) fail("trailing content after root element");
  return root;
}
