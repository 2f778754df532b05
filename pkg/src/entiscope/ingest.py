"""Corpus ingestion: turn raw HTML page collections or plain text into a
single normalized document segmented into sentences.

Whitespace normalization collapses every run of whitespace into one space,
so downstream character offsets are stable and sentence spans can be stored
as a compact sidecar file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable

__all__ = [
    "IngestError",
    "RawCorpus",
    "Sentence",
    "Document",
    "DEFAULT_ABBREVIATIONS",
    "html_to_text",
    "text_document",
    "normalize_whitespace",
    "segment_sentences",
    "load_corpus_path",
    "corpus_to_document",
    "write_document",
    "read_document",
]


class IngestError(ValueError):
    """Raised for unusable corpus input."""


@dataclass(frozen=True)
class Sentence:
    """One sentence span inside a document; text == document text slice."""

    index: int
    start_char: int
    end_char: int
    text: str


@dataclass
class Document:
    doc_id: str
    text: str
    sentences: list[Sentence] = field(default_factory=list)


@dataclass
class RawCorpus:
    """Ordered page payloads for one document; pages may be str or bytes."""

    doc_id: str
    pages: list[str | bytes]
    source_kind: str = "html_pages"  # "html_pages" | "plain_text"


# Abbreviations whose trailing period never ends a sentence.  Matched against
# the whole whitespace-delimited token preceding the period, so dotted forms
# like "U.S" work.  Case-sensitive.
DEFAULT_ABBREVIATIONS = frozenset(
    {
        "Mr", "Mrs", "Ms", "Dr", "Prof", "Gen", "Gov", "Sen", "Rep",
        "Inc", "Corp", "Co", "Ltd", "Jr", "Sr", "St", "U.S", "U.K", "vs",
    }
)

_PAGE_NUMBER_LINE = re.compile(r"^\d+$")
_SENTENCE_PUNCT = re.compile(r"[.!?]")


class _TextExtractor(HTMLParser):
    """Lenient visible-text extraction; block-level tags become line breaks."""

    _SKIP = {"script", "style"}
    _BLOCK = {
        "p", "div", "br", "li", "ul", "ol", "tr", "td", "th", "table",
        "h1", "h2", "h3", "h4", "h5", "h6", "title", "blockquote", "pre",
        "section", "article", "header", "footer", "hr",
    }

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.chunks: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag in self._SKIP:
            self._skip_depth += 1
        if tag in self._BLOCK:
            self.chunks.append("\n")

    def handle_endtag(self, tag: str) -> None:
        if tag in self._SKIP and self._skip_depth > 0:
            self._skip_depth -= 1
        if tag in self._BLOCK:
            self.chunks.append("\n")

    def handle_data(self, data: str) -> None:
        if not self._skip_depth:
            self.chunks.append(data)


def _decode_page(payload: str | bytes, index: int) -> str:
    if isinstance(payload, str):
        return payload
    try:
        return payload.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"page {index}: undecodable bytes ({exc.reason})") from exc


def _page_visible_text(markup: str) -> str:
    parser = _TextExtractor()
    parser.feed(markup)
    parser.close()
    return "".join(parser.chunks)


def _drop_page_number_lines(text: str) -> str:
    kept = [line for line in text.split("\n") if not _PAGE_NUMBER_LINE.match(line.strip())]
    return "\n".join(kept)


def normalize_whitespace(text: str) -> str:
    """Collapse every maximal whitespace run to a single space and trim."""
    return " ".join(text.split())


def html_to_text(corpus: RawCorpus, strip_page_numbers: bool = False) -> Document:
    """Concatenate the visible text of all HTML pages into one normalized
    document (no sentences yet).

    With ``strip_page_numbers``, any extracted line whose trimmed content is
    a bare integer is dropped before normalization.
    """
    if corpus.source_kind != "html_pages":
        raise IngestError(f"expected html_pages corpus, got {corpus.source_kind!r}")
    if not corpus.pages:
        raise IngestError("empty input")
    parts = []
    for i, payload in enumerate(corpus.pages):
        page = _page_visible_text(_decode_page(payload, i))
        if strip_page_numbers:
            page = _drop_page_number_lines(page)
        parts.append(page)
    return Document(doc_id=corpus.doc_id, text=normalize_whitespace("\n".join(parts)))


def text_document(doc_id: str, raw_text: str) -> Document:
    """Wrap plain text as a normalized document (no sentences yet)."""
    return Document(doc_id=doc_id, text=normalize_whitespace(raw_text))


def _guarded_period(text: str, i: int, abbreviations: frozenset[str]) -> bool:
    # Token immediately before the period, up to the previous space.
    j = i - 1
    while j >= 0 and not text[j].isspace():
        j -= 1
    token = text[j + 1 : i].lstrip("(\"'[")
    if len(token) == 1 and token.isupper():
        return True
    return token in abbreviations


def segment_sentences(
    doc: Document, abbreviations: Iterable[str] = DEFAULT_ABBREVIATIONS
) -> Document:
    """Split normalized text into sentences at terminal punctuation followed
    by a space and an uppercase letter or digit.

    A period does not split when the preceding token is a single uppercase
    letter (personal initials) or a known abbreviation.
    """
    abbrev = frozenset(abbreviations)
    text = doc.text
    boundaries: list[int] = []
    for m in _SENTENCE_PUNCT.finditer(text):
        i = m.start()
        if i + 2 >= len(text) or text[i + 1] != " ":
            continue
        nxt = text[i + 2]
        if not (nxt.isupper() or nxt.isdigit()):
            continue
        if text[i] == "." and _guarded_period(text, i, abbrev):
            continue
        boundaries.append(i)

    sentences: list[Sentence] = []
    start = 0
    for b in boundaries:
        end = b + 1
        sentences.append(Sentence(len(sentences), start, end, text[start:end]))
        start = b + 2
    if start < len(text):
        sentences.append(Sentence(len(sentences), start, len(text), text[start:]))
    return replace(doc, sentences=sentences)


def load_corpus_path(path: str | Path, doc_id: str | None = None) -> RawCorpus:
    """Load a corpus from a directory of .html pages (lexicographic filename
    order) or from a single .txt file."""
    p = Path(path)
    if p.is_dir():
        pages = sorted(f for f in p.iterdir() if f.suffix.lower() in (".html", ".htm"))
        if not pages:
            raise IngestError(f"no .html pages in {p}")
        return RawCorpus(
            doc_id=doc_id or p.name,
            pages=[f.read_bytes() for f in pages],
            source_kind="html_pages",
        )
    if not p.exists():
        raise IngestError(f"corpus path does not exist: {p}")
    return RawCorpus(
        doc_id=doc_id or p.stem, pages=[p.read_bytes()], source_kind="plain_text"
    )


def corpus_to_document(corpus: RawCorpus, strip_page_numbers: bool = False) -> Document:
    """Dispatch on source kind; plain text skips markup handling."""
    if corpus.source_kind == "html_pages":
        return html_to_text(corpus, strip_page_numbers=strip_page_numbers)
    if not corpus.pages:
        raise IngestError("empty input")
    decoded = [_decode_page(p, i) for i, p in enumerate(corpus.pages)]
    return text_document(corpus.doc_id, "\n".join(decoded))


def write_document(doc: Document, text_path: str | Path, sidecar_path: str | Path) -> None:
    """Write normalized text plus the sentence-offset sidecar
    (``index<TAB>start<TAB>end`` per line)."""
    Path(text_path).write_text(doc.text, encoding="utf-8")
    lines = [f"{s.index}\t{s.start_char}\t{s.end_char}" for s in doc.sentences]
    Path(sidecar_path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_document(doc_id: str, text_path: str | Path, sidecar_path: str | Path) -> Document:
    text = Path(text_path).read_text(encoding="utf-8")
    sentences = []
    for raw in Path(sidecar_path).read_text(encoding="utf-8").splitlines():
        if not raw.strip():
            continue
        idx, start, end = raw.split("\t")
        i, s, e = int(idx), int(start), int(end)
        sentences.append(Sentence(i, s, e, text[s:e]))
    return Document(doc_id=doc_id, text=text, sentences=sentences)
