"""Named-entity annotations: standoff TSV parsing, a gazetteer-based
heuristic tagger for self-contained runs, and year extraction.

The standoff format decouples the pipeline from any particular tagger: one
mention per line, ``doc_id<TAB>sentence<TAB>start<TAB>end<TAB>surface<TAB>TYPE``,
offsets relative to the sentence text, ``#`` starting a comment line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .ingest import Document, normalize_whitespace

__all__ = [
    "AnnotationError",
    "EntityType",
    "EntityMention",
    "YearMention",
    "parse_annotations",
    "serialize_annotations",
    "load_gazetteer",
    "heuristic_tag",
    "extract_years",
]


class AnnotationError(ValueError):
    """Raised for malformed annotation input."""


class EntityType(Enum):
    TIME = "TIME"
    LOCATION = "LOCATION"
    ORGANIZATION = "ORGANIZATION"
    PERSON = "PERSON"
    MONEY = "MONEY"
    PERCENT = "PERCENT"
    DATE = "DATE"


@dataclass(frozen=True)
class EntityMention:
    """One tagged span; offsets are within the sentence text."""

    doc_id: str
    sentence_index: int
    start_char: int
    end_char: int
    surface: str
    etype: EntityType


@dataclass(frozen=True)
class YearMention:
    doc_id: str
    sentence_index: int
    year: int


# Tokens keep internal &, ', . and - so names like "S&P" or "U.S." stay whole;
# a lone "&" is its own token.
_TOKEN = re.compile(r"\w+(?:[&'.\-]\w+)*|&")
_YEAR = re.compile(r"(?<!\d)\d{4}(?!\d)")


def _parse_int(value: str, lineno: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise AnnotationError(f"line {lineno}: {what} is not an integer: {value!r}") from None


def parse_annotations(
    lines: Iterable[str], documents: Mapping[str, Document] | None = None
) -> list[EntityMention]:
    """Parse standoff mention lines, in file order.

    When ``documents`` is given, each mention's surface is checked against
    the sentence substring at its offsets.
    """
    mentions: list[EntityMention] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise AnnotationError(
                f"line {lineno}: expected 6 tab-separated fields, got {len(fields)}"
            )
        doc_id, sent_s, start_s, end_s, surface, label = fields
        sentence_index = _parse_int(sent_s, lineno, "sentence index")
        start = _parse_int(start_s, lineno, "start offset")
        end = _parse_int(end_s, lineno, "end offset")
        try:
            etype = EntityType(label)
        except ValueError:
            raise AnnotationError(f"line {lineno}: unknown entity type {label!r}") from None
        if start >= end:
            raise AnnotationError(f"line {lineno}: start {start} not before end {end}")
        if documents is not None and doc_id in documents:
            doc = documents[doc_id]
            if not 0 <= sentence_index < len(doc.sentences):
                raise AnnotationError(
                    f"line {lineno}: sentence {sentence_index} out of range for {doc_id!r}"
                )
            span = doc.sentences[sentence_index].text[start:end]
            if span != surface:
                raise AnnotationError(
                    f"line {lineno}: mention {surface!r} does not match document span {span!r}"
                )
        mentions.append(EntityMention(doc_id, sentence_index, start, end, surface, etype))
    return mentions


def serialize_annotations(mentions: Iterable[EntityMention]) -> str:
    lines = [
        f"{m.doc_id}\t{m.sentence_index}\t{m.start_char}\t{m.end_char}\t{m.surface}\t{m.etype.value}"
        for m in mentions
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def load_gazetteer(lines: Iterable[str]) -> dict[str, EntityType]:
    """Read ``surface<TAB>TYPE`` lines; surfaces are whitespace-normalized."""
    gazetteer: dict[str, EntityType] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise AnnotationError(f"line {lineno}: expected 2 tab-separated fields")
        surface, label = fields
        try:
            etype = EntityType(label.strip())
        except ValueError:
            raise AnnotationError(f"line {lineno}: unknown entity type {label!r}") from None
        gazetteer[normalize_whitespace(surface)] = etype
    return gazetteer


def heuristic_tag(doc: Document, gazetteer: Mapping[str, EntityType]) -> list[EntityMention]:
    """Longest-match, left-to-right gazetteer tagging per sentence, plus any
    standalone 4-digit token in 1000..2999 tagged DATE.  Matches never overlap.
    """
    by_tokens: dict[tuple[str, ...], EntityType] = {}
    for surface, etype in gazetteer.items():
        toks = tuple(t.group() for t in _TOKEN.finditer(surface))
        if toks:
            by_tokens[toks] = etype
    max_len = max((len(t) for t in by_tokens), default=0)

    mentions: list[EntityMention] = []
    for sentence in doc.sentences:
        tokens = [(m.group(), m.start(), m.end()) for m in _TOKEN.finditer(sentence.text)]
        i = 0
        while i < len(tokens):
            matched = 0
            etype = None
            for length in range(min(max_len, len(tokens) - i), 0, -1):
                key = tuple(t[0] for t in tokens[i : i + length])
                if key in by_tokens:
                    matched = length
                    etype = by_tokens[key]
                    break
            if matched:
                start = tokens[i][1]
                end = tokens[i + matched - 1][2]
                mentions.append(
                    EntityMention(
                        doc.doc_id, sentence.index, start, end,
                        sentence.text[start:end], etype,
                    )
                )
                i += matched
                continue
            tok = tokens[i][0]
            if len(tok) == 4 and tok.isdigit() and 1000 <= int(tok) <= 2999:
                mentions.append(
                    EntityMention(
                        doc.doc_id, sentence.index, tokens[i][1], tokens[i][2],
                        tok, EntityType.DATE,
                    )
                )
            i += 1
    return mentions


def extract_years(
    mentions: Iterable[EntityMention], lo: int = 1990, hi: int = 2020
) -> list[YearMention]:
    """One YearMention per distinct in-range 4-digit year found in each
    DATE or TIME mention; out-of-range years are dropped."""
    if lo > hi:
        raise ValueError(f"invalid year range [{lo}, {hi}]")
    out: list[YearMention] = []
    for m in mentions:
        if m.etype not in (EntityType.DATE, EntityType.TIME):
            continue
        years = sorted({int(y) for y in _YEAR.findall(m.surface)})
        for year in years:
            if lo <= year <= hi:
                out.append(YearMention(m.doc_id, m.sentence_index, year))
    return out
