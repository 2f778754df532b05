"""Temporal entity-term streams: term extraction, per-sentence
(year, entity, term) triple collection, and the period/tube stream model
with diff queries, serialized as JSON.

Term scoring is a documented stand-in for proprietary extractors:
frequency times log2(1 + phrase length), where an occurrence nested inside
a higher-scoring superphrase occurrence does not count.  A user-supplied
term list can replace it entirely.
"""

from __future__ import annotations

import json
import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .annotate import EntityMention, EntityType, YearMention
from .ingest import Document

__all__ = [
    "StreamError",
    "TermRecord",
    "Period",
    "StreamNode",
    "Tube",
    "StreamModel",
    "Triple",
    "DEFAULT_STOPWORDS",
    "tokenize_terms",
    "extract_terms",
    "load_term_list",
    "collect_triples",
    "build_streams",
    "diff_terms",
    "export_sankey_json",
    "read_sankey_json",
]


class StreamError(ValueError):
    """Raised on invalid stream-model input."""


DEFAULT_STOPWORDS = frozenset(
    """
    a about above after again against all also am an and any are as at
    be because been before being below between both but by can could did
    do does down during each few for from further had has have he her
    here hers him his how i if in into is it its just like made many may
    me might mine more most my no nor not now of off on once only or
    other our out over own per s same she should since so some still such
    t than that the their them then there these they this those through
    to too under until up upon very via was we well were what when where
    which while who whom why will with would yet you your
    """.split()
) | {"&"}

_TOKEN = re.compile(r"\w+(?:[&'.\-]\w+)*|&")

MAX_PHRASE_LEN = 4


@dataclass(frozen=True)
class TermRecord:
    term: str
    score: float
    count: int


@dataclass(frozen=True)
class Period:
    index: int
    start_year: int
    end_year: int


@dataclass(frozen=True)
class StreamNode:
    """Terms associated with one entity within one period."""

    period: int
    entity: str
    terms: tuple[tuple[str, int], ...]  # (term, count), sorted by term

    @property
    def node_id(self) -> str:
        return f"p{self.period}:{self.entity}"

    @property
    def term_set(self) -> frozenset[str]:
        return frozenset(t for t, _ in self.terms)


@dataclass(frozen=True)
class Tube:
    from_id: str
    to_id: str
    weight: int
    shared_terms: tuple[str, ...]


@dataclass(frozen=True)
class StreamModel:
    periods: tuple[Period, ...]
    nodes: tuple[StreamNode, ...]
    tubes: tuple[Tube, ...]


class Triple(NamedTuple):
    year: int
    entity: str
    term: str
    count: int


def tokenize_terms(text: str) -> list[str]:
    return [t.lower() for t in _TOKEN.findall(text)]


def _candidate_runs(tokens: list[str], stopwords: frozenset[str]) -> list[list[str]]:
    runs: list[list[str]] = []
    current: list[str] = []
    for tok in tokens:
        if tok in stopwords or tok.isdigit():
            if current:
                runs.append(current)
                current = []
        else:
            current.append(tok)
    if current:
        runs.append(current)
    return runs


def extract_terms(
    docs: Sequence[Document],
    n: int,
    stopwords: frozenset[str] = DEFAULT_STOPWORDS,
) -> list[TermRecord]:
    """Top-n candidate phrases (1..4 tokens, no stopword, no digit-only
    token) by frequency x log2(1 + length), with nested occurrences inside
    higher-scoring superphrases not counted."""
    if n < 1:
        raise StreamError("n must be >= 1")

    runs: list[list[str]] = []
    for doc in docs:
        for sentence in doc.sentences:
            runs.extend(_candidate_runs(tokenize_terms(sentence.text), stopwords))

    raw: dict[tuple[str, ...], int] = {}
    for run in runs:
        L = len(run)
        for i in range(L):
            for k in range(1, min(MAX_PHRASE_LEN, L - i) + 1):
                gram = tuple(run[i : i + k])
                raw[gram] = raw.get(gram, 0) + 1

    def raw_score(gram: tuple[str, ...]) -> float:
        return raw[gram] * math.log2(1 + len(gram))

    # Second pass: an occurrence covered by any strictly higher-scoring
    # candidate occurrence in the same run is excluded.
    final: dict[tuple[str, ...], int] = {}
    for run in runs:
        L = len(run)
        for i in range(L):
            for k in range(1, min(MAX_PHRASE_LEN, L - i) + 1):
                gram = tuple(run[i : i + k])
                score = raw_score(gram)
                covered = False
                for k2 in range(k + 1, MAX_PHRASE_LEN + 1):
                    for j in range(max(0, i + k - k2), min(i, L - k2) + 1):
                        super_gram = tuple(run[j : j + k2])
                        if raw_score(super_gram) > score:
                            covered = True
                            break
                    if covered:
                        break
                if not covered:
                    final[gram] = final.get(gram, 0) + 1

    records = [
        TermRecord(term=" ".join(gram), score=c * math.log2(1 + len(gram)), count=c)
        for gram, c in final.items()
        if c >= 1
    ]
    records.sort(key=lambda r: (-r.score, r.term))
    return records[:n]


def load_term_list(lines: Iterable[str]) -> list[TermRecord]:
    """Read one term per line (``#`` comments allowed), bypassing scoring."""
    records = []
    seen = set()
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        term = " ".join(tokenize_terms(line))
        if term and term not in seen:
            seen.add(term)
            records.append(TermRecord(term=term, score=0.0, count=1))
    return records


def _find_terms(tokens: list[str], by_first: Mapping[str, list[tuple[str, ...]]]) -> set[str]:
    found: set[str] = set()
    for i, tok in enumerate(tokens):
        for gram in by_first.get(tok, ()):
            if tuple(tokens[i : i + len(gram)]) == gram:
                found.add(" ".join(gram))
    return found


def collect_triples(
    docs: Sequence[Document],
    mentions: Iterable[EntityMention],
    years: Iterable[YearMention],
    terms: Sequence[TermRecord],
    clusters: Sequence,
) -> list[Triple]:
    """Aggregate one unit per (year, entity, term) combination present in a
    sentence, over sentences containing at least one year, one person or
    organization mention, and one term occurrence.

    ``clusters`` resolve mention surfaces to canonical entity labels.
    """
    surface_to_canonical: dict[tuple[str, str], str] = {}
    for c in clusters:
        for s in c.surfaces:
            surface_to_canonical[(c.etype.value, s)] = c.canonical

    years_by_sentence: dict[tuple[str, int], set[int]] = {}
    for y in years:
        years_by_sentence.setdefault((y.doc_id, y.sentence_index), set()).add(y.year)

    entities_by_sentence: dict[tuple[str, int], set[str]] = {}
    for m in mentions:
        if m.etype not in (EntityType.ORGANIZATION, EntityType.PERSON):
            continue
        key = (m.etype.value, m.surface)
        if key not in surface_to_canonical:
            raise StreamError(f"mention {m.surface!r} ({m.etype.value}) maps to no cluster")
        entities_by_sentence.setdefault((m.doc_id, m.sentence_index), set()).add(
            surface_to_canonical[key]
        )

    by_first: dict[str, list[tuple[str, ...]]] = {}
    for r in terms:
        gram = tuple(r.term.split())
        if gram:
            by_first.setdefault(gram[0], []).append(gram)

    counts: dict[tuple[int, str, str], int] = {}
    for doc in docs:
        for sentence in doc.sentences:
            key = (doc.doc_id, sentence.index)
            sent_years = years_by_sentence.get(key)
            sent_entities = entities_by_sentence.get(key)
            if not sent_years or not sent_entities:
                continue
            sent_terms = _find_terms(tokenize_terms(sentence.text), by_first)
            if not sent_terms:
                continue
            for year in sent_years:
                for entity in sent_entities:
                    for term in sent_terms:
                        counts[(year, entity, term)] = counts.get((year, entity, term), 0) + 1
    return [Triple(y, e, t, c) for (y, e, t), c in sorted(counts.items())]


def _make_periods(year_lo: int, year_hi: int, boundaries: Sequence[int]) -> list[Period]:
    if year_lo > year_hi:
        raise StreamError(f"invalid year range [{year_lo}, {year_hi}]")
    bounds = list(boundaries)
    if bounds != sorted(set(bounds)):
        raise StreamError("period boundaries must be strictly increasing")
    for b in bounds:
        if not year_lo < b <= year_hi:
            raise StreamError(f"boundary {b} outside year range ({year_lo}, {year_hi}]")
    starts = [year_lo] + bounds
    periods = []
    for i, start in enumerate(starts):
        end = (starts[i + 1] - 1) if i + 1 < len(starts) else year_hi
        periods.append(Period(index=i, start_year=start, end_year=end))
    return periods


def build_streams(
    triples: Sequence[Triple],
    boundaries: Sequence[int],
    top_k_entities: int = 20,
    min_assoc: int = 2,
    min_overlap: int = 1,
    year_lo: int = 1990,
    year_hi: int = 2020,
) -> StreamModel:
    """Build the stream model: periods split at ``boundaries``, one node per
    (period, entity) whose term counts reach ``min_assoc``, and tubes between
    adjacent-period nodes sharing at least ``min_overlap`` terms (same or
    different entity, which is what lets streams split and merge)."""
    periods = _make_periods(year_lo, year_hi, boundaries)
    period_starts = [p.start_year for p in periods]

    totals: dict[str, int] = {}
    for t in triples:
        totals[t.entity] = totals.get(t.entity, 0) + t.count
    top = sorted(totals, key=lambda e: (-totals[e], e))[: max(top_k_entities, 0)]
    kept = set(top)

    node_terms: dict[tuple[int, str], dict[str, int]] = {}
    for t in triples:
        if t.entity not in kept or not year_lo <= t.year <= year_hi:
            continue
        p = bisect_right(period_starts, t.year) - 1
        bucket = node_terms.setdefault((p, t.entity), {})
        bucket[t.term] = bucket.get(t.term, 0) + t.count

    nodes: list[StreamNode] = []
    for (p, entity) in sorted(node_terms):
        qualifying = {
            term: c for term, c in node_terms[(p, entity)].items() if c >= min_assoc
        }
        if qualifying:
            nodes.append(
                StreamNode(
                    period=p,
                    entity=entity,
                    terms=tuple(sorted(qualifying.items())),
                )
            )

    by_period: dict[int, list[StreamNode]] = {}
    for node in nodes:
        by_period.setdefault(node.period, []).append(node)

    tubes: list[Tube] = []
    for p in range(len(periods) - 1):
        for src in by_period.get(p, []):
            for dst in by_period.get(p + 1, []):
                shared = sorted(src.term_set & dst.term_set)
                if len(shared) >= max(min_overlap, 1):
                    tubes.append(
                        Tube(
                            from_id=src.node_id,
                            to_id=dst.node_id,
                            weight=len(shared),
                            shared_terms=tuple(shared),
                        )
                    )
    return StreamModel(periods=tuple(periods), nodes=tuple(nodes), tubes=tuple(tubes))


def _node_index(model: StreamModel) -> dict[str, StreamNode]:
    return {node.node_id: node for node in model.nodes}


def diff_terms(
    model: StreamModel, a: str, b: str
) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    """Common terms, terms only in a, and terms only in b, for any two
    stream nodes (not necessarily adjacent)."""
    index = _node_index(model)
    for node_id in (a, b):
        if node_id not in index:
            raise StreamError(f"unknown stream node {node_id!r}")
    ta, tb = index[a].term_set, index[b].term_set
    return frozenset(ta & tb), frozenset(ta - tb), frozenset(tb - ta)


def export_sankey_json(model: StreamModel) -> str:
    """Serialize the model; tube shared_terms length always equals weight."""
    for tube in model.tubes:
        assert len(tube.shared_terms) == tube.weight, "tube weight out of sync"
    payload = {
        "periods": [
            {"index": p.index, "start_year": p.start_year, "end_year": p.end_year}
            for p in model.periods
        ],
        "nodes": [
            {
                "id": node.node_id,
                "period": node.period,
                "entity": node.entity,
                "terms": {t: c for t, c in node.terms},
            }
            for node in model.nodes
        ],
        "tubes": [
            {
                "from": tube.from_id,
                "to": tube.to_id,
                "weight": tube.weight,
                "shared_terms": list(tube.shared_terms),
            }
            for tube in model.tubes
        ],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def read_sankey_json(text: str) -> StreamModel:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StreamError(f"invalid stream JSON: {exc}") from None
    try:
        periods = tuple(
            Period(p["index"], p["start_year"], p["end_year"]) for p in payload["periods"]
        )
        nodes = tuple(
            StreamNode(
                period=n["period"],
                entity=n["entity"],
                terms=tuple(sorted((t, int(c)) for t, c in n["terms"].items())),
            )
            for n in payload["nodes"]
        )
        tubes = tuple(
            Tube(
                from_id=t["from"],
                to_id=t["to"],
                weight=int(t["weight"]),
                shared_terms=tuple(t["shared_terms"]),
            )
            for t in payload["tubes"]
        )
    except (KeyError, TypeError) as exc:
        raise StreamError(f"invalid stream JSON structure: {exc}") from None
    return StreamModel(periods=periods, nodes=nodes, tubes=tubes)
