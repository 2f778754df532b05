"""Entity normalization: cluster surface-form variants of the same
organization or person.

Two surfaces match when they share initials, when one is contained in the
other at token level, when a single-token acronym spells the other name's
initials (organizations), or when full-name containment / shared last name
holds (persons).  Clusters are merged repeatedly until no pass changes the
clustering.  Two merge policies are supported: compare only the most
frequent member of each cluster, or require agreement between all members
above the corpus average occurrence count.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .annotate import EntityMention, EntityType

__all__ = [
    "NormalizeError",
    "SurfaceStat",
    "EntityCluster",
    "ClusterRecord",
    "MergeMode",
    "NormalizationPolicy",
    "CONNECTOR_STOPLIST",
    "DEFAULT_HONORIFICS",
    "initials",
    "match_org",
    "match_pers",
    "average_occurrences",
    "surface_stats",
    "merge_pass",
    "normalize",
    "write_clusters",
    "read_clusters",
]


class NormalizeError(ValueError):
    """Raised on inconsistent normalization input."""


# Connector tokens ignored when computing name initials.
CONNECTOR_STOPLIST = frozenset({"and", "of", "the", "for", "&"})

# Title tokens stripped before person-name comparison.
DEFAULT_HONORIFICS = frozenset({"mr", "mrs", "ms", "miss", "chairman", "dr"})


@dataclass(frozen=True)
class SurfaceStat:
    surface: str
    etype: EntityType
    count: int


@dataclass(frozen=True)
class EntityCluster:
    """Surface forms resolved to one entity; canonical is the most frequent
    member, ties broken lexicographically."""

    etype: EntityType
    members: tuple[SurfaceStat, ...]
    canonical: str

    @classmethod
    def build(cls, etype: EntityType, members: Iterable[SurfaceStat]) -> "EntityCluster":
        ordered = tuple(sorted(members, key=lambda m: (-m.count, m.surface)))
        if not ordered:
            raise NormalizeError("cluster must have at least one member")
        return cls(etype=etype, members=ordered, canonical=ordered[0].surface)

    @property
    def total_count(self) -> int:
        return sum(m.count for m in self.members)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(m.surface for m in self.members)


@dataclass(frozen=True)
class ClusterRecord:
    """Cluster as reloaded from the dump file (per-member counts are not
    stored there); enough for graph and stream construction."""

    etype: EntityType
    canonical: str
    total_count: int
    surfaces: tuple[str, ...]


class MergeMode(Enum):
    MOST_FREQUENT = "P_MAX"
    ABOVE_AVERAGE = "P_AV"


@dataclass(frozen=True)
class NormalizationPolicy:
    mode: MergeMode = MergeMode.MOST_FREQUENT
    av_override: Fraction | float | None = None

    def __post_init__(self) -> None:
        if self.av_override is not None and not self.av_override > 0:
            raise NormalizeError("av_override must be positive")


def _tokens(name: str) -> list[str]:
    return name.split()


def initials(name: str) -> str:
    """Uppercase first letters of the name's tokens, skipping connector
    words and punctuation-only tokens."""
    letters = []
    for tok in _tokens(name):
        if tok.lower() in CONNECTOR_STOPLIST:
            continue
        core = tok.strip(string.punctuation)
        if core:
            letters.append(core[0].upper())
    return "".join(letters)


def _contains(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    # Contiguous token-subsequence containment; empty needles never match.
    n, h = len(needle), len(haystack)
    if n == 0 or n > h:
        return False
    return any(list(haystack[i : i + n]) == list(needle) for i in range(h - n + 1))


def _acronym_matches(token: str, multiword: str) -> bool:
    cleaned = token.replace("&", "").replace(".", "")
    return bool(cleaned) and cleaned.upper() == initials(multiword)


def match_org(a: str, b: str) -> bool:
    """Organization matching: shared initials for multi-word names,
    token-level containment either way, or acronym vs. spelled-out name."""
    if a == b:
        return True
    ta, tb = _tokens(a), _tokens(b)
    if len(ta) > 1 and len(tb) > 1:
        ia, ib = initials(a), initials(b)
        if ia and ia == ib:
            return True
    la = [t.lower() for t in ta]
    lb = [t.lower() for t in tb]
    if _contains(la, lb) or _contains(lb, la):
        return True
    if len(ta) == 1 and len(tb) > 1 and _acronym_matches(ta[0], b):
        return True
    if len(tb) == 1 and len(ta) > 1 and _acronym_matches(tb[0], a):
        return True
    return False


def _strip_honorifics(tokens: list[str], honorifics: frozenset[str]) -> list[str]:
    kept = [t for t in tokens if t.strip(string.punctuation).lower() not in honorifics]
    return kept or tokens


def match_pers(a: str, b: str, honorifics: frozenset[str] = DEFAULT_HONORIFICS) -> bool:
    """Person matching after honorific stripping: full-name containment
    either way, or the last name of one appearing in the other."""
    if a == b:
        return True
    ta = _strip_honorifics(_tokens(a), honorifics)
    tb = _strip_honorifics(_tokens(b), honorifics)
    la = [t.lower() for t in ta]
    lb = [t.lower() for t in tb]
    if not la or not lb:
        return False
    if _contains(la, lb) or _contains(lb, la):
        return True
    return la[-1] in lb or lb[-1] in la


def average_occurrences(stats: Sequence[SurfaceStat]) -> Fraction:
    """Mean mention count over distinct surfaces."""
    if not stats:
        raise NormalizeError("cannot average an empty surface list")
    return Fraction(sum(s.count for s in stats), len(stats))


def surface_stats(mentions: Iterable[EntityMention]) -> list[SurfaceStat]:
    """Count mentions per distinct (surface, type), for ORGANIZATION and
    PERSON mentions only.  Deterministic order: type, then surface."""
    counts: dict[tuple[EntityType, str], int] = {}
    for m in mentions:
        if m.etype in (EntityType.ORGANIZATION, EntityType.PERSON):
            counts[(m.etype, m.surface)] = counts.get((m.etype, m.surface), 0) + 1
    return [
        SurfaceStat(surface=s, etype=t, count=c)
        for (t, s), c in sorted(counts.items(), key=lambda kv: (kv[0][0].value, kv[0][1]))
    ]


def _rule_for(etype: EntityType):
    if etype == EntityType.ORGANIZATION:
        return match_org
    if etype == EntityType.PERSON:
        return match_pers
    raise NormalizeError(f"no matching rule for entity type {etype.value}")


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def merge_pass(
    clusters: Sequence[EntityCluster],
    policy: NormalizationPolicy,
    av: Fraction | float = Fraction(1),
) -> tuple[list[EntityCluster], bool]:
    """One merge sweep over all unordered cluster pairs, scanned in
    lexicographic canonical order.

    MOST_FREQUENT compares the canonical members of the pair; ABOVE_AVERAGE
    compares all members occurring more than ``av`` times and requires every
    cross pair to match (no merge when either side has none).  Matching
    pairs are joined through a union-find, so chains merge within one pass.
    """
    if not clusters:
        return [], False
    etypes = {c.etype for c in clusters}
    if len(etypes) > 1:
        raise NormalizeError("mixed entity types in one merge pass")
    rule = _rule_for(next(iter(etypes)))

    order = sorted(range(len(clusters)), key=lambda i: clusters[i].canonical)
    uf = _UnionFind(len(clusters))
    changed = False
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            i, j = order[a], order[b]
            ci, cj = clusters[i], clusters[j]
            if policy.mode == MergeMode.MOST_FREQUENT:
                merge = rule(ci.canonical, cj.canonical)
            else:
                above_i = [m for m in ci.members if m.count > av]
                above_j = [m for m in cj.members if m.count > av]
                merge = bool(above_i and above_j) and all(
                    rule(x.surface, y.surface) for x in above_i for y in above_j
                )
            if merge and uf.union(i, j):
                changed = True

    groups: dict[int, list[SurfaceStat]] = {}
    for i, cluster in enumerate(clusters):
        groups.setdefault(uf.find(i), []).extend(cluster.members)
    merged = [EntityCluster.build(clusters[0].etype, members) for members in groups.values()]
    merged.sort(key=lambda c: c.canonical)
    return merged, changed


def normalize(
    mentions: Iterable[EntityMention], policy: NormalizationPolicy
) -> list[EntityCluster]:
    """Cluster ORGANIZATION and PERSON surfaces, iterating merge passes per
    type until a fixpoint.  The average occurrence threshold is computed once
    from the initial per-type stats unless overridden by the policy.

    Returns clusters of both types sorted by descending total count, then
    canonical label.
    """
    stats = surface_stats(mentions)
    result: list[EntityCluster] = []
    for etype in (EntityType.ORGANIZATION, EntityType.PERSON):
        type_stats = [s for s in stats if s.etype == etype]
        if not type_stats:
            continue
        av = policy.av_override
        if av is None:
            av = average_occurrences(type_stats)
        clusters = [EntityCluster.build(etype, [s]) for s in type_stats]
        changed = True
        while changed:
            clusters, changed = merge_pass(clusters, policy, av)
        result.extend(clusters)
    result.sort(key=lambda c: (-c.total_count, c.canonical))
    return result


def write_clusters(clusters: Iterable[EntityCluster]) -> str:
    """Dump format: ``TYPE<TAB>canonical<TAB>total_count<TAB>m1|m2|...``."""
    lines = []
    for c in clusters:
        for s in c.surfaces:
            if "|" in s or "\t" in s:
                raise NormalizeError(f"surface not representable in dump: {s!r}")
        lines.append(f"{c.etype.value}\t{c.canonical}\t{c.total_count}\t{'|'.join(c.surfaces)}")
    return "\n".join(lines) + ("\n" if lines else "")


def read_clusters(lines: Iterable[str]) -> list[ClusterRecord]:
    records: list[ClusterRecord] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise NormalizeError(f"line {lineno}: expected 4 tab-separated fields")
        etype_s, canonical, total_s, members_s = fields
        try:
            etype = EntityType(etype_s)
        except ValueError:
            raise NormalizeError(f"line {lineno}: unknown entity type {etype_s!r}") from None
        try:
            total = int(total_s)
        except ValueError:
            raise NormalizeError(f"line {lineno}: bad total count {total_s!r}") from None
        surfaces = tuple(members_s.split("|")) if members_s else ()
        if not surfaces:
            raise NormalizeError(f"line {lineno}: cluster has no members")
        if canonical not in surfaces:
            raise NormalizeError(f"line {lineno}: canonical {canonical!r} not among members")
        records.append(ClusterRecord(etype, canonical, total, surfaces))
    return records
