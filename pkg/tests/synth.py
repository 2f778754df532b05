"""Synthetic corpus, mention, and graph builders shared across the suite."""

from __future__ import annotations

import random

from entiscope.annotate import EntityMention, EntityType
from entiscope.graph import CoocGraph
from entiscope.ingest import Document, Sentence
from entiscope.normalize import ClusterRecord

FIRST_NAMES = [
    "Alice", "Brian", "Carla", "David", "Elena", "Frank", "Grace", "Henry",
    "Irene", "Jack", "Karen", "Liam", "Mona", "Nolan", "Olga", "Peter",
]
LAST_NAMES = [
    "Abbott", "Barnes", "Cortez", "Duval", "Ellison", "Foster", "Grayson",
    "Holt", "Ibarra", "Jensen", "Klein", "Lowell", "Monroe", "Norwood",
    "Osborne", "Pruitt",
]
ORG_HEADS = [
    "Atlas", "Beacon", "Crest", "Delta", "Empire", "Forge", "Granite",
    "Harbor", "Ionic", "Jasper", "Keystone", "Lumen",
]
ORG_TAILS = [
    "Bank", "Group", "Holdings", "Partners", "Trust", "Capital",
    "Securities", "Insurance",
]
HONORIFICS = ["Mr", "Mrs", "Ms", "Chairman", "Dr"]


def mention(surface: str, etype: EntityType, doc_id: str = "synth",
            sentence: int = 0) -> EntityMention:
    return EntityMention(doc_id, sentence, 0, len(surface), surface, etype)


def person_variants(rng: random.Random) -> list[str]:
    first = rng.choice(FIRST_NAMES)
    last = rng.choice(LAST_NAMES)
    variants = [f"{first} {last}"]
    if rng.random() < 0.8:
        variants.append(last)
    if rng.random() < 0.5:
        variants.append(f"{rng.choice(HONORIFICS)} {last}")
    return variants


def org_variants(rng: random.Random) -> list[str]:
    head = rng.choice(ORG_HEADS)
    tail = rng.choice(ORG_TAILS)
    full = f"{head} {tail}"
    variants = [full]
    if rng.random() < 0.6:
        variants.append(f"{head[0]}{tail[0]}")  # acronym
    if rng.random() < 0.5:
        variants.append(head)
    return variants


def random_mentions(rng: random.Random, max_surfaces: int = 100) -> list[EntityMention]:
    """Mention list over randomly varied person and organization surfaces."""
    mentions: list[EntityMention] = []
    surfaces: set[tuple[EntityType, str]] = set()
    sentence = 0
    while len(surfaces) < max_surfaces and len(mentions) < max_surfaces * 4:
        if rng.random() < 0.5:
            etype, variants = EntityType.PERSON, person_variants(rng)
        else:
            etype, variants = EntityType.ORGANIZATION, org_variants(rng)
        for surface in variants:
            if len(surfaces) >= max_surfaces:
                break
            surfaces.add((etype, surface))
            for _ in range(rng.randint(1, 4)):
                mentions.append(mention(surface, etype, sentence=sentence))
                sentence += 1
    return mentions


def singleton_clusters(names: list[str], etype: EntityType = EntityType.ORGANIZATION
                       ) -> list[ClusterRecord]:
    return [ClusterRecord(etype, name, 1, (name,)) for name in names]


def random_cooccurrence_corpus(
    rng: random.Random, n_clusters: int = 8, n_sentences: int = 30
) -> tuple[list[ClusterRecord], list[EntityMention], list[list[int]]]:
    """Clusters, mentions (possibly repeated within a sentence), and the
    per-sentence cluster index lists used by brute-force oracles."""
    names = [f"Entity{i}" for i in range(n_clusters)]
    clusters = singleton_clusters(names)
    mentions: list[EntityMention] = []
    memberships: list[list[int]] = []
    for s in range(n_sentences):
        k = rng.randint(0, min(4, n_clusters))
        chosen = rng.sample(range(n_clusters), k)
        # Duplicate some mentions to exercise per-sentence de-duplication.
        occurrences = list(chosen)
        for idx in chosen:
            if rng.random() < 0.3:
                occurrences.append(idx)
        rng.shuffle(occurrences)
        memberships.append(occurrences)
        for idx in occurrences:
            mentions.append(mention(names[idx], EntityType.ORGANIZATION,
                                    doc_id="synth", sentence=s))
    return clusters, mentions, memberships


def graph_from_edges(n: int, edges: list[tuple[int, int, int]]) -> CoocGraph:
    g = CoocGraph()
    for i in range(n):
        g.add_node(f"n{i}", f"N{i}")
    for u, v, w in edges:
        g.add_edge(f"n{u}", f"n{v}", w)
    return g


def random_graph(rng: random.Random, n: int, p: float, max_weight: int = 1) -> CoocGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, rng.randint(1, max_weight)))
    return graph_from_edges(n, edges)


def barbell_graph(clique: int = 5) -> tuple[CoocGraph, set[frozenset[str]]]:
    """Two cliques joined by a single bridge edge, plus the expected
    community split."""
    edges = []
    for u in range(clique):
        for v in range(u + 1, clique):
            edges.append((u, v, 1))
            edges.append((clique + u, clique + v, 1))
    edges.append((0, clique, 1))
    g = graph_from_edges(2 * clique, edges)
    left = frozenset(f"n{i}" for i in range(clique))
    right = frozenset(f"n{clique + i}" for i in range(clique))
    return g, {left, right}


def doc_from_sentences(doc_id: str, sentences: list[str]) -> Document:
    """Build a segmented document directly from sentence strings."""
    text = " ".join(sentences)
    out = []
    pos = 0
    for i, s in enumerate(sentences):
        out.append(Sentence(i, pos, pos + len(s), s))
        pos += len(s) + 1
    return Document(doc_id=doc_id, text=text, sentences=out)
