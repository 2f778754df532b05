"""Command-line pipeline driver.

Stages write plain-file artifacts into the output directory:

  ingest    -> document.txt, sentences.tsv
  annotate  -> mentions.tsv
  normalize -> clusters.tsv
  graph     -> graph.gexf, edges.tsv
  temporal  -> streams.json
  all       -> everything above, plus manifest.json

Exit codes: 0 success, 1 configuration or data error, 2 missing
prerequisite artifact (the message names the stage to run first).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .annotate import (
    AnnotationError,
    extract_years,
    heuristic_tag,
    load_gazetteer,
    parse_annotations,
    serialize_annotations,
)
from .config import ConfigError, PipelineConfig, load_config
from .gexf import export_gexf
from .graph import GraphError, betweenness, build_graph, force_atlas, louvain, prune_edges
from .ingest import (
    IngestError,
    corpus_to_document,
    load_corpus_path,
    read_document,
    segment_sentences,
    write_document,
)
from .normalize import (
    MergeMode,
    NormalizationPolicy,
    NormalizeError,
    normalize,
    read_clusters,
    write_clusters,
)
from .streams import (
    StreamError,
    build_streams,
    collect_triples,
    diff_terms,
    export_sankey_json,
    extract_terms,
    load_term_list,
    read_sankey_json,
)

STAGES = ["ingest", "annotate", "normalize", "graph", "temporal"]

ARTIFACTS = {
    "ingest": ("document.txt", "sentences.tsv"),
    "annotate": ("mentions.tsv",),
    "normalize": ("clusters.tsv",),
    "graph": ("graph.gexf", "edges.tsv"),
    "temporal": ("streams.json",),
}

_PREREQUISITE = {"annotate": "ingest", "normalize": "annotate", "graph": "normalize",
                 "temporal": "normalize"}


class MissingArtifact(RuntimeError):
    def __init__(self, stage: str, path: Path):
        super().__init__(f"missing artifact {path.name}; run stage '{stage}' first")
        self.stage = stage


def _require(out: Path, stage: str) -> None:
    for name in ARTIFACTS[stage]:
        if not (out / name).exists():
            raise MissingArtifact(stage, out / name)


def _doc_id(cfg: PipelineConfig) -> str:
    p = Path(cfg.corpus)
    return p.name if p.is_dir() else p.stem


def _load_document(cfg: PipelineConfig, out: Path):
    _require(out, "ingest")
    return read_document(_doc_id(cfg), out / "document.txt", out / "sentences.tsv")


def _stage_ingest(cfg: PipelineConfig, out: Path) -> None:
    corpus = load_corpus_path(cfg.corpus)
    doc = corpus_to_document(corpus, strip_page_numbers=cfg.strip_page_numbers)
    doc = segment_sentences(doc)
    write_document(doc, out / "document.txt", out / "sentences.tsv")


def _stage_annotate(cfg: PipelineConfig, out: Path) -> None:
    doc = _load_document(cfg, out)
    if cfg.annotations:
        lines = Path(cfg.annotations).read_text(encoding="utf-8").splitlines()
        mentions = parse_annotations(lines, documents={doc.doc_id: doc})
    elif cfg.gazetteer:
        gazetteer = load_gazetteer(Path(cfg.gazetteer).read_text(encoding="utf-8").splitlines())
        mentions = heuristic_tag(doc, gazetteer)
    else:
        raise ConfigError("annotate needs either an annotations file or a gazetteer")
    (out / "mentions.tsv").write_text(serialize_annotations(mentions), encoding="utf-8")


def _load_mentions(cfg: PipelineConfig, out: Path):
    doc = _load_document(cfg, out)
    _require(out, "annotate")
    lines = (out / "mentions.tsv").read_text(encoding="utf-8").splitlines()
    return doc, parse_annotations(lines, documents={doc.doc_id: doc})


def _stage_normalize(cfg: PipelineConfig, out: Path) -> None:
    _, mentions = _load_mentions(cfg, out)
    av = Fraction(cfg.av_override).limit_denominator() if cfg.av_override else None
    policy = NormalizationPolicy(mode=MergeMode(cfg.mode), av_override=av)
    clusters = normalize(mentions, policy)
    (out / "clusters.tsv").write_text(write_clusters(clusters), encoding="utf-8")


def _load_clusters(out: Path):
    _require(out, "normalize")
    return read_clusters((out / "clusters.tsv").read_text(encoding="utf-8").splitlines())


def _stage_graph(cfg: PipelineConfig, out: Path) -> None:
    doc, mentions = _load_mentions(cfg, out)
    clusters = _load_clusters(out)
    g = build_graph(clusters, mentions, documents={doc.doc_id: doc})
    if cfg.min_edge_weight > 1:
        g = prune_edges(g, cfg.min_edge_weight)
    partition = louvain(g, seed=cfg.layout_seed)
    bc = betweenness(g)
    layout = force_atlas(g, seed=cfg.layout_seed, iterations=cfg.layout_iterations)
    (out / "graph.gexf").write_text(export_gexf(g, partition, bc, layout), encoding="utf-8")
    edge_lines = [f"{u}\t{v}\t{w}" for u, v, w in g.edges()]
    (out / "edges.tsv").write_text("\n".join(edge_lines) + ("\n" if edge_lines else ""),
                                   encoding="utf-8")


def _stage_temporal(cfg: PipelineConfig, out: Path) -> None:
    doc, mentions = _load_mentions(cfg, out)
    clusters = _load_clusters(out)
    years = extract_years(mentions, cfg.year_lo, cfg.year_hi)
    if cfg.term_list:
        terms = load_term_list(Path(cfg.term_list).read_text(encoding="utf-8").splitlines())
    else:
        terms = extract_terms([doc], cfg.n_terms)
    triples = collect_triples([doc], mentions, years, terms, clusters)
    model = build_streams(
        triples,
        boundaries=cfg.effective_boundaries(),
        top_k_entities=cfg.top_k_entities,
        min_assoc=cfg.min_assoc,
        min_overlap=cfg.min_overlap,
        year_lo=cfg.year_lo,
        year_hi=cfg.year_hi,
    )
    (out / "streams.json").write_text(export_sankey_json(model), encoding="utf-8")


_STAGE_FUNCS = {
    "ingest": _stage_ingest,
    "annotate": _stage_annotate,
    "normalize": _stage_normalize,
    "graph": _stage_graph,
    "temporal": _stage_temporal,
}


def _input_checksums(cfg: PipelineConfig) -> dict[str, str]:
    sums: dict[str, str] = {}
    paths: list[Path] = []
    corpus = Path(cfg.corpus)
    if corpus.is_dir():
        paths.extend(sorted(f for f in corpus.iterdir() if f.is_file()))
    elif corpus.exists():
        paths.append(corpus)
    for key in ("annotations", "gazetteer", "term_list"):
        value = getattr(cfg, key)
        if value and Path(value).exists():
            paths.append(Path(value))
    for p in paths:
        sums[str(p)] = hashlib.sha256(p.read_bytes()).hexdigest()
    return sums


def _write_manifest(cfg: PipelineConfig, out: Path, stages: list[str]) -> None:
    manifest = {
        "version": __version__,
        "stages": stages,
        "config": {k: v for k, v in vars(cfg).items()},
        "input_checksums": _input_checksums(cfg),
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def run(cfg: PipelineConfig, stage: str) -> int:
    """Run one stage (or 'all'); returns the process exit code."""
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stages = STAGES if stage == "all" else [stage]
    try:
        for s in stages:
            _STAGE_FUNCS[s](cfg, out)
    except MissingArtifact as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IngestError, AnnotationError, NormalizeError, GraphError, StreamError,
            ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_manifest(cfg, out, stages)
    return 0


def _diff_command(args: argparse.Namespace) -> int:
    try:
        model = read_sankey_json(Path(args.model).read_text(encoding="utf-8"))
        common, only_a, only_b = diff_terms(model, args.a, args.b)
    except (OSError, StreamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(
        {"a": args.a, "b": args.b, "common": sorted(common),
         "only_a": sorted(only_a), "only_b": sorted(only_b)},
        indent=2, ensure_ascii=False))
    return 0


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML config file")
    parser.add_argument("--out", dest="out_dir", help="output directory")
    parser.add_argument("--corpus", help="corpus directory of .html pages or a .txt file")
    parser.add_argument("--annotations", help="standoff mention TSV")
    parser.add_argument("--gazetteer", help="surface<TAB>TYPE gazetteer for the built-in tagger")
    parser.add_argument("--term-list", dest="term_list", help="term-per-line file bypassing extraction")
    parser.add_argument("--strip-page-numbers", action="store_true", default=None,
                        dest="strip_page_numbers")
    parser.add_argument("--mode", choices=["P_MAX", "P_AV"], help="cluster merge policy")
    parser.add_argument("--av-override", dest="av_override", type=float)
    parser.add_argument("--year-lo", dest="year_lo", type=int)
    parser.add_argument("--year-hi", dest="year_hi", type=int)
    parser.add_argument("--boundaries", help="comma-separated period start years")
    parser.add_argument("--n-terms", dest="n_terms", type=int)
    parser.add_argument("--top-k-entities", dest="top_k_entities", type=int)
    parser.add_argument("--min-assoc", dest="min_assoc", type=int)
    parser.add_argument("--min-overlap", dest="min_overlap", type=int)
    parser.add_argument("--min-edge-weight", dest="min_edge_weight", type=int)
    parser.add_argument("--layout-seed", dest="layout_seed", type=int)
    parser.add_argument("--layout-iterations", dest="layout_iterations", type=int)


def _merge_flags(cfg: PipelineConfig, args: argparse.Namespace) -> PipelineConfig:
    for key in vars(cfg):
        if not hasattr(args, key):
            continue
        value = getattr(args, key)
        if value is None:
            continue
        if key == "boundaries" and isinstance(value, str):
            value = [int(v) for v in value.split(",") if v.strip()]
        setattr(cfg, key, value)
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="entiscope",
        description="Build entity co-occurrence networks and temporal streams from a corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in STAGES + ["all"]:
        stage_parser = sub.add_parser(name, help=f"run the {name} stage")
        _add_override_flags(stage_parser)
    diff_parser = sub.add_parser("diff", help="term diff between two stream nodes")
    diff_parser.add_argument("--model", required=True, help="streams.json path")
    diff_parser.add_argument("--a", required=True, help="first stream node id")
    diff_parser.add_argument("--b", required=True, help="second stream node id")

    args = parser.parse_args(argv)
    if args.command == "diff":
        return _diff_command(args)

    try:
        cfg = load_config(args.config) if args.config else PipelineConfig()
        cfg = _merge_flags(cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(cfg, args.command)


if __name__ == "__main__":
    sys.exit(main())
