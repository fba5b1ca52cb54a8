"""Command-line pipeline driver.

Every subcommand reads defaults from an optional ``--config`` JSON file
(paths resolved relative to the config file) and writes its artifacts
plus a ``<command>.summary.json`` run summary into the output
directory. Failures exit 2 for unreadable or malformed input, 3 for
semantic validation errors, 4 for anything unexpected, and print one
machine-parsable ``error<TAB>class<TAB>message`` line on stdout with
detail on stderr.
"""

import argparse
import json
import logging
import sys
import time
import traceback
from pathlib import Path

from . import align as align_mod
from . import checks, dmp, ecotox, idmap, ntriples, stats, traits, units
from . import query as query_mod
from .graph import FrozenStoreError, PrefixMap, TripleStore, UnknownPrefixError, iri
from .ns import ET, NCBI, RDF_TYPE, default_prefix_map

log = logging.getLogger(__name__)

_VALIDATION_ERRORS = (
    dmp.DanglingParentError,
    dmp.DuplicateDivisionError,
    ecotox.EmptyLineageError,
    ecotox.UnresolvedParentError,
    ecotox.OrphanResultError,
    ecotox.UnknownReferenceError,
    traits.UnresolvedGlossaryError,
    units.DuplicateUnitError,
    units.DimensionMismatchError,
    align_mod.EmptyReferenceError,
    checks.IntegrityError,
    idmap.InvalidCasError,
    idmap.InvalidNcbiIdError,
    query_mod.UnboundProjectionError,
    query_mod.UnboundTemplateError,
    query_mod.UnknownEntityError,
    stats.EmptyGraphError,
    FrozenStoreError,
)

_INPUT_ERRORS = (
    OSError,
    json.JSONDecodeError,
    ntriples.NTriplesParseError,
    dmp.DmpFormatError,
    query_mod.PathSyntaxError,
    query_mod.QuerySyntaxError,
    UnknownPrefixError,
    ValueError,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4


class _Config:
    """Flag defaults from JSON; paths resolve against the file's directory."""

    def __init__(self, values: dict, base: Path):
        self.values = values
        self.base = base

    @classmethod
    def load(cls, path: str | None) -> "_Config":
        if path is None:
            return cls({}, Path.cwd())
        p = Path(path)
        with open(p, encoding="utf-8") as fh:
            values = json.load(fh)
        if not isinstance(values, dict):
            raise ValueError("config must be a JSON object")
        return cls(values, p.parent)

    def path(self, key: str, override: str | None) -> Path | None:
        if override is not None:
            return Path(override)
        value = self.values.get(key)
        if value is None:
            return None
        return self.base / value

    def get(self, key: str, override=None, default=None):
        if override is not None:
            return override
        return self.values.get(key, default)


def _read_text(path: Path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _require(value, name: str):
    if value is None:
        raise ValueError(f"missing required input: {name} (flag or config key)")
    return value


def _load_prefixes(cfg: _Config, override: str | None) -> PrefixMap:
    path = cfg.path("prefixes", override)
    if path is None:
        return default_prefix_map()
    return PrefixMap.from_tsv(_read_text(path))


def _load_stop_words(cfg: _Config, override: str | None) -> frozenset[str]:
    path = cfg.path("stopwords", override)
    if path is None:
        return align_mod.DEFAULT_STOP_WORDS
    words = {
        line.strip().lower()
        for line in _read_text(path).splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    }
    return frozenset(words)


def _out_dir(cfg: _Config, override: str | None) -> Path:
    path = cfg.path("out_dir", override)
    _require(path, "out_dir")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _read_graph(path: Path, prefixes: PrefixMap) -> TripleStore:
    store = ntriples.parse(_read_text(path), prefixes)
    store.freeze()
    return store


def _write_summary(out_dir: Path, command: str, counts: dict, outputs: list[str], seconds: float) -> None:
    summary = {
        "command": command,
        "counts": counts,
        "outputs": sorted(outputs),
        "seconds": round(seconds, 3),
    }
    _write_text(out_dir / f"{command}.summary.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Commands

def cmd_ingest_ncbi(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    nodes = dmp.parse_nodes(_read_text(_require(cfg.path("ncbi_nodes", args.nodes), "ncbi_nodes")))
    names = dmp.parse_names(_read_text(_require(cfg.path("ncbi_names", args.names), "ncbi_names")))
    divisions = dmp.parse_divisions(
        _read_text(_require(cfg.path("ncbi_divisions", args.divisions), "ncbi_divisions"))
    )
    store = TripleStore(prefixes)
    counts = {
        "node_rows": len(nodes),
        "name_rows": len(names),
        "division_rows": len(divisions),
        "hierarchy_triples": dmp.ingest_nodes(nodes, store),
        "name_triples": dmp.ingest_names(names, store),
        "division_triples": dmp.ingest_divisions(divisions, store),
        "total_triples": len(store),
    }
    ntriples.write_file(store, out_dir / "ncbi.nt")
    return {"out_dir": out_dir, "counts": counts, "outputs": ["ncbi.nt"]}


def cmd_units(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    store = TripleStore(prefixes)
    registry, added = units.load_registry(
        _read_text(_require(cfg.path("units", args.units), "units")), prefixes, store
    )
    ntriples.write_file(store, out_dir / "units.nt")
    counts = {"units": len(registry), "triples": added}
    return {"out_dir": out_dir, "counts": counts, "outputs": ["units.nt"]}


def _load_registry(cfg: _Config, override: str | None, prefixes: PrefixMap) -> units.UnitRegistry | None:
    path = cfg.path("units", override)
    if path is None:
        return None
    registry, _ = units.load_registry(_read_text(path), prefixes)
    return registry


def cmd_ingest_ecotox(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    species = [
        ecotox.synthesize_lineage(rec)
        for rec in ecotox.parse_species(
            _read_text(_require(cfg.path("species", args.species), "species"))
        )
    ]
    chemicals = ecotox.parse_chemicals(
        _read_text(_require(cfg.path("chemicals", args.chemicals), "chemicals"))
    )
    tests = ecotox.parse_tests(_read_text(_require(cfg.path("tests", args.tests), "tests")))
    results = ecotox.parse_results(
        _read_text(_require(cfg.path("results", args.results), "results"))
    )
    ecotox.validate_test_references(tests, species, chemicals)
    registry = _load_registry(cfg, args.units, prefixes)
    store = TripleStore(prefixes)
    counts = {
        "species_rows": len(species),
        "chemical_rows": len(chemicals),
        "test_rows": len(tests),
        "result_rows": len(results),
        "species_triples": ecotox.ingest_species(species, store),
        "chemical_triples": ecotox.ingest_chemicals(chemicals, store),
        "effect_triples": ecotox.ingest_tests(tests, results, store, registry),
        "total_triples": len(store),
    }
    ntriples.write_file(store, out_dir / "ecotox.nt")
    return {"out_dir": out_dir, "counts": counts, "outputs": ["ecotox.nt"]}


def cmd_ingest_traits(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    glossary = traits.load_glossary(
        _read_text(_require(cfg.path("glossary", args.glossary), "glossary")), prefixes
    )
    rows = traits.parse_traits(
        _read_text(_require(cfg.path("traits", args.traits), "traits")), prefixes
    )
    store = TripleStore(prefixes)
    added = traits.ingest_traits(rows, glossary, store, prefixes)
    ntriples.write_file(store, out_dir / "traits.nt")
    counts = {"rows": len(rows), "triples": added, "glossary_terms": len(glossary)}
    return {"out_dir": out_dir, "counts": counts, "outputs": ["traits.nt"]}


def cmd_align(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    stop_words = _load_stop_words(cfg, args.stopwords)
    threshold = float(cfg.get("threshold", args.threshold, align_mod.DEFAULT_THRESHOLD))
    source_path = cfg.path("align_source", args.source) or (out_dir / "ecotox.nt")
    target_path = cfg.path("align_target", args.target) or (out_dir / "ncbi.nt")
    source = _read_graph(source_path, prefixes)
    target = _read_graph(target_path, prefixes)
    source_labels = align_mod.labels_by_prefix(source, args.source_ns)
    target_labels = align_mod.labels_by_prefix(target, args.target_ns)
    mappings = align_mod.align_lexical(
        source_labels, target_labels, threshold=threshold, stop_words=stop_words
    )
    _write_text(out_dir / "mappings.tsv", align_mod.write_mappings(mappings))
    counts = {
        "source_entities": len(source_labels),
        "target_entities": len(target_labels),
        "mappings": len(mappings),
    }
    return {"out_dir": out_dir, "counts": counts, "outputs": ["mappings.tsv"]}


def cmd_eval_mappings(args, cfg: _Config) -> dict:
    computed = align_mod.read_mappings(_read_text(Path(args.mappings)))
    reference = align_mod.read_mappings(_read_text(Path(args.reference)))
    recall = align_mod.evaluate(computed, reference)
    disagree = align_mod.disagreement(computed, reference)
    text = f"recall\t{recall:.6f}\ndisagreement\t{disagree}\n"
    sys.stdout.write(text)
    counts = {"computed": len(computed), "reference": len(reference), "recall": round(recall, 6)}
    out = {"counts": counts, "outputs": []}
    if args.out:
        _write_text(Path(args.out), text)
        out["outputs"] = [args.out]
    return out


def cmd_bridge(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    pairs = idmap.parse_pairs(_read_text(_require(cfg.path("pairs", args.pairs), "pairs")))
    store = TripleStore(prefixes)
    added, errors = idmap.construct_sameas(pairs, args.rewrite, store)
    for message in errors:
        log.warning("bridge: %s", message)
    name = f"sameas_{args.rewrite}.nt"
    ntriples.write_file(store, out_dir / name)
    counts = {"pairs": len(pairs), "triples": added, "errors": len(errors)}
    return {"out_dir": out_dir, "counts": counts, "outputs": [name]}


_EXPORT_PARTS = (
    "ncbi.nt",
    "units.nt",
    "ecotox.nt",
    "traits.nt",
    "sameas_ncbi.nt",
    "sameas_cas.nt",
    "sameas_verbatim.nt",
)


def cmd_export(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    merged = TripleStore(prefixes)
    parts = [Path(p) for p in args.graphs] if args.graphs else [
        out_dir / name for name in _EXPORT_PARTS if (out_dir / name).exists()
    ]
    if not parts:
        raise ValueError("nothing to export: no graph files found or given")
    counts = {}
    for part in parts:
        added = merged.add_all(ntriples.parse(_read_text(part), prefixes))
        counts[part.name] = added
    mappings_path = cfg.path("mappings", args.mappings)
    if mappings_path is not None:
        mappings = align_mod.read_mappings(_read_text(mappings_path))
        counts["mappings_sameas"] = align_mod.add_sameas(mappings, merged)
    ntriples.write_file(merged, out_dir / "kg.nt")
    counts["total_triples"] = len(merged)
    return {"out_dir": out_dir, "counts": counts, "outputs": ["kg.nt"]}


def cmd_query(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    store = _read_graph(Path(args.graph), prefixes)
    parsed = query_mod.parse_query(_read_text(Path(args.query)), prefixes)
    if parsed.kind == "select":
        rows = query_mod.select(store, parsed.patterns, list(parsed.projection))
        header = "\t".join(f"?{name}" for name in parsed.projection)
        lines = [header] + ["\t".join(term.ntriples() for term in row) for row in rows]
        text = "".join(line + "\n" for line in lines)
        counts = {"rows": len(rows)}
    else:
        built = query_mod.run_query(store, parsed)
        text = ntriples.serialize(built)
        counts = {"triples": len(built)}
    sys.stdout.write(text)
    out = {"counts": counts, "outputs": []}
    if args.out:
        _write_text(Path(args.out), text)
        out["outputs"] = [args.out]
    return out


def cmd_path(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    store = _read_graph(Path(args.graph), prefixes)
    expr = query_mod.parse_path(args.expr, prefixes)
    start = iri(prefixes.resolve(args.start)) if args.start else None
    pairs = sorted(
        query_mod.eval_path(store, expr, start),
        key=lambda pair: (pair[0].ntriples(), pair[1].ntriples()),
    )
    text = "".join(f"{a.ntriples()}\t{b.ntriples()}\n" for a, b in pairs)
    sys.stdout.write(text)
    out = {"counts": {"pairs": len(pairs)}, "outputs": []}
    if args.out:
        _write_text(Path(args.out), text)
        out["outputs"] = [args.out]
    return out


def cmd_lookup(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    store = _read_graph(Path(args.graph), prefixes)
    hits = query_mod.fuzzy_lookup(store, args.name, args.k)
    text = "".join(f"{iri_text}\t{score:.6f}\n" for iri_text, score in hits)
    sys.stdout.write(text)
    out = {"counts": {"hits": len(hits)}, "outputs": []}
    if args.out:
        _write_text(Path(args.out), text)
        out["outputs"] = [args.out]
    return out


def cmd_lineage(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    store = _read_graph(Path(args.graph), prefixes)
    ancestors = query_mod.lineage(store, iri(prefixes.resolve(args.taxon)))
    text = "".join(
        (prefixes.compact(term.value) if term.is_iri() else term.ntriples()) + "\n"
        for term in ancestors
    )
    sys.stdout.write(text)
    out = {"counts": {"ancestors": len(ancestors)}, "outputs": []}
    if args.out:
        _write_text(Path(args.out), text)
        out["outputs"] = [args.out]
    return out


def cmd_stats(args, cfg: _Config) -> dict:
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    graph_path = cfg.path("graph", args.graph) or (out_dir / "kg.nt")
    store = _read_graph(graph_path, prefixes)
    counts = stats.count_graph(store)
    coverage_percent = None
    if args.tests is not None and args.compounds is not None and args.species is not None:
        coverage_percent = stats.coverage(args.tests, args.compounds, args.species)
    _write_text(out_dir / "stats.tsv", stats.report_tsv(counts, coverage_percent))
    text = stats.report_text(counts, coverage_percent)
    _write_text(out_dir / "stats.txt", text)
    sys.stdout.write(text)
    summary_counts = {
        "triples": counts.triples,
        "relations": counts.relations,
        "entities": counts.entities,
    }
    return {"out_dir": out_dir, "counts": summary_counts, "outputs": ["stats.tsv", "stats.txt"]}


def _count_type_instances(store: TripleStore, type_term) -> int:
    return len(store.subjects(RDF_TYPE, type_term))


def cmd_update(args, cfg: _Config) -> dict:
    """Full rebuild: ingest everything, align, bridge, export, stats."""
    prefixes = _load_prefixes(cfg, args.prefixes)
    out_dir = _out_dir(cfg, args.out)
    step_counts: dict[str, dict] = {}
    outputs: list[str] = []

    ncbi_result = cmd_ingest_ncbi(args, cfg)
    step_counts["ingest-ncbi"] = ncbi_result["counts"]
    outputs += ncbi_result["outputs"]

    units_result = cmd_units(args, cfg)
    step_counts["units"] = units_result["counts"]
    outputs += units_result["outputs"]

    ecotox_result = cmd_ingest_ecotox(args, cfg)
    step_counts["ingest-ecotox"] = ecotox_result["counts"]
    outputs += ecotox_result["outputs"]

    traits_result = cmd_ingest_traits(args, cfg)
    step_counts["ingest-traits"] = traits_result["counts"]
    outputs += traits_result["outputs"]

    align_args = argparse.Namespace(
        prefixes=args.prefixes, out=args.out, stopwords=None, threshold=None,
        source=None, target=None, source_ns=ET + "taxon/", target_ns=NCBI + "taxon/",
    )
    align_result = cmd_align(align_args, cfg)
    step_counts["align"] = align_result["counts"]
    outputs += align_result["outputs"]

    for key, rewrite in (("pairs_ncbi", "ncbi"), ("pairs_cas", "cas")):
        pairs_path = cfg.path(key, None)
        if pairs_path is None:
            continue
        bridge_args = argparse.Namespace(
            prefixes=args.prefixes, out=args.out, pairs=str(pairs_path), rewrite=rewrite
        )
        bridge_result = cmd_bridge(bridge_args, cfg)
        step_counts[f"bridge-{rewrite}"] = bridge_result["counts"]
        outputs += bridge_result["outputs"]

    export_args = argparse.Namespace(
        prefixes=args.prefixes, out=args.out, graphs=None,
        mappings=str(out_dir / "mappings.tsv"),
    )
    export_result = cmd_export(export_args, cfg)
    step_counts["export"] = export_result["counts"]
    outputs += export_result["outputs"]

    kg = _read_graph(out_dir / "kg.nt", prefixes)
    cycles = checks.subclass_cycles(kg)
    violations = checks.disjointness_violations(kg, ecotox.GROUP_PROP)
    if cycles or violations:
        raise checks.IntegrityError(
            f"exported graph failed consistency scans: "
            f"{len(cycles)} cycles, {len(violations)} disjointness violations"
        )
    step_counts["checks"] = {"cycles": 0, "disjointness_violations": 0}
    stats_args = argparse.Namespace(
        prefixes=args.prefixes, out=args.out, graph=str(out_dir / "kg.nt"),
        tests=_count_type_instances(kg, ecotox.TEST_TYPE),
        compounds=_count_type_instances(kg, ecotox.CHEMICAL_TYPE),
        species=_count_type_instances(kg, ecotox.TAXON_TYPE),
    )
    stats_result = cmd_stats(stats_args, cfg)
    step_counts["stats"] = stats_result["counts"]
    outputs += stats_result["outputs"]

    return {"out_dir": out_dir, "counts": step_counts, "outputs": outputs}


# ---------------------------------------------------------------------------
# Parser and dispatch

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecokg", description="Build and query an ecotoxicology knowledge graph."
    )
    parser.add_argument("--config", help="JSON config file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=False):
        p.add_argument("--prefixes", help="prefix table TSV (prefix<TAB>namespace)")
        p.add_argument("--out", help="output directory" if out_required else "output file")

    p = sub.add_parser("ingest-ncbi", help="taxonomy dump files to ncbi.nt")
    common(p, out_required=True)
    p.add_argument("--nodes", help="nodes.dmp path")
    p.add_argument("--names", help="names.dmp path")
    p.add_argument("--divisions", help="division.dmp path")

    p = sub.add_parser("ingest-ecotox", help="effect tables to ecotox.nt")
    common(p, out_required=True)
    p.add_argument("--species", help="species table path")
    p.add_argument("--chemicals", help="chemicals table path")
    p.add_argument("--tests", help="tests table path")
    p.add_argument("--results", help="results table path")
    p.add_argument("--units", help="unit registry TSV for unit IRIs")

    p = sub.add_parser("ingest-traits", help="trait TSV to traits.nt")
    common(p, out_required=True)
    p.add_argument("--traits", help="trait table path")
    p.add_argument("--glossary", help="glossary table path")

    p = sub.add_parser("units", help="unit registry TSV to units.nt")
    common(p, out_required=True)
    p.add_argument("--units", help="unit registry TSV path")

    p = sub.add_parser("align", help="lexical alignment between two graphs")
    common(p, out_required=True)
    p.add_argument("--source", help="source graph (.nt)")
    p.add_argument("--target", help="target graph (.nt)")
    p.add_argument("--source-ns", default=ET + "taxon/", help="source subject namespace")
    p.add_argument("--target-ns", default=NCBI + "taxon/", help="target subject namespace")
    p.add_argument("--threshold", type=float, help="minimum score (default 0.8)")
    p.add_argument("--stopwords", help="stop-word list, one per line")

    p = sub.add_parser("eval-mappings", help="recall of computed vs reference mappings")
    common(p)
    p.add_argument("--mappings", required=True, help="computed mappings TSV")
    p.add_argument("--reference", required=True, help="reference mappings TSV")

    p = sub.add_parser("bridge", help="pair table to owl:sameAs links")
    common(p, out_required=True)
    p.add_argument("--pairs", help="pair table TSV (id<TAB>iri)")
    p.add_argument("--rewrite", required=True, choices=["cas", "ncbi", "verbatim"])

    p = sub.add_parser("export", help="merge part graphs into kg.nt")
    common(p, out_required=True)
    p.add_argument("--graphs", nargs="+", help="explicit graph files to merge")
    p.add_argument("--mappings", help="mapping TSV emitted as owl:sameAs")

    p = sub.add_parser("query", help="run a textual query against a graph")
    common(p)
    p.add_argument("--graph", required=True, help="graph file (.nt)")
    p.add_argument("--query", required=True, help="query file")

    p = sub.add_parser("path", help="evaluate a property path")
    common(p)
    p.add_argument("--graph", required=True, help="graph file (.nt)")
    p.add_argument("--expr", required=True, help="path expression")
    p.add_argument("--start", help="start entity (curie or IRI)")

    p = sub.add_parser("lookup", help="fuzzy label search")
    common(p)
    p.add_argument("--graph", required=True, help="graph file (.nt)")
    p.add_argument("--name", required=True, help="name to look up")
    p.add_argument("-k", type=int, default=5, help="result count")

    p = sub.add_parser("lineage", help="ancestor chain of a taxon")
    common(p)
    p.add_argument("--graph", required=True, help="graph file (.nt)")
    p.add_argument("--taxon", required=True, help="taxon (curie or IRI)")

    p = sub.add_parser("stats", help="graph size and density report")
    common(p, out_required=True)
    p.add_argument("--graph", help="graph file (.nt), default <out>/kg.nt")
    p.add_argument("--tests", type=int, help="experiment count for coverage")
    p.add_argument("--compounds", type=int, help="compound count for coverage")
    p.add_argument("--species", type=int, help="species count for coverage")

    p = sub.add_parser("update", help="full deterministic rebuild from config")
    common(p, out_required=True)
    p.add_argument("--nodes", help="nodes.dmp path")
    p.add_argument("--names", help="names.dmp path")
    p.add_argument("--divisions", help="division.dmp path")
    p.add_argument("--species", help="species table path")
    p.add_argument("--chemicals", help="chemicals table path")
    p.add_argument("--tests", help="tests table path")
    p.add_argument("--results", help="results table path")
    p.add_argument("--traits", help="trait table path")
    p.add_argument("--glossary", help="glossary table path")
    p.add_argument("--units", help="unit registry TSV path")

    return parser


_COMMANDS = {
    "ingest-ncbi": cmd_ingest_ncbi,
    "ingest-ecotox": cmd_ingest_ecotox,
    "ingest-traits": cmd_ingest_traits,
    "units": cmd_units,
    "align": cmd_align,
    "eval-mappings": cmd_eval_mappings,
    "bridge": cmd_bridge,
    "export": cmd_export,
    "query": cmd_query,
    "path": cmd_path,
    "lookup": cmd_lookup,
    "lineage": cmd_lineage,
    "stats": cmd_stats,
    "update": cmd_update,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        cfg = _Config.load(args.config)
        result = _COMMANDS[args.command](args, cfg)
        elapsed = time.perf_counter() - started
        out_dir = result.get("out_dir")
        if out_dir is not None:
            _write_summary(out_dir, args.command, result["counts"], result["outputs"], elapsed)
        elif getattr(args, "out", None):
            summary_path = Path(args.out).with_suffix(Path(args.out).suffix + ".summary.json")
            summary = {
                "command": args.command,
                "counts": result["counts"],
                "outputs": result["outputs"],
                "seconds": round(elapsed, 3),
            }
            _write_text(summary_path, json.dumps(summary, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    except _VALIDATION_ERRORS as exc:
        return _fail(exc, EXIT_VALIDATION)
    except _INPUT_ERRORS as exc:
        return _fail(exc, EXIT_INPUT)
    except Exception as exc:  # pragma: no cover - safety net
        sys.stderr.write(traceback.format_exc())
        return _fail(exc, EXIT_INTERNAL)


def _fail(exc: Exception, code: int) -> int:
    message = str(exc).splitlines()[0] if str(exc) else exc.__class__.__name__
    sys.stdout.write(f"error\t{exc.__class__.__name__}\t{message}\n")
    sys.stderr.write(f"{exc.__class__.__name__}: {exc}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
