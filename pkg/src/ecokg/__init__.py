"""Ecotoxicology knowledge-graph toolkit.

Builds an RDF-style graph from NCBI taxonomy dumps, ECOTOX effect
tables, and trait files; aligns the two taxonomies lexically; bridges
external identifiers; and answers property-path and pattern queries
over the result.
"""

from .graph import (
    FrozenStoreError,
    PrefixMap,
    Term,
    Triple,
    TripleStore,
    UnknownPrefixError,
    blank,
    iri,
    literal,
)
from .ntriples import NTriplesParseError, parse, serialize
from .units import UnitDef, UnitRegistry, convert
from .align import MappingSet, Mapping, align_lexical, levenshtein, normalize_label, similarity
from .query import eval_path, fuzzy_lookup, lineage, parse_path, parse_query, select, siblings
from .stats import GraphCounts, count_graph, coverage

__all__ = [
    "FrozenStoreError",
    "GraphCounts",
    "Mapping",
    "MappingSet",
    "NTriplesParseError",
    "PrefixMap",
    "Term",
    "Triple",
    "TripleStore",
    "UnitDef",
    "UnitRegistry",
    "UnknownPrefixError",
    "align_lexical",
    "blank",
    "convert",
    "count_graph",
    "coverage",
    "eval_path",
    "fuzzy_lookup",
    "iri",
    "levenshtein",
    "lineage",
    "literal",
    "normalize_label",
    "parse",
    "parse_path",
    "parse_query",
    "select",
    "serialize",
    "siblings",
    "similarity",
]

__version__ = "0.1.0"
