"""ECOTOX ASCII table ingestion: species, chemicals, tests, results.

Source files are pipe-delimited text with a header row. Species rows
carry a taxonomic lineage spread over columns; every column that is not
species_number / common_name / latin_name / ecotox_group is treated as
a lineage level, highest first. Gaps inside a lineage are filled by
``synthesize_lineage`` so every classification chain has the same
depth: an empty level inherits the nearest filled ancestor's name with
the level name appended ("Daphniidae" family, empty genus ->
"Daphniidae genus").

Species leaves are numeric (``et:taxon/5156``) and hang below
name-keyed lineage nodes (``et:taxon/rerio``). Names are cleaned of
placeholder markers ("sp.", "var.", "ssp.", "spp.") and missing-value
shorthands before use.
"""

import logging
import re
from dataclasses import dataclass, replace

from . import idmap
from .graph import Term, Triple, TripleStore, blank, iri, literal
from .ns import (
    ET,
    OWL_DISJOINTWITH,
    RDF_TYPE,
    RDF_VALUE,
    RDFS_LABEL,
    RDFS_SUBCLASSOF,
    UNIT_UNITS,
    XSD_DECIMAL,
)
from .units import UnitRegistry

log = logging.getLogger(__name__)

MISSING_TOKENS = frozenset({"", "--", "NA", "NR", "/"})
_PLACEHOLDER_WORDS = frozenset({"sp.", "var.", "ssp.", "spp."})

_SPECIES_META_COLUMNS = ("species_number", "common_name", "latin_name", "ecotox_group")
_DECIMAL = re.compile(r"[0-9]+(\.[0-9]+)?\Z")
_QUALIFIED = re.compile(r"([<>~=*]+)\s*(.*)\Z")
_DIGITS = re.compile(r"[0-9]+\Z")

TAXON_TYPE = iri(ET + "Taxon")
CHEMICAL_TYPE = iri(ET + "Chemical")
TEST_TYPE = iri(ET + "Test")
RESULT_TYPE = iri(ET + "Result")
RANK_PROP = iri(ET + "rank")
GROUP_PROP = iri(ET + "ecotoxGroup")
COMMON_NAME_PROP = iri(ET + "commonName")
LATIN_NAME_PROP = iri(ET + "latinName")
COMPOUND_PROP = iri(ET + "compound")
SPECIES_PROP = iri(ET + "species")
LIFESTAGE_PROP = iri(ET + "organsimLifestage")
HAS_RESULT_PROP = iri(ET + "hasResult")
ENDPOINT_PROP = iri(ET + "endpoint")
EFFECT_PROP = iri(ET + "effectType")
CONCENTRATION_PROP = iri(ET + "concentration")
QUALIFIER_PROP = iri(ET + "qualifier")


class EmptyLineageError(ValueError):
    """No lineage level is filled, so nothing can be synthesized."""


class UnresolvedParentError(ValueError):
    """A species row has no lineage node to attach to."""


class OrphanResultError(ValueError):
    """Results reference test ids that do not exist."""

    def __init__(self, missing: list[str]):
        super().__init__(f"results reference unknown tests: {sorted(missing)}")
        self.missing = sorted(missing)


class UnknownReferenceError(ValueError):
    """Tests reference species or chemicals absent from their tables."""

    def __init__(self, missing: list[str]):
        super().__init__(f"tests reference unknown records: {sorted(missing)}")
        self.missing = sorted(missing)


@dataclass(frozen=True, slots=True)
class SpeciesRecord:
    number: str
    common_name: str | None
    latin_name: str | None
    group: str | None
    lineage: tuple[tuple[str, str], ...]  # (level, name-or-empty), highest first


@dataclass(frozen=True, slots=True)
class ChemicalRecord:
    cas: str
    name: str
    group: str | None
    cas_valid: bool


@dataclass(frozen=True, slots=True)
class TestRecord:
    test_id: str
    cas: str
    species_number: str
    reference_number: int | None = None
    lifestage: str | None = None


@dataclass(frozen=True, slots=True)
class ResultRecord:
    result_id: str
    test_id: str
    endpoint: str
    concentration: str | None = None
    unit: str | None = None
    effect: str | None = None


def read_table(text: str) -> tuple[list[str], list[dict[str, str]]]:
    """Parse a pipe-delimited table with a header row into dict rows."""
    lines = [ln.rstrip("\r") for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise ValueError("empty table")
    header = [col.strip() for col in lines[0].split("|")]
    rows = []
    for line_no, line in enumerate(lines[1:], 2):
        cells = line.split("|")
        if len(cells) != len(header):
            raise ValueError(
                f"line {line_no}: expected {len(header)} fields, got {len(cells)}"
            )
        rows.append({col: cell.strip() for col, cell in zip(header, cells)})
    return header, rows


def clean_species_name(raw: str, missing: frozenset[str] = MISSING_TOKENS) -> str | None:
    """Drop placeholder words and missing-value shorthands.

    Returns None when nothing meaningful remains.
    """
    if raw.strip() in missing:
        return None
    words = [w for w in raw.split() if w.lower() not in _PLACEHOLDER_WORDS]
    cleaned = " ".join(words)
    if not cleaned or cleaned in missing:
        return None
    return cleaned


def sanitize_name(name: str) -> str:
    """Lineage-node key: lowercase, spaces to underscores, rest dropped."""
    out = []
    for ch in name.strip().lower():
        if ch.isalnum() or ch == "_":
            out.append(ch)
        elif ch == " ":
            out.append("_")
    return "".join(out)


def _sanitize_keep_case(name: str) -> str:
    out = []
    for ch in name.strip():
        if ch.isalnum() or ch == "_":
            out.append(ch)
        elif ch == " ":
            out.append("_")
    return "".join(out)


def _level_term(level: str) -> Term:
    text = level.strip()
    return iri(ET + (text[:1].upper() + text[1:]).replace(" ", "_"))


def synthesize_lineage(record: SpeciesRecord) -> SpeciesRecord:
    """Fill lineage gaps below the highest filled level.

    Each empty level takes the previous level's (possibly synthesized)
    name with its own level name appended, so all chains reach the
    species level with a uniform number of steps.
    """
    names = [name for _, name in record.lineage]
    filled = [i for i, name in enumerate(names) if name]
    if not filled:
        raise EmptyLineageError(f"species {record.number}: no lineage level is filled")
    start = filled[0]
    completed = list(names)
    for i in range(start + 1, len(completed)):
        if not completed[i]:
            completed[i] = f"{completed[i - 1]} {record.lineage[i][0]}"
    lineage = tuple((level, completed[i]) for i, (level, _) in enumerate(record.lineage))
    return replace(record, lineage=lineage)


def parse_species(text: str, missing: frozenset[str] = MISSING_TOKENS) -> list[SpeciesRecord]:
    """Read species rows; lineage levels come from the header order."""
    header, rows = read_table(text)
    for col in _SPECIES_META_COLUMNS:
        if col not in header:
            raise ValueError(f"species table missing column {col!r}")
    levels = [col for col in header if col not in _SPECIES_META_COLUMNS]
    records = []
    for row in rows:
        number = row["species_number"]
        if not _DIGITS.fullmatch(number):
            raise ValueError(f"bad species_number: {number!r}")
        group = row["ecotox_group"]
        lineage = []
        for level in levels:
            cell = row[level]
            lineage.append((level, "" if cell in missing else cell))
        records.append(
            SpeciesRecord(
                number=number,
                common_name=clean_species_name(row["common_name"], missing),
                latin_name=clean_species_name(row["latin_name"], missing),
                group=None if group in missing else group,
                lineage=tuple(lineage),
            )
        )
    return records


def species_iri(number: str) -> Term:
    return iri(f"{ET}taxon/{number}")


def lineage_node_iri(name: str) -> Term:
    return iri(f"{ET}taxon/{sanitize_name(name)}")


def group_iri(group: str) -> Term:
    return iri(f"{ET}group/{_sanitize_keep_case(group)}")


def chemical_iri(cas: str) -> Term:
    return iri(f"{ET}chemical/{cas.replace('-', '')}")


def test_iri(test_id: str) -> Term:
    return iri(f"{ET}test/{test_id}")


def result_iri(result_id: str) -> Term:
    return iri(f"{ET}result/{result_id}")


def _group_disjointness(groups: set[str], store: TripleStore) -> int:
    """Pairwise disjointness, emitted in both directions."""
    added = 0
    ordered = sorted(groups)
    for a in ordered:
        for b in ordered:
            if a != b:
                added += store.add(Triple(group_iri(a), OWL_DISJOINTWITH, group_iri(b)))
    return added


def ingest_species(records: list[SpeciesRecord], store: TripleStore) -> int:
    """Emit classification chains, ranks, labels, and group membership.

    Records must be cleaned and lineage-completed; a record with no
    filled lineage level cannot be attached anywhere.
    """
    added = 0
    groups: set[str] = set()
    for rec in records:
        filled = [(level, name) for level, name in rec.lineage if name]
        if not filled:
            raise UnresolvedParentError(f"species {rec.number}: empty lineage")
        previous: Term | None = None
        for level, name in filled:
            node = lineage_node_iri(name)
            added += store.add(Triple(node, RANK_PROP, _level_term(level)))
            added += store.add(Triple(node, RDFS_LABEL, literal(name)))
            if previous is not None:
                added += store.add(Triple(node, RDFS_SUBCLASSOF, previous))
            previous = node
        leaf = species_iri(rec.number)
        added += store.add(Triple(leaf, RDF_TYPE, TAXON_TYPE))
        added += store.add(Triple(leaf, RDFS_SUBCLASSOF, previous))
        if rec.common_name is not None:
            added += store.add(Triple(leaf, COMMON_NAME_PROP, literal(rec.common_name)))
            added += store.add(Triple(leaf, RDFS_LABEL, literal(rec.common_name)))
        if rec.latin_name is not None:
            added += store.add(Triple(leaf, LATIN_NAME_PROP, literal(rec.latin_name)))
            added += store.add(Triple(leaf, RDFS_LABEL, literal(rec.latin_name)))
        if rec.group is not None:
            groups.add(rec.group)
            added += store.add(Triple(leaf, GROUP_PROP, group_iri(rec.group)))
    added += _group_disjointness(groups, store)
    return added


def parse_chemicals(text: str, missing: frozenset[str] = MISSING_TOKENS) -> list[ChemicalRecord]:
    header, rows = read_table(text)
    for col in ("cas_number", "chemical_name"):
        if col not in header:
            raise ValueError(f"chemicals table missing column {col!r}")
    records = []
    for row in rows:
        cas = row["cas_number"]
        valid = idmap.validate_cas(cas)
        if not valid:
            log.warning("invalid CAS number kept: %r", cas)
        group = row.get("ecotox_group", "")
        name = row["chemical_name"]
        records.append(
            ChemicalRecord(
                cas=cas,
                name="" if name in missing else name,
                group=None if group in missing else group,
                cas_valid=valid,
            )
        )
    return records


def ingest_chemicals(records: list[ChemicalRecord], store: TripleStore) -> int:
    added = 0
    groups: set[str] = set()
    for rec in records:
        subject = chemical_iri(rec.cas)
        added += store.add(Triple(subject, RDF_TYPE, CHEMICAL_TYPE))
        if rec.name:
            added += store.add(Triple(subject, RDFS_LABEL, literal(rec.name)))
        if rec.group is not None:
            groups.add(rec.group)
            added += store.add(Triple(subject, GROUP_PROP, group_iri(rec.group)))
    added += _group_disjointness(groups, store)
    return added


def parse_tests(text: str, missing: frozenset[str] = MISSING_TOKENS) -> list[TestRecord]:
    header, rows = read_table(text)
    for col in ("test_id", "test_cas", "species_number"):
        if col not in header:
            raise ValueError(f"tests table missing column {col!r}")
    records = []
    for row in rows:
        test_id = row["test_id"]
        if not _DIGITS.fullmatch(test_id):
            raise ValueError(f"bad test_id: {test_id!r}")
        if not _DIGITS.fullmatch(row["species_number"]):
            raise ValueError(f"test {test_id}: bad species_number {row['species_number']!r}")
        if row["test_cas"] in missing:
            raise ValueError(f"test {test_id}: missing test_cas")
        reference = row.get("reference_number", "")
        lifestage = row.get("organism_lifestage", "")
        records.append(
            TestRecord(
                test_id=test_id,
                cas=row["test_cas"],
                species_number=row["species_number"],
                reference_number=int(reference) if reference and reference not in missing else None,
                lifestage=None if lifestage in missing else lifestage,
            )
        )
    return records


def parse_results(text: str, missing: frozenset[str] = MISSING_TOKENS) -> list[ResultRecord]:
    header, rows = read_table(text)
    for col in ("result_id", "test_id", "endpoint"):
        if col not in header:
            raise ValueError(f"results table missing column {col!r}")
    records = []
    for row in rows:
        result_id = row["result_id"]
        if not _DIGITS.fullmatch(result_id):
            raise ValueError(f"bad result_id: {result_id!r}")
        endpoint = row["endpoint"]
        if endpoint in missing:
            raise ValueError(f"result {result_id}: missing endpoint")
        conc = row.get("conc1_mean", "")
        unit = row.get("conc1_unit", "")
        effect = row.get("effect", "")
        records.append(
            ResultRecord(
                result_id=result_id,
                test_id=row["test_id"],
                endpoint=endpoint,
                concentration=None if conc in missing else conc,
                unit=None if unit in missing else unit,
                effect=None if effect in missing else effect,
            )
        )
    return records


def validate_test_references(
    tests: list[TestRecord],
    species: list[SpeciesRecord],
    chemicals: list[ChemicalRecord],
) -> None:
    """Every test must point at a known species number and CAS number."""
    species_numbers = {s.number for s in species}
    cas_numbers = {c.cas for c in chemicals}
    missing = [
        f"species:{t.species_number}" for t in tests if t.species_number not in species_numbers
    ] + [f"cas:{t.cas}" for t in tests if t.cas not in cas_numbers]
    if missing:
        raise UnknownReferenceError(missing)


def code_iri(code: str) -> Term:
    """Endpoint/effect code: trailing punctuation dropped, uppercased."""
    text = code.strip()
    while text and not text[-1].isalnum():
        text = text[:-1]
    return iri(ET + text.upper())


def _lifestage_iri(value: str) -> Term:
    return iri(f"{ET}lifestage/{sanitize_name(value)}")


def _concentration_triples(rec: ResultRecord, units: UnitRegistry | None) -> list[Triple]:
    node = blank(f"conc_{rec.result_id}")
    triples = [Triple(result_iri(rec.result_id), CONCENTRATION_PROP, node)]
    value = rec.concentration.strip() if rec.concentration else ""
    if _DECIMAL.fullmatch(value):
        triples.append(Triple(node, RDF_VALUE, literal(value, XSD_DECIMAL)))
    else:
        qual = _QUALIFIED.fullmatch(value)
        if qual and _DECIMAL.fullmatch(qual.group(2).strip()):
            triples.append(Triple(node, RDF_VALUE, literal(qual.group(2).strip())))
            triples.append(Triple(node, QUALIFIER_PROP, literal(qual.group(1))))
        else:
            triples.append(Triple(node, RDF_VALUE, literal(value)))
            triples.append(Triple(node, QUALIFIER_PROP, literal("unparsed")))
    if rec.unit:
        unit_term = units.unit_term(rec.unit) if units is not None else None
        triples.append(Triple(node, UNIT_UNITS, unit_term or literal(rec.unit)))
    return triples


def ingest_tests(
    tests: list[TestRecord],
    results: list[ResultRecord],
    store: TripleStore,
    units: UnitRegistry | None = None,
) -> int:
    """Emit test metadata and per-result endpoint/concentration nodes.

    Every result must reference a known test id. Concentration values
    that are not plain decimals stay unparsed: the raw remainder goes
    under rdf:value with the qualifier recorded alongside.
    """
    known = {t.test_id for t in tests}
    missing = {r.test_id for r in results} - known
    if missing:
        raise OrphanResultError(sorted(missing))
    added = 0
    for t in tests:
        subject = test_iri(t.test_id)
        added += store.add(Triple(subject, RDF_TYPE, TEST_TYPE))
        added += store.add(Triple(subject, COMPOUND_PROP, chemical_iri(t.cas)))
        added += store.add(Triple(subject, SPECIES_PROP, species_iri(t.species_number)))
        if t.lifestage is not None:
            added += store.add(Triple(subject, LIFESTAGE_PROP, _lifestage_iri(t.lifestage)))
    for r in results:
        subject = result_iri(r.result_id)
        added += store.add(Triple(test_iri(r.test_id), HAS_RESULT_PROP, subject))
        added += store.add(Triple(subject, RDF_TYPE, RESULT_TYPE))
        added += store.add(Triple(subject, ENDPOINT_PROP, code_iri(r.endpoint)))
        if r.effect is not None:
            added += store.add(Triple(subject, EFFECT_PROP, code_iri(r.effect)))
        if r.concentration is not None:
            added += store.add_all(_concentration_triples(r, units))
    return added
