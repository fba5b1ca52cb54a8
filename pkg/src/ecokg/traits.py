"""Species trait ingestion from TSV with glossary-backed value resolution.

Rows are (subject-iri, property, value, kind). ``kind`` is one of
``iri``, ``literal``, or ``glossary``. Glossary values are looked up in
a (term, iri) table and replaced by the mapped IRI; conservation-status
rows flow through the same path. Each row becomes exactly one triple.
"""

import re
from dataclasses import dataclass

from .graph import PrefixMap, Term, Triple, TripleStore, iri, literal

_KINDS = ("iri", "literal", "glossary")
_LITERAL_SYNTAX = re.compile(r'"(.*)"(?:@([A-Za-z]+(?:-[A-Za-z0-9]+)*)|\^\^(\S+))?\Z', re.S)


class UnresolvedGlossaryError(ValueError):
    """Glossary rows whose terms are absent from the glossary."""

    def __init__(self, terms: list[str]):
        super().__init__(f"unresolved glossary terms: {sorted(terms)}")
        self.terms = sorted(terms)


@dataclass(frozen=True, slots=True)
class TraitRow:
    subject: str  # IRI text
    property: str  # IRI text
    value: str  # raw value column
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown trait value kind: {self.kind!r}")


def load_glossary(text: str, prefixes: PrefixMap) -> dict[str, str]:
    """Read (term, iri) rows; the iri column may be a curie."""
    glossary: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 2:
            raise ValueError(f"glossary line {line_no}: expected 2 columns")
        glossary[parts[0].strip()] = prefixes.resolve(parts[1].strip())
    return glossary


def parse_traits(text: str, prefixes: PrefixMap) -> list[TraitRow]:
    rows = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 4:
            raise ValueError(f"trait table line {line_no}: expected 4 columns, got {len(parts)}")
        rows.append(
            TraitRow(
                subject=prefixes.resolve(parts[0].strip()),
                property=prefixes.resolve(parts[1].strip()),
                value=parts[2].strip(),
                kind=parts[3].strip(),
            )
        )
    return rows


def parse_literal_value(text: str, prefixes: PrefixMap | None = None) -> Term:
    """Literal from column syntax: "lex", "lex"@lang, "lex"^^<dt>, or bare text."""
    m = _LITERAL_SYNTAX.fullmatch(text)
    if not m:
        return literal(text)
    lex, lang, datatype = m.groups()
    if datatype:
        datatype = datatype.strip()
        if datatype.startswith("<") and datatype.endswith(">"):
            datatype = datatype[1:-1]
        elif prefixes is not None:
            datatype = prefixes.resolve(datatype)
        return literal(lex, datatype)
    return literal(lex, language=lang)


def _lexical_form(value: str) -> str:
    m = _LITERAL_SYNTAX.fullmatch(value)
    return m.group(1) if m else value


def ingest_traits(
    rows: list[TraitRow],
    glossary: dict[str, str],
    store: TripleStore,
    prefixes: PrefixMap | None = None,
) -> int:
    """Emit one triple per row; glossary terms become IRI objects.

    All glossary terms are resolved up front so a bad batch emits
    nothing.
    """
    resolver = prefixes if prefixes is not None else store.prefixes
    unresolved = sorted(
        {
            _lexical_form(row.value)
            for row in rows
            if row.kind == "glossary" and _lexical_form(row.value) not in glossary
        }
    )
    if unresolved:
        raise UnresolvedGlossaryError(unresolved)
    added = 0
    for row in rows:
        if row.kind == "iri":
            obj = iri(resolver.resolve(row.value))
        elif row.kind == "glossary":
            obj = iri(glossary[_lexical_form(row.value)])
        else:
            obj = parse_literal_value(row.value, resolver)
        added += store.add(Triple(iri(row.subject), iri(row.property), obj))
    return added
