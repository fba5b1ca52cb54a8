"""External identifier bridging: CAS and NCBI ids to IRIs, sameAs links."""

import re
from dataclasses import dataclass

from .graph import Triple, TripleStore, iri
from .ns import ET, NCBI, OWL_SAMEAS

_CAS = re.compile(r"(\d{2,7})-(\d{2})-(\d)\Z")
_NCBI_ID = re.compile(r"[1-9]\d*\Z")


class InvalidCasError(ValueError):
    pass


class InvalidNcbiIdError(ValueError):
    pass


def validate_cas(cas: str) -> bool:
    """Check CAS shape (2-7 digits, 2 digits, check digit) and checksum.

    The check digit equals the sum of the other digits, each weighted
    by its position counted from the right (check digit excluded),
    modulo 10.
    """
    m = _CAS.fullmatch(cas.strip())
    if not m:
        return False
    body = m.group(1) + m.group(2)
    check = int(m.group(3))
    total = sum(int(d) * i for i, d in enumerate(reversed(body), 1))
    return total % 10 == check


def cas_to_iri(cas: str) -> str:
    """Chemical IRI from a hyphenated CAS number (hyphens dropped)."""
    if not validate_cas(cas):
        raise InvalidCasError(f"invalid CAS number: {cas!r}")
    return f"{ET}chemical/{cas.strip().replace('-', '')}"


def ncbi_id_to_iri(taxon_id: str) -> str:
    text = str(taxon_id).strip()
    if not _NCBI_ID.fullmatch(text):
        raise InvalidNcbiIdError(f"invalid NCBI taxon id: {taxon_id!r}")
    return f"{NCBI}taxon/{text}"


def ncbi_iri_to_id(iri_text: str) -> str:
    prefix = f"{NCBI}taxon/"
    if not iri_text.startswith(prefix):
        raise InvalidNcbiIdError(f"not a taxon IRI: {iri_text!r}")
    tail = iri_text[len(prefix):]
    if not _NCBI_ID.fullmatch(tail):
        raise InvalidNcbiIdError(f"not a taxon IRI: {iri_text!r}")
    return tail


@dataclass(frozen=True, slots=True)
class IdPair:
    external_id: str
    external_iri: str


def parse_pairs(text: str) -> list[IdPair]:
    """Read (external-id, external-iri) rows from TSV text."""
    pairs = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 2:
            raise ValueError(f"pair table line {line_no}: expected 2 columns")
        pairs.append(IdPair(parts[0].strip(), parts[1].strip()))
    return pairs


def construct_sameas(
    pairs: list[IdPair],
    rewrite: str,
    store: TripleStore,
) -> tuple[int, list[str]]:
    """Link local IRIs to external ones with owl:sameAs.

    ``rewrite`` picks the local-IRI rule: "cas" and "ncbi" rewrite the
    external id, "verbatim" takes it as already an IRI (or curie bound
    in the store's prefix map). Bad pairs are collected as error
    strings; the remaining pairs are still emitted. Returns
    (triples added, errors).
    """
    if rewrite not in ("cas", "ncbi", "verbatim"):
        raise ValueError(f"unknown rewrite rule: {rewrite!r}")
    added = 0
    errors: list[str] = []
    for pair in pairs:
        try:
            if rewrite == "cas":
                local = cas_to_iri(pair.external_id)
            elif rewrite == "ncbi":
                local = ncbi_id_to_iri(pair.external_id)
            else:
                local = store.prefixes.resolve(pair.external_id)
            target = store.prefixes.resolve(pair.external_iri)
            added += store.add(Triple(iri(local), OWL_SAMEAS, iri(target)))
        except ValueError as exc:
            errors.append(f"{pair.external_id}: {exc}")
    return added, errors
