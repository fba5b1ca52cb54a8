"""Unit registry with linear conversion and QUDT-style triple emission.

Each unit carries a multiplicative factor and an additive offset
relative to the base unit of its dimension (the unit whose multiplier
is 1 in the loaded table). Conversion between two units of the same
dimension goes through the base:

    ((value * from.multiplier + from.offset) - to.offset) / to.multiplier

Units of different dimension tags never convert. Mass-per-mass
concentrations (e.g. "mg/kg diet") carry their own dimension tag, so
they are deliberately unreachable from mass-per-volume units.
"""

from dataclasses import dataclass
from decimal import Decimal

from .graph import PrefixMap, Term, Triple, TripleStore, iri, literal
from .ns import QUDT, RDF_TYPE, RDFS_LABEL, XSD_DECIMAL, XSD_STRING


class DuplicateUnitError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class UnitDef:
    """One unit: identity, presentation strings, and conversion data."""

    id: str
    label: str
    abbreviation: str
    multiplier: float
    offset: float
    dimension: str
    symbol: str

    def __post_init__(self) -> None:
        if not self.multiplier > 0:
            raise ValueError(f"multiplier must be positive: {self.multiplier!r}")


def _decimal_lexical(value: float) -> str:
    """Plain decimal rendering without exponent (0.000001, not 1e-06)."""
    return format(Decimal(repr(value)), "f")


def _dimension_class(dimension: str) -> str:
    # "mass-per-volume" -> "MassPerVolumeUnit"
    parts = [p for p in dimension.replace("_", "-").replace(" ", "-").split("-") if p]
    return "".join(p[:1].upper() + p[1:] for p in parts) + "Unit"


def definition_triples(unit: UnitDef) -> list[Triple]:
    """QUDT-shaped description: types, label, abbreviation, factors, symbol."""
    subject = iri(unit.id)
    return [
        Triple(subject, RDF_TYPE, iri(QUDT + _dimension_class(unit.dimension))),
        Triple(subject, RDF_TYPE, iri(QUDT + "SIDerivedUnit")),
        Triple(subject, RDF_TYPE, iri(QUDT + "DerivedUnit")),
        Triple(subject, RDFS_LABEL, literal(unit.label, XSD_STRING)),
        Triple(subject, iri(QUDT + "abbreviation"), literal(unit.abbreviation, XSD_STRING)),
        Triple(
            subject,
            iri(QUDT + "conversionMultiplier"),
            literal(_decimal_lexical(unit.multiplier), XSD_DECIMAL),
        ),
        Triple(
            subject,
            iri(QUDT + "conversionOffset"),
            literal(_decimal_lexical(unit.offset), XSD_DECIMAL),
        ),
        Triple(subject, iri(QUDT + "symbol"), literal(unit.symbol, XSD_STRING)),
    ]


def convert(value: float, from_unit: UnitDef, to_unit: UnitDef) -> float:
    if from_unit.dimension != to_unit.dimension:
        raise DimensionMismatchError(
            f"cannot convert {from_unit.dimension!r} to {to_unit.dimension!r}"
        )
    return ((value * from_unit.multiplier + from_unit.offset) - to_unit.offset) / to_unit.multiplier


class UnitRegistry:
    """Units keyed by id and abbreviation. Configure once, then read."""

    def __init__(self):
        self._by_id: dict[str, UnitDef] = {}
        self._by_abbreviation: dict[str, UnitDef] = {}

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self):
        return iter(sorted(self._by_id.values(), key=lambda u: u.id))

    def register(self, unit: UnitDef, store: TripleStore | None = None) -> int:
        """Add a unit and optionally emit its description triples."""
        if unit.id in self._by_id or unit.abbreviation in self._by_abbreviation:
            raise DuplicateUnitError(f"unit already registered: {unit.id} ({unit.abbreviation})")
        self._by_id[unit.id] = unit
        self._by_abbreviation[unit.abbreviation] = unit
        if store is None:
            return 0
        return store.add_all(definition_triples(unit))

    def get(self, key: str) -> UnitDef | None:
        """Look up by abbreviation first, then by id."""
        return self._by_abbreviation.get(key) or self._by_id.get(key)

    def require(self, key: str) -> UnitDef:
        unit = self.get(key)
        if unit is None:
            raise KeyError(f"unknown unit: {key!r}")
        return unit

    def convert(self, value: float, from_key: str, to_key: str) -> float:
        return convert(value, self.require(from_key), self.require(to_key))

    def unit_term(self, key: str) -> Term | None:
        unit = self.get(key)
        return iri(unit.id) if unit is not None else None


def parse_units(text: str, prefixes: PrefixMap | None = None) -> list[UnitDef]:
    """Read unit rows from 7-column TSV.

    Columns: id, label, abbreviation, multiplier, offset, dimension,
    symbol. The id may be a curie when a prefix map is supplied.
    """
    units = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 7:
            raise ValueError(f"units table line {line_no}: expected 7 columns, got {len(parts)}")
        unit_id = parts[0].strip()
        if prefixes is not None:
            unit_id = prefixes.resolve(unit_id)
        try:
            units.append(
                UnitDef(
                    id=unit_id,
                    label=parts[1].strip(),
                    abbreviation=parts[2].strip(),
                    multiplier=float(parts[3]),
                    offset=float(parts[4]),
                    dimension=parts[5].strip(),
                    symbol=parts[6].strip(),
                )
            )
        except ValueError as exc:
            raise ValueError(f"units table line {line_no}: {exc}") from None
    return units


def load_registry(
    text: str,
    prefixes: PrefixMap | None = None,
    store: TripleStore | None = None,
) -> tuple[UnitRegistry, int]:
    """Build a registry from TSV text; returns (registry, triples added)."""
    registry = UnitRegistry()
    added = 0
    for unit in parse_units(text, prefixes):
        added += registry.register(unit, store)
    return registry, added
