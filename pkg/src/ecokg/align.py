"""Lexical ontology alignment: token blocking plus edit-distance scoring.

Labels are normalized (lowercased, punctuation stripped, stop words and
taxonomic rank words removed) before anything else. Candidate pairs
must share at least one normalized token; sharing only stop words does
not count because stop words never survive normalization. Each blocked
pair is scored with ``1 - distance/max(len)`` over the cross product of
the two entities' normalized labels, and each source keeps its best
target at or above the threshold.
"""

from dataclasses import dataclass
from typing import Iterable, Mapping as MappingType, Sequence

from .graph import Triple, TripleStore, iri
from .ns import OWL_SAMEAS, RDFS_LABEL

DEFAULT_STOP_WORDS = frozenset(
    {
        "the", "a", "an", "and", "or", "of", "in", "on", "for", "to", "with",
        "species", "genus", "var", "sp", "spp", "ssp",
    }
)

DEFAULT_THRESHOLD = 0.8


class EmptyReferenceError(ValueError):
    pass


def normalize_label(label: str, stop_words: frozenset[str] = DEFAULT_STOP_WORDS) -> list[str]:
    """Lowercase, strip punctuation, split, drop stop words."""
    cleaned = []
    for ch in label.lower():
        cleaned.append(ch if ch.isalnum() else " ")
    return [tok for tok in "".join(cleaned).split() if tok not in stop_words]


def levenshtein(a: str, b: str) -> int:
    """Edit distance with unit costs, two-row dynamic programming."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(
                min(
                    previous[j] + 1,  # deletion
                    current[j - 1] + 1,  # insertion
                    previous[j - 1] + (ca != cb),  # substitution
                )
            )
        previous = current
    return previous[-1]


def similarity(a: str, b: str) -> float:
    """1 - distance/max(len); identical strings score 1.0."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def block_candidates(
    source_tokens: MappingType[str, set[str]],
    target_tokens: MappingType[str, set[str]],
) -> set[tuple[str, str]]:
    """Pairs sharing at least one token, via an inverted target index."""
    index: dict[str, list[str]] = {}
    for target, tokens in target_tokens.items():
        for token in tokens:
            index.setdefault(token, []).append(target)
    pairs: set[tuple[str, str]] = set()
    for source, tokens in source_tokens.items():
        for token in tokens:
            for target in index.get(token, ()):
                pairs.add((source, target))
    return pairs


@dataclass(frozen=True, slots=True)
class Mapping:
    source: str
    target: str
    score: float
    method: str

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score out of range: {self.score!r}")


class MappingSet:
    """At most one mapping per (source, target); iterates sorted."""

    def __init__(self, method: str = "", mappings: Iterable[Mapping] = ()):
        self.method = method
        self._by_pair: dict[tuple[str, str], Mapping] = {}
        for m in mappings:
            self.add(m)

    def add(self, mapping: Mapping) -> None:
        self._by_pair[(mapping.source, mapping.target)] = mapping

    def pairs(self) -> set[tuple[str, str]]:
        return set(self._by_pair)

    def get(self, source: str, target: str) -> Mapping | None:
        return self._by_pair.get((source, target))

    def __len__(self) -> int:
        return len(self._by_pair)

    def __iter__(self):
        return iter(sorted(self._by_pair.values(), key=lambda m: (m.source, m.target)))

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self._by_pair


def _normalized_forms(
    labels: MappingType[str, Sequence[str]],
    stop_words: frozenset[str],
) -> tuple[dict[str, list[str]], dict[str, set[str]]]:
    forms: dict[str, list[str]] = {}
    tokens: dict[str, set[str]] = {}
    for entity, entity_labels in labels.items():
        seen: list[str] = []
        toks: set[str] = set()
        for label in entity_labels:
            parts = normalize_label(label, stop_words)
            if not parts:
                continue
            form = " ".join(parts)
            if form not in seen:
                seen.append(form)
            toks.update(parts)
        forms[entity] = seen
        tokens[entity] = toks
    return forms, tokens


def align_lexical(
    source_labels: MappingType[str, Sequence[str]],
    target_labels: MappingType[str, Sequence[str]],
    threshold: float = DEFAULT_THRESHOLD,
    stop_words: frozenset[str] = DEFAULT_STOP_WORDS,
    method: str = "levenshtein",
) -> MappingSet:
    """Best-scoring target per source entity, at or above threshold.

    Ties prefer the higher score, then the lexicographically smaller
    target IRI, so results never depend on dict order.
    """
    source_forms, source_tokens = _normalized_forms(source_labels, stop_words)
    target_forms, target_tokens = _normalized_forms(target_labels, stop_words)
    best: dict[str, tuple[float, str]] = {}
    for source, target in block_candidates(source_tokens, target_tokens):
        score = max(
            (
                similarity(sf, tf)
                for sf in source_forms[source]
                for tf in target_forms[target]
            ),
            default=0.0,
        )
        if score < threshold:
            continue
        incumbent = best.get(source)
        if incumbent is None or score > incumbent[0] or (
            score == incumbent[0] and target < incumbent[1]
        ):
            best[source] = (score, target)
    out = MappingSet(method=method)
    for source, (score, target) in best.items():
        out.add(Mapping(source, target, score, method))
    return out


def evaluate(computed: MappingSet, reference: MappingSet) -> float:
    """Recall of the reference pairs: |computed ∩ reference| / |reference|."""
    if len(reference) == 0:
        raise EmptyReferenceError("reference mapping set is empty")
    return len(computed.pairs() & reference.pairs()) / len(reference)


def disagreement(first: MappingSet, second: MappingSet) -> int:
    """Pairs in the first set missing from the second (not symmetric)."""
    return len(first.pairs() - second.pairs())


def intersect(*sets: MappingSet) -> MappingSet:
    """Consensus pairs present in every set, scores averaged."""
    if len(sets) < 2:
        raise ValueError("intersect needs at least two mapping sets")
    shared = set.intersection(*(s.pairs() for s in sets))
    out = MappingSet(method="consensus")
    for source, target in shared:
        mean = sum(s.get(source, target).score for s in sets) / len(sets)
        out.add(Mapping(source, target, mean, "consensus"))
    return out


def write_mappings(mappings: MappingSet) -> str:
    """Interchange TSV: source-iri, target-iri, score, method."""
    lines = [
        f"{m.source}\t{m.target}\t{m.score:.6f}\t{m.method}"
        for m in mappings
    ]
    return "".join(line + "\n" for line in lines)


def read_mappings(text: str) -> MappingSet:
    out = MappingSet()
    methods: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 4:
            raise ValueError(f"mappings line {line_no}: expected 4 columns, got {len(parts)}")
        out.add(Mapping(parts[0].strip(), parts[1].strip(), float(parts[2]), parts[3].strip()))
        methods.add(parts[3].strip())
    out.method = methods.pop() if len(methods) == 1 else "mixed"
    return out


def sameas_triples(mappings: MappingSet) -> list[Triple]:
    return [Triple(iri(m.source), OWL_SAMEAS, iri(m.target)) for m in mappings]


def add_sameas(mappings: MappingSet, store: TripleStore) -> int:
    return store.add_all(sameas_triples(mappings))


def labels_by_prefix(store: TripleStore, iri_prefix: str) -> dict[str, list[str]]:
    """rdfs:label literals grouped by subject IRI under one namespace."""
    out: dict[str, list[str]] = {}
    for t in store.match(p=RDFS_LABEL):
        if t.subject.is_iri() and t.object.is_literal() and t.subject.value.startswith(iri_prefix):
            out.setdefault(t.subject.value, []).append(t.object.value)
    for labels in out.values():
        labels.sort()
    return out
