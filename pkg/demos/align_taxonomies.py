"""
Matching species labels across two vocabularies
===============================================

Neither side shares identifiers, so the only bridge is the label text.
Lexical alignment pairs entities whose best labels are within an edit
distance threshold, after normalization and token blocking.
"""

from ecokg.align import (
    Mapping,
    MappingSet,
    align_lexical,
    disagreement,
    evaluate,
    intersect,
    similarity,
)

# left vocabulary: effect-data taxa keyed by local id, with messy labels
SOURCE = {
    "urn:a:5156": ["Danio rerio", "Zebra Danio"],
    "urn:a:26812": ["Daphnia magna"],
    "urn:a:33155": ["Oncorhynchus mykiss", "Rainbow Trout"],
    "urn:a:999": ["Unmatched thing"],
}

# right vocabulary: curated taxonomy, one scientific name each.
# note the typo in "Danio reria" and the abbreviation dot.
TARGET = {
    "urn:b:7955": ["Danio reria"],
    "urn:b:35525": ["Daphnia magna."],
    "urn:b:8022": ["Oncorhynchus mykiss"],
    "urn:b:777": ["Something else entirely"],
}

mappings = align_lexical(SOURCE, TARGET, threshold=0.8)
for m in mappings:
    print(f"{m.source} -> {m.target}  score={m.score:.3f}")

# the typo costs one edit out of eleven characters, well inside 0.8
assert similarity("danio rerio", "danio reria") > 0.9

found = {(m.source, m.target) for m in mappings}
assert ("urn:a:5156", "urn:b:7955") in found
assert ("urn:a:26812", "urn:b:35525") in found
assert ("urn:a:999", "urn:b:777") not in found

# recall against a hand-checked reference set
reference = MappingSet(
    "manual",
    [
        Mapping("urn:a:5156", "urn:b:7955", 1.0, "manual"),
        Mapping("urn:a:26812", "urn:b:35525", 1.0, "manual"),
        Mapping("urn:a:33155", "urn:b:8022", 1.0, "manual"),
    ],
)
recall = evaluate(mappings, reference)
print(f"recall {recall:.2f}")
assert recall == 1.0

# a stricter run drops the typo pair; disagreement counts the loss
strict = align_lexical(SOURCE, TARGET, threshold=0.95)
print(f"loose-only pairs: {disagreement(mappings, strict)}")
assert disagreement(mappings, strict) >= 1
assert disagreement(strict, mappings) == 0  # strict adds nothing new

# consensus keeps only pairs both runs agree on
agreed = intersect(mappings, strict)
assert all((m.source, m.target) in found for m in agreed)
print(f"{len(agreed)} pairs survive at both thresholds")
