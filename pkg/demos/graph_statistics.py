"""
Summary statistics for a triple graph
=====================================

Density figures treat the graph as entities joined by relations.
Literal-valued triples are annotations, not edges, so they are
excluded before counting.
"""

from ecokg.ntriples import parse
from ecokg.stats import (
    absolute_density,
    count_graph,
    coverage,
    entity_density,
    relational_density,
    report_text,
)

GRAPH = """\
<urn:g:a> <urn:g:knows> <urn:g:b> .
<urn:g:a> <urn:g:knows> <urn:g:c> .
<urn:g:b> <urn:g:knows> <urn:g:c> .
<urn:g:c> <urn:g:near> <urn:g:d> .
<urn:g:a> <urn:g:label> "alpha" .
<urn:g:b> <urn:g:label> "beta" .
"""
store = parse(GRAPH)
counts = count_graph(store)
print(counts)

# the two label rows have literal objects and do not count
assert counts.triples == 4
assert counts.relations == 2  # knows, near
assert counts.entities == 4  # a, b, c, d

rd = relational_density(counts)
ed = entity_density(counts)
ad = absolute_density(counts)
print(f"relation density {rd}")
print(f"entity density {ed}")
print(f"absolute density {ad:.6f}")

assert rd == 4 / 2
assert ed == 4 / 4
# absolute density normalizes by ordered entity pairs
assert abs(ad - 4 / (4 * 3)) < 1e-15

# coverage: what fraction of the compound-species grid has a test
pct = coverage(tests=6, compounds=4, species=3)
print(f"coverage {pct:.1f}%")
assert pct == 50.0

# the text report aligns values under a fixed key column
print()
print(report_text(counts, coverage_percent=pct))
