"""
Navigating a taxonomy with property path expressions
====================================================

Path expressions compose single predicates into multi-hop reachability
queries: / chains steps, | takes either branch, ^ walks an edge
backwards, and {m,n} bounds repetition.
"""

from ecokg.graph import iri
from ecokg.ntriples import parse
from ecokg.query import eval_path, parse_path

# a five-level lineage plus one habitat fact
GRAPH = """\
<urn:x:magna> <urn:p:subClassOf> <urn:x:daphnia> .
<urn:x:daphnia> <urn:p:subClassOf> <urn:x:crustacea> .
<urn:x:crustacea> <urn:p:subClassOf> <urn:x:arthropoda> .
<urn:x:arthropoda> <urn:p:subClassOf> <urn:x:animalia> .
<urn:x:magna> <urn:p:habitat> <urn:x:freshwater> .
"""
store = parse(GRAPH)


def reachable(expr, start):
    path = parse_path(expr, store.prefixes)
    return sorted(o.value for s, o in eval_path(store, path, start=start))


magna = iri("urn:x:magna")

# one hop
print(reachable("<urn:p:subClassOf>", magna))

# bounded repetition: two or three hops up
hops23 = reachable("<urn:p:subClassOf>{2,3}", magna)
print(hops23)
assert hops23 == ["urn:x:arthropoda", "urn:x:crustacea"]

# unbounded: everything above, any number of hops
ancestors = reachable("<urn:p:subClassOf>{1,}", magna)
assert ancestors[-1] == "urn:x:daphnia"
assert len(ancestors) == 4

# zero-minimum repeats include the start node itself
closure = reachable("<urn:p:subClassOf>{0,}", magna)
assert "urn:x:magna" in closure

# alternation merges two relations into one step
either = reachable("<urn:p:subClassOf>|<urn:p:habitat>", magna)
assert either == ["urn:x:daphnia", "urn:x:freshwater"]

# inverse turns ancestors into descendants
animalia = iri("urn:x:animalia")
below = reachable("^<urn:p:subClassOf>{1,}", animalia)
print(below)
assert "urn:x:magna" in below

# sequence with inverse: siblings-of pattern, up one and back down
one_up_down = reachable("<urn:p:subClassOf>/^<urn:p:subClassOf>", magna)
assert one_up_down == ["urn:x:magna"]  # only child, so just itself
