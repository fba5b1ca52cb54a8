"""
Pattern queries over effect data
================================

The query format is one triple pattern per line with ?variables in any
position. A select header projects chosen variables; a construct block
rewrites matches into new triples.
"""

from ecokg.ntriples import parse, serialize
from ecokg.query import parse_query, run_query

GRAPH = """\
<urn:t:1> <urn:p:species> <urn:s:danio> .
<urn:t:1> <urn:p:compound> <urn:c:formaldehyde> .
<urn:t:1> <urn:p:endpoint> <urn:e:LC50> .
<urn:t:1> <urn:p:value> "220"^^<http://www.w3.org/2001/XMLSchema#decimal> .
<urn:t:2> <urn:p:species> <urn:s:daphnia> .
<urn:t:2> <urn:p:compound> <urn:c:formaldehyde> .
<urn:t:2> <urn:p:endpoint> <urn:e:NOEC> .
<urn:t:2> <urn:p:value> "4.1"^^<http://www.w3.org/2001/XMLSchema#decimal> .
<urn:t:3> <urn:p:species> <urn:s:danio> .
<urn:t:3> <urn:p:compound> <urn:c:acrylamide> .
<urn:t:3> <urn:p:endpoint> <urn:e:LC50> .
"""
store = parse(GRAPH)

# join across two patterns: which species have an LC50 test, and for
# which compound?
SELECT = """\
select ?species ?compound
?test <urn:p:endpoint> <urn:e:LC50>
?test <urn:p:species> ?species
?test <urn:p:compound> ?compound
"""
rows = run_query(store, parse_query(SELECT, store.prefixes))
for row in rows:
    print(tuple(term.value for term in row))
assert len(rows) == 2
species = {row[0].value for row in rows}
assert species == {"urn:s:danio"}  # only t:1 and t:3 are LC50 tests

# rows come back sorted and distinct, so repeated runs agree
assert rows == sorted(rows, key=lambda r: tuple(t.ntriples() for t in r))

# without a header, every named variable is projected alphabetically
BARE = "?test <urn:p:value> ?v"
q = parse_query(BARE, store.prefixes)
assert q.projection == ("test", "v")

# construct derives a compact exposure edge from each qualifying join
CONSTRUCT = """\
construct
?species <urn:p:exposedTo> ?compound
where
?test <urn:p:species> ?species
?test <urn:p:compound> ?compound
?test <urn:p:value> ?v
"""
derived = run_query(store, parse_query(CONSTRUCT, store.prefixes))
print()
print(serialize(derived), end="")
# t:3 has no value triple, so only two exposure edges appear
assert len(derived) == 2
