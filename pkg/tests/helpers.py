"""Shared generators and independent oracles for the test suite.

Oracles here deliberately use naive algorithms (full scans, full DP
matrices, denotational set semantics) so they share no code paths with
the implementations they check.
"""

import random
import string

from ecokg.graph import Term, Triple, TripleStore, blank, iri, literal
from ecokg.query import PathAlt, PathAtom, PathInverse, PathRepeat, PathSeq

_WORDS = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu", "nu", "xi", "omicron", "pi",
]


def random_iri(rng: random.Random) -> Term:
    return iri(f"http://example.org/{rng.choice(_WORDS)}/{rng.randrange(40)}")


def random_literal(rng: random.Random) -> Term:
    pool = string.ascii_letters + string.digits + ' \t\n"\\é☃'
    text = "".join(rng.choice(pool) for _ in range(rng.randrange(12)))
    roll = rng.random()
    if roll < 0.4:
        return literal(text)
    if roll < 0.7:
        return literal(text, "http://www.w3.org/2001/XMLSchema#string")
    return literal(text, language=rng.choice(["en", "no", "de-AT"]))


def random_term(rng: random.Random) -> Term:
    roll = rng.random()
    if roll < 0.6:
        return random_iri(rng)
    if roll < 0.8:
        return blank(f"b{rng.randrange(20)}")
    return random_literal(rng)


def random_triple(rng: random.Random) -> Triple:
    subject = blank(f"b{rng.randrange(20)}") if rng.random() < 0.2 else random_iri(rng)
    return Triple(subject, random_iri(rng), random_term(rng))


def random_store(rng: random.Random, max_triples: int = 60) -> TripleStore:
    store = TripleStore()
    for _ in range(rng.randrange(max_triples + 1)):
        store.add(random_triple(rng))
    return store


def brute_force_match(store: TripleStore, s=None, p=None, o=None) -> list[Triple]:
    hits = [
        t
        for t in store.triples()
        if (s is None or t.subject == s)
        and (p is None or t.predicate == p)
        and (o is None or t.object == o)
    ]
    return sorted(hits, key=Triple.sort_key)


def dp_levenshtein(a: str, b: str) -> int:
    """Full-matrix edit distance, the classic textbook recurrence."""
    rows, cols = len(a) + 1, len(b) + 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        d[i][0] = i
    for j in range(cols):
        d[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[-1][-1]


# ---------------------------------------------------------------------------
# Property-path denotational oracle

def _atom_pairs(store: TripleStore, predicate: Term) -> set[tuple[Term, Term]]:
    return {(t.subject, t.object) for t in store.triples() if t.predicate == predicate}


def _join(left: set, right: set) -> set:
    by_head: dict[Term, list[Term]] = {}
    for c, d in right:
        by_head.setdefault(c, []).append(d)
    return {(a, d) for a, b in left for d in by_head.get(b, ())}


def path_oracle(store: TripleStore, expr) -> set[tuple[Term, Term]]:
    """Set denotation of a path expression, computed naively.

    Unbounded repetition is expanded step by step up to
    low + |nodes(G)| compositions: any walk longer than that contains a
    removable cycle, so no new endpoint pairs appear beyond it.
    """
    nodes = store.terms()
    identity = {(n, n) for n in nodes}

    def denote(e) -> set[tuple[Term, Term]]:
        if isinstance(e, PathAtom):
            return _atom_pairs(store, e.predicate)
        if isinstance(e, PathInverse):
            return {(b, a) for a, b in denote(e.child)}
        if isinstance(e, PathSeq):
            return _join(denote(e.left), denote(e.right))
        if isinstance(e, PathAlt):
            return denote(e.left) | denote(e.right)
        if isinstance(e, PathRepeat):
            base = denote(e.child)
            high = e.high if e.high is not None else e.low + len(nodes)
            out = set() if e.low > 0 else set(identity)
            power = set(identity)
            for k in range(1, high + 1):
                power = _join(power, base)
                if k >= e.low:
                    out |= power
                if not power:
                    break
            return out
        raise TypeError(f"unknown path node: {e!r}")

    return denote(expr)


def random_path_expr(rng: random.Random, predicates: list[Term], depth: int = 3):
    """Random PathExpr tree over the given predicates."""
    if depth <= 0 or rng.random() < 0.35:
        return PathAtom(rng.choice(predicates))
    roll = rng.random()
    if roll < 0.25:
        return PathInverse(random_path_expr(rng, predicates, depth - 1))
    if roll < 0.5:
        return PathSeq(
            random_path_expr(rng, predicates, depth - 1),
            random_path_expr(rng, predicates, depth - 1),
        )
    if roll < 0.75:
        return PathAlt(
            random_path_expr(rng, predicates, depth - 1),
            random_path_expr(rng, predicates, depth - 1),
        )
    low = rng.randrange(0, 3)
    high = None if rng.random() < 0.3 else low + rng.randrange(0, 4)
    return PathRepeat(random_path_expr(rng, predicates, depth - 1), low, high)


def random_edge_graph(
    rng: random.Random, max_nodes: int = 30, max_edges: int = 60, n_predicates: int = 3
) -> tuple[TripleStore, list[Term]]:
    """Small multi-relation digraph for path evaluation tests."""
    store = TripleStore()
    n = rng.randrange(2, max_nodes + 1)
    nodes = [iri(f"http://example.org/n/{i}") for i in range(n)]
    predicates = [iri(f"http://example.org/p/{i}") for i in range(n_predicates)]
    for _ in range(rng.randrange(max_edges + 1)):
        store.add(Triple(rng.choice(nodes), rng.choice(predicates), rng.choice(nodes)))
    return store, predicates
