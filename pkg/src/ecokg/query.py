"""Property-path evaluation, pattern joins, and graph navigation helpers.

Path expressions combine predicate atoms with four operators, loosest
to tightest: alternative ``|``, sequence ``/``, inverse ``^``, and
bounded repetition ``{m,n}`` (``{m,}`` for no upper bound). Parentheses
group. Atoms are curies, ``<full-iri>``, or ``a`` for rdf:type.

The textual query format is one triple pattern per line. ``?name`` is a
projectable variable, ``_:label`` a blank variable that joins across
patterns but cannot be projected, ``[]`` a fresh anonymous blank
variable per occurrence. An optional leading ``select ?x ?y`` line
fixes the projection; a ``construct``/``where`` pair instead builds new
triples from a template. Literals use N-Triples syntax with
``@lang``/``^^dt`` suffixes, datatypes as curies or ``<iri>``.
"""

from dataclasses import dataclass

from .align import normalize_label, similarity
from .graph import PrefixMap, Term, Triple, TripleStore, iri, literal
from .ns import RDF_TYPE, RDFS_LABEL, RDFS_SUBCLASSOF


class PathSyntaxError(ValueError):
    pass


class QuerySyntaxError(ValueError):
    pass


class UnboundProjectionError(ValueError):
    pass


class UnboundTemplateError(ValueError):
    pass


class UnknownEntityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Path expressions

@dataclass(frozen=True, slots=True)
class PathAtom:
    predicate: Term


@dataclass(frozen=True, slots=True)
class PathInverse:
    child: "PathExpr"


@dataclass(frozen=True, slots=True)
class PathSeq:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True, slots=True)
class PathAlt:
    left: "PathExpr"
    right: "PathExpr"


@dataclass(frozen=True, slots=True)
class PathRepeat:
    child: "PathExpr"
    low: int
    high: int | None  # None = unbounded

    def __post_init__(self) -> None:
        if self.low < 0 or (self.high is not None and self.high < self.low):
            raise ValueError(f"bad repetition bounds: {{{self.low},{self.high}}}")


PathExpr = PathAtom | PathInverse | PathSeq | PathAlt | PathRepeat


class _PathParser:
    """Recursive descent over | then / then ^ then {m,n}."""

    def __init__(self, text: str, prefixes: PrefixMap):
        self.text = text
        self.pos = 0
        self.prefixes = prefixes

    def error(self, message: str) -> PathSyntaxError:
        return PathSyntaxError(f"position {self.pos}: {message}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> PathExpr:
        expr = self.alternative()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.peek()!r}")
        return expr

    def alternative(self) -> PathExpr:
        expr = self.sequence()
        while True:
            self.skip_ws()
            if self.peek() != "|":
                return expr
            self.pos += 1
            expr = PathAlt(expr, self.sequence())

    def sequence(self) -> PathExpr:
        expr = self.unary()
        while True:
            self.skip_ws()
            if self.peek() != "/":
                return expr
            self.pos += 1
            expr = PathSeq(expr, self.unary())

    def unary(self) -> PathExpr:
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            return PathInverse(self.unary())
        return self.postfix()

    def postfix(self) -> PathExpr:
        expr = self.primary()
        while True:
            self.skip_ws()
            if self.peek() != "{":
                return expr
            self.pos += 1
            low = self.number()
            self.skip_ws()
            if self.peek() != ",":
                raise self.error("expected ',' in repetition bounds")
            self.pos += 1
            self.skip_ws()
            high: int | None = None
            if self.peek() != "}":
                high = self.number()
            self.skip_ws()
            if self.peek() != "}":
                raise self.error("expected '}'")
            self.pos += 1
            try:
                expr = PathRepeat(expr, low, high)
            except ValueError as exc:
                raise self.error(str(exc)) from None

    def number(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start:self.pos])

    def primary(self) -> PathExpr:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            expr = self.alternative()
            self.skip_ws()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return expr
        if ch == "<":
            end = self.text.find(">", self.pos)
            if end < 0:
                raise self.error("unterminated IRI")
            text = self.text[self.pos + 1:end]
            self.pos = end + 1
            return PathAtom(iri(text))
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in " \t\n\r|/^{}()":
            self.pos += 1
        token = self.text[start:self.pos]
        if not token:
            raise self.error("expected a predicate atom")
        if token == "a":
            return PathAtom(RDF_TYPE)
        try:
            return PathAtom(self.prefixes.expand(token))
        except ValueError as exc:
            raise self.error(str(exc)) from None


def parse_path(text: str, prefixes: PrefixMap) -> PathExpr:
    """Parse a path expression against a prefix map."""
    return _PathParser(text, prefixes).parse()


def _normalize_inverse(expr: PathExpr, flip: bool = False) -> PathExpr:
    """Push inversions down to atoms; ^(p/q) becomes ^q/^p."""
    if isinstance(expr, PathAtom):
        return PathInverse(expr) if flip else expr
    if isinstance(expr, PathInverse):
        return _normalize_inverse(expr.child, not flip)
    if isinstance(expr, PathSeq):
        left = _normalize_inverse(expr.left, flip)
        right = _normalize_inverse(expr.right, flip)
        return PathSeq(right, left) if flip else PathSeq(left, right)
    if isinstance(expr, PathAlt):
        return PathAlt(_normalize_inverse(expr.left, flip), _normalize_inverse(expr.right, flip))
    if isinstance(expr, PathRepeat):
        return PathRepeat(_normalize_inverse(expr.child, flip), expr.low, expr.high)
    raise TypeError(f"not a path expression: {expr!r}")


def _compose(left: set[tuple[Term, Term]], right: set[tuple[Term, Term]]) -> set[tuple[Term, Term]]:
    by_start: dict[Term, set[Term]] = {}
    for a, b in right:
        by_start.setdefault(a, set()).add(b)
    return {(a, c) for a, b in left for c in by_start.get(b, ())}


def _eval_relation(store: TripleStore, expr: PathExpr) -> set[tuple[Term, Term]]:
    if isinstance(expr, PathAtom):
        return store.predicate_pairs(expr.predicate)
    if isinstance(expr, PathInverse):
        # normalization leaves inverse only directly over atoms
        return {(o, s) for s, o in _eval_relation(store, expr.child)}
    if isinstance(expr, PathSeq):
        return _compose(_eval_relation(store, expr.left), _eval_relation(store, expr.right))
    if isinstance(expr, PathAlt):
        return _eval_relation(store, expr.left) | _eval_relation(store, expr.right)
    if isinstance(expr, PathRepeat):
        return _eval_repeat(store, expr)
    raise TypeError(f"not a path expression: {expr!r}")


def _eval_repeat(store: TripleStore, expr: PathRepeat) -> set[tuple[Term, Term]]:
    step = _eval_relation(store, expr.child)
    successors: dict[Term, set[Term]] = {}
    for a, b in step:
        successors.setdefault(a, set()).add(b)
    out: set[tuple[Term, Term]] = set()
    if expr.low == 0:
        out.update((t, t) for t in store.terms())
    if expr.high is not None:
        # union of the k-fold compositions for k in [max(low,1), high]
        current = set(step)
        for k in range(1, expr.high + 1):
            if k > 1:
                current = _compose(current, step)
                if not current:
                    break
            if k >= expr.low:
                out.update(current)
        return out
    # unbounded: walk exactly max(low, 1) steps, then any number more
    # (the low == 0 identity pairs were already added above)
    base = set(step)
    for _ in range(max(expr.low, 1) - 1):
        base = _compose(base, step)
    starts: dict[Term, set[Term]] = {}
    for a, b in base:
        starts.setdefault(a, set()).add(b)
    for a, frontier in starts.items():
        seen = set(frontier)
        queue = list(frontier)
        while queue:
            node = queue.pop()
            for nxt in successors.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        out.update((a, e) for e in seen)
    return out


def eval_path(
    store: TripleStore,
    path: PathExpr,
    start: Term | None = None,
) -> set[tuple[Term, Term]]:
    """All (start, end) node pairs connected by the path.

    With ``start`` given, only pairs beginning there are returned; a
    zero-minimum repetition then includes (start, start) even when the
    term is absent from the graph.
    """
    normalized = _normalize_inverse(path)
    pairs = _eval_relation(store, normalized)
    if start is None:
        return pairs
    restricted = {(a, b) for a, b in pairs if a == start}
    if _accepts_empty(normalized):
        restricted.add((start, start))
    return restricted


def _accepts_empty(expr: PathExpr) -> bool:
    if isinstance(expr, PathRepeat):
        return expr.low == 0 or _accepts_empty(expr.child)
    if isinstance(expr, PathSeq):
        return _accepts_empty(expr.left) and _accepts_empty(expr.right)
    if isinstance(expr, PathAlt):
        return _accepts_empty(expr.left) or _accepts_empty(expr.right)
    if isinstance(expr, PathInverse):
        return _accepts_empty(expr.child)
    return False


# ---------------------------------------------------------------------------
# Triple patterns and joins

@dataclass(frozen=True, slots=True)
class Var:
    name: str
    blank: bool = False


Pattern = tuple[Term | Var, Term | Var, Term | Var]


@dataclass(frozen=True, slots=True)
class Query:
    kind: str  # "select" | "construct"
    patterns: tuple[Pattern, ...]
    projection: tuple[str, ...] = ()
    template: tuple[Pattern, ...] = ()


def _pattern_vars(patterns) -> set[Var]:
    return {slot for pat in patterns for slot in pat if isinstance(slot, Var)}


def _bind(slot: Term | Var, binding: dict[Var, Term]) -> Term | None:
    if isinstance(slot, Var):
        return binding.get(slot)
    return slot


def solve(store: TripleStore, patterns) -> list[dict[Var, Term]]:
    """All distinct variable bindings satisfying every pattern.

    Patterns are joined most-selective-first: at each step the pattern
    with the most bound positions (then the fewest matching triples)
    is expanded.
    """
    patterns = list(patterns)
    for pat in patterns:
        if isinstance(pat[0], Term) and pat[0].is_literal():
            raise ValueError("literal cannot be a pattern subject")
        if isinstance(pat[1], Term) and not pat[1].is_iri():
            raise ValueError("pattern predicate must be an IRI")
        if isinstance(pat[1], Var) and pat[1].blank:
            raise ValueError("pattern predicate cannot be a blank variable")
    results: list[dict[Var, Term]] = []

    def candidates(pat: Pattern, binding: dict[Var, Term]) -> list[Triple]:
        s = _bind(pat[0], binding)
        p = _bind(pat[1], binding)
        o = _bind(pat[2], binding)
        return store.match(s, p, o)

    def selectivity(pat: Pattern, binding: dict[Var, Term]) -> tuple[int, int]:
        bound = sum(
            1
            for slot in pat
            if not isinstance(slot, Var) or slot in binding
        )
        return (-bound, len(candidates(pat, binding)))

    def extend(remaining: list[Pattern], binding: dict[Var, Term]) -> None:
        if not remaining:
            results.append(dict(binding))
            return
        remaining = sorted(remaining, key=lambda pat: selectivity(pat, binding))
        pat, rest = remaining[0], remaining[1:]
        for t in candidates(pat, binding):
            new = dict(binding)
            ok = True
            for slot, value in zip(pat, (t.subject, t.predicate, t.object)):
                if isinstance(slot, Var):
                    if slot in new and new[slot] != value:
                        ok = False
                        break
                    new[slot] = value
            if ok:
                extend(rest, new)

    extend(patterns, {})
    # distinct bindings (joins can reach the same assignment twice)
    unique: dict[tuple, dict[Var, Term]] = {}
    for binding in results:
        key = tuple(sorted(((v.name, v.blank, t.ntriples()) for v, t in binding.items())))
        unique[key] = binding
    return list(unique.values())


def select(
    store: TripleStore,
    patterns,
    projection: list[str],
) -> list[tuple[Term, ...]]:
    """Distinct projected rows in deterministic order.

    Projection names must be named (non-blank) pattern variables.
    """
    named = {v.name for v in _pattern_vars(patterns) if not v.blank}
    missing = [name for name in projection if name not in named]
    if missing:
        raise UnboundProjectionError(f"projection variables not in pattern: {missing}")
    wanted = [Var(name) for name in projection]
    rows = {tuple(binding[v] for v in wanted) for binding in solve(store, patterns)}
    return sorted(rows, key=lambda row: tuple(t.ntriples() for t in row))


def construct(store: TripleStore, patterns, template) -> TripleStore:
    """New store holding the template instantiated per solution."""
    pattern_vars = _pattern_vars(patterns)
    unbound = sorted(
        v.name for v in _pattern_vars(template) if v not in pattern_vars
    )
    if unbound:
        raise UnboundTemplateError(f"template variables not bound by pattern: {unbound}")
    out = TripleStore(store.prefixes)
    for binding in solve(store, patterns):
        for pat in template:
            out.add(
                Triple(
                    _bind(pat[0], binding),
                    _bind(pat[1], binding),
                    _bind(pat[2], binding),
                )
            )
    return out


# ---------------------------------------------------------------------------
# Textual mini-query format

class _PatternScanner:
    def __init__(self, text: str, line_no: int, prefixes: PrefixMap, fresh: list[int]):
        self.text = text
        self.pos = 0
        self.line = line_no
        self.prefixes = prefixes
        self.fresh = fresh

    def error(self, message: str) -> QuerySyntaxError:
        return QuerySyntaxError(f"line {self.line}: {message}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def token_end(self) -> int:
        end = self.pos
        while end < len(self.text) and not self.text[end].isspace():
            end += 1
        return end

    def scan_term(self, position: str) -> Term | Var:
        self.skip_ws()
        ch = self.text[self.pos] if self.pos < len(self.text) else ""
        if ch == "?":
            end = self.token_end()
            name = self.text[self.pos + 1:end]
            if not name:
                raise self.error("empty variable name")
            self.pos = end
            return Var(name)
        if self.text.startswith("_:", self.pos):
            end = self.token_end()
            name = self.text[self.pos + 2:end]
            if not name:
                raise self.error("empty blank label")
            self.pos = end
            return Var(name, blank=True)
        if self.text.startswith("[]", self.pos):
            self.pos += 2
            self.fresh[0] += 1
            return Var(f"anon{self.fresh[0]}", blank=True)
        if ch == "<":
            end = self.text.find(">", self.pos)
            if end < 0:
                raise self.error("unterminated IRI")
            text = self.text[self.pos + 1:end]
            self.pos = end + 1
            return iri(text)
        if ch == '"':
            return self.scan_literal(position)
        end = self.token_end()
        token = self.text[self.pos:end]
        if not token:
            raise self.error(f"missing {position}")
        self.pos = end
        if token == "a":
            return RDF_TYPE
        try:
            return self.prefixes.expand(token)
        except ValueError as exc:
            raise self.error(str(exc)) from None

    def scan_literal(self, position: str) -> Term:
        if position != "object":
            raise self.error("literals are only allowed in object position")
        self.pos += 1
        out: list[str] = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated string literal")
            ch = self.text[self.pos]
            self.pos += 1
            if ch == '"':
                break
            if ch == "\\":
                if self.pos >= len(self.text):
                    raise self.error("dangling escape")
                nxt = self.text[self.pos]
                self.pos += 1
                table = {"n": "\n", "r": "\r", "t": "\t", '"': '"', "\\": "\\"}
                if nxt not in table:
                    raise self.error(f"unknown escape: \\{nxt}")
                out.append(table[nxt])
            else:
                out.append(ch)
        lex = "".join(out)
        if self.text.startswith("@", self.pos):
            self.pos += 1
            end = self.token_end()
            tag = self.text[self.pos:end]
            self.pos = end
            return literal(lex, language=tag)
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            if self.text.startswith("<", self.pos):
                end = self.text.find(">", self.pos)
                if end < 0:
                    raise self.error("unterminated datatype IRI")
                datatype = self.text[self.pos + 1:end]
                self.pos = end + 1
            else:
                end = self.token_end()
                datatype = self.prefixes.resolve(self.text[self.pos:end])
                self.pos = end
            return literal(lex, datatype)
        return literal(lex)


def _parse_pattern_line(
    line: str, line_no: int, prefixes: PrefixMap, fresh: list[int]
) -> Pattern:
    sc = _PatternScanner(line, line_no, prefixes, fresh)
    s = sc.scan_term("subject")
    p = sc.scan_term("predicate")
    o = sc.scan_term("object")
    if isinstance(s, Term) and s.is_literal():
        raise sc.error("literal cannot be a subject")
    if isinstance(p, Term) and not p.is_iri():
        raise sc.error("predicate must be an IRI")
    if isinstance(p, Var) and p.blank:
        raise sc.error("predicate cannot be a blank variable")
    trailing = line[sc.pos:].strip()
    if trailing not in ("", "."):
        raise sc.error(f"trailing content: {trailing!r}")
    return (s, p, o)


def parse_query(text: str, prefixes: PrefixMap) -> Query:
    """Parse the textual mini-query format into a Query."""
    lines = [
        (no, ln.strip())
        for no, ln in enumerate(text.splitlines(), 1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise QuerySyntaxError("empty query")
    fresh = [0]
    first_no, first = lines[0]
    if first.lower().startswith("select"):
        names = []
        for token in first[len("select"):].split():
            if not token.startswith("?"):
                raise QuerySyntaxError(f"line {first_no}: projection must list ?variables")
            names.append(token[1:])
        if not names:
            raise QuerySyntaxError(f"line {first_no}: empty projection")
        patterns = tuple(
            _parse_pattern_line(ln, no, prefixes, fresh) for no, ln in lines[1:]
        )
        if not patterns:
            raise QuerySyntaxError("query has no patterns")
        return Query("select", patterns, projection=tuple(names))
    if first.lower() == "construct":
        try:
            split = next(i for i, (_, ln) in enumerate(lines) if ln.lower() == "where")
        except StopIteration:
            raise QuerySyntaxError("construct query needs a 'where' line") from None
        template = tuple(
            _parse_pattern_line(ln, no, prefixes, fresh) for no, ln in lines[1:split]
        )
        patterns = tuple(
            _parse_pattern_line(ln, no, prefixes, fresh) for no, ln in lines[split + 1:]
        )
        if not template or not patterns:
            raise QuerySyntaxError("construct query needs template and where patterns")
        return Query("construct", patterns, template=template)
    patterns = tuple(_parse_pattern_line(ln, no, prefixes, fresh) for no, ln in lines)
    names = sorted({v.name for v in _pattern_vars(patterns) if not v.blank})
    if not names:
        raise QuerySyntaxError("query binds no named variables")
    return Query("select", patterns, projection=tuple(names))


def run_query(store: TripleStore, query: Query):
    if query.kind == "select":
        return select(store, query.patterns, list(query.projection))
    return construct(store, query.patterns, query.template)


# ---------------------------------------------------------------------------
# Navigation helpers

def fuzzy_lookup(store: TripleStore, name: str, k: int = 5) -> list[tuple[str, float]]:
    """Top-k labeled entities by edit-distance score against ``name``.

    Scores use the alignment formula over normalized label forms; ties
    break toward the lexicographically smaller IRI. Ingest mirrors all
    source names under rdfs:label, so scanning labels covers them all.
    """
    probe = " ".join(normalize_label(name)) or name.lower()
    best: dict[str, float] = {}
    for t in store.match(p=RDFS_LABEL):
        if t.object.kind != "literal":
            continue
        subject = t.subject.ntriples() if t.subject.is_blank() else t.subject.value
        form = " ".join(normalize_label(t.object.value)) or t.object.value.lower()
        score = similarity(probe, form)
        if score > best.get(subject, -1.0):
            best[subject] = score
    ranked = sorted(best.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def _require_known(store: TripleStore, term: Term) -> None:
    if not store.match(s=term) and not store.match(o=term):
        raise UnknownEntityError(f"entity not in graph: {term.ntriples()}")


def lineage(store: TripleStore, taxon: Term) -> list[Term]:
    """Ancestors by transitive subClassOf, ordered leaf to root."""
    _require_known(store, taxon)
    out: list[Term] = []
    seen = {taxon}
    frontier = [taxon]
    while frontier:
        parents: set[Term] = set()
        for node in frontier:
            parents.update(store.objects(node, RDFS_SUBCLASSOF))
        parents -= seen
        frontier = sorted(parents, key=Term.ntriples)
        out.extend(frontier)
        seen.update(parents)
    return out


def siblings(store: TripleStore, taxon: Term) -> list[Term]:
    """Other direct children of the taxon's direct parents."""
    _require_known(store, taxon)
    out: set[Term] = set()
    for parent in store.objects(taxon, RDFS_SUBCLASSOF):
        out.update(store.subjects(RDFS_SUBCLASSOF, parent))
    out.discard(taxon)
    return sorted(out, key=Term.ntriples)
