"""Line-oriented N-Triples reading and writing.

One triple per line, terminated by `` .``. IRIs sit in angle brackets,
blank nodes are ``_:label``, literals are double-quoted with ``\\"``,
``\\\\``, ``\\n``, ``\\r``, ``\\t`` escapes plus ``\\uXXXX`` for other
control characters. Serialization sorts lines so equal stores always
produce byte-identical text.
"""

from .graph import PrefixMap, Term, Triple, TripleStore, blank, iri, literal

_UNESCAPES = {
    't': '\t', 'b': '\b', 'n': '\n', 'r': '\r', 'f': '\f',
    '"': '"', "'": "'", '\\': '\\',
}


class NTriplesParseError(ValueError):
    """Parse failure; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class _LineScanner:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line = line_no

    def error(self, message: str) -> NTriplesParseError:
        return NTriplesParseError(message, self.line)

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> int:
        start = self.pos
        while not self.eof() and self.text[self.pos] in " \t":
            self.pos += 1
        return self.pos - start

    def take_until(self, stop: str, what: str) -> str:
        end = self.text.find(stop, self.pos)
        if end < 0:
            raise self.error(f"unterminated {what}")
        chunk = self.text[self.pos:end]
        self.pos = end + 1
        return chunk

    def scan_iri(self) -> Term:
        self.pos += 1  # consume '<'
        text = self.take_until(">", "IRI")
        try:
            return iri(text)
        except ValueError as exc:
            raise self.error(str(exc)) from None

    def scan_blank(self) -> Term:
        self.pos += 2  # consume '_:'
        start = self.pos
        while not self.eof() and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        label = self.text[start:self.pos]
        try:
            return blank(label)
        except ValueError as exc:
            raise self.error(str(exc)) from None

    def scan_string(self) -> str:
        self.pos += 1  # consume '"'
        out: list[str] = []
        while True:
            if self.eof():
                raise self.error("unterminated string literal")
            ch = self.text[self.pos]
            self.pos += 1
            if ch == '"':
                return "".join(out)
            if ch != "\\":
                out.append(ch)
                continue
            if self.eof():
                raise self.error("dangling escape")
            esc = self.text[self.pos]
            self.pos += 1
            if esc in _UNESCAPES:
                out.append(_UNESCAPES[esc])
            elif esc == "u" or esc == "U":
                width = 4 if esc == "u" else 8
                hexpart = self.text[self.pos:self.pos + width]
                if len(hexpart) < width:
                    raise self.error(f"truncated \\{esc} escape")
                try:
                    out.append(chr(int(hexpart, 16)))
                except ValueError:
                    raise self.error(f"bad \\{esc} escape: {hexpart!r}") from None
                self.pos += width
            else:
                raise self.error(f"unknown escape: \\{esc}")

    def scan_literal(self) -> Term:
        lex = self.scan_string()
        datatype = None
        language = None
        if self.peek() == "@":
            self.pos += 1
            start = self.pos
            while not self.eof() and (self.text[self.pos].isalnum() or self.text[self.pos] == "-"):
                self.pos += 1
            language = self.text[start:self.pos]
        elif self.text.startswith("^^", self.pos):
            self.pos += 2
            if self.peek() != "<":
                raise self.error("datatype must be an IRI")
            datatype = self.scan_iri().value
        try:
            return literal(lex, datatype, language)
        except ValueError as exc:
            raise self.error(str(exc)) from None

    def scan_subject(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.scan_iri()
        if self.text.startswith("_:", self.pos):
            return self.scan_blank()
        raise self.error("subject must be an IRI or blank node")

    def scan_object(self) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.scan_iri()
        if ch == '"':
            return self.scan_literal()
        if self.text.startswith("_:", self.pos):
            return self.scan_blank()
        raise self.error("object must be an IRI, literal, or blank node")


def parse_triple_line(line: str, line_no: int) -> Triple:
    sc = _LineScanner(line, line_no)
    sc.skip_ws()
    subject = sc.scan_subject()
    if sc.skip_ws() == 0:
        raise sc.error("expected whitespace after subject")
    if sc.peek() != "<":
        raise sc.error("predicate must be an IRI")
    predicate = sc.scan_iri()
    if sc.skip_ws() == 0:
        raise sc.error("expected whitespace after predicate")
    obj = sc.scan_object()
    sc.skip_ws()
    if sc.peek() != ".":
        raise sc.error("missing terminal '.'")
    sc.pos += 1
    sc.skip_ws()
    if not sc.eof():
        raise sc.error("trailing content after '.'")
    try:
        return Triple(subject, predicate, obj)
    except ValueError as exc:
        raise sc.error(str(exc)) from None


def parse(text: str, prefixes: PrefixMap | None = None) -> TripleStore:
    """Parse N-Triples text into a fresh store.

    Blank lines and ``#`` comment lines are skipped. Errors report the
    1-based line number.
    """
    store = TripleStore(prefixes)
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        store.add(parse_triple_line(line, line_no))
    return store


def serialize(store: TripleStore) -> str:
    """Render the store as canonically sorted N-Triples text."""
    lines = sorted(t.ntriples() for t in store)
    return "".join(line + "\n" for line in lines)


def read_file(path, prefixes: PrefixMap | None = None) -> TripleStore:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), prefixes)


def write_file(store: TripleStore, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(store))
