"""Text syntax shared by the parsers and renderers.

Polynomials::

    poly    := ["-"] term (("+" | "-") term)*
    term    := INT factor* | factor+
    factor  := "x" INT ["^" INT]

Group elements (a product of layer factors, applied left to right)::

    element := "1" | gfactor ("*" gfactor)*
    gfactor := "(" poly ")" "D" INT | "D" INT

Lie elements::

    lie     := "0" | ["-"] lterm (("+" | "-") lterm)*
    lterm   := [INT] factor* "d" INT

Whitespace is ignored everywhere. Example: ``(2x1^2x2 + x1 + 1)D3 * D1``.
"""

from .polyring import LayeringError, TruncPoly, exponent_vector, reduce_exponent


class ParseError(ValueError):
    """Malformed input; ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            got = self.peek() or "end of input"
            raise ParseError(f"expected '{ch}', got '{got}'", self.pos)

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            got = self.peek() or "end of input"
            raise ParseError(f"expected an integer, got '{got}'", start)
        return int(self.text[start : self.pos])

    def at_end(self):
        return self.peek() == ""

    def finish(self):
        if not self.at_end():
            raise ParseError(f"unexpected '{self.peek()}'", self.pos)


def _factors(r):
    """x-factors as a list of (variable, exponent, position)."""
    out = []
    while r.peek() == "x":
        pos = r.pos
        r.pos += 1
        var = r.integer()
        if var < 1:
            raise ParseError("variables are numbered from x1", pos)
        exp = r.integer() if r.take("^") else 1
        out.append((var, exp, pos))
    return out


def _poly_terms(r, stop):
    """Signed terms up to (not including) a character in ``stop``."""
    terms = []
    sign = -1 if r.take("-") else 1
    while True:
        r.skip()
        pos = r.pos
        has_int = r.peek().isdigit()
        coeff = r.integer() if has_int else 1
        factors = _factors(r)
        if not has_int and not factors:
            raise ParseError("expected a term", pos)
        terms.append((sign * coeff, factors))
        if r.take("+"):
            sign = 1
        elif r.take("-"):
            sign = -1
        else:
            break
    if r.peek() not in stop:
        raise ParseError(f"unexpected '{r.peek()}'", r.pos)
    return terms


def _build_poly(terms, p, nvars, what):
    table = {}
    for coeff, factors in terms:
        exps = [0] * nvars
        for var, e, pos in factors:
            if var > nvars:
                raise LayeringError(f"x{var} is not allowed in {what} (position {pos})")
            exps[var - 1] += e
        key = tuple(reduce_exponent(e, p) for e in exps)
        table[key] = table.get(key, 0) + coeff
    return TruncPoly(p, nvars, table)


def parse_poly(text, p, nvars):
    r = _Reader(text)
    terms = _poly_terms(r, {""})
    r.finish()
    return _build_poly(terms, p, nvars, f"a polynomial in {nvars} variables")


def parse_layer_factors(text, p, n):
    """``[(k, f)]`` for each factor of an element, in written order."""
    r = _Reader(text)
    if r.peek() == "1":
        r.pos += 1
        r.finish()
        return []
    out = []
    while True:
        r.skip()
        start = r.pos
        if r.take("("):
            terms = _poly_terms(r, {")"})
            r.expect(")")
        else:
            terms = [(1, [])]
        if not r.take("D"):
            raise ParseError("expected 'D<k>'", r.pos)
        kpos = r.pos
        k = r.integer()
        if not 1 <= k <= n:
            raise ParseError(f"layer D{k} outside 1..{n}", kpos)
        out.append((k, _build_poly(terms, p, k - 1, f"layer {k} (factor at position {start})")))
        if not r.take("*"):
            break
    r.finish()
    return out


def parse_lie_terms(text, p, n):
    """``[(k, f)]`` with f the coefficient polynomial of d<k>."""
    r = _Reader(text)
    if r.peek() == "0":
        save = r.pos
        r.pos += 1
        if r.at_end():
            return []
        r.pos = save
    out = []
    sign = -1 if r.take("-") else 1
    while True:
        r.skip()
        coeff = r.integer() if r.peek().isdigit() else 1
        factors = _factors(r)
        if not r.take("d"):
            raise ParseError("expected 'd<k>'", r.pos)
        kpos = r.pos
        k = r.integer()
        if not 1 <= k <= n:
            raise ParseError(f"derivation d{k} outside 1..{n}", kpos)
        out.append((k, _build_poly([(sign * coeff, factors)], p, k - 1, f"the coefficient of d{k}")))
        if r.take("+"):
            sign = 1
        elif r.take("-"):
            sign = -1
        else:
            break
    r.finish()
    return out


def format_monomial(index, p, nvars, coeff=1):
    exps = exponent_vector(index, p, nvars)
    body = "".join(
        f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in enumerate(exps, start=1) if e
    )
    if not body:
        return str(coeff)
    return body if coeff == 1 else f"{coeff}{body}"


def format_poly(f):
    if not f:
        return "0"
    return " + ".join(format_monomial(i, f.p, f.nvars, c) for i, c in f.index_terms())


def format_layer(f, k, suffix="D"):
    if f == 1:
        return f"{suffix}{k}"
    return f"({format_poly(f)}){suffix}{k}"
