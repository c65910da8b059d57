"""Truncated polynomial rings F_p[x_1..x_m]/(x_i^p - x_i).

A polynomial in this ring is the same thing as a function F_p^m -> F_p. Terms
are stored sparsely as ``{index: coeff}`` where the index of ``x^L`` is the
base-p number ``l_m p^(m-1) + ... + l_2 p + l_1``; this is also the p-degree
of the monomial, so sorting by index is sorting by p-degree.
"""

from functools import reduce
from math import factorial

from . import kernels


class DimensionError(ValueError):
    """Operands live in rings with different numbers of variables."""


class LayeringError(ValueError):
    """A polynomial reads a variable it is not allowed to depend on."""


def is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def check_prime(p):
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    return p


class PrimeParams:
    """The pair (p, n) fixing W_n, the Sylow p-subgroup of Sym(p^n)."""

    __slots__ = ("p", "n")

    def __init__(self, p, n):
        check_prime(p)
        if not isinstance(n, int) or n < 1:
            raise ValueError("n must be a positive integer")
        self.p = p
        self.n = n

    def __eq__(self, other):
        return isinstance(other, PrimeParams) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash((self.p, self.n))

    def __repr__(self):
        return f"PrimeParams(p={self.p}, n={self.n})"

    @property
    def top(self):
        """p^(n-1): the nilpotency class of W_n."""
        return self.p ** (self.n - 1)

    def mu(self, k):
        """Layer offset p^(n-1) - p^(k-1) added to the p-degree in layer k."""
        return self.top - self.p ** (k - 1)

    def layer_size(self, k):
        return self.p ** (k - 1)

    @property
    def basis_size(self):
        return (self.p**self.n - 1) // (self.p - 1)

    def basis_keys(self):
        """All (layer, index) pairs, layer-major."""
        return [(k, i) for k in range(1, self.n + 1) for i in range(self.p ** (k - 1))]


def exponent_vector(index, p, nvars):
    """Exponent tuple (l_1, ..., l_nvars) of the monomial with this index."""
    out = []
    for _ in range(nvars):
        index, d = divmod(index, p)
        out.append(d)
    return tuple(out)


def exponent_index(exps, p):
    if any(e < 0 or e >= p for e in exps):
        raise ValueError(f"exponents must lie in 0..{p - 1}: {exps}")
    return sum(e * p**i for i, e in enumerate(exps))


def weight(exps):
    """wt(L) = sum of i * l_i, i.e. the integer L partitions."""
    return sum((i + 1) * e for i, e in enumerate(exps))


def reduce_exponent(e, p):
    # x^e with x^p = x: e >= p folds back into 1..p-1
    if e == 0:
        return 0
    return (e - 1) % (p - 1) + 1


def partitions_in_layer(p, k):
    """Exponent vectors of P_p(k): every multiplicity at most p-1, parts < k,
    listed in increasing p-degree."""
    return [exponent_vector(i, p, k - 1) for i in range(p ** (k - 1))]


class TruncPoly:
    """An element of F_p[x_1..x_nvars]/(x_i^p - x_i), immutable."""

    __slots__ = ("p", "nvars", "_terms", "_hash")

    def __init__(self, p, nvars, terms=None):
        self.p = p
        self.nvars = nvars
        clean = {}
        size = p**nvars
        for key, c in (terms or {}).items():
            if isinstance(key, tuple):
                if len(key) != nvars:
                    raise DimensionError(f"exponent vector {key} has length != {nvars}")
                key = exponent_index(tuple(reduce_exponent(e, p) for e in key), p)
            elif not 0 <= key < size:
                raise ValueError(f"monomial index {key} out of range for {nvars} variables")
            c = (clean.get(key, 0) + c) % p
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, p, nvars, terms):
        obj = cls.__new__(cls)
        obj.p = p
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, p, nvars):
        return cls._raw(p, nvars, {})

    @classmethod
    def constant(cls, p, nvars, c):
        c %= p
        return cls._raw(p, nvars, {0: c} if c else {})

    @classmethod
    def monomial(cls, p, nvars, exps, coeff=1):
        """``coeff * x^exps``; ``exps`` is an exponent tuple or an index."""
        return cls(p, nvars, {exps: coeff})

    @classmethod
    def variable(cls, p, nvars, i):
        if not 1 <= i <= nvars:
            raise DimensionError(f"x{i} does not exist in {nvars} variables")
        return cls._raw(p, nvars, {p ** (i - 1): 1})

    def index_terms(self):
        """``(index, coeff)`` pairs in decreasing p-degree."""
        return sorted(self._terms.items(), reverse=True)

    @property
    def terms(self):
        """``{exponent tuple: coeff}`` in decreasing p-degree."""
        return {
            exponent_vector(i, self.p, self.nvars): c for i, c in self.index_terms()
        }

    def coefficient(self, exps):
        if isinstance(exps, tuple):
            exps = exponent_index(exps, self.p)
        return self._terms.get(exps, 0)

    def leading(self):
        """(index, coeff) of the term with largest p-degree."""
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        i = max(self._terms)
        return i, self._terms[i]

    def used_variables(self):
        used = set()
        for i in self._terms:
            for v, e in enumerate(exponent_vector(i, self.p, self.nvars), start=1):
                if e:
                    used.add(v)
        return used

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other % self.p} if other % self.p else {})
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return (self.p, self.nvars, self._terms) == (other.p, other.nvars, other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"TruncPoly(p={self.p}, nvars={self.nvars}, '{self}')"

    def __str__(self):
        from .grammar import format_poly

        return format_poly(self)

    def _check(self, other):
        if self.p != other.p or self.nvars != other.nvars:
            raise DimensionError(
                f"ring mismatch: (p={self.p}, nvars={self.nvars}) vs (p={other.p}, nvars={other.nvars})"
            )

    def _coerce(self, other):
        if isinstance(other, int):
            return TruncPoly.constant(self.p, self.nvars, other)
        if isinstance(other, TruncPoly):
            self._check(other)
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.p
        out = dict(self._terms)
        for k, c in other._terms.items():
            c = (out.get(k, 0) + c) % p
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return TruncPoly._raw(p, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return TruncPoly._raw(p, self.nvars, {k: p - c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c %= self.p
        if not c:
            return TruncPoly.zero(self.p, self.nvars)
        return TruncPoly._raw(
            self.p, self.nvars, {k: v * c % self.p for k, v in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, TruncPoly):
            return NotImplemented
        self._check(other)
        return TruncPoly._raw(
            self.p, self.nvars, kernels.poly_mul(self._terms, other._terms, self.p, self.nvars)
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not defined")
        result = TruncPoly.constant(self.p, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def lift(self, nvars):
        """The same function viewed in a ring with more variables."""
        if nvars < self.nvars:
            if any(i >= self.p**nvars for i in self._terms):
                raise LayeringError(f"{self} uses variables beyond x{nvars}")
        return TruncPoly._raw(self.p, nvars, dict(self._terms))

    def partial(self, i, order=1):
        """Formal ``order``-th derivative in x_i."""
        if not 1 <= i <= self.nvars:
            raise DimensionError(f"x{i} does not exist in {self.nvars} variables")
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        p = self.p
        step = p ** (i - 1)
        out = {}
        for k, c in self._terms.items():
            e = (k // step) % p
            if e < order:
                continue
            f = 1
            for t in range(order):
                f *= e - t
            f %= p
            if f:
                nk = k - order * step
                out[nk] = (out.get(nk, 0) + c * f) % p
        return TruncPoly._raw(p, self.nvars, {k: c for k, c in out.items() if c})

    def _check_shift(self, i, h):
        if not 1 <= i <= self.nvars:
            raise DimensionError(f"x{i} does not exist in {self.nvars} variables")
        if h.p != self.p:
            raise DimensionError("coefficient fields differ")
        bad = [v for v in h.used_variables() if v >= i]
        if bad:
            raise LayeringError(f"shift of x{i} by a polynomial reading x{min(bad)}")
        return h.lift(self.nvars)

    def shift(self, i, h):
        """f(x + h e_i) - f(x), by substituting x_i + h for x_i."""
        h = self._check_shift(i, h)
        images = [TruncPoly.variable(self.p, self.nvars, v) for v in range(1, self.nvars + 1)]
        images[i - 1] = images[i - 1] + h
        return self.substitute(images) - self

    def taylor_shift(self, i, h):
        """f(x + h e_i) - f(x) as the sum over j of (1/j!) d^j f/dx_i^j h^j."""
        h = self._check_shift(i, h)
        p = self.p
        total = TruncPoly.zero(p, self.nvars)
        hj = TruncPoly.constant(p, self.nvars, 1)
        for j in range(1, p):
            hj = hj * h
            d = self.partial(i, j)
            if d:
                total = total + (d * hj).scale(pow(factorial(j), -1, p))
        return total

    def substitute(self, images):
        """Replace x_j by ``images[j-1]``; all images share one target ring."""
        if len(images) != self.nvars:
            raise DimensionError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        p = self.p
        target = images[0]
        powers = [[TruncPoly.constant(p, target.nvars, 1), img] for img in images]
        total = TruncPoly.zero(p, target.nvars)
        for k, c in self._terms.items():
            exps = exponent_vector(k, p, self.nvars)
            factors = []
            for j, e in enumerate(exps):
                if e:
                    pw = powers[j]
                    while len(pw) <= e:
                        pw.append(pw[-1] * pw[1])
                    factors.append(pw[e])
            term = reduce(lambda a, b: a * b, factors, TruncPoly.constant(p, target.nvars, 1))
            total = total + term.scale(c)
        return total

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        p = self.p
        total = 0
        for k, c in self._terms.items():
            v = c
            for x, e in zip(point, exponent_vector(k, p, self.nvars)):
                if e:
                    v = v * pow(x, e, p)
            total += v
        return total % p


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def partial(a, i, order=1):
    return a.partial(i, order)


def shift(a, i, h):
    return a.shift(i, h)


def evaluate(a, point):
    return a.evaluate(point)
