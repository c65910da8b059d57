"""Elements of W_n, the n-fold iterated wreath product of F_p.

An element is stored in normal form as one polynomial per layer: ``f_k`` lives
in B_k = Fun(F_p^(k-1), F_p), i.e. a truncated polynomial in x_1..x_(k-1).

Action convention: group elements act on points of F_p^n on the right, and
``u * v`` means "apply u, then v". The element with layers ``f_1..f_n`` sends

    (x_1, ..., x_n)  ->  (x_1 - f_1, x_2 - f_2(x_1), ..., x_n - f_n(x_1..x_(n-1)))

with every ``f_k`` read at the *input* point; equivalently it is the product
``f_n D_n * f_(n-1) D_(n-1) * ... * f_1 D_1``. With ``[a, b] = a^-1 b^-1 a b``
this gives ``[f D_k, g D_i] = (f(x + g e_i) - f(x)) D_k`` for i < k, which is
the Taylor-series formula checked in the tests against the permutation oracle.
"""

import json
from typing import NamedTuple

from .grammar import format_layer, parse_layer_factors
from .polyring import DimensionError, PrimeParams, TruncPoly

MAX_POINTS = 10**6


class MonomialElement(NamedTuple):
    """``coeff * x^L D_k`` with L given by its base-p index."""

    k: int
    index: int
    coeff: int = 1

    @property
    def key(self):
        return (self.k, self.index)

    def exponents(self, p):
        from .polyring import exponent_vector

        return exponent_vector(self.index, p, self.k - 1)

    def element(self, params):
        return WreathElement.monomial(params, self.k, self.index, self.coeff)


class WreathElement:
    """Immutable element of W_n in layered normal form."""

    __slots__ = ("params", "layers", "_hash")

    def __init__(self, params, layers):
        p, n = params.p, params.n
        if isinstance(layers, dict):
            layers = [layers.get(k, TruncPoly.zero(p, k - 1)) for k in range(1, n + 1)]
        layers = tuple(layers)
        if len(layers) != n:
            raise DimensionError(f"need {n} layers, got {len(layers)}")
        for k, f in enumerate(layers, start=1):
            if f.p != p or f.nvars != k - 1:
                raise DimensionError(f"layer {k} must be a polynomial in {k - 1} variables over F_{p}")
        self.params = params
        self.layers = layers
        self._hash = None

    @classmethod
    def identity(cls, params):
        return cls(params, {})

    @classmethod
    def single(cls, params, k, f):
        """The element ``f D_k`` of the base subgroup B_k."""
        if not 1 <= k <= params.n:
            raise DimensionError(f"layer {k} outside 1..{params.n}")
        if not isinstance(f, TruncPoly):
            f = TruncPoly.constant(params.p, k - 1, f)
        return cls(params, {k: f})

    @classmethod
    def monomial(cls, params, k, index, coeff=1):
        return cls.single(params, k, TruncPoly.monomial(params.p, k - 1, index, coeff))

    def layer(self, k):
        return self.layers[k - 1]

    def is_identity(self):
        return not any(self.layers)

    def support(self):
        """Layers k with a nonzero f_k."""
        return [k for k, f in enumerate(self.layers, start=1) if f]

    def monomials(self):
        """All ``MonomialElement`` terms over all layers."""
        return [
            MonomialElement(k, i, c)
            for k, f in enumerate(self.layers, start=1)
            for i, c in f.index_terms()
        ]

    def __eq__(self, other):
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.params == other.params and self.layers == other.layers

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, self.layers))
        return self._hash

    def __repr__(self):
        return f"WreathElement(p={self.params.p}, n={self.params.n}, '{self}')"

    def __str__(self):
        return render_element(self)

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return inverse(self)

    def act(self, point):
        return act(self, point)


def _images_minus(layers, upto):
    """Polynomials x_j - f_j(x_1..x_(j-1)) for j < upto, in upto-1 variables."""
    out = []
    for j in range(1, upto):
        f = layers[j - 1].lift(upto - 1)
        out.append(TruncPoly.variable(f.p, upto - 1, j) - f)
    return out


def multiply(u, v):
    """Normal form of "apply u, then v"."""
    if u.params != v.params:
        raise DimensionError(f"parameter mismatch: {u.params} vs {v.params}")
    if u.is_identity():
        return v
    if v.is_identity():
        return u
    out = []
    for k in range(1, u.params.n + 1):
        f, g = u.layers[k - 1], v.layers[k - 1]
        if g and k > 1 and any(u.layers[: k - 1]):
            g = g.substitute(_images_minus(u.layers, k))
        out.append(f + g)
    return WreathElement(u.params, out)


def inverse(w):
    p, n = w.params.p, w.params.n
    # coordinates of the preimage, X_j = y_j + f_j(X_1..X_(j-1)), each in j variables
    pre = []
    out = []
    for k in range(1, n + 1):
        f = w.layers[k - 1]
        images = [x.lift(k - 1) for x in pre]
        g = f.substitute(images) if k > 1 else f
        out.append(-g)
        if k < n:
            pre.append(TruncPoly.variable(p, k, k) + g.lift(k))
    return WreathElement(w.params, out)


def commutator(a, b):
    """[a, b] = a^-1 b^-1 a b."""
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b))


def layer_commutator(k, f, i, g, taylor=False):
    """[f D_k, g D_i] for single-layer elements, as ``(layer, poly)``.

    The result lies in the higher of the two layers; ``taylor`` selects the
    derivative expansion instead of direct substitution.
    """
    if k == i:
        return k, TruncPoly.zero(f.p, k - 1)
    if k > i:
        return k, (f.taylor_shift(i, g) if taylor else f.shift(i, g))
    return i, -(g.taylor_shift(k, f) if taylor else g.shift(k, f))


def _point_index(point, p):
    idx = 0
    for x in point:
        idx = idx * p + x
    return idx


def _index_point(idx, p, n):
    out = []
    for _ in range(n):
        idx, d = divmod(idx, p)
        out.append(d)
    return tuple(reversed(out))


def act(w, point):
    p, n = w.params.p, w.params.n
    if len(point) != n or any(not 0 <= x < p for x in point):
        raise ValueError(f"point must have {n} coordinates in 0..{p - 1}")
    return tuple(
        (point[k - 1] - w.layers[k - 1].evaluate(point[: k - 1])) % p for k in range(1, n + 1)
    )


def to_permutation(w):
    """Images of all points, indexed lexicographically with x_1 most significant."""
    p, n = w.params.p, w.params.n
    size = p**n
    if size > MAX_POINTS:
        raise ValueError(f"p^n = {size} exceeds the oracle limit {MAX_POINTS}")
    # f_k only reads x_1..x_(k-1), which are the leading digits of the index
    tables = []
    for k in range(1, n + 1):
        f = w.layers[k - 1]
        tables.append([f.evaluate(_index_point(j, p, k - 1)) for j in range(p ** (k - 1))])
    images = []
    for idx in range(size):
        point = _index_point(idx, p, n)
        y = 0
        for k in range(1, n + 1):
            prefix = idx // p ** (n - k + 1)
            y = y * p + (point[k - 1] - tables[k - 1][prefix]) % p
        images.append(y)
    return tuple(images)


def compose(u, v):
    """Permutation image tables, ``u`` applied first."""
    return tuple(v[x] for x in u)


def permutation_json(w):
    return json.dumps({"p": w.params.p, "n": w.params.n, "images": list(to_permutation(w))})


def canonical_basis(params):
    """The monic power monomials x^L D_k forming the basis B of W_n."""
    return [MonomialElement(k, i) for k, i in params.basis_keys()]


def regular_subgroup_generators(params):
    """D_1, ..., D_n generating the canonical regular subgroup T."""
    return [WreathElement.monomial(params, k, 0) for k in range(1, params.n + 1)]


def random_element(params, rng):
    p = params.p
    layers = []
    for k in range(1, params.n + 1):
        size = p ** (k - 1)
        layers.append(TruncPoly(p, k - 1, {i: rng.randrange(p) for i in range(size)}))
    return WreathElement(params, layers)


def parse_element(text, params):
    """Parse ``(<poly>)D<k> * ...``; factors multiply left to right."""
    w = WreathElement.identity(params)
    for k, f in parse_layer_factors(text, params.p, params.n):
        w = multiply(w, WreathElement.single(params, k, f))
    return w


def render_element(w):
    parts = [format_layer(w.layers[k - 1], k) for k in range(w.params.n, 0, -1) if w.layers[k - 1]]
    return " * ".join(parts) if parts else "1"


__all__ = [
    "MonomialElement",
    "PrimeParams",
    "WreathElement",
    "act",
    "canonical_basis",
    "commutator",
    "compose",
    "inverse",
    "layer_commutator",
    "multiply",
    "parse_element",
    "permutation_json",
    "random_element",
    "regular_subgroup_generators",
    "render_element",
    "to_permutation",
]
