"""The graded Lie algebra L_n of W_n and the maps phi / epsilon.

L_n has basis ``x^L d_k`` with the same keys ``(k, index)`` as the group basis
B. It sits inside the Witt algebra, whose coefficient ring is truncated by
``x_i^p = 0``; a product of monomials that overflows an exponent vanishes.
This differs from the group side, where ``x_i^p = x_i``.
"""

from functools import lru_cache

from .grammar import format_monomial, parse_lie_terms
from .linalg import echelon, left_nullspace, reduce_vector
from .polyring import DimensionError, exponent_index, exponent_vector
from .structure import SaturatedSubgroup, key_pdeg, lower_central_term


@lru_cache(maxsize=None)
def basis_bracket(params, a, b):
    """[a, b] of two basis keys as ``(key, coeff)``, or None when zero."""
    (k, i), (j, t) = a, b
    if j == k:
        return None
    if j > k:
        res = basis_bracket(params, b, a)
        return None if res is None else (res[0], -res[1] % params.p)
    p = params.p
    lam = list(exponent_vector(i, p, k - 1))
    theta = exponent_vector(t, p, j - 1)
    coeff = lam[j - 1] % p
    if not coeff:
        return None
    lam[j - 1] -= 1
    for v, e in enumerate(theta):
        lam[v] += e
        if lam[v] >= p:
            return None
    return (k, exponent_index(lam, p)), coeff


class LieElement:
    """Finite F_p-combination of basis elements ``x^L d_k``."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms=None):
        p = params.p
        clean = {}
        for key, c in (terms or {}).items():
            if not 1 <= key[0] <= params.n or not 0 <= key[1] < p ** (key[0] - 1):
                raise ValueError(f"{key} is not a basis key of L_{params.n}")
            c = (clean.get(key, 0) + c) % p
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.params = params
        self.terms = clean

    @classmethod
    def basis(cls, params, key, coeff=1):
        return cls(params, {key: coeff})

    @classmethod
    def zero(cls, params):
        return cls(params)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, frozenset(self.terms.items())))

    def _check(self, other):
        if self.params != other.params:
            raise DimensionError(f"parameter mismatch: {self.params} vs {other.params}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return LieElement(self.params, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LieElement(self.params, {key: v * c for key, v in self.terms.items()})

    def __str__(self):
        return render_lie(self)

    def __repr__(self):
        return f"LieElement(p={self.params.p}, n={self.params.n}, '{self}')"

    def vector(self):
        return [self.terms.get(key, 0) for key in self.params.basis_keys()]


def bracket(a, b):
    """Bilinear extension of the basis bracket."""
    a._check(b)
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            res = basis_bracket(a.params, ka, kb)
            if res:
                key, c = res
                out[key] = out.get(key, 0) + ca * cb * c
    return LieElement(a.params, out)


def parse_lie(text, params):
    out = LieElement.zero(params)
    for k, f in parse_lie_terms(text, params.p, params.n):
        out = out + LieElement(params, {(k, i): c for i, c in f.index_terms()})
    return out


def render_lie(x):
    if not x.terms:
        return "0"
    parts = []
    for key in sorted(x.terms, reverse=True):
        k, i = key
        c = x.terms[key]
        body = format_monomial(i, x.params.p, k - 1, c)
        parts.append(f"d{k}" if body == "1" else f"{body}d{k}")
    return " + ".join(parts)


class HomogeneousSubring:
    """Span of a subset of the basis, closed under the bracket."""

    __slots__ = ("params", "basis")

    def __init__(self, params, basis, check=True):
        self.params = params
        self.basis = frozenset(basis)
        if check:
            valid = set(params.basis_keys())
            bad = [key for key in self.basis if key not in valid]
            if bad:
                raise ValueError(f"not basis elements of L_{params.n}: {bad}")
            for a in self.basis:
                for b in self.basis:
                    res = basis_bracket(params, a, b)
                    if res and res[0] not in self.basis:
                        raise ValueError(f"span of {sorted(self.basis)} is not closed under the bracket")

    @classmethod
    def zero(cls, params):
        return cls(params, (), check=False)

    @classmethod
    def whole(cls, params):
        return cls(params, params.basis_keys(), check=False)

    @property
    def dim(self):
        return len(self.basis)

    def __contains__(self, x):
        if isinstance(x, LieElement):
            return all(key in self.basis for key in x.terms)
        return x in self.basis

    def __eq__(self, other):
        if not isinstance(other, HomogeneousSubring):
            return NotImplemented
        return self.params == other.params and self.basis == other.basis

    def __hash__(self):
        return hash((self.params, self.basis))

    def __le__(self, other):
        return self.params == other.params and self.basis <= other.basis

    def __lt__(self, other):
        return self.params == other.params and self.basis < other.basis

    def __repr__(self):
        body = ", ".join(
            render_lie(LieElement.basis(self.params, k)) for k in sorted(self.basis, reverse=True)
        )
        return f"HomogeneousSubring(p={self.params.p}, n={self.params.n}, [{body}])"

    def is_ideal(self):
        for a in self.basis:
            for b in self.params.basis_keys():
                res = basis_bracket(self.params, a, b)
                if res and res[0] not in self.basis:
                    return False
        return True


def is_ideal(sub):
    return sub.is_ideal()


def _layer_leads(w):
    return [
        ((k, f.leading()[0]), f.leading()[1]) for k, f in enumerate(w.layers, start=1) if f
    ]


def phi_graded(w, i):
    """phi_i(w): the layer leading terms of w if w has depth exactly i, else 0."""
    params = w.params
    leads = _layer_leads(w)
    if not leads:
        return LieElement.zero(params)
    top = max(key_pdeg(params, key) for key, _ in leads)
    if top != params.top - i:
        return LieElement.zero(params)
    return LieElement(params, {key: c for key, c in leads if key_pdeg(params, key) == top})


def phi(w):
    """phi(w) = phi_i(w) for the depth i of w; the identity maps to 0."""
    params = w.params
    leads = _layer_leads(w)
    if not leads:
        return LieElement.zero(params)
    return phi_graded(w, params.top - max(key_pdeg(params, key) for key, _ in leads))


def subring_image(s):
    """S^phi: span of phi of the monic basis monomials of S."""
    return HomogeneousSubring(s.params, s.basis, check=False)


def epsilon(sub):
    """Saturated subgroup generated by x^L D_k for the basis x^L d_k."""
    return SaturatedSubgroup(sub.params, sub.basis, check=False)


def lie_power_by_brackets(params, i):
    """L^i by iterated brackets: L^(j+1) is spanned by [L^j, L]."""
    if i < 1:
        raise ValueError("Lie powers are indexed from 1")
    current = set(params.basis_keys())
    for _ in range(i - 1):
        nxt = set()
        for a in current:
            for b in params.basis_keys():
                res = basis_bracket(params, a, b)
                if res:
                    nxt.add(res[0])
        current = nxt
        if not current:
            break
    return HomogeneousSubring(params, current, check=False)


def lie_power(params, i):
    """L^i, the image of gamma_i(W_n); cross-checked against brackets in tests."""
    if i < 1:
        raise ValueError("Lie powers are indexed from 1")
    return subring_image(lower_central_term(params, i))


def lie_center_term(params, m):
    """xi_m: basis elements of p-degree below m."""
    if m < 0:
        raise ValueError("upper central series is indexed from 0")
    return HomogeneousSubring(
        params, [key for key in params.basis_keys() if key_pdeg(params, key) < m], check=False
    )


def center_series_linear(params):
    """Z_0, Z_1, ... of L_n by linear algebra, as echelon bases.

    Z_(m+1) = {v : [v, b] in Z_m for all basis b}, solved as the left kernel of
    v -> ([v, b] mod Z_m)_b. No homogeneity is assumed.
    """
    p = params.p
    keys = params.basis_keys()
    dim = len(keys)
    units = [LieElement.basis(params, key) for key in keys]
    series = [[]]
    while len(series[-1]) < dim:
        prev = series[-1]
        rows = []
        for u in units:
            row = []
            for b in units:
                row += reduce_vector(bracket(u, b).vector(), prev, p)
            rows.append(row)
        kernel = left_nullspace(rows, p)
        nxt = echelon(kernel, p)
        if len(nxt) == len(prev):
            break
        series.append(nxt)
    return series


def subring_rows(sub):
    """Echelon basis of a homogeneous subring, comparable with
    ``center_series_linear`` output."""
    keys = sub.params.basis_keys()
    rows = [[1 if key == k else 0 for key in keys] for k in sub.basis]
    return echelon(rows, sub.params.p)


def idealizer(sub):
    """Basis elements b with [b, u] in F_p U for every u in the basis U."""
    params = sub.params
    out = []
    for b in params.basis_keys():
        ok = True
        for u in sub.basis:
            res = basis_bracket(params, b, u)
            if res and res[0] not in sub.basis:
                ok = False
                break
        if ok:
            out.append(b)
    return HomogeneousSubring(params, out, check=False)


def regular_subring(params):
    """T = span{d_1, ..., d_n}."""
    return HomogeneousSubring(params, [(k, 0) for k in range(1, params.n + 1)], check=False)
