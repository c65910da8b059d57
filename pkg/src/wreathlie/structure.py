"""p-degree, saturated subgroups, central series and normal closures of W_n.

A basis monomial ``x^L D_k`` is identified by its key ``(k, index)`` where
``index`` is the base-p encoding of L (see ``polyring``). A saturated subgroup
is the span of a set of such keys.
"""

from functools import lru_cache
from typing import NamedTuple

from .grammar import format_layer, parse_layer_factors
from .polyring import PrimeParams, TruncPoly
from .wreath import MonomialElement, WreathElement, commutator, layer_commutator


class UndefinedDegreeError(ValueError):
    """The identity (or the zero polynomial) has no p-degree."""


def key_pdeg(params, key):
    k, index = key
    return index + params.mu(k)


def pdeg(m, params):
    """p-degree of a monomial element (or of a key ``(k, index)``)."""
    if isinstance(m, WreathElement):
        mons = m.monomials()
        if len(mons) != 1:
            if not mons:
                raise UndefinedDegreeError("the identity has no p-degree")
            raise ValueError("pdeg of a general element: use element_pdeg")
        m = mons[0]
    if isinstance(m, MonomialElement):
        if m.coeff % params.p == 0:
            raise UndefinedDegreeError("the identity has no p-degree")
        m = m.key
    return key_pdeg(params, m)


def leading_term(f, k, params):
    """Leading term of ``f D_k`` as a ``MonomialElement``."""
    if not f:
        raise UndefinedDegreeError("the zero polynomial has no leading term")
    index, coeff = f.leading()
    return MonomialElement(k, index, coeff)


def poly_pdeg(f, k, params):
    return key_pdeg(params, leading_term(f, k, params).key)


def element_pdeg(w):
    """Largest p-degree over all monomials of all layers."""
    mons = w.monomials()
    if not mons:
        raise UndefinedDegreeError("the identity has no p-degree")
    return max(key_pdeg(w.params, m.key) for m in mons)


def depth(w):
    """The i with w in gamma_i(W_n) minus gamma_(i+1)(W_n)."""
    return w.params.top - element_pdeg(w)


def render_key(params, key):
    k, index = key
    return format_layer(TruncPoly.monomial(params.p, k - 1, index), k)


def parse_key(text, params):
    factors = parse_layer_factors(text, params.p, params.n)
    if len(factors) != 1 or len(factors[0][1]) != 1 or factors[0][1].leading()[1] != 1:
        raise ValueError(f"not a monic monomial: {text!r}")
    k, f = factors[0]
    return (k, f.leading()[0])


@lru_cache(maxsize=None)
def monomial_commutator(params, a, b):
    """[a, b] for monic basis keys, as ``(layer, poly)``."""
    p = params.p
    (k, i), (l, j) = a, b
    f = TruncPoly.monomial(p, k - 1, i)
    g = TruncPoly.monomial(p, l - 1, j)
    return layer_commutator(k, f, l, g)


class SaturatedSubgroup:
    """A saturated subgroup of W_n, given by its monic monomial basis.

    With ``check=True`` the basis keys are validated and the span is checked
    to be closed (``[a, b]`` in the span for all basis pairs), which is
    exactly the condition for the layer-wise span to be a subgroup.
    """

    __slots__ = ("params", "basis")

    def __init__(self, params, basis, check=True):
        self.params = params
        self.basis = frozenset(basis)
        if check:
            valid = set(params.basis_keys())
            bad = [key for key in self.basis if key not in valid]
            if bad:
                raise ValueError(f"not basis monomials of W_{params.n}: {bad}")
            bad_pair = self.closure_failure()
            if bad_pair:
                a, b = bad_pair
                raise ValueError(
                    f"span is not a subgroup: [{render_key(params, a)}, {render_key(params, b)}] escapes it"
                )

    @classmethod
    def trivial(cls, params):
        return cls(params, (), check=False)

    @classmethod
    def whole(cls, params):
        return cls(params, params.basis_keys(), check=False)

    def closure_failure(self):
        for a in self.basis:
            for b in self.basis:
                if a[0] > b[0] and not self.contains_layer_poly(*monomial_commutator(self.params, a, b)):
                    return a, b
        return None

    @property
    def log_order(self):
        return len(self.basis)

    @property
    def order(self):
        return self.params.p ** len(self.basis)

    def layer(self, k):
        return sorted(key for key in self.basis if key[0] == k)

    def contains_key(self, key):
        return key in self.basis

    def contains_layer_poly(self, k, f):
        return all((k, i) in self.basis for i, _ in f.index_terms())

    def __contains__(self, item):
        if isinstance(item, MonomialElement):
            return item.coeff % self.params.p == 0 or item.key in self.basis
        if isinstance(item, tuple):
            return item in self.basis
        if isinstance(item, WreathElement):
            return all(m.key in self.basis for m in item.monomials())
        raise TypeError(f"cannot test membership of {type(item).__name__}")

    def __eq__(self, other):
        if not isinstance(other, SaturatedSubgroup):
            return NotImplemented
        return self.params == other.params and self.basis == other.basis

    def __hash__(self):
        return hash((self.params, self.basis))

    def __le__(self, other):
        return self.params == other.params and self.basis <= other.basis

    def __lt__(self, other):
        return self.params == other.params and self.basis < other.basis

    def __and__(self, other):
        return SaturatedSubgroup(self.params, self.basis & other.basis, check=False)

    def intersect_layers(self, layers):
        """S intersected with the product of the given base subgroups."""
        layers = set(layers)
        return SaturatedSubgroup(
            self.params, [key for key in self.basis if key[0] in layers], check=False
        )

    def sorted_basis(self):
        """Keys in decreasing layer, then decreasing p-degree."""
        return sorted(self.basis, reverse=True)

    def monomials(self):
        return [MonomialElement(k, i) for k, i in self.sorted_basis()]

    def __repr__(self):
        body = ", ".join(render_key(self.params, key) for key in self.sorted_basis())
        return f"SaturatedSubgroup(p={self.params.p}, n={self.params.n}, [{body}])"

    def to_text(self):
        lines = [f"p={self.params.p} n={self.params.n}"]
        lines += [render_key(self.params, key) for key in self.sorted_basis()]
        return "\n".join(lines) + "\n"


def read_subgroup(text, check=True):
    """Parse the subgroup file format: ``p=<p> n=<n>`` then one monic
    monomial per line. Blank lines and ``#`` comments are ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty subgroup file")
    fields = dict(tok.split("=", 1) for tok in lines[0].split() if "=" in tok)
    try:
        params = PrimeParams(int(fields["p"]), int(fields["n"]))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad header {lines[0]!r}: expected 'p=<p> n=<n>'") from exc
    keys = [parse_key(ln, params) for ln in lines[1:]]
    return SaturatedSubgroup(params, keys, check=check)


def span_of(params, predicate):
    return SaturatedSubgroup(
        params, [key for key in params.basis_keys() if predicate(key)], check=False
    )


def lower_central_term(params, i):
    """gamma_i(W_n): every basis monomial of p-degree at most p^(n-1) - i."""
    if i < 1:
        raise ValueError("lower central series is indexed from 1")
    bound = params.top - i
    return span_of(params, lambda key: key_pdeg(params, key) <= bound)


def upper_central_term(params, i):
    """Z_i(W_n) read off the lower series: Z_i = gamma_(p^(n-1) - i + 1)."""
    if i < 0:
        raise ValueError("upper central series is indexed from 0")
    if i == 0:
        return SaturatedSubgroup.trivial(params)
    if i >= params.top:
        return SaturatedSubgroup.whole(params)
    return lower_central_term(params, params.top - i + 1)


def upper_central_series_direct(params):
    """Z_0, Z_1, ... computed center by center, independently of p-degrees.

    Z_(j+1) is the set of basis monomials m with [m, g] in Z_j for every g in
    the basis, where the commutator is evaluated with the general group law.
    """
    gens = [WreathElement.monomial(params, k, i) for k, i in params.basis_keys()]
    series = [SaturatedSubgroup.trivial(params)]
    while len(series[-1].basis) < params.basis_size:
        prev = series[-1]
        nxt = [
            key
            for key, m in zip(params.basis_keys(), gens)
            if all(commutator(m, g) in prev for g in gens)
        ]
        nxt = SaturatedSubgroup(params, nxt, check=False)
        if nxt == prev:
            break
        series.append(nxt)
    return series


def is_normal(s):
    """True iff [x, g] lies in S for every basis x of S and g of W_n."""
    params = s.params
    for a in s.basis:
        for b in params.basis_keys():
            if not s.contains_layer_poly(*monomial_commutator(params, a, b)):
                return False
    return True


def normal_closure_monomial(params, m):
    """Normal closure of a monic monomial ``x^L D_k``: the monomials of
    B_k up to its p-degree, plus gamma_(p^(k-1)+1) within B_(k+1)...B_n."""
    if isinstance(m, MonomialElement):
        if m.coeff % params.p == 0:
            raise UndefinedDegreeError("the identity has no normal closure of interest")
        m = m.key
    k, _ = m
    t = key_pdeg(params, m)
    upper = params.mu(k) - 1
    return span_of(
        params,
        lambda key: (key[0] == k and key_pdeg(params, key) <= t)
        or (key[0] > k and key_pdeg(params, key) <= upper),
    )


def normal_closure_poly(params, k, f):
    """Normal closure of ``f D_k``: same as for its leading monomial."""
    if not f:
        raise UndefinedDegreeError("the identity has no normal closure of interest")
    return normal_closure_monomial(params, leading_term(f, k, params).key)


def normal_closure(w):
    """Normal closure of a single-layer element."""
    support = w.support()
    if not support:
        raise UndefinedDegreeError("the identity has no normal closure of interest")
    if len(support) != 1:
        raise ValueError("closed form covers single-layer elements f D_k only")
    k = support[0]
    return normal_closure_poly(w.params, k, w.layer(k))


class GammaBound(NamedTuple):
    contains: bool
    exponent: int
    bound: int

    @property
    def holds(self):
        return self.contains and self.exponent <= self.bound


def contains_gamma_bound(n_sub, k):
    """Check that a normal N inside B_k...B_n (and not inside B_(k+1)...B_n)
    contains gamma_(p^(k-1)+1) with log_p index at most (n-k+1) p^(k-1)."""
    params = n_sub.params
    layers = {key[0] for key in n_sub.basis}
    if not layers or min(layers) != k:
        raise ValueError(f"N must lie in B_{k}...B_n and meet B_{k}")
    gamma = lower_central_term(params, params.p ** (k - 1) + 1)
    contains = gamma <= n_sub
    exponent = n_sub.log_order - gamma.log_order
    return GammaBound(contains, exponent, (params.n - k + 1) * params.p ** (k - 1))


def descent_witness(params, key):
    """Basis monomial w with pdeg([x^L D_k, w]) = pdeg(x^L D_k) - 1, or None
    for constants. Uses D_1 when x_1 divides, otherwise the monomial
    x_1^(p-1)...x_(j-1)^(p-1) D_j for the smallest variable x_j present."""
    from .polyring import exponent_vector

    k, index = key
    exps = exponent_vector(index, params.p, k - 1)
    nz = [j for j, e in enumerate(exps, start=1) if e]
    if not nz:
        return None
    j = nz[0]
    return (j, params.p ** (j - 1) - 1)
