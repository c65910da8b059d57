"""Brute-force permutation-group oracle.

Everything here works on explicit permutations of the p^n points, encoded as
``bytes`` image tables (so p^n <= 256), and never touches the symbolic normal
form beyond converting generators. It is the referee for the symbolic code.
"""

from . import kernels
from .wreath import WreathElement, canonical_basis, to_permutation

MAX_DEGREE = 256


def perm_bytes(w):
    degree = w.params.p ** w.params.n
    if degree > MAX_DEGREE:
        raise ValueError(f"oracle needs p^n <= {MAX_DEGREE}, got {degree}")
    return bytes(to_permutation(w))


def identity(degree):
    return bytes(range(degree))


def compose(u, v):
    return kernels.compose(u, v)


def invert(u):
    out = bytearray(len(u))
    for i, j in enumerate(u):
        out[j] = i
    return bytes(out)


def conjugate(x, g):
    """x^g = g^-1 x g."""
    return compose(compose(invert(g), x), g)


def commutator(a, b):
    return compose(compose(invert(a), invert(b)), compose(a, b))


def generate(gens, degree):
    return kernels.generate_subgroup(list(gens), degree)


def basis_perms(params):
    """Permutations of the monic monomials, keyed by (layer, index)."""
    return {
        m.key: perm_bytes(WreathElement.monomial(params, m.k, m.index))
        for m in canonical_basis(params)
    }


def whole_group(params):
    return generate(basis_perms(params).values(), params.p**params.n)


def normal_closure(elements, conjugators, degree):
    """Smallest subgroup containing ``elements`` and closed under conjugation
    by ``conjugators`` (generators of the ambient group)."""
    gens = list(elements)
    group = generate(gens, degree)
    todo = list(gens)
    while todo:
        x = todo.pop()
        for c in conjugators:
            y = conjugate(x, c)
            if y not in group:
                gens.append(y)
                todo.append(y)
                group = generate(gens, degree)
    return group


def is_normal(group, conjugators):
    return all(conjugate(x, c) in group for x in group for c in conjugators)


def center_series(group, gens):
    """Upper central series of an explicit group: Z_(i+1) is the set of z
    with [z, g] in Z_i for every generator g."""
    degree = len(next(iter(group)))
    series = [{identity(degree)}]
    while len(series[-1]) < len(group):
        prev = series[-1]
        nxt = {z for z in group if all(commutator(z, g) in prev for g in gens)}
        if nxt == prev:
            break
        series.append(nxt)
    return series


def lower_central_series(group, gens):
    """gamma_1 = G, gamma_(i+1) = normal closure of [gamma_i, G]."""
    degree = len(next(iter(group)))
    series = [set(group)]
    while len(series[-1]) > 1:
        prev = series[-1]
        comms = {commutator(x, g) for x in prev for g in gens}
        nxt = normal_closure(comms, gens, degree)
        series.append(nxt)
    return series


def normalizer(subgroup, subgroup_gens, group):
    return {g for g in group if all(conjugate(s, g) in subgroup for s in subgroup_gens)}


def subgroup_from_keys(params, keys, perms=None):
    perms = perms or basis_perms(params)
    return generate([perms[k] for k in keys], params.p**params.n)
