"""Pure-Python versions of the hot kernels.

Used when the compiled ``_speedups`` extension is unavailable. Both modules
expose the same functions with the same semantics; ``wreathlie.kernels``
picks one at import time.
"""

from functools import lru_cache

BACKEND = "python"

# index-product tables above this size are not cached
_TABLE_LIMIT = 1024


def mono_index_mul(a, b, p, nvars):
    """Index of x^A * x^B reduced by x^p = x, indices written base p."""
    out = 0
    scale = 1
    for _ in range(nvars):
        e = a % p + b % p
        if e >= p:
            e -= p - 1
        out += e * scale
        scale *= p
        a //= p
        b //= p
    return out


@lru_cache(maxsize=64)
def _index_table(p, nvars):
    size = p**nvars
    return tuple(
        tuple(mono_index_mul(a, b, p, nvars) for b in range(size)) for a in range(size)
    )


def poly_mul(a, b, p, nvars):
    """Product of two sparse term tables ``{index: coeff}`` modulo p."""
    if not a or not b:
        return {}
    acc = {}
    if p**nvars <= _TABLE_LIMIT:
        table = _index_table(p, nvars)
        for ia, ca in a.items():
            row = table[ia]
            for ib, cb in b.items():
                k = row[ib]
                acc[k] = acc.get(k, 0) + ca * cb
    else:
        for ia, ca in a.items():
            for ib, cb in b.items():
                k = mono_index_mul(ia, ib, p, nvars)
                acc[k] = acc.get(k, 0) + ca * cb
    return {k: c % p for k, c in acc.items() if c % p}


def compose(u, v):
    """Permutation 'u then v' on byte-encoded image tables."""
    return u.translate(v + bytes(256 - len(v)))


def generate_subgroup(gens, degree):
    """All elements of the group generated by byte-encoded permutations."""
    identity = bytes(range(degree))
    tables = [g + bytes(256 - degree) for g in gens]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for e in frontier:
            for t in tables:
                c = e.translate(t)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen
