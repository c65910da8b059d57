"""Row reduction over F_p on dense integer lists."""


def echelon(rows, p):
    """Reduced row echelon basis of the span of ``rows``."""
    basis = []  # (pivot, row)
    for row in rows:
        v = reduce_vector(row, basis, p)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = pow(v[piv], -1, p)
        v = [x * inv % p for x in v]
        reduced = []
        for q, r in basis:
            c = r[piv]
            if c:
                r = [(a - c * b) % p for a, b in zip(r, v)]
            reduced.append((q, r))
        basis = reduced + [(piv, v)]
    basis.sort()
    return basis


def reduce_vector(v, basis, p):
    v = list(v)
    for piv, row in basis:
        c = v[piv]
        if c:
            v = [(a - c * b) % p for a, b in zip(v, row)]
    return v


def span_key(rows, p):
    """Hashable canonical form of a subspace."""
    return tuple(tuple(r) for _, r in echelon(rows, p))


def left_nullspace(rows, p):
    """Basis of {c : sum_a c_a rows[a] = 0}."""
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    aug = [list(r) + [1 if i == a else 0 for i in range(m)] for a, r in enumerate(rows)]
    ech = echelon(aug, p)
    return [r[width:] for piv, r in ech if piv >= width]
