"""Invariant checks run by ``wreathlie verify``.

Each check returns a ``CheckResult``. Sizes are bounded by guards so that the
default run finishes quickly; ``exhaustive=True`` lifts the sampling where the
full enumeration is still feasible.
"""

import random
from dataclasses import dataclass
from itertools import product

from . import oracle
from .chains import count_bounded_partitions, count_partitions, cross_validate
from .liealg import (
    HomogeneousSubring,
    LieElement,
    bracket,
    center_series_linear,
    lie_center_term,
    lie_power,
    lie_power_by_brackets,
    subring_rows,
)
from .polyring import TruncPoly
from .structure import (
    SaturatedSubgroup,
    contains_gamma_bound,
    is_normal,
    normal_closure_monomial,
    upper_central_series_direct,
    upper_central_term,
)
from .wreath import (
    WreathElement,
    commutator,
    compose,
    inverse,
    layer_commutator,
    multiply,
    random_element,
    to_permutation,
)

ORACLE_POINTS = 256
SUBSET_LIMIT = 13
JACOBI_LIMIT = 200_000


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    skipped: bool = False

    def line(self):
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"{status} {self.name}: {self.detail}"


def check_oracle(params, rng, exhaustive):
    if params.p**params.n > ORACLE_POINTS:
        return CheckResult("oracle", True, f"p^n > {ORACLE_POINTS}", skipped=True)
    keys = params.basis_keys()
    mons = [WreathElement.monomial(params, *k) for k in keys]
    perms = {m: to_permutation(m) for m in mons}
    bad = 0
    for a in mons:
        for b in mons:
            pa, pb = perms[a], perms[b]
            if to_permutation(multiply(a, b)) != compose(pa, pb):
                bad += 1
            ob = oracle.commutator(bytes(pa), bytes(pb))
            if bytes(to_permutation(commutator(a, b))) != ob:
                bad += 1
    samples = 1000 if exhaustive else 200
    for _ in range(samples):
        u, v = random_element(params, rng), random_element(params, rng)
        if to_permutation(multiply(u, v)) != compose(to_permutation(u), to_permutation(v)):
            bad += 1
        if not multiply(u, inverse(u)).is_identity():
            bad += 1
    return CheckResult(
        "oracle", bad == 0, f"{len(mons) ** 2} monomial pairs, {samples} random pairs, {bad} mismatches"
    )


def check_taylor(params, rng, exhaustive):
    p = params.p
    bad = total = 0
    for m in range(1, params.n):
        for idx in range(p**m):
            f = TruncPoly.monomial(p, m, idx)
            for i in range(1, m + 1):
                hs = [TruncPoly.monomial(p, i - 1, j, c) for j in range(p ** (i - 1)) for c in (1, p - 1)]
                if not exhaustive:
                    hs = hs[:4]
                for h in hs:
                    total += 1
                    if f.shift(i, h) != f.taylor_shift(i, h):
                        bad += 1
    return CheckResult("taylor", bad == 0, f"{total} shifts, {bad} mismatches")


def check_commutator_formula(params, rng, exhaustive):
    keys = params.basis_keys()
    bad = 0
    for a, b in product(keys, keys):
        fa = TruncPoly.monomial(params.p, a[0] - 1, a[1])
        fb = TruncPoly.monomial(params.p, b[0] - 1, b[1])
        layer, poly = layer_commutator(a[0], fa, b[0], fb, taylor=True)
        expected = WreathElement.single(params, layer, poly)
        got = commutator(WreathElement.single(params, a[0], fa), WreathElement.single(params, b[0], fb))
        bad += got != expected
    return CheckResult("commutator-formula", bad == 0, f"{len(keys) ** 2} pairs, {bad} mismatches")


def check_series(params, rng, exhaustive):
    if params.basis_size > 40 and not exhaustive:
        return CheckResult("series", True, "basis too large without --exhaustive", skipped=True)
    direct = upper_central_series_direct(params)
    bad = [i for i, z in enumerate(direct) if z != upper_central_term(params, i)]
    ok = not bad and len(direct) - 1 == params.top
    return CheckResult("series", ok, f"class {len(direct) - 1}, mismatching terms {bad}")


def check_jacobi(params, rng, exhaustive):
    keys = params.basis_keys()
    units = [LieElement.basis(params, k) for k in keys]
    if len(keys) ** 3 <= JACOBI_LIMIT or exhaustive:
        triples = product(units, units, units)
        label = f"{len(keys) ** 3} triples"
    else:
        triples = [(rng.choice(units), rng.choice(units), rng.choice(units)) for _ in range(20000)]
        label = "20000 sampled triples"
    bad = 0
    for a, b, c in triples:
        if bracket(a, b) + bracket(b, a):
            bad += 1
        if bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b):
            bad += 1
    return CheckResult("jacobi", bad == 0, f"{label}, {bad} failures")


def check_lie_series(params, rng, exhaustive):
    if params.basis_size > 40 and not exhaustive:
        return CheckResult("lie-series", True, "basis too large without --exhaustive", skipped=True)
    linear = center_series_linear(params)
    bad = []
    for m, rows in enumerate(linear):
        xi = lie_center_term(params, m)
        if subring_rows(xi) != rows:
            bad.append(m)
        if m >= 1 and xi != lie_power(params, params.top - m + 1):
            bad.append(m)
    for i in range(1, params.top + 2):
        if lie_power(params, i) != lie_power_by_brackets(params, i):
            bad.append(("power", i))
    ok = not bad and len(linear) - 1 == params.top
    return CheckResult("lie-series", ok, f"{len(linear)} centre terms, mismatches {bad}")


def check_bijection(params, rng, exhaustive):
    keys = params.basis_keys()
    if len(keys) > SUBSET_LIMIT:
        return CheckResult("bijection", True, f"more than {SUBSET_LIMIT} basis elements", skipped=True)
    count = bad = 0
    for mask in range(1 << len(keys)):
        sub = [keys[i] for i in range(len(keys)) if mask >> i & 1]
        try:
            group_side = is_normal(SaturatedSubgroup(params, sub))
        except ValueError:
            group_side = False
        try:
            lie_side = HomogeneousSubring(params, sub).is_ideal()
        except ValueError:
            lie_side = False
        count += lie_side
        bad += group_side != lie_side
    return CheckResult("bijection", bad == 0, f"{count} homogeneous ideals, {bad} mismatches")


def check_closures(params, rng, exhaustive):
    if params.p**params.n > ORACLE_POINTS:
        return CheckResult("normal-closure", True, f"p^n > {ORACLE_POINTS}", skipped=True)
    perms = oracle.basis_perms(params)
    conj = list(perms.values())
    degree = params.p**params.n
    keys = params.basis_keys()
    if not exhaustive and len(keys) > 13:
        keys = rng.sample(keys, 10)
    bad = 0
    for key in keys:
        closed = normal_closure_monomial(params, key)
        brute = oracle.normal_closure([perms[key]], conj, degree)
        same = len(brute) == closed.order and all(perms[k] in brute for k in closed.basis)
        bound = contains_gamma_bound(closed, key[0])
        bad += not (same and bound.holds)
    return CheckResult("normal-closure", bad == 0, f"{len(keys)} generators, {bad} mismatches")


def check_partitions(params, rng, exhaustive):
    top = 12 if exhaustive else 8
    bad = [i for i in range(1, top + 1)
           if count_partitions(params.p, i) != count_bounded_partitions(params.p, i) - 1]
    return CheckResult("partitions", not bad, f"i = 1..{top}, mismatches {bad}")


def check_chain(params, rng, exhaustive):
    cv = cross_validate(params)
    wrong = [(s.i, s.logp_index, s.predicted) for s in cv.group.mismatches()]
    ok = cv.agree and not wrong
    steps = [s.logp_index for s in cv.group.steps if s.predicted is not None]
    return CheckResult("chain", ok, f"predicted steps {steps}, diffs {cv.diffs[:3]}, growth mismatches {wrong}")


CHECKS = [
    check_oracle,
    check_taylor,
    check_commutator_formula,
    check_series,
    check_jacobi,
    check_lie_series,
    check_bijection,
    check_closures,
    check_partitions,
    check_chain,
]


def run_all(params, seed=0, exhaustive=False):
    rng = random.Random(seed)
    return [check(params, rng, exhaustive) for check in CHECKS]
