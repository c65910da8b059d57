"""Acceptance criteria, one check per criterion, all at exact equality.

Run with ``pytest tests/test_acceptance.py -v`` (a PASS/FAIL summary is
printed at the end) or directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from itertools import product

import pytest

from wreathlie import oracle
from wreathlie.chains import count_bounded_partitions, count_partitions, cross_validate, normalizer_chain, q_table
from wreathlie.liealg import (
    HomogeneousSubring,
    LieElement,
    bracket,
    center_series_linear,
    lie_center_term,
    lie_power,
    phi,
    phi_graded,
    subring_rows,
)
from wreathlie.polyring import PrimeParams, TruncPoly
from wreathlie.structure import (
    SaturatedSubgroup,
    contains_gamma_bound,
    depth,
    is_normal,
    lower_central_term,
    normal_closure_monomial,
    upper_central_series_direct,
)
from wreathlie.wreath import (
    WreathElement,
    commutator,
    compose,
    inverse,
    multiply,
    random_element,
    to_permutation,
)


def _growth(p, n, steps):
    q = q_table(p, n + 1).q
    assert all(count_partitions(p, i) == count_bounded_partitions(p, i) - 1 for i in range(1, n + 2))
    report = normalizer_chain(PrimeParams(p, n))
    got = [s.logp_index for s in report.steps if 1 <= s.i <= steps]
    want = [q[i + 1] for i in range(1, steps + 1)]
    return got == want, got, want


def criterion_1():
    start = time.perf_counter()
    ok35, got35, want35 = _growth(3, 5, 4)
    ok53, got53, want53 = _growth(5, 3, 2)
    elapsed = time.perf_counter() - start
    ok = ok35 and ok53 and elapsed < 60
    return ok, f"(3,5) {got35} vs {want35}; (5,3) {got53} vs {want53}; {elapsed:.1f}s"


def criterion_2():
    cv = cross_validate(PrimeParams(3, 4))
    return cv.agree, f"(3,4) {len(cv.group.steps)} steps, diffs {cv.diffs}"


def _upper_vs_lower(params, offset):
    direct = upper_central_series_direct(params)
    top = params.top
    bad = [i for i in range(1, top + 1)
           if i >= len(direct) or direct[i] != lower_central_term(params, top - i + offset)]
    return len(direct) - 1 == top and not bad, bad


def criterion_3():
    start = time.perf_counter()
    details, ok = [], True
    for pn in [(3, 2), (3, 3)]:
        good, bad = _upper_vs_lower(PrimeParams(*pn), 1)
        ok &= good
        details.append(f"{pn} mismatches {bad}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 10, f"Z_i = gamma_(top-i+1): {'; '.join(details)}; {elapsed:.1f}s"


def criterion_4():
    bad = 0
    counted = []
    for pn in [(3, 2), (3, 3)]:
        params = PrimeParams(*pn)
        mons = [WreathElement.monomial(params, *k) for k in params.basis_keys()]
        perms = [bytes(to_permutation(m)) for m in mons]
        for (a, pa), (b, pb) in product(zip(mons, perms), repeat=2):
            bad += bytes(to_permutation(multiply(a, b))) != oracle.compose(pa, pb)
            bad += bytes(to_permutation(commutator(a, b))) != oracle.commutator(pa, pb)
        counted.append(f"{pn}: {len(mons) ** 2} monomial pairs")
    rng = random.Random(2024)
    for pn in [(3, 3), (5, 2)]:
        params = PrimeParams(*pn)
        for _ in range(1000):
            u, v = random_element(params, rng), random_element(params, rng)
            pu, pv = to_permutation(u), to_permutation(v)
            bad += to_permutation(multiply(u, v)) != compose(pu, pv)
            pc = oracle.commutator(bytes(pu), bytes(pv))
            bad += bytes(to_permutation(commutator(u, v))) != pc
            bad += not multiply(u, inverse(u)).is_identity()
        counted.append(f"{pn}: 1000 random pairs")
    return bad == 0, f"{', '.join(counted)}; {bad} mismatches"


def criterion_5():
    total = bad = 0
    p = 3
    for nvars in range(1, 4):
        for idx in range(p**nvars):
            f = TruncPoly.monomial(p, nvars, idx)
            for i in range(1, nvars + 1):
                for hidx in range(p ** (i - 1)):
                    for c in range(1, p):
                        h = TruncPoly.monomial(p, i - 1, hidx, c)
                        total += 1
                        bad += f.shift(i, h) != f.taylor_shift(i, h)
    rng = random.Random(5)
    for _ in range(300):
        nvars = rng.randint(1, 3)
        i = rng.randint(1, nvars)
        f = TruncPoly(5, nvars, {rng.randrange(5**nvars): rng.randrange(1, 5) for _ in range(4)})
        h = TruncPoly(5, i - 1, {rng.randrange(5 ** (i - 1)): rng.randrange(1, 5) for _ in range(3)})
        total += 1
        bad += f.shift(i, h) != f.taylor_shift(i, h)
    return bad == 0, f"{total} shifts (p=3 exhaustive, p=5 random), {bad} mismatches"


def _closure_pairs():
    out = []
    for pn in [(3, 2), (3, 3)]:
        params = PrimeParams(*pn)
        perms = oracle.basis_perms(params)
        conj = list(perms.values())
        for key in params.basis_keys():
            closed = normal_closure_monomial(params, key)
            brute = oracle.normal_closure([perms[key]], conj, params.p**params.n)
            out.append((params, key, closed, brute == oracle.subgroup_from_keys(params, closed.basis, perms)))
    return out


_CLOSURES = []


def closures():
    if not _CLOSURES:
        _CLOSURES.extend(_closure_pairs())
    return _CLOSURES


def criterion_6():
    rows = closures()
    bad = [(params.n, key) for params, key, _, same in rows if not same]
    n32 = sum(1 for params, *_ in rows if params.n == 2)
    return not bad, f"{n32} generators at (3,2), {len(rows) - n32} at (3,3); mismatches {bad}"


def criterion_7():
    bad = []
    for params, key, closed, _ in closures():
        bound = contains_gamma_bound(closed, key[0])
        if not bound.holds:
            bad.append((params.n, key, bound))
    return not bad, f"{len(closures())} closures; violations {bad}"


def criterion_8():
    start = time.perf_counter()
    bad = 0
    triples = 0
    for pn in [(3, 3), (3, 4)]:
        params = PrimeParams(*pn)
        units = [LieElement.basis(params, k) for k in params.basis_keys()]
        for a, b in product(units, repeat=2):
            bad += bool(bracket(a, b) + bracket(b, a))
            ab = bracket(a, b)
            for c in units:
                triples += 1
                bad += bool(bracket(ab, c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b))
    series_bad = []
    for pn in [(3, 2), (3, 3), (5, 2)]:
        params = PrimeParams(*pn)
        linear = center_series_linear(params)
        if len(linear) - 1 != params.top:
            series_bad.append((pn, "length"))
        for m in range(params.top + 1):
            xi = lie_center_term(params, m)
            if m >= len(linear) or subring_rows(xi) != linear[m]:
                series_bad.append((pn, m, "centre"))
            if m >= 1 and xi != lie_power(params, params.top - m + 1):
                series_bad.append((pn, m, "power"))
    elapsed = time.perf_counter() - start
    ok = bad == 0 and not series_bad and elapsed < 30
    return ok, (f"{triples} triples, {bad} identity failures; xi_m = Z_m = L^(top-m+1) "
                f"mismatches {series_bad}; {elapsed:.1f}s")


def criterion_9():
    params = PrimeParams(3, 2)
    keys = params.basis_keys()
    ideals, bad = 0, 0
    for mask in range(1 << len(keys)):
        sub = [keys[i] for i in range(len(keys)) if mask >> i & 1]
        try:
            lie_side = HomogeneousSubring(params, sub).is_ideal()
        except ValueError:
            lie_side = False
        try:
            group_side = is_normal(SaturatedSubgroup(params, sub))
        except ValueError:
            group_side = False
        ideals += lie_side
        bad += lie_side != group_side
    # order is inclusion of bases on both sides, so the bijection is a poset map
    return bad == 0 and ideals > 0, f"{ideals} ideals = normal saturated subgroups, {bad} mismatches"


def criterion_10():
    params = PrimeParams(3, 3)
    pairs = bad = exact = 0
    for a, b in product(params.basis_keys(), repeat=2):
        ma, mb = WreathElement.monomial(params, *a), WreathElement.monomial(params, *b)
        c = commutator(ma, mb)
        if c.is_identity():
            continue
        pairs += 1
        i, j = depth(ma), depth(mb)
        bad += phi_graded(c, i + j) != bracket(phi(ma), phi(mb))
        exact += depth(c) == i + j
    return bad == 0, f"{pairs} nonvanishing pairs, {bad} mismatches ({exact} land exactly at depth i+j)"


CRITERIA = [
    ("criterion 1 normalizer growth", criterion_1),
    ("criterion 2 chain correspondence", criterion_2),
    ("criterion 3 series coincidence", criterion_3),
    ("criterion 4 oracle equivalence", criterion_4),
    ("criterion 5 Taylor commutator", criterion_5),
    ("criterion 6 normal closure", criterion_6),
    ("criterion 7 index bound", criterion_7),
    ("criterion 8 Lie structure", criterion_8),
    ("criterion 9 phi/epsilon bijection", criterion_9),
    ("criterion 10 intertwining", criterion_10),
]


@pytest.mark.parametrize("label,check", CRITERIA, ids=[f"c{i}" for i in range(1, 11)])
def test_criterion(label, check, record):
    passed, detail = check()
    record(label, passed, detail)


@pytest.mark.xfail(strict=True, reason="upper term Z_i sits one step further down: gamma_(top-i+1)")
def test_upper_series_literal_index():
    ok, bad = _upper_vs_lower(PrimeParams(3, 2), 0)
    assert ok, f"Z_i != gamma_(top-i) at i = {bad}"


@pytest.mark.xfail(strict=True, reason="Lie centre xi_m equals L^(top-m+1), not L^(top-m)")
def test_lie_centre_literal_index():
    params = PrimeParams(3, 2)
    assert all(lie_center_term(params, m) == lie_power(params, params.top - m)
               for m in range(1, params.top))


if __name__ == "__main__":
    failures = 0
    for label, check in CRITERIA:
        passed, detail = check()
        failures += not passed
        print(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
    sys.exit(1 if failures else 0)
