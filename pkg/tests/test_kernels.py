import random

import pytest

from wreathlie import kernels
from wreathlie._ext import _pure

try:
    from wreathlie._ext import _speedups
except ImportError:  # extension not built
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="compiled extension not built")


def random_poly(rng, p, nvars, density=0.5):
    return {i: rng.randrange(1, p) for i in range(p**nvars) if rng.random() < density}


def test_backend_reported():
    assert kernels.BACKEND in {"cython", "python"}


@pytest.mark.parametrize("p,nvars", [(3, 1), (3, 3), (5, 2), (7, 2)])
def test_pure_poly_mul_matches_schoolbook(p, nvars):
    rng = random.Random(p * 10 + nvars)
    for _ in range(20):
        a, b = random_poly(rng, p, nvars), random_poly(rng, p, nvars)
        expected = {}
        for i, c in a.items():
            for j, d in b.items():
                k = _pure.mono_index_mul(i, j, p, nvars)
                expected[k] = (expected.get(k, 0) + c * d) % p
        expected = {k: c for k, c in expected.items() if c}
        assert _pure.poly_mul(a, b, p, nvars) == expected


@needs_ext
@pytest.mark.parametrize("p,nvars", [(3, 2), (3, 4), (5, 3), (7, 2)])
def test_backends_agree_on_poly_mul(p, nvars):
    rng = random.Random(nvars)
    for _ in range(30):
        a, b = random_poly(rng, p, nvars), random_poly(rng, p, nvars)
        assert _speedups.poly_mul(a, b, p, nvars) == _pure.poly_mul(a, b, p, nvars)
        i, j = rng.randrange(p**nvars), rng.randrange(p**nvars)
        assert _speedups.mono_index_mul(i, j, p, nvars) == _pure.mono_index_mul(i, j, p, nvars)


@needs_ext
def test_backends_agree_on_permutations():
    rng = random.Random(1)
    for degree in (3, 9, 27, 125):
        u = list(range(degree))
        v = list(range(degree))
        rng.shuffle(u)
        rng.shuffle(v)
        u, v = bytes(u), bytes(v)
        assert _speedups.compose(u, v) == _pure.compose(u, v)


@needs_ext
def test_backends_agree_on_generation():
    cycle = bytes([1, 2, 0, 3, 4, 5, 6, 7, 8])
    swap = bytes([0, 1, 2, 4, 5, 3, 6, 7, 8])
    gens = [cycle, swap]
    assert _speedups.generate_subgroup(gens, 9) == _pure.generate_subgroup(gens, 9)
    assert len(_pure.generate_subgroup(gens, 9)) == 9


def test_compose_applies_left_first():
    u = bytes([1, 2, 0])
    v = bytes([0, 2, 1])
    assert _pure.compose(u, v) == bytes([v[u[i]] for i in range(3)])
