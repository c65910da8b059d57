import json
import random

import pytest

from wreathlie import oracle
from wreathlie.polyring import DimensionError, LayeringError, PrimeParams, TruncPoly
from wreathlie.wreath import (
    WreathElement,
    act,
    commutator,
    compose,
    inverse,
    multiply,
    parse_element,
    permutation_json,
    random_element,
    render_element,
    to_permutation,
)


def el(text, p=3, n=2):
    return parse_element(text, PrimeParams(p, n))


def test_act_examples(w32):
    assert act(el("D1"), (0, 0)) == (2, 0)
    assert act(WreathElement.identity(w32), (1, 2)) == (1, 2)
    assert act(el("(x1)D2"), (1, 1)) == (1, 0)


def test_act_rejects_bad_point():
    with pytest.raises(ValueError):
        act(el("D1"), (0, 3))


def test_permutation_of_single_level():
    assert to_permutation(el("D1", 3, 1)) == (2, 0, 1)


def test_identity_permutation(w33):
    assert to_permutation(WreathElement.identity(w33)) == tuple(range(27))


def test_top_translation_has_order_p(w33):
    g = bytes(to_permutation(WreathElement.monomial(w33, 3, 0)))
    power = g
    for _ in range(2):
        power = oracle.compose(power, g)
    assert power == oracle.identity(27) and g != oracle.identity(27)


def test_multiply_identity_and_same_layer(w32):
    w = el("(2x1^2)D2 * D1")
    assert multiply(w, WreathElement.identity(w32)) == w
    f = TruncPoly(3, 1, {1: 1})
    g = TruncPoly(3, 1, {2: 2, 0: 1})
    prod = multiply(WreathElement.single(w32, 2, f), WreathElement.single(w32, 2, g))
    assert prod == WreathElement.single(w32, 2, f + g)


def test_products_differ_by_commutator():
    a, b = el("D1"), el("(x1)D2")
    assert multiply(b, a) == multiply(multiply(a, b), commutator(b, a))
    assert commutator(b, a) == el("D2")


def test_inverse_examples(w32):
    f = TruncPoly(3, 1, {1: 1, 0: 2})
    assert inverse(WreathElement.single(w32, 2, f)) == WreathElement.single(w32, 2, -f)
    assert inverse(WreathElement.identity(w32)).is_identity()


def test_commutator_examples():
    assert commutator(el("(x1)D2"), el("D1")) == el("D2")
    assert commutator(el("(x1^2)D2"), el("D1")) == el("(2x1 + 1)D2")
    assert commutator(el("(x1)D2"), el("(x1^2 + 2)D2")).is_identity()


@pytest.mark.parametrize("pn", [(3, 2), (3, 3), (5, 2)])
def test_homomorphism(pn):
    params = PrimeParams(*pn)
    rng = random.Random(7)
    for _ in range(150):
        u, v = random_element(params, rng), random_element(params, rng)
        assert to_permutation(multiply(u, v)) == compose(to_permutation(u), to_permutation(v))
        assert multiply(u, inverse(u)).is_identity()
        assert multiply(inverse(u), u).is_identity()


def test_associativity(w33):
    rng = random.Random(3)
    for _ in range(30):
        a, b, c = (random_element(w33, rng) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_group_order_by_closure(w32):
    assert len(oracle.whole_group(w32)) == 81


def test_parse_render_round_trip(w33):
    rng = random.Random(11)
    for _ in range(30):
        w = random_element(w33, rng)
        assert parse_element(render_element(w), w33) == w
    assert render_element(WreathElement.identity(w33)) == "1"
    assert parse_element("1", w33).is_identity()


def test_parse_errors():
    with pytest.raises(LayeringError):
        el("(x2)D2")


def test_parameter_mismatch():
    with pytest.raises(DimensionError):
        multiply(el("D1"), el("D1", 3, 3))


def test_permutation_json():
    data = json.loads(permutation_json(el("D1", 3, 1)))
    assert data == {"p": 3, "n": 1, "images": [2, 0, 1]}


def test_size_guard():
    with pytest.raises(ValueError):
        to_permutation(WreathElement.identity(PrimeParams(11, 6)))
