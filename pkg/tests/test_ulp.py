from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galois_tukey.ulp import (
    UlpFunction,
    add,
    clipped_excess,
    common_window,
    compose,
    eventually_above,
    pointwise,
    shift_values,
)


@st.composite
def ulps(draw, max_increment=4, max_value=9, stream=None):
    p = draw(st.integers(1, 4))
    if stream:
        d, hi = 0, stream - 1
    else:
        d, hi = draw(st.integers(0, max_increment)), max_value
    prefix = draw(st.lists(st.integers(0, hi), max_size=4))
    cycle = draw(st.lists(st.integers(0, hi), min_size=p, max_size=p))
    return UlpFunction(tuple(prefix), p, d, tuple(cycle))


def test_eval_examples():
    assert UlpFunction.identity()(5) == 5
    assert UlpFunction.constant(0).take(4) == [0, 0, 0, 0]
    assert UlpFunction((7,), 2, 2, (1, 2)).take(5) == [7, 1, 2, 3, 4]


def test_validation():
    with pytest.raises(ValueError):
        UlpFunction((), 2, 0, (1,))
    with pytest.raises(ValueError):
        UlpFunction((), 0, 0, ())
    with pytest.raises(ValueError):
        UlpFunction((-1,), 1, 0, (0,))
    with pytest.raises(TypeError):
        UlpFunction((True,), 1, 0, (0,))
    with pytest.raises(ValueError):
        UlpFunction.identity()(-1)


@settings(max_examples=200, deadline=None)
@given(ulps())
def test_law_holds_at_many_indices(f):
    N, p, d = f.threshold, f.period, f.increment
    for n in range(N, N + 1000):
        assert f(n + p) == f(n) + d


@settings(max_examples=100, deadline=None)
@given(ulps(), st.integers(1, 4))
def test_representations_agree(f, k):
    g = f.repeat_period(k)
    h = f.with_threshold(f.threshold + k)
    assert g.take(60) == f.take(60) == h.take(60)
    assert f.same_function(g) and f.same_function(h)
    assert f.normalized().period <= f.period
    assert f.normalized().take(60) == f.take(60)
    assert f.rate == Fraction(f.increment, f.period)


def test_normalized_finds_least_period():
    f = UlpFunction((3, 3), 4, 0, (0, 1, 0, 1))
    n = f.normalized()
    assert n.period == 2 and n.threshold == 2
    assert n.take(30) == f.take(30)
    assert UlpFunction((0, 1), 1, 1, (2,)).normalized() == UlpFunction.identity()


@settings(max_examples=150, deadline=None)
@given(ulps(), ulps())
def test_add_and_clipped_excess_pointwise(f, g):
    s = add(f, g)
    c = clipped_excess(f, g, 0)
    c1 = clipped_excess(f, g, -1)
    for n in range(200):
        assert s(n) == f(n) + g(n)
        assert c(n) == max(f(n) - g(n), 0)
        assert c1(n) == max(f(n) - g(n), -1) + 1
    for h in (s, c, c1):
        for n in range(h.threshold, h.threshold + 200):
            assert h(n + h.period) == h(n) + h.increment


@settings(max_examples=150, deadline=None)
@given(ulps(), ulps(max_increment=3))
def test_compose_pointwise(f, g):
    h = compose(f, g)
    for n in range(150):
        assert h(n) == f(g(n))
    for n in range(h.threshold, h.threshold + 150):
        assert h(n + h.period) == h(n) + h.increment


@settings(max_examples=100, deadline=None)
@given(ulps(stream=3), ulps(stream=2))
def test_pointwise_streams(f, g):
    h = pointwise(lambda a, b: (a + b) % 3, f, g)
    assert h.is_stream(3)
    assert all(h(n) == (f(n) + g(n)) % 3 for n in range(100))


def test_pointwise_refuses_growing_inputs():
    with pytest.raises(ValueError):
        pointwise(lambda a: a, UlpFunction.identity())


def test_eventually_above_and_shift():
    f = UlpFunction.linear(2, 1)
    t = eventually_above(f, 20)
    assert f(t) >= 20 and f(t - 1) < 20
    with pytest.raises(ValueError):
        eventually_above(UlpFunction.constant(3), 5)
    assert shift_values(UlpFunction.constant(3), 2).take(3) == [5, 5, 5]


def test_common_window():
    assert common_window(UlpFunction((1, 2), 3, 0, (0, 0, 1)), UlpFunction.periodic([1, 0])) == (2, 6)


def test_dict_round_trip():
    f = UlpFunction((7,), 2, 2, (1, 2))
    assert UlpFunction.from_dict(f.to_dict()) == f
    assert f.to_dict() == {"prefix": [7], "period": 2, "increment": 2, "cycle": [1, 2]}
