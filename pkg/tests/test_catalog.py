import random

import pytest

from galois_tukey import catalog
from galois_tukey.catalog import (
    ENTRIES,
    FAIL,
    PASS,
    VACUOUS,
    addb_minus,
    addb_plus,
    check_addb,
    check_addcov,
    check_maxmin,
    check_r3,
    check_r3_xi,
    check_s_le_d,
    f_double_prime,
    f_prime,
    maxmin_beta,
    maxmin_gamma,
    one_past_partition,
    r3_eta_minus,
    r3_eta_plus,
    summarize,
    xf_partition,
)
from galois_tukey.streams import (
    EXACT,
    ChoppedReal,
    InfiniteSubset,
    IntervalPartition,
    LazyPartition,
    LazySubset,
    almost_constant,
    engulfs,
    matches,
)
from galois_tukey.ulp import UlpFunction

Z, O = UlpFunction.constant(0), UlpFunction.constant(1)
ID = UlpFunction.identity()
SINGLE = IntervalPartition.singletons()
EVENS = InfiniteSubset.evens()


def brute_minimal_one_past(f, count):
    """Smallest endpoints, chosen one at a time by trying every candidate in order."""
    ends = [0, 1]
    while len(ends) < count:
        a, b = ends[-2], ends[-1]
        c = b + 1
        while any(f(n) >= c for n in range(a, b)):
            c += 1
        ends.append(c)
    return ends


def test_xf_partition_examples():
    for f in (ID, Z):
        P, X = xf_partition(f)
        assert P.endpoints(6) == [0, 1, 2, 3, 4, 5]
        assert X.characteristic.same_function(EVENS.characteristic)
    P, X = xf_partition(UlpFunction.linear(2))
    assert P.endpoints(5) == [0, 1, 3, 7, 15]
    assert isinstance(P, LazyPartition) and isinstance(X, LazySubset)
    assert [n for n in range(16) if n in X] == [0, 3, 4, 5, 6, 15]


def test_xf_partition_recurrence_random():
    rng = random.Random(2)
    for _ in range(40):
        f = catalog.random_function(rng, max_slope=1)
        P, X = xf_partition(f)
        ends = [0]
        for _ in range(40):
            ends.append(1 + max(ends[-1], f(ends[-1])))
        assert P.endpoints(41) == ends
        for k in range(39):
            assert (ends[k] in X) == (k % 2 == 0)


def test_s_le_d_examples():
    r = check_s_le_d(UlpFunction.linear(1, 2), EVENS)
    assert r.status == PASS and r.mode == EXACT
    r = check_s_le_d(Z, EVENS)
    assert r.status == VACUOUS
    assert r.conclusion is None


def test_s_le_d_dual_orientation_sweep():
    results = ENTRIES["b_le_r"].sweep(100, 3)
    s = summarize(results)
    assert s["fail"] == 0
    assert s["pass"] > 0
    r = check_s_le_d(Z, EVENS, dual=True)
    assert r.status == PASS


def test_addcov_examples():
    c = ChoppedReal(Z, SINGLE)
    assert check_addcov(c, c).status == PASS
    big = ChoppedReal(Z, IntervalPartition.uniform(2))
    assert check_addcov(c, big).status == PASS
    assert check_addcov(ChoppedReal(O, SINGLE), c).status == VACUOUS


def test_addb_examples():
    assert one_past_partition(Z).endpoints(6) == [0, 1, 2, 3, 4, 5]
    assert addb_minus(Z).bits.same_function(Z)
    plus = addb_plus(ChoppedReal(O, SINGLE))
    assert plus.same_function(UlpFunction.linear(1, 2))
    assert check_addb(Z, ChoppedReal(Z, SINGLE)).status == PASS


def test_one_past_partition_is_the_greedy_minimum():
    rng = random.Random(4)
    for _ in range(60):
        f = catalog.random_function(rng, max_slope=2)
        P = one_past_partition(f)
        # faster than linear f doubles the endpoints; keep the scan short
        count = 25 if f.rate <= 1 else 12
        assert P.endpoints(count) == brute_minimal_one_past(f, count)
        ends = P.endpoints(count)
        for k in range(count - 3):
            for n in range(ends[k], ends[k + 1]):
                assert f(n) < ends[k + 2]
        if f.rate <= 1:
            assert isinstance(P, IntervalPartition)
        else:
            assert isinstance(P, LazyPartition)


def test_maxmin_examples():
    c = ChoppedReal(Z, SINGLE)
    beta = maxmin_beta(c, Z)
    assert beta.same_function(UlpFunction.linear(1, 2))
    theta = maxmin_gamma(Z, UlpFunction.linear(1, 2)).partition
    assert theta.endpoints(4) == [0, 3, 6, 9]
    assert check_maxmin(c, Z, UlpFunction.linear(1, 2)).status == PASS


def test_maxmin_beta_fallback_is_zero():
    c = ChoppedReal(Z, SINGLE)
    assert not matches(O, c).answer
    assert maxmin_beta(c, O).same_function(Z)
    r = check_maxmin(c, O, Z)
    assert r.status == VACUOUS
    assert r.premises[0][0] == "y matches alpha(c)"


def test_maxmin_beta_is_next_agreeing_right_endpoint():
    rng = random.Random(9)
    for _ in range(40):
        c = catalog.random_chopped(rng)
        y = catalog.matcher_on_intervals(c, [rng.randrange(2), 1], catalog.random_stream(rng))
        beta = maxmin_beta(c, y)
        P = c.partition
        for n in range(80):
            k = P.locate(n) + 1
            while not all(y(m) == c.bits(m) for m in range(*P.interval(k))):
                k += 1
            assert beta(n) == P.endpoint(k + 1)


def test_prime_recodings():
    f = UlpFunction.periodic([0, 1, 2])
    assert f_prime(f).take(6) == [0, 1, 1, 0, 1, 1]
    assert f_double_prime(f).take(6) == [0, 1, 0, 0, 1, 0]
    two = UlpFunction.constant(2)
    assert f_prime(two).same_function(O) and f_double_prime(two).same_function(Z)
    binary = UlpFunction.periodic([0, 1, 1])
    assert f_prime(binary).same_function(binary)
    with pytest.raises(ValueError):
        f_prime(UlpFunction.constant(3))
    with pytest.raises(ValueError):
        f_double_prime(UlpFunction.identity())


def test_r3_examples():
    assert r3_eta_plus(EVENS, EVENS).characteristic.same_function(InfiniteSubset.multiples(4).characteristic)
    f = UlpFunction.periodic([0, 1, 2])
    m3 = InfiniteSubset.multiples(3)
    assert almost_constant(f, m3, 3).answer
    assert check_r3(f, m3, m3).status == PASS
    assert check_r3_xi(UlpFunction.periodic([0, 1]), EVENS).status == PASS
    with pytest.raises(ValueError):
        check_r3_xi(UlpFunction.constant(2), EVENS)


def test_g_of_y_stays_ulp():
    rng = random.Random(6)
    for _ in range(50):
        f = catalog.random_stream(rng, 3)
        Y = catalog.random_set(rng)
        _, G = r3_eta_minus(f)
        g = G(Y)
        assert isinstance(g, UlpFunction) and g.is_stream(2)
        rebuilt = UlpFunction(g.prefix, g.period, g.increment, g.cycle)
        elems = Y.elements(60)
        assert [rebuilt(n) for n in range(60)] == [f_double_prime(f)(m) for m in elems]


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_hand_picked_instances_never_fail(name):
    entry = ENTRIES[name]
    results = [entry.run(inst) for _, inst in entry.hand_picked()]
    assert all(r.status != FAIL for r in results)
    assert any(r.status == PASS for r in results)


@pytest.mark.parametrize("name", sorted(ENTRIES))
@pytest.mark.parametrize("seed", [0, 1])
def test_sweeps_have_no_failures_and_hit_premises(name, seed):
    s = summarize(ENTRIES[name].sweep(100, seed))
    assert s["fail"] == 0
    assert s["vacuous_fraction"] <= 0.9


def test_sweep_is_deterministic():
    a = [r.to_dict() for r in ENTRIES["maxmin_triple"].sweep(30, 5)]
    b = [r.to_dict() for r in ENTRIES["maxmin_triple"].sweep(30, 5)]
    assert a == b


def test_generated_engulfing_premises_are_real():
    rng = random.Random(8)
    hits = 0
    for _ in range(40):
        inst = catalog._gen_addcov(rng)
        if engulfs(inst["big"], inst["small"]).answer:
            hits += 1
    assert hits >= 10
