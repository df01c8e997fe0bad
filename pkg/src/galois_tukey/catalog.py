"""Concrete morphisms between the infinitary relations, each with a checker.

Relation tags used below:

* ``W = (omega^omega, omega^omega, <=*)``
* ``S = (infinite sets, sets, is split by)``
* ``U = (chopped reals, binary reals, is matched by)``
* ``V = (chopped reals, chopped reals, is engulfed by)``
* ``R`` / ``R3 = (binary / ternary reals, infinite sets, is almost constant on)``

A morphism ``A -> B`` with maps ``(minus, plus)`` must satisfy
``A(minus(b), a) => B(b, plus(a))``.  Each checker evaluates that implication
on one instance with the exact decision procedures: the result is ``PASS``,
``FAIL`` or ``VACUOUS`` (premise false), together with every verdict used.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from . import formats
from .streams import (
    DEFAULT_HORIZON,
    EXACT,
    HORIZON,
    ChoppedReal,
    Horizon,
    InfiniteSubset,
    IntervalPartition,
    LazyFunction,
    LazyPartition,
    LazySubset,
    Verdict,
    _agree,
    _cycle_detect,
    almost_constant,
    canonical_partition,
    engulfs,
    image_set,
    increasing_enumeration,
    leq_star,
    matches,
    next_element_fn,
    splits,
)
from .ulp import UlpFunction, add, clipped_excess, compose, pointwise

PASS, FAIL, VACUOUS = "PASS", "FAIL", "VACUOUS"


@dataclass(frozen=True)
class CheckResult:
    entry: str
    status: str
    premises: tuple[tuple[str, Verdict], ...]
    conclusion: tuple[str, Verdict] | None
    instance: dict

    @property
    def mode(self) -> str:
        verdicts = [v for _, v in self.premises] + ([self.conclusion[1]] if self.conclusion else [])
        return EXACT if all(v.exact for v in verdicts) else HORIZON

    def to_dict(self) -> dict:
        return {
            "entry": self.entry,
            "status": self.status,
            "mode": self.mode,
            "instance": self.instance,
            "premises": {name: v.to_dict() for name, v in self.premises},
            "conclusion": None if self.conclusion is None else {self.conclusion[0]: self.conclusion[1].to_dict()},
        }


def _implication(entry, instance, premises, conclusion) -> CheckResult:
    """Evaluate premises lazily in order; stop at the first false one.

    The conclusion thunk receives the premise verdicts, so a bounded check
    can start past the point where the premises' finite exceptions end.
    """
    seen = []
    for name, thunk in premises:
        v = thunk()
        seen.append((name, v))
        if not v.answer:
            return CheckResult(entry, VACUOUS, tuple(seen), None, instance)
    name, thunk = conclusion
    v = thunk([v for _, v in seen])
    return CheckResult(entry, PASS if v.answer else FAIL, tuple(seen), (name, v), instance)


def _negate(v: Verdict) -> Verdict:
    return Verdict(v.mode, not v.answer, v.witness, v.threshold, v.period, v.horizon, v.witnesses)


def _past(horizon: Horizon, premise: Verdict) -> Horizon:
    """Start a bounded check after the last exception certified by an exact ``<=*`` verdict."""
    last = premise.witness.get("last_violation") if premise.exact else None
    if last is None:
        return horizon
    return Horizon(horizon.limit, horizon.witnesses, max(horizon.threshold, last + 1))


def _describe(**objs) -> dict:
    return {k: formats.to_json(v) for k, v in objs.items()}


# -- W -> S: the splitting number is at most the dominating number -------------


def xf_partition(f) -> tuple:
    """Endpoints ``a_{n+1} = 1 + max(a_n, f(a_n))`` and ``X_f`` = union of the even-numbered intervals."""
    P = canonical_partition(f, "xf partition")
    if isinstance(P, IntervalPartition):
        k0, q, D, T = P.translation()
        # interval parity repeats after q intervals if q is even, after 2q otherwise
        period = D if q % 2 == 0 else 2 * D
        X = InfiniteSubset(UlpFunction.from_callable(lambda n: 1 - P.locate(n) % 2, T, period, 0))
    else:
        X = LazySubset(lambda n: P.locate(n) % 2 == 0, "xf even intervals")
    return P, X


def check_s_le_d(f, Y: InfiniteSubset, dual: bool = False, horizon: Horizon = DEFAULT_HORIZON) -> CheckResult:
    """``next_element(Y) <=* f`` implies ``X_f`` splits ``Y``.

    With ``dual=True`` the dual morphism is checked instead: ``X_f`` not
    splitting ``Y`` implies ``next_element(Y)`` is not ``<=* f``.
    """
    g = next_element_fn(Y)
    _, X = xf_partition(f)
    instance = _describe(f=f, Y=Y)
    if not dual:
        return _implication("s_le_d", instance,
                            [("next_element <=* f", lambda: leq_star(g, f, horizon))],
                            ("X_f splits Y", lambda _: splits(X, Y, horizon)))
    return _implication("b_le_r", instance,
                        [("X_f does not split Y", lambda: _negate(splits(X, Y, horizon)))],
                        ("next_element not <=* f", lambda _: _negate(leq_star(g, f, horizon))))


# -- V -> U: additivity of category is at most its covering number ---------------


def addcov_maps():
    """``minus``: identity on chopped reals; ``plus``: a chopped real's first component."""
    return (lambda c: c), (lambda c: c.bits)


def check_addcov(small: ChoppedReal, big: ChoppedReal, horizon: Horizon = DEFAULT_HORIZON) -> CheckResult:
    """``small`` engulfed by ``big`` implies ``big.bits`` matches ``small``."""
    minus, plus = addcov_maps()
    return _implication("addcov", _describe(small=small, big=big),
                        [("big engulfs small", lambda: engulfs(big, minus(small), horizon))],
                        ("big.bits matches small", lambda _: matches(plus(big), small, horizon)))


# -- V -> W: additivity of category is at most the bounding number --------------


def one_past_partition(f):
    """Least endpoints with every ``f(n)``, ``n`` in ``I_k``, below ``a_{k+2}``.

    ``a_0 = 0``, ``a_1 = 1``, ``a_{k+2} = max(a_{k+1} + 1, 1 + max f on I_k)``.
    Each choice is the least allowed given the earlier ones, and raising an
    endpoint never lowers a later lower bound, so the greedy sequence is
    pointwise minimal.
    """
    def step(ends):
        if len(ends) == 1:
            return 1
        a, b = ends[-2], ends[-1]
        return max(b + 1, 1 + max(f(n) for n in range(a, b)))

    if isinstance(f, UlpFunction) and f.rate <= 1:
        # only max(f(n), n - 1) matters, and n -> that - n + 1 is eventually periodic
        E = clipped_excess(f, UlpFunction.identity(), -1)
        N, p = E.threshold, E.period
        ends = [0]
        gaps = _cycle_detect(
            ends, lambda e: e.append(step(e)), lambda k: (ends[k] % p, ends[k + 1] - ends[k]) if ends[k] >= N else None
        )
        return IntervalPartition(gaps)

    return LazyPartition(step, "one-past partition")


def addb_minus(f) -> ChoppedReal:
    return ChoppedReal(UlpFunction.constant(0), one_past_partition(f))


def addb_plus(cr: ChoppedReal):
    """``n`` goes to the right endpoint of the interval after the one containing ``n``."""
    P = cr.partition

    def fn(n):
        return P.endpoint(P.locate(n) + 2)

    if isinstance(P, IntervalPartition) and P.is_periodic:
        _, _, D, T = P.translation()
        return UlpFunction.from_callable(fn, T, D, D)
    return LazyFunction(fn, "addb plus")


def check_addb(f, big: ChoppedReal, horizon: Horizon = DEFAULT_HORIZON) -> CheckResult:
    """``addb_minus(f)`` engulfed by ``big`` implies ``f <=* addb_plus(big)``."""
    small = addb_minus(f)
    return _implication("addb", _describe(f=f, big=big),
                        [("big engulfs addb_minus(f)", lambda: engulfs(big, small, horizon))],
                        ("f <=* addb_plus(big)", lambda _: leq_star(f, addb_plus(big), horizon)))


# -- U;W -> V: additivity is at least min(covering, bounding) ------------------


def maxmin_alpha(c: ChoppedReal) -> ChoppedReal:
    return c


def maxmin_beta(c: ChoppedReal, y, horizon: Horizon = DEFAULT_HORIZON):
    """Right endpoint of the next interval of ``c`` after ``n``'s on which ``y`` agrees with ``c.bits``.

    The zero function when ``y`` does not match ``c``.
    """
    m = matches(y, c, horizon)
    if not m.answer:
        return UlpFunction.constant(0)
    P, x = c.partition, c.bits

    def fn(n):
        k = P.locate(n) + 1
        while not _agree(y, x, *P.interval(k)):
            k += 1
        return P.endpoint(k + 1)

    if m.exact:
        return UlpFunction.from_callable(fn, m.threshold, m.period, m.period)
    return LazyFunction(fn, "maxmin beta")


def maxmin_gamma(y, g) -> ChoppedReal:
    """``(y, Theta)`` with ``Theta`` the least partition having ``g(a) < b`` on every ``[a, b)``."""
    return ChoppedReal(y, canonical_partition(g, "maxmin theta"))


def check_maxmin(c: ChoppedReal, y, g, horizon: Horizon = DEFAULT_HORIZON) -> CheckResult:
    """``y`` matches ``alpha(c)`` and ``beta(c, y) <=* g`` imply ``gamma(y, g)`` engulfs ``c``."""
    return _implication("maxmin_triple", _describe(c=c, y=y, g=g),
                        [("y matches alpha(c)", lambda: matches(y, maxmin_alpha(c), horizon)),
                         ("beta(c, y) <=* g", lambda: leq_star(maxmin_beta(c, y, horizon), g, horizon))],
                        ("gamma(y, g) engulfs c", lambda seen: engulfs(maxmin_gamma(y, g), c, _past(horizon, seen[1]))))


# -- R3 -> R and R;R -> R3 ------------------------------------------------------


def _ternary(f: UlpFunction):
    if not f.is_stream(3):
        raise ValueError("expected an eventually periodic stream over {0, 1, 2}")


def f_prime(f: UlpFunction) -> UlpFunction:
    """0 stays 0; 1 and 2 become 1."""
    _ternary(f)
    return pointwise(lambda v: 0 if v == 0 else 1, f)


def f_double_prime(f: UlpFunction) -> UlpFunction:
    """0 and 2 become 0; 1 stays 1."""
    _ternary(f)
    return pointwise(lambda v: 1 if v == 1 else 0, f)


def r3_eta_minus(f: UlpFunction):
    """``f -> (f', G)`` with ``G(Y) = f'' o e_Y``."""
    fpp = f_double_prime(f)
    return f_prime(f), (lambda Y: compose(fpp, increasing_enumeration(Y)))


def r3_eta_plus(Y: InfiniteSubset, Yp: InfiniteSubset) -> InfiniteSubset:
    return image_set(Y, Yp)


def check_r3_xi(f: UlpFunction, Y: InfiniteSubset) -> CheckResult:
    """Inclusion of binary into ternary reals: constancy over 3 letters implies it over 2."""
    if not f.is_stream(2):
        raise ValueError("the inclusion map starts from a binary stream")
    return _implication("r3_xi", _describe(f=f, Y=Y),
                        [("f almost constant on Y (ternary)", lambda: almost_constant(f, Y, 3))],
                        ("f almost constant on Y (binary)", lambda _: almost_constant(f, Y, 2)))


def check_r3(f: UlpFunction, Y: InfiniteSubset, Yp: InfiniteSubset) -> CheckResult:
    """``f'`` a.c. on ``Y`` and ``G(Y)`` a.c. on ``Y'`` imply ``f`` a.c. on ``e_Y[Y']``."""
    fp, G = r3_eta_minus(f)
    return _implication("r3", _describe(f=f, Y=Y, Yp=Yp),
                        [("f' almost constant on Y", lambda: almost_constant(fp, Y, 2)),
                         ("G(Y) almost constant on Y'", lambda: almost_constant(G(Y), Yp, 2))],
                        ("f almost constant on e_Y[Y']", lambda _: almost_constant(f, r3_eta_plus(Y, Yp), 3)))


# -- random instances -----------------------------------------------------------


def random_stream(rng: random.Random, k: int = 2, max_prefix: int = 3, max_period: int = 4) -> UlpFunction:
    prefix = [rng.randrange(k) for _ in range(rng.randint(0, max_prefix))]
    cycle = [rng.randrange(k) for _ in range(rng.randint(1, max_period))]
    return UlpFunction.periodic(cycle, prefix)


def random_set(rng: random.Random, max_prefix: int = 3, max_period: int = 5) -> InfiniteSubset:
    chi = random_stream(rng, 2, max_prefix, max_period)
    if 1 not in chi.cycle:
        cycle = list(chi.cycle)
        cycle[rng.randrange(len(cycle))] = 1
        chi = UlpFunction.periodic(cycle, chi.prefix)
    return InfiniteSubset(chi)


def random_partition(rng: random.Random, max_gap: int = 3, max_period: int = 3) -> IntervalPartition:
    prefix = [rng.randint(1, max_gap) for _ in range(rng.randint(0, 2))]
    cycle = [rng.randint(1, max_gap) for _ in range(rng.randint(1, max_period))]
    return IntervalPartition.from_gaps(cycle, prefix)


def random_chopped(rng: random.Random) -> ChoppedReal:
    return ChoppedReal(random_stream(rng), random_partition(rng))


def random_function(rng: random.Random, max_slope: int = 2, max_value: int = 12) -> UlpFunction:
    """Random ULP function with rate ``d/p <= max_slope``."""
    p = rng.randint(1, 3)
    d = rng.randint(0, max_slope * p)
    prefix = [rng.randint(0, max_value) for _ in range(rng.randint(0, 3))]
    cycle = [rng.randint(0, max_value) for _ in range(p)]
    return UlpFunction(tuple(prefix), p, d, tuple(cycle))


def random_bump(rng: random.Random, max_value: int = 4) -> UlpFunction:
    """Nonnegative periodic function, used to push a function pointwise upward."""
    return UlpFunction.periodic([rng.randint(0, max_value) for _ in range(rng.randint(1, 3))])


def matcher_on_intervals(c: ChoppedReal, selector, filler: UlpFunction) -> UlpFunction:
    """Stream equal to ``c.bits`` on intervals whose index is marked by ``selector``, else ``filler``.

    ``selector`` is a periodic 0/1 cycle over interval indices containing a 1,
    so the result matches ``c``.
    """
    P, x = c.partition, c.bits
    selector = tuple(selector)
    if 1 not in selector:
        raise ValueError("selector must mark infinitely many intervals")
    m = len(selector)
    k0, q, D, T = P.translation()
    period = math.lcm(x.period, filler.period, D * (math.lcm(q, m) // q))
    T = max(T, x.threshold, filler.threshold)

    def fn(n):
        return x(n) if selector[P.locate(n) % m] else filler(n)

    return UlpFunction.from_callable(fn, T, period, 0)


def coarsen(P: IntervalPartition, factor: int) -> IntervalPartition:
    """Merge every ``factor`` consecutive intervals."""
    k0, q, _, _ = P.translation()
    start = -(-k0 // factor)
    return IntervalPartition(UlpFunction.from_callable(
        lambda j: P.endpoint((j + 1) * factor) - P.endpoint(j * factor), start, q, 0))


def _gen_s_le_d(rng):
    Y = random_set(rng)
    if rng.random() < 0.6:
        f = add(next_element_fn(Y), random_bump(rng))
    else:
        f = random_function(rng)
    return {"f": f, "Y": Y}


def _gen_addcov(rng):
    small = random_chopped(rng)
    if rng.random() < 0.6:
        # coarsen and copy the bits on a periodic selection of small intervals
        P = coarsen(small.partition, rng.randint(2, 4))
        sel = [rng.randrange(2) for _ in range(rng.randint(1, 3))] + [1]
        bits = matcher_on_intervals(small, sel, random_stream(rng))
        big = ChoppedReal(bits, P)
    else:
        big = random_chopped(rng)
    return {"small": small, "big": big}


def _gen_addb(rng):
    f = random_function(rng, max_slope=1)
    if rng.random() < 0.6:
        # coarsening the minimal partition keeps a whole agreeing small interval in each big one
        big = ChoppedReal(UlpFunction.constant(0), coarsen(one_past_partition(f), rng.randint(2, 3)))
    else:
        big = random_chopped(rng)
    return {"f": f, "big": big}


def _gen_maxmin(rng):
    c = random_chopped(rng)
    if rng.random() < 0.75:
        sel = [rng.randrange(2) for _ in range(rng.randint(0, 2))] + [1]
        y = matcher_on_intervals(c, sel, random_stream(rng))
    else:
        y = random_stream(rng)
    if rng.random() < 0.7:
        g = add(maxmin_beta(c, y), random_bump(rng))
    else:
        g = random_function(rng, max_slope=2)
    return {"c": c, "y": y, "g": g}


def _gen_r3(rng):
    Y, Yp = random_set(rng, max_period=3), random_set(rng, max_period=3)
    f = random_stream(rng, 3, max_period=4)
    if rng.random() < 0.6:
        # keep f off 0 along Y and fix the value along e_Y[Y']
        target = image_set(Y, Yp).characteristic
        fixed = rng.choice([1, 2])
        f = pointwise(lambda v, y, t: fixed if t else (v if not y else 1 + v % 2), f, Y.characteristic, target)
    return {"f": f, "Y": Y, "Yp": Yp}


def _gen_r3_xi(rng):
    f = random_stream(rng, 2)
    Y = random_set(rng)
    if rng.random() < 0.5:
        f = pointwise(lambda v, y: 1 if y else v, f, Y.characteristic)
    return {"f": f, "Y": Y}


def _gen_b_le_r(rng):
    if rng.random() < 0.5:
        return _gen_s_le_d(rng)
    # Y inside X_f cannot be split by it
    f = random_function(rng, max_slope=1)
    _, X = xf_partition(f)
    chi = pointwise(lambda a, b: a & b, X.characteristic, random_set(rng).characteristic)
    Y = InfiniteSubset(chi) if 1 in chi.cycle else X
    return {"f": f, "Y": Y}


# -- hand-picked instances --------------------------------------------------------

_Z, _O = UlpFunction.constant(0), UlpFunction.constant(1)
_ID = UlpFunction.identity()
_SINGLE = IntervalPartition.singletons()
_EVENS = InfiniteSubset.evens()


def _hand_s_le_d():
    return [
        ("evens, f(n)=n+2", {"f": UlpFunction.linear(1, 2), "Y": _EVENS}),
        ("evens, f=0", {"f": _Z, "Y": _EVENS}),
        ("multiples of 3, f(n)=2n+3", {"f": UlpFunction.linear(2, 3), "Y": InfiniteSubset.multiples(3)}),
    ]


def _hand_addcov():
    c = ChoppedReal(_Z, _SINGLE)
    return [
        ("c engulfed by itself", {"small": c, "big": c}),
        ("pairs inside singletons", {"small": c, "big": ChoppedReal(_Z, IntervalPartition.uniform(2))}),
        ("disagreeing bits", {"small": ChoppedReal(_O, _SINGLE), "big": c}),
    ]


def _hand_addb():
    return [
        ("f=0, big=(0, singletons)", {"f": _Z, "big": ChoppedReal(_Z, _SINGLE)}),
        ("f(n)=n+1, big=(0, pairs)", {"f": UlpFunction.linear(1, 1), "big": ChoppedReal(_Z, IntervalPartition.uniform(2))}),
        ("f(n)=2n, big=(0, pairs)", {"f": UlpFunction.linear(2), "big": ChoppedReal(_Z, IntervalPartition.uniform(2))}),
    ]


def _hand_maxmin():
    c = ChoppedReal(_Z, _SINGLE)
    return [
        ("y=x=0, g(n)=n+2", {"c": c, "y": _Z, "g": UlpFunction.linear(1, 2)}),
        ("y=0101..., g(n)=n+3", {"c": c, "y": UlpFunction.periodic([0, 1]), "g": UlpFunction.linear(1, 3)}),
        ("y never matches (zero beta)", {"c": c, "y": _O, "g": _Z}),
    ]


def _hand_r3():
    return [
        ("f=012..., Y=Y'=multiples of 3", {"f": UlpFunction.periodic([0, 1, 2]), "Y": InfiniteSubset.multiples(3),
                                           "Yp": InfiniteSubset.multiples(3)}),
        ("f=2, Y=Y'=evens", {"f": UlpFunction.constant(2), "Y": _EVENS, "Yp": _EVENS}),
        ("f=1212..., Y=naturals, Y'=evens", {"f": UlpFunction.periodic([1, 2]), "Y": InfiniteSubset.naturals(),
                                             "Yp": _EVENS}),
    ]


def _hand_r3_xi():
    return [("f=0101..., Y=evens", {"f": UlpFunction.periodic([0, 1]), "Y": _EVENS}),
            ("f=0101..., Y=naturals", {"f": UlpFunction.periodic([0, 1]), "Y": InfiniteSubset.naturals()})]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    source: str
    target: str
    maps: dict
    check: Callable[..., CheckResult]
    hand_picked: Callable[[], list]
    generate: Callable[[random.Random], dict]
    mode: str

    def run(self, instance: dict, horizon: Horizon | None = None) -> CheckResult:
        if horizon is not None and self.name not in ("r3", "r3_xi"):
            return self.check(**instance, horizon=horizon)
        return self.check(**instance)

    def sweep(self, n: int, seed: int, horizon: Horizon | None = None) -> list[CheckResult]:
        rng = random.Random(seed)
        return [self.run(self.generate(rng), horizon) for _ in range(n)]


ENTRIES: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("s_le_d", "W", "S", {"minus": next_element_fn, "plus": xf_partition},
                     check_s_le_d, _hand_s_le_d, _gen_s_le_d, "EXACT; HORIZON when X_f has growing gaps"),
        CatalogEntry("b_le_r", "dual(S)", "dual(W)", {"minus": xf_partition, "plus": next_element_fn},
                     lambda horizon=DEFAULT_HORIZON, **kw: check_s_le_d(**kw, dual=True, horizon=horizon),
                     _hand_s_le_d, _gen_b_le_r, "EXACT; HORIZON when X_f has growing gaps"),
        CatalogEntry("addcov", "V", "U", dict(zip(("minus", "plus"), addcov_maps())),
                     check_addcov, _hand_addcov, _gen_addcov, "EXACT"),
        CatalogEntry("addb", "V", "W", {"minus": addb_minus, "plus": addb_plus},
                     check_addb, _hand_addb, _gen_addb, "EXACT; HORIZON when f grows faster than n"),
        CatalogEntry("maxmin_triple", "U;W", "V", {"alpha": maxmin_alpha, "beta": maxmin_beta, "gamma": maxmin_gamma},
                     check_maxmin, _hand_maxmin, _gen_maxmin, "EXACT; HORIZON when g grows faster than n"),
        CatalogEntry("r3_xi", "R3", "R", {"minus": "inclusion", "plus": "identity"},
                     check_r3_xi, _hand_r3_xi, _gen_r3_xi, "EXACT"),
        CatalogEntry("r3", "R;R", "R3", {"minus": r3_eta_minus, "plus": r3_eta_plus},
                     check_r3, _hand_r3, _gen_r3, "EXACT"),
    ]
}


def summarize(results: list[CheckResult]) -> dict:
    counts = {PASS: 0, FAIL: 0, VACUOUS: 0}
    modes = {EXACT: 0, HORIZON: 0}
    for r in results:
        counts[r.status] += 1
        modes[r.mode] += 1
    total = len(results)
    return {
        "total": total,
        "pass": counts[PASS],
        "fail": counts[FAIL],
        "vacuous": counts[VACUOUS],
        "vacuous_fraction": counts[VACUOUS] / total if total else 0.0,
        "exact": modes[EXACT],
        "horizon": modes[HORIZON],
    }
