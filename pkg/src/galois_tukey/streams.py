"""Finitely presented reals, sets and interval partitions, and exact decisions.

Objects built from :class:`~galois_tukey.ulp.UlpFunction` data are invariant
under a computable translation past a computable threshold, so every
"for all but finitely many" / "infinitely many" question about them reduces
to scanning one window.  Those answers come back as ``EXACT`` verdicts that
carry the threshold ``T`` and hyperperiod ``L`` used.

Some constructions (partitions whose gaps keep growing, functions read off
them) leave that class.  They are represented lazily and questions about
them are answered in ``HORIZON`` mode: positions ``[T, H)`` are scanned.  A
HORIZON "no" comes with concrete counterexamples found below ``H``; a
HORIZON "yes" only means none were found there.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, Union

from .ulp import UlpFunction, clipped_excess, common_window, compose, shift_values

EXACT = "EXACT"
HORIZON = "HORIZON"


@dataclass(frozen=True)
class Horizon:
    """Bounded-check parameters: scan up to ``limit``, want ``witnesses`` hits past ``threshold``."""

    limit: int = 10_000
    witnesses: int = 20
    threshold: int = 0


DEFAULT_HORIZON = Horizon()


@dataclass(frozen=True)
class Verdict:
    mode: str
    answer: bool
    witness: dict = field(default_factory=dict)
    threshold: int = 0
    period: int | None = None
    horizon: int | None = None
    witnesses: int | None = None

    def __bool__(self):
        return self.answer

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def to_dict(self) -> dict:
        out = {"mode": self.mode, "answer": self.answer, "witness": self.witness, "threshold": self.threshold}
        if self.mode == EXACT:
            out["period"] = self.period
        else:
            out["horizon"] = self.horizon
            out["witnesses"] = self.witnesses
        return out


def _exact(answer, witness, T, L) -> Verdict:
    return Verdict(EXACT, bool(answer), witness, int(T), int(L))


def _horizon(answer, witness, T, hz: Horizon) -> Verdict:
    return Verdict(HORIZON, bool(answer), witness, int(T), None, hz.limit, hz.witnesses)


class LazyFunction:
    """A function ``omega -> omega`` known only through evaluation (memoized)."""

    def __init__(self, fn: Callable[[int], int], name: str = "lazy"):
        self._fn = fn
        self._memo: dict[int, int] = {}
        self.name = name

    def __call__(self, n: int) -> int:
        try:
            return self._memo[n]
        except KeyError:
            v = self._memo[n] = int(self._fn(n))
            return v

    eval = __call__
    threshold = 0

    def take(self, count: int) -> list[int]:
        return [self(n) for n in range(count)]

    def __repr__(self):
        return f"LazyFunction({self.name})"


Function = Union[UlpFunction, LazyFunction]


def eval(f: Function, n: int) -> int:  # noqa: A001 - mirrors the operation name
    return f(n)


def _is_ulp(*objs) -> bool:
    return all(isinstance(o, UlpFunction) for o in objs)


def _check_stream(f: Function, k: int, what: str):
    if isinstance(f, UlpFunction) and not f.is_stream(k):
        raise ValueError(f"{what} must be an eventually periodic stream over range({k})")


# -- sets --------------------------------------------------------------------


@dataclass(frozen=True)
class InfiniteSubset:
    """An infinite eventually periodic subset of omega, by its characteristic stream."""

    characteristic: UlpFunction

    def __post_init__(self):
        _check_stream(self.characteristic, 2, "characteristic")
        if 1 not in self.characteristic.cycle:
            raise ValueError("the set is finite: its characteristic cycle has no 1")

    def __contains__(self, n: int) -> bool:
        return self.characteristic(n) == 1

    def elements(self, count: int) -> list[int]:
        out, n = [], 0
        while len(out) < count:
            if n in self:
                out.append(n)
            n += 1
        return out

    def below(self, bound: int) -> list[int]:
        return [n for n in range(bound) if n in self]

    @classmethod
    def from_cycle(cls, cycle, prefix=()) -> InfiniteSubset:
        return cls(UlpFunction.periodic(cycle, prefix))

    @classmethod
    def naturals(cls) -> InfiniteSubset:
        return cls.from_cycle([1])

    @classmethod
    def multiples(cls, k: int, offset: int = 0) -> InfiniteSubset:
        """``{n : n = offset mod k}``"""
        return cls.from_cycle([1 if r == offset % k else 0 for r in range(k)])

    @classmethod
    def evens(cls) -> InfiniteSubset:
        return cls.multiples(2)

    @classmethod
    def odds(cls) -> InfiniteSubset:
        return cls.multiples(2, 1)


class LazySubset:
    """A subset of omega given by a membership test; assumed infinite."""

    def __init__(self, contains: Callable[[int], bool], name: str = "lazy set"):
        self._contains = contains
        self.name = name

    def __contains__(self, n: int) -> bool:
        return bool(self._contains(n))

    def below(self, bound: int) -> list[int]:
        return [n for n in range(bound) if n in self]

    def __repr__(self):
        return f"LazySubset({self.name})"


Subset = Union[InfiniteSubset, LazySubset]


# -- interval partitions -------------------------------------------------------


class _PartitionBase:
    def interval(self, k: int) -> tuple[int, int]:
        return self.endpoint(k), self.endpoint(k + 1)

    def first_at_or_after(self, pos: int) -> int:
        """Index of the first interval whose left endpoint is ``>= pos``."""
        k = self.locate(pos)
        return k if self.endpoint(k) >= pos else k + 1

    def endpoints(self, count: int) -> list[int]:
        return [self.endpoint(k) for k in range(count)]


@dataclass(frozen=True, eq=False)
class IntervalPartition(_PartitionBase):
    """Partition of omega into ``[a_k, a_{k+1})`` with ``a_0 = 0`` and gaps ``a_{k+1} - a_k``.

    Gaps are an :class:`UlpFunction` with values ``>= 1``.  When the gaps are
    eventually periodic (increment 0) the partition is translation invariant
    and supports exact decisions; with growing gaps only HORIZON checks apply.
    """

    gaps: UlpFunction

    def __post_init__(self):
        g = self.gaps
        if min(g.prefix + g.cycle) < 1:
            raise ValueError("interval lengths must be at least 1")
        ends = [0]
        for v in g.prefix:
            ends.append(ends[-1] + v)
        partial = [0]
        for v in g.cycle:
            partial.append(partial[-1] + v)
        object.__setattr__(self, "_ends", tuple(ends))
        object.__setattr__(self, "_partial", tuple(partial))

    @property
    def is_periodic(self) -> bool:
        return self.gaps.increment == 0

    def endpoint(self, k: int) -> int:
        N = self.gaps.threshold
        if k <= N:
            return self._ends[k]
        q, d = self.gaps.period, self.gaps.increment
        m, r = divmod(k - N, q)
        D = self._partial[-1]
        return self._ends[N] + m * D + d * q * m * (m - 1) // 2 + self._partial[r] + r * m * d

    def locate(self, n: int) -> int:
        """Index ``k`` with ``a_k <= n < a_{k+1}``."""
        if n < 0:
            raise ValueError("position must be natural")
        N = self.gaps.threshold
        if n < self._ends[N]:
            return bisect.bisect_right(self._ends, n) - 1
        if self.is_periodic:
            q, D = self.gaps.period, self._partial[-1]
            m, r = divmod(n - self._ends[N], D)
            return N + m * q + bisect.bisect_right(self._partial, r) - 1
        lo, hi = N, N + 1
        while self.endpoint(hi) <= n:
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.endpoint(mid) <= n:
                lo = mid
            else:
                hi = mid
        return lo

    def translation(self) -> tuple[int, int, int, int]:
        """``(k0, q, D, T)``: for ``k >= k0``, ``a_{k+q} = a_k + D``; ``T = a_{k0}``."""
        if not self.is_periodic:
            raise ValueError("partition gaps are not eventually periodic")
        k0 = self.gaps.threshold
        return k0, self.gaps.period, self._partial[-1], self._ends[k0]

    @property
    def position_threshold(self) -> int:
        return self._ends[self.gaps.threshold]

    @classmethod
    def singletons(cls) -> IntervalPartition:
        return cls(UlpFunction.constant(1))

    @classmethod
    def uniform(cls, width: int) -> IntervalPartition:
        return cls(UlpFunction.constant(width))

    @classmethod
    def from_gaps(cls, cycle, prefix=()) -> IntervalPartition:
        return cls(UlpFunction.periodic(cycle, prefix))

    def __repr__(self):
        return f"IntervalPartition(endpoints={self.endpoints(8)}...)"


class LazyPartition(_PartitionBase):
    """Partition produced by a recurrence ``a_{k+1} = step(a_0, ..., a_k)``."""

    is_periodic = False
    position_threshold = 0

    def __init__(self, step: Callable[[list[int]], int], name: str = "lazy partition", start=(0,),
                 max_intervals: int = 10**7):
        self._step = step
        self._ends = list(start)
        self.name = name
        self.max_intervals = max_intervals

    def _extend_to(self, k: int):
        while len(self._ends) <= k:
            if len(self._ends) > self.max_intervals:
                raise OverflowError(f"{self.name}: more than {self.max_intervals} intervals requested")
            nxt = int(self._step(self._ends))
            if nxt <= self._ends[-1]:
                raise ValueError(f"{self.name}: endpoints must increase ({self._ends[-1]} -> {nxt})")
            self._ends.append(nxt)

    def endpoint(self, k: int) -> int:
        self._extend_to(k)
        return self._ends[k]

    def locate(self, n: int) -> int:
        while self._ends[-1] <= n:
            self._extend_to(len(self._ends))
        return bisect.bisect_right(self._ends, n) - 1

    def __repr__(self):
        return f"LazyPartition({self.name})"


Partition = Union[IntervalPartition, LazyPartition]


def _cycle_detect(ends: list[int], advance: Callable[[list[int]], None], state, max_steps: int = 10**6):
    """Grow ``ends`` until ``state(k)`` repeats; return the gaps as an eventually periodic function.

    ``state(k)`` must be ``None`` before the periodic regime and otherwise
    determine every gap from index ``k`` on.
    """
    seen: dict = {}
    k = 0
    while k < max_steps:
        while len(ends) < k + 2:
            advance(ends)
        s = state(k)
        if s is not None:
            if s in seen:
                k1 = seen[s]
                gaps = [ends[i + 1] - ends[i] for i in range(k)]
                return UlpFunction(tuple(gaps[:k1]), k - k1, 0, tuple(gaps[k1:k]))
            seen[s] = k
        k += 1
    raise OverflowError("no repeating state found")


def partition_by_step(h: Function, name: str = "step partition") -> Partition:
    """``a_0 = 0``, ``a_{k+1} = a_k + h(a_k)`` with ``h >= 1``."""
    if isinstance(h, UlpFunction) and h.increment == 0:
        if min(h.prefix + h.cycle) < 1:
            raise ValueError("step function must be at least 1")
        N, p = h.threshold, h.period

        def advance(ends):
            ends.append(ends[-1] + h(ends[-1]))

        ends = [0]
        gaps = _cycle_detect(ends, advance, lambda k: ends[k] % p if ends[k] >= N else None)
        return IntervalPartition(gaps)

    def step(ends):
        v = h(ends[-1])
        if v < 1:
            raise ValueError("step function must be at least 1")
        return ends[-1] + v

    return LazyPartition(step, name)


def canonical_partition(f: Function, name: str = "canonical partition") -> Partition:
    """Least endpoints with ``f(a_k) < a_{k+1}``: ``a_{k+1} = 1 + max(a_k, f(a_k))``."""
    if isinstance(f, UlpFunction):
        h = shift_values(clipped_excess(f, UlpFunction.identity(), 0), 1)
        return partition_by_step(h, name)
    return partition_by_step(LazyFunction(lambda a: 1 + max(0, f(a) - a)), name)


# -- chopped reals -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ChoppedReal:
    bits: Function
    partition: Partition

    def __post_init__(self):
        _check_stream(self.bits, 2, "bits")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.bits, UlpFunction) and isinstance(self.partition, IntervalPartition) \
            and self.partition.is_periodic

    def __repr__(self):
        return f"ChoppedReal({self.bits!r}, {self.partition!r})"


def _agree(y: Function, x: Function, start: int, end: int) -> bool:
    return all(y(n) == x(n) for n in range(start, end))


def _threshold_of(*objs) -> int:
    T = 0
    for o in objs:
        if isinstance(o, UlpFunction):
            T = max(T, o.threshold)
        elif isinstance(o, IntervalPartition):
            T = max(T, o.position_threshold)
        elif isinstance(o, InfiniteSubset):
            T = max(T, o.characteristic.threshold)
    return T


def _positional_window(streams, partitions) -> tuple[int, int]:
    """Threshold and period past which the whole configuration is translation invariant."""
    T, L = common_window(*streams) if streams else (0, 1)
    for P in partitions:
        _, _, D, Tp = P.translation()
        T = max(T, Tp)
        L = math.lcm(L, D)
    return T, L


# -- decisions -----------------------------------------------------------------


def leq_star(f: Function, g: Function, horizon: Horizon = DEFAULT_HORIZON) -> Verdict:
    """``f(n) <= g(n)`` for all but finitely many ``n``."""
    if _is_ulp(f, g):
        T, L = common_window(f, g)
        step = g.block_increment(L) - f.block_increment(L)
        window = [g(r) - f(r) for r in range(T, T + L)]
        early = [n for n in range(T) if f(n) > g(n)]
        if step > 0 or (step == 0 and min(window) >= 0):
            last = early[-1] if early else None
            for i, w in enumerate(window):
                if w < 0:
                    blocks = -(-(-w) // step)
                    cand = T + i + (blocks - 1) * L
                    last = cand if last is None else max(last, cand)
            return _exact(True, {"last_violation": last}, T, L)
        # some residue violates for good
        i = min(range(L), key=lambda j: (window[j] >= 0 and step == 0, j))
        if step == 0:
            start = T + i
        else:
            blocks = max(0, -(-(window[i] + 1) // (-step)))
            start = T + i + blocks * L
        return _exact(False, {"violations_from": start, "stride": L}, T, L)

    T = max(_threshold_of(f, g), horizon.threshold)
    bad = []
    for n in range(T, horizon.limit):
        if f(n) > g(n):
            bad.append(n)
            if len(bad) >= horizon.witnesses:
                break
    return _horizon(not bad, {"violations": bad, "checked_below": horizon.limit}, T, horizon)


def splits(X: Subset, Y: Subset, horizon: Horizon = DEFAULT_HORIZON) -> Verdict:
    """``X`` splits ``Y``: both ``Y & X`` and ``Y - X`` are infinite."""
    if isinstance(X, InfiniteSubset) and isinstance(Y, InfiniteSubset):
        T, L = common_window(X.characteristic, Y.characteristic)
        inside = [n for n in range(T, T + L) if n in Y and n in X]
        outside = [n for n in range(T, T + L) if n in Y and n not in X]
        witness = {"in_both": inside[0] if inside else None, "in_y_only": outside[0] if outside else None}
        return _exact(bool(inside and outside), witness, T, L)

    T = max(_threshold_of(X, Y), horizon.threshold)
    inside, outside = [], []
    for n in range(T, horizon.limit):
        if n in Y:
            (inside if n in X else outside).append(n)
    K = horizon.witnesses
    witness = {"in_both": inside[:K], "in_y_only": outside[:K], "checked_below": horizon.limit}
    return _horizon(len(inside) >= K and len(outside) >= K, witness, T, horizon)


def matches(y: Function, cr: ChoppedReal, horizon: Horizon = DEFAULT_HORIZON) -> Verdict:
    """``y`` agrees with ``cr.bits`` on infinitely many intervals of ``cr.partition``."""
    _check_stream(y, 2, "y")
    P, x = cr.partition, cr.bits
    if cr.is_exact and isinstance(y, UlpFunction):
        T, L = _positional_window([y, x], [P])
        _, q, D, _ = P.translation()
        k_start = P.first_at_or_after(T)
        n_win = (L // D) * q
        pattern = [_agree(y, x, *P.interval(k)) for k in range(k_start, k_start + n_win)]
        witness = {"window_start_interval": k_start, "pattern": "".join("1" if b else "0" for b in pattern)}
        if not any(pattern):
            early = [k for k in range(k_start) if _agree(y, x, *P.interval(k))]
            witness["last_agreement"] = early[-1] if early else None
        return _exact(any(pattern), witness, P.endpoint(k_start), L)

    T = max(_threshold_of(y, x, P), horizon.threshold)
    found = []
    k = P.first_at_or_after(T)
    while True:
        s, e = P.interval(k)
        if e > horizon.limit or len(found) >= horizon.witnesses:
            break
        if _agree(y, x, s, e):
            found.append(k)
        k += 1
    return _horizon(len(found) >= horizon.witnesses, {"agreeing_intervals": found}, T, horizon)


def _contains_agreeing(big: ChoppedReal, small: ChoppedReal, k: int) -> bool:
    s, e = big.partition.interval(k)
    Q = small.partition
    j = Q.first_at_or_after(s)
    while True:
        js, je = Q.interval(j)
        if je > e:
            return False
        if _agree(big.bits, small.bits, js, je):
            return True
        j += 1


def _engulf_window(big: ChoppedReal, small: ChoppedReal):
    P = big.partition
    T, L = _positional_window([big.bits, small.bits], [P, small.partition])
    _, q, D, _ = P.translation()
    return T, L, P.first_at_or_after(T), (L // D) * q


def engulfs(big: ChoppedReal, small: ChoppedReal, horizon: Horizon = DEFAULT_HORIZON) -> Verdict:
    """All but finitely many intervals of ``big`` include an interval of ``small`` on which the bits agree."""
    if big.is_exact and small.is_exact:
        T, L, k_start, n_win = _engulf_window(big, small)
        bad = [k for k in range(k_start, k_start + n_win) if not _contains_agreeing(big, small, k)]
        pos = big.partition.endpoint(k_start)
        if bad:
            return _exact(False, {"bad_interval": bad[0], "recurs_every": n_win}, pos, L)
        early = [k for k in range(k_start) if not _contains_agreeing(big, small, k)]
        return _exact(True, {"last_bad_interval": early[-1] if early else None}, pos, L)

    T = max(_threshold_of(big.bits, small.bits, big.partition, small.partition), horizon.threshold)
    P = big.partition
    bad, checked = [], 0
    k = P.first_at_or_after(T)
    while len(bad) < horizon.witnesses:
        s, e = P.interval(k)
        if e > horizon.limit:
            break
        checked += 1
        if not _contains_agreeing(big, small, k):
            bad.append(k)
        k += 1
    return _horizon(not bad, {"bad_intervals": bad, "intervals_checked": checked}, T, horizon)


def non_engulf_witness(big: ChoppedReal, small: ChoppedReal) -> UlpFunction:
    """A real matching ``big`` but not ``small`` when ``big`` does not engulf ``small``.

    Bad intervals of ``big`` (those containing no agreeing interval of
    ``small``) are scanned in order; one is kept unless a previously kept
    interval touches the same interval of ``small``.  The result agrees with
    ``big.bits`` on kept intervals and disagrees with ``small.bits``
    everywhere else.  The kept pattern is eventually periodic, and is
    returned as such.
    """
    if not (big.is_exact and small.is_exact):
        raise ValueError("witness construction needs eventually periodic inputs")
    verdict = engulfs(big, small)
    if verdict.answer:
        raise ValueError("big engulfs small; no such witness exists")
    T, L, k_start, n_win = _engulf_window(big, small)
    P, Q = big.partition, small.partition

    kept: list[tuple[int, int]] = []
    reach = 0  # right end of the last small interval touched by a kept interval
    seen: dict[int, int] = {}
    k = 0
    while True:
        if k >= k_start and (k - k_start) % n_win == 0:
            state = max(0, reach - P.endpoint(k))
            if state in seen:
                k_first = seen[state]
                break
            seen[state] = k
        s, e = P.interval(k)
        if s >= reach and not _contains_agreeing(big, small, k):
            kept.append((s, e))
            reach = Q.endpoint(Q.locate(e - 1) + 1)
        k += 1

    start_pos, end_pos = P.endpoint(k_first), P.endpoint(k)
    starts = [s for s, _ in kept]
    x, xs = big.bits, small.bits

    def y(n):
        i = bisect.bisect_right(starts, n) - 1
        if i >= 0 and n < kept[i][1]:
            return x(n)
        return 1 - xs(n)

    return UlpFunction.from_callable(y, start_pos, end_pos - start_pos, 0)


def almost_constant(f: Function, Y: Subset, k: int = 2, horizon: Horizon = DEFAULT_HORIZON) -> Verdict:
    """``f`` (a stream over ``range(k)``) is constant on ``Y`` minus a finite set."""
    _check_stream(f, k, "f")
    if isinstance(f, UlpFunction) and isinstance(Y, InfiniteSubset):
        T, L = common_window(f, Y.characteristic)
        first: dict[int, int] = {}
        for n in range(T, T + L):
            if n in Y:
                first.setdefault(f(n), n)
        if len(first) <= 1:
            (value,) = first
            early = [n for n in range(T) if n in Y and f(n) != value]
            return _exact(True, {"value": value, "last_exception": early[-1] if early else None}, T, L)
        a, b = sorted(first.values())[:2]
        return _exact(False, {"positions": [a, b], "values": [f(a), f(b)], "stride": L}, T, L)

    T = max(_threshold_of(f, Y), horizon.threshold)
    first = {}
    count = 0
    for n in range(T, horizon.limit):
        if n in Y:
            count += 1
            first.setdefault(f(n), n)
    return _horizon(len(first) <= 1, {"values_seen": sorted(first), "elements_checked": count}, T, horizon)


def next_element_fn(Y: InfiniteSubset) -> UlpFunction:
    """``n -> min{m in Y : m > n}``; past the threshold it steps by the period."""
    chi = Y.characteristic
    N, p = chi.threshold, chi.period

    def g(n):
        m = n + 1
        while m not in Y:
            m += 1
        return m

    return UlpFunction.from_callable(g, N, p, p)


def increasing_enumeration(Y: InfiniteSubset) -> UlpFunction:
    """The increasing bijection ``omega -> Y``."""
    chi = Y.characteristic
    N, p = chi.threshold, chi.period
    below = Y.below(N)
    per_cycle = sum(chi.cycle)
    elems = Y.elements(len(below) + per_cycle)
    return UlpFunction.from_callable(lambda n: elems[n], len(below), per_cycle, p)


def image_set(Y: InfiniteSubset, Yp: InfiniteSubset) -> InfiniteSubset:
    """``e_Y[Y'] = {e_Y(n) : n in Y'}``, the part of ``Y`` sitting at the places ``Y'`` marks."""
    chi, chip = Y.characteristic, Yp.characteristic
    p, pp = chi.period, chip.period
    c = sum(chi.cycle)
    period = p * (pp // math.gcd(c, pp))
    e = increasing_enumeration(Y)
    start = max(chi.threshold, e(chip.threshold))
    elems = Y.below(start + period)
    index = {m: i for i, m in enumerate(elems)}

    def member(m):
        i = index.get(m)
        return 1 if i is not None and i in Yp else 0

    return InfiniteSubset(UlpFunction.from_callable(member, start, period, 0))


def compose_with_enumeration(f: UlpFunction, Y: InfiniteSubset) -> UlpFunction:
    """``f o e_Y``: the values of ``f`` along ``Y``, reindexed by omega."""
    return compose(f, increasing_enumeration(Y))
