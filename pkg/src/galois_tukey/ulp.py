"""Ultimately linear-periodic functions ``omega -> omega``.

A :class:`UlpFunction` is given by a finite prefix (values at ``0..N-1``) and
a cycle of ``p`` values for ``N..N+p-1``; beyond that ``f(n + p) = f(n) + d``.
With ``d = 0`` these are the eventually periodic streams, which is how
binary and ternary reals and characteristic functions of sets are encoded.

Every combinator in this module returns an exact finite presentation.  The
common trick is the *window form*: any finite family of such functions is
described, past ``T = max(thresholds)``, by its values on one block
``[T, T + L)`` with ``L = lcm(periods)`` plus the per-block increments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence


def _as_int_tuple(values, what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or int(v) != v:
            raise TypeError(f"{what} must contain integers, got {v!r}")
        v = int(v)
        if v < 0:
            raise ValueError(f"{what} must be nonnegative, got {v}")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class UlpFunction:
    prefix: tuple[int, ...]
    period: int
    increment: int
    cycle: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", _as_int_tuple(self.prefix, "prefix"))
        object.__setattr__(self, "cycle", _as_int_tuple(self.cycle, "cycle"))
        if int(self.period) < 1:
            raise ValueError("period must be at least 1")
        if int(self.increment) < 0:
            raise ValueError("increment must be nonnegative")
        object.__setattr__(self, "period", int(self.period))
        object.__setattr__(self, "increment", int(self.increment))
        if len(self.cycle) != self.period:
            raise ValueError(f"cycle has {len(self.cycle)} values but period is {self.period}")

    # -- evaluation -------------------------------------------------------

    @property
    def threshold(self) -> int:
        return len(self.prefix)

    @property
    def rate(self) -> Fraction:
        """Asymptotic slope ``d / p``."""
        return Fraction(self.increment, self.period)

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("argument must be a natural number")
        N = len(self.prefix)
        if n < N:
            return self.prefix[n]
        q, r = divmod(n - N, self.period)
        return self.cycle[r] + q * self.increment

    eval = __call__

    def take(self, count: int) -> list[int]:
        return [self(n) for n in range(count)]

    def block_increment(self, length: int) -> int:
        """``f(n + length) - f(n)`` for ``n`` past the threshold; ``length`` must be a multiple of the period."""
        if length % self.period:
            raise ValueError(f"{length} is not a multiple of the period {self.period}")
        return self.increment * (length // self.period)

    def is_stream(self, k: int = 2) -> bool:
        """True when this is an eventually periodic sequence over ``range(k)``."""
        return self.increment == 0 and all(v < k for v in self.prefix + self.cycle)

    # -- presentations ----------------------------------------------------

    def repeat_period(self, factor: int) -> UlpFunction:
        """Same function, presented with a period ``factor`` times longer."""
        if factor < 1:
            raise ValueError("factor must be positive")
        p = self.period * factor
        return UlpFunction.from_callable(self, self.threshold, p, self.increment * factor)

    def with_threshold(self, threshold: int) -> UlpFunction:
        """Same function with a longer (or equal) prefix."""
        if threshold < self.threshold:
            raise ValueError("can only lengthen the prefix")
        return UlpFunction.from_callable(self, threshold, self.period, self.increment)

    def normalized(self) -> UlpFunction:
        """Canonical presentation: least period, then shortest prefix."""
        N, p, d = self.threshold, self.period, self.increment
        for q in sorted(k for k in range(1, p + 1) if p % k == 0):
            if (d * q) % p:
                continue
            e = d * q // p
            # holding on one full block past N propagates to all n >= N
            if all(self(n + q) == self(n) + e for n in range(N, N + p)):
                p, d = q, e
                break
        while N > 0 and self(N - 1 + p) == self(N - 1) + d:
            N -= 1
        return UlpFunction.from_callable(self, N, p, d)

    def same_function(self, other: UlpFunction) -> bool:
        return self.normalized() == other.normalized()

    def __repr__(self):
        return f"UlpFunction(prefix={list(self.prefix)}, period={self.period}, increment={self.increment}, cycle={list(self.cycle)})"

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_callable(cls, fn: Callable[[int], int], threshold: int, period: int, increment: int = 0) -> UlpFunction:
        """Sample ``fn`` on ``[0, threshold + period)``.

        The caller is responsible for ``fn`` actually obeying the law past
        ``threshold``; every use in this package derives the parameters from
        a translation-invariance argument.
        """
        prefix = [fn(n) for n in range(threshold)]
        cycle = [fn(n) for n in range(threshold, threshold + period)]
        return cls(tuple(prefix), period, increment, tuple(cycle))

    @classmethod
    def constant(cls, value: int) -> UlpFunction:
        return cls((), 1, 0, (value,))

    @classmethod
    def identity(cls) -> UlpFunction:
        return cls((), 1, 1, (0,))

    @classmethod
    def linear(cls, slope: int, offset: int = 0) -> UlpFunction:
        """``n -> slope * n + offset``."""
        return cls((), 1, slope, (offset,))

    @classmethod
    def periodic(cls, cycle: Sequence[int], prefix: Sequence[int] = ()) -> UlpFunction:
        return cls(tuple(prefix), len(cycle), 0, tuple(cycle))

    def to_dict(self) -> dict:
        return {
            "prefix": list(self.prefix),
            "period": self.period,
            "increment": self.increment,
            "cycle": list(self.cycle),
        }

    @classmethod
    def from_dict(cls, data: dict) -> UlpFunction:
        return cls(tuple(data["prefix"]), data["period"], data["increment"], tuple(data["cycle"]))


def common_window(*fs: UlpFunction) -> tuple[int, int]:
    """``(T, L)`` such that past ``T`` every ``f`` obeys its law with step ``L``."""
    T = max(f.threshold for f in fs)
    L = math.lcm(*(f.period for f in fs))
    return T, L


def pointwise(op: Callable[..., int], *fs: UlpFunction) -> UlpFunction:
    """``n -> op(f1(n), ..., fk(n))`` for eventually periodic inputs (increment 0)."""
    if any(f.increment for f in fs):
        raise ValueError("pointwise combination needs eventually periodic inputs")
    T, L = common_window(*fs)
    return UlpFunction.from_callable(lambda n: op(*(f(n) for f in fs)), T, L, 0)


def add(f: UlpFunction, g: UlpFunction) -> UlpFunction:
    T, L = common_window(f, g)
    return UlpFunction.from_callable(lambda n: f(n) + g(n), T, L, f.block_increment(L) + g.block_increment(L))


def shift_values(f: UlpFunction, c: int) -> UlpFunction:
    """``n -> f(n) + c`` (``c`` may be negative as long as values stay natural)."""
    return UlpFunction(tuple(v + c for v in f.prefix), f.period, f.increment, tuple(v + c for v in f.cycle))


def eventually_above(f: UlpFunction, floor: int) -> int:
    """Least ``T`` such that ``f(n) >= floor`` for all ``n >= T``; requires positive increment or a periodic tail."""
    return _sign_threshold(lambda n: f(n) - floor, f.threshold, f.period, f.increment, want_nonneg=True)


def _sign_threshold(diff: Callable[[int], int], T: int, L: int, step: int, want_nonneg: bool) -> int:
    """Least ``T'`` past which ``diff`` is ``>= 0`` (or ``< 0``) for good.

    ``diff`` must satisfy ``diff(n + L) = diff(n) + step`` for ``n >= T``.
    Raises when the sign never settles in the wanted direction.
    """
    def good(v):
        return v >= 0 if want_nonneg else v < 0

    window = [diff(r) for r in range(T, T + L)]
    if step == 0:
        if not all(good(v) for v in window):
            raise ValueError("sign does not settle")
        start = T
    else:
        if (step > 0) != want_nonneg:
            raise ValueError("sign does not settle")
        blocks = 0
        for v in window:
            if not good(v):
                need = -v if want_nonneg else v + 1
                blocks = max(blocks, -(-need // abs(step)))
        start = T + blocks * L
    while start > 0 and good(diff(start - 1)):
        start -= 1
    return start


def clipped_excess(f: UlpFunction, g: UlpFunction, floor: int) -> UlpFunction:
    """``n -> max(f(n) - g(n), floor) - floor`` as an exact presentation.

    With equal rates the result is eventually periodic; if ``f`` is slower
    it is eventually 0; if ``f`` is faster it eventually grows linearly.
    """
    T, L = common_window(f, g)
    step = f.block_increment(L) - g.block_increment(L)

    def fn(n):
        return max(f(n) - g(n), floor) - floor

    if step == 0:
        return UlpFunction.from_callable(fn, T, L, 0)
    if step < 0:
        start = _sign_threshold(lambda n: f(n) - g(n) - floor - 1, T, L, step, want_nonneg=False)
        return UlpFunction.from_callable(fn, max(start, T), 1, 0)
    start = _sign_threshold(lambda n: f(n) - g(n) - floor, T, L, step, want_nonneg=True)
    start = max(start, T)
    return UlpFunction.from_callable(fn, start, L, step)


def compose(f: UlpFunction, g: UlpFunction) -> UlpFunction:
    """``n -> f(g(n))``."""
    if g.increment == 0:
        # g takes finitely many values on its tail, so f o g is periodic there
        return UlpFunction.from_callable(lambda n: f(g(n)), g.threshold, g.period, 0)
    # past T, g(n) >= threshold(f); stepping n by g.period * k moves g by d_g * k,
    # which is a multiple of f.period once k = f.period / gcd(d_g, f.period)
    k = f.period // math.gcd(g.increment, f.period)
    period = g.period * k
    g_step = g.increment * k
    T = max(g.threshold, eventually_above(g, f.threshold))
    return UlpFunction.from_callable(lambda n: f(g(n)), T, period, f.block_increment(g_step))
