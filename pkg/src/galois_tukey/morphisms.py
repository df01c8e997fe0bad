"""Morphisms (generalized Galois-Tukey connections) between finite relations.

A morphism ``A -> B`` is a pair of index maps ``minus_map: B- -> A-`` and
``plus_map: A+ -> B+`` with ``A(minus_map[b], a) => B(b, plus_map[a])`` for
every ``b`` in ``B-`` and ``a`` in ``A+``.  Morphisms are only ever built
through verification, so holding a :class:`FiniteMorphism` means the
condition holds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .relations import FiniteRelation, dual, is_cover

DEFAULT_SEARCH_CAP = 10**6


class MorphismError(ValueError):
    """The morphism condition fails; ``counterexample`` is the least ``(b, a)``."""

    def __init__(self, message: str, counterexample: tuple | None = None):
        super().__init__(message)
        self.counterexample = counterexample


class SearchCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Verification:
    ok: bool
    counterexample: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def _check_map(values: Sequence[int], domain: int, codomain: int, what: str) -> tuple[int, ...]:
    values = tuple(int(v) for v in values)
    if len(values) != domain:
        raise ValueError(f"{what} has {len(values)} entries, expected {domain}")
    for i, v in enumerate(values):
        if not 0 <= v < codomain:
            raise ValueError(f"{what}[{i}] = {v} is outside range({codomain})")
    return values


def verify(minus_map, plus_map, source: FiniteRelation, target: FiniteRelation) -> Verification:
    """Check the morphism condition; on failure report the lexicographically least ``(b, a)``."""
    mm = _check_map(minus_map, len(target.minus), len(source.minus), "minus_map")
    pm = _check_map(plus_map, len(source.plus), len(target.plus), "plus_map")
    premise = source.matrix[list(mm), :]          # [b, a] -> A(mm[b], a)
    conclusion = target.matrix[:, list(pm)]        # [b, a] -> B(b, pm[a])
    bad = np.argwhere(premise & ~conclusion)
    if bad.size:
        b, a = bad[0]
        return Verification(False, (int(b), int(a)))
    return Verification(True)


@dataclass(frozen=True)
class FiniteMorphism:
    source: FiniteRelation
    target: FiniteRelation
    minus_map: tuple[int, ...]
    plus_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "minus_map", tuple(int(v) for v in self.minus_map))
        object.__setattr__(self, "plus_map", tuple(int(v) for v in self.plus_map))
        result = verify(self.minus_map, self.plus_map, self.source, self.target)
        if not result.ok:
            b, a = result.counterexample
            raise MorphismError(
                f"A(minus_map[{b}]={self.minus_map[b]}, {a}) holds but B({b}, plus_map[{a}]={self.plus_map[a]}) does not",
                result.counterexample,
            )


def identity(rel: FiniteRelation) -> FiniteMorphism:
    return FiniteMorphism(rel, rel, range(len(rel.minus)), range(len(rel.plus)))


def compose(first: FiniteMorphism, second: FiniteMorphism) -> FiniteMorphism:
    """``first: A -> B`` then ``second: B -> C``; minus maps compose backwards."""
    if first.target != second.source:
        raise ValueError("cannot compose: target of the first morphism is not the source of the second")
    minus = tuple(first.minus_map[second.minus_map[c]] for c in range(len(second.target.minus)))
    plus = tuple(second.plus_map[first.plus_map[a]] for a in range(len(first.source.plus)))
    return FiniteMorphism(first.source, second.target, minus, plus)


def dualize(m: FiniteMorphism) -> FiniteMorphism:
    """``A -> B`` becomes ``B^perp -> A^perp`` by swapping the two components."""
    return FiniteMorphism(dual(m.target), dual(m.source), m.plus_map, m.minus_map)


def search_space(source: FiniteRelation, target: FiniteRelation) -> int:
    return len(source.minus) ** len(target.minus) * len(target.plus) ** len(source.plus)


def search_morphism(source: FiniteRelation, target: FiniteRelation, cap: int = DEFAULT_SEARCH_CAP):
    """First morphism ``source -> target`` in lexicographic order, or ``None``.

    The order is minus_map outer, plus_map inner.  For a fixed minus_map the
    condition splits into independent constraints on each ``plus_map[a]``,
    so the least admissible plus_map is the coordinatewise least feasible
    choice; this gives the same first hit as walking the full product.
    """
    size = search_space(source, target)
    if size > cap:
        raise SearchCapExceeded(f"search space {size} exceeds cap {cap}")
    A = source.matrix
    not_B = ~target.matrix
    n_bm = len(target.minus)
    for mm in itertools.product(range(len(source.minus)), repeat=n_bm):
        premise = A[list(mm), :]  # [b, a]
        # blocked[a, c]: some b has A(mm[b], a) but not B(b, c)
        blocked = (premise.T.astype(np.int64) @ not_B.astype(np.int64)) > 0
        feasible = ~blocked
        if feasible.any(axis=1).all():
            pm = tuple(int(np.argmax(row)) for row in feasible)
            return FiniteMorphism(source, target, mm, pm)
    return None


def transport_cover(m: FiniteMorphism, cover) -> tuple[int, ...]:
    """Image of a cover of the source under the plus map; it covers the target."""
    cover = tuple(cover)
    if not is_cover(m.source, cover):
        raise ValueError(f"{cover} is not a cover of the source relation")
    return tuple(sorted({m.plus_map[a] for a in cover}))
