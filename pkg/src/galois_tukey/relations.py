"""Finite relation triples ``(A-, A+, A)``, their duals and norms.

A relation is stored as two label tuples and a boolean matrix whose rows are
indexed by the minus side and whose columns are indexed by the plus side.
Labels are opaque; every algorithm works on indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Sequence

import numpy as np

from .cover import minimum_cover


class AdmissibilityError(ValueError):
    """Raised when a triple violates the standing non-degeneracy assumptions.

    ``kind`` is one of ``"shape"``, ``"empty"``, ``"duplicate"``, ``"row"``,
    ``"column"``; ``index`` points at the offending row, column or label.
    """

    def __init__(self, kind: str, message: str, index: int | None = None):
        super().__init__(message)
        self.kind = kind
        self.index = index


def _check_labels(labels: Sequence[Hashable], side: str) -> tuple:
    labels = tuple(labels)
    if not labels:
        raise AdmissibilityError("empty", f"{side} side is empty")
    seen = {}
    for i, lab in enumerate(labels):
        if lab in seen:
            raise AdmissibilityError("duplicate", f"{side} label {lab!r} repeated at {seen[lab]} and {i}", i)
        seen[lab] = i
    return labels


@dataclass(frozen=True, eq=False)
class FiniteRelation:
    """An admissible triple: nonempty sides, no empty row, no full column.

    Those conditions are exactly what makes both the norm and the dual norm
    defined (and then both are at least 2).  Use :func:`make_relation` or the
    constructor directly; both validate.
    """

    minus: tuple
    plus: tuple
    matrix: np.ndarray
    provenance: str | None = field(default=None, compare=False)

    def __post_init__(self):
        minus = _check_labels(self.minus, "minus")
        plus = _check_labels(self.plus, "plus")
        mat = np.array(self.matrix, dtype=bool, copy=True)
        if mat.ndim != 2 or mat.shape != (len(minus), len(plus)):
            raise AdmissibilityError(
                "shape", f"matrix shape {mat.shape} does not match ({len(minus)}, {len(plus)})"
            )
        empty_rows = np.flatnonzero(~mat.any(axis=1))
        if empty_rows.size:
            i = int(empty_rows[0])
            raise AdmissibilityError("row", f"minus element {i} ({minus[i]!r}) is related to nothing", i)
        full_cols = np.flatnonzero(mat.all(axis=0))
        if full_cols.size:
            j = int(full_cols[0])
            raise AdmissibilityError("column", f"plus element {j} ({plus[j]!r}) is related to everything", j)
        mat.setflags(write=False)
        object.__setattr__(self, "minus", minus)
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "matrix", mat)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def __eq__(self, other):
        if not isinstance(other, FiniteRelation):
            return NotImplemented
        return (
            self.minus == other.minus
            and self.plus == other.plus
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.minus, self.plus, self.matrix.tobytes()))

    def __repr__(self):
        rows = ["".join("1" if v else "0" for v in row) for row in self.matrix]
        return f"FiniteRelation({len(self.minus)}x{len(self.plus)}, {'/'.join(rows)})"

    def holds(self, x: int, z: int) -> bool:
        return bool(self.matrix[x, z])

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        """Bitmask of related minus indices for each plus index."""
        weights = 1 << np.arange(self.matrix.shape[0], dtype=object)
        return tuple(int((weights * col).sum()) for col in self.matrix.T)

    @cached_property
    def _cover(self) -> tuple[int, ...]:
        return minimum_cover(self.column_masks, self.matrix.shape[0])


def make_relation(minus_labels, plus_labels, matrix, provenance=None) -> FiniteRelation:
    return FiniteRelation(tuple(minus_labels), tuple(plus_labels), matrix, provenance)


def from_predicate(minus_labels, plus_labels, pred, provenance=None) -> FiniteRelation:
    """Build a relation from a Python predicate on label pairs."""
    minus_labels = list(minus_labels)
    plus_labels = list(plus_labels)
    mat = [[bool(pred(x, z)) for z in plus_labels] for x in minus_labels]
    return FiniteRelation(tuple(minus_labels), tuple(plus_labels), np.array(mat, dtype=bool).reshape(
        len(minus_labels), len(plus_labels)), provenance)


def dual(rel: FiniteRelation) -> FiniteRelation:
    """``(A-, A+, A)^perp = (A+, A-, {(z, x) : not A(x, z)})``."""
    prov = f"dual({rel.provenance})" if rel.provenance else None
    return FiniteRelation(rel.plus, rel.minus, ~rel.matrix.T, prov)


def min_cover(rel: FiniteRelation) -> tuple[int, ...]:
    """Plus indices of one minimum cover (deterministic)."""
    return rel._cover


def norm(rel: FiniteRelation) -> int:
    """Least number of plus elements such that every minus element is related to one of them."""
    return len(rel._cover)


def dual_norm(rel: FiniteRelation) -> int:
    return norm(dual(rel))


def is_cover(rel: FiniteRelation, columns) -> bool:
    columns = list(columns)
    if not columns:
        return False
    return bool(rel.matrix[:, columns].any(axis=1).all())


def equality(n: int) -> FiniteRelation:
    """``(n, n, =)``; needs every column, so its norm is ``n``."""
    return make_relation(range(n), range(n), np.eye(n, dtype=bool), provenance=f"eq{n}")


def inequality(n: int) -> FiniteRelation:
    """``(n, n, !=)``; admissible for ``n >= 2``."""
    return make_relation(range(n), range(n), ~np.eye(n, dtype=bool), provenance=f"neq{n}")


def enumerate_relations(max_minus: int, max_plus: int | None = None, min_side: int = 1):
    """Yield every admissible relation with side sizes in ``[min_side, max]``.

    Labels are ``0..n-1``.  Shapes come in ``(rows, cols)`` order and, within
    a shape, matrices in lexicographic order of their rows read as bit strings.
    """
    if max_plus is None:
        max_plus = max_minus
    for m in range(min_side, max_minus + 1):
        for n in range(min_side, max_plus + 1):
            full = (1 << n) - 1
            for combo in itertools.product(range(1, full + 1), repeat=m):
                common = full
                for r in combo:
                    common &= r
                if common:
                    # some column is related to every row
                    continue
                mat = [[(r >> (n - 1 - j)) & 1 for j in range(n)] for r in combo]
                yield make_relation(range(m), range(n), np.array(mat, dtype=bool))
