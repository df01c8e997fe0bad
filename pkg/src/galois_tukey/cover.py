"""Exact minimum set cover by branch and bound over bitmasks.

Rows are the elements to cover, columns the candidate sets.  Everything is
encoded as Python ints used as bitsets, which keeps the inner loop cheap for
the desk-scale instances this package deals with (a few hundred rows, a few
dozen columns).
"""

from __future__ import annotations

from typing import Sequence


class CoverError(ValueError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reduce_rows(row_cols: list[int]) -> list[int]:
    """Indices of rows whose column sets are minimal under inclusion.

    A row whose column set contains another row's column set is covered
    whenever the smaller row is, so it can be dropped.  Among equal sets the
    lowest index survives.
    """
    order = sorted(range(len(row_cols)), key=lambda r: (row_cols[r].bit_count(), r))
    kept: list[int] = []
    for r in order:
        m = row_cols[r]
        if not any(row_cols[k] & m == row_cols[k] for k in kept):
            kept.append(r)
    return sorted(kept)


def _reduce_cols(col_rows: list[int]) -> list[int]:
    """Indices of columns not dominated by another column (lowest index wins ties)."""
    order = sorted(range(len(col_rows)), key=lambda j: (-col_rows[j].bit_count(), j))
    kept: list[int] = []
    for j in order:
        m = col_rows[j]
        if m and not any(col_rows[k] & m == m for k in kept):
            kept.append(j)
    return sorted(kept)


class _Search:
    def __init__(self, col_rows: list[int], n_rows: int):
        self.col_rows = col_rows
        self.n_cols = len(col_rows)
        self.row_cols = [0] * n_rows
        for j, rows in enumerate(col_rows):
            for i in _bits(rows):
                self.row_cols[i] |= 1 << j
        self.best: list[int] | None = None

    def greedy(self, universe: int) -> list[int]:
        chosen = []
        left = universe
        while left:
            j = max(range(self.n_cols), key=lambda c: ((self.col_rows[c] & left).bit_count(), -c))
            chosen.append(j)
            left &= ~self.col_rows[j]
        return sorted(chosen)

    def lower_bound(self, uncovered: int, allowed: int) -> int:
        # rows with pairwise disjoint (allowed) column sets each need their own column
        rows = sorted(_bits(uncovered), key=lambda i: ((self.row_cols[i] & allowed).bit_count(), i))
        used = 0
        count = 0
        for i in rows:
            cols = self.row_cols[i] & allowed
            if not cols:
                return self.n_cols + 1
            if not cols & used:
                used |= cols
                count += 1
        return count

    def run(self, universe: int) -> list[int]:
        self.best = self.greedy(universe)
        self._dfs(universe, (1 << self.n_cols) - 1, [])
        return sorted(self.best)

    def _dfs(self, uncovered: int, allowed: int, chosen: list[int]) -> None:
        if not uncovered:
            if len(chosen) < len(self.best):
                self.best = list(chosen)
            return
        if len(chosen) + self.lower_bound(uncovered, allowed) >= len(self.best):
            return
        pivot = min(_bits(uncovered), key=lambda i: ((self.row_cols[i] & allowed).bit_count(), i))
        branch = self.row_cols[pivot] & allowed
        for j in _bits(branch):
            chosen.append(j)
            self._dfs(uncovered & ~self.col_rows[j], allowed, chosen)
            chosen.pop()
            # every cover using j has been explored; later siblings exclude it
            allowed &= ~(1 << j)
            if len(chosen) + 1 >= len(self.best):
                return


def minimum_cover(col_rows: Sequence[int], n_rows: int) -> tuple[int, ...]:
    """Return the indices of a minimum family of columns covering all rows.

    ``col_rows[j]`` is the bitmask of rows covered by column ``j``.  The result
    is deterministic: dominated rows and columns are pruned with lowest-index
    tie-breaking, then a depth-first branch and bound explores columns in
    increasing index order with a greedy initial bound and a disjoint-row
    lower bound.
    """
    col_rows = [int(m) for m in col_rows]
    universe = (1 << n_rows) - 1
    union = 0
    for m in col_rows:
        union |= m
    if union & universe != universe:
        missing = (universe & ~union).bit_length() - 1
        raise CoverError(f"row {missing} is not covered by any column")
    if n_rows == 0:
        return ()

    cols = _reduce_cols(col_rows)
    row_cols = [0] * n_rows
    for pos, j in enumerate(cols):
        for i in _bits(col_rows[j]):
            row_cols[i] |= 1 << pos
    rows = _reduce_rows(row_cols)

    # re-index onto the reduced instance
    row_pos = {r: k for k, r in enumerate(rows)}
    reduced = []
    for j in cols:
        m = 0
        for i in _bits(col_rows[j]):
            if i in row_pos:
                m |= 1 << row_pos[i]
        reduced.append(m)
    found = _Search(reduced, len(rows)).run((1 << len(rows)) - 1)
    return tuple(sorted(cols[k] for k in found))


def is_cover(col_rows: Sequence[int], n_rows: int, chosen) -> bool:
    union = 0
    for j in chosen:
        union |= col_rows[j]
    universe = (1 << n_rows) - 1
    return union & universe == universe
