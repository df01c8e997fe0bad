"""Brute-force reference implementations, deliberately naive.

Nothing here imports the package's algorithms; only plain Python lists of
0/1 rows are used, so agreement with the library is real evidence.
"""

from __future__ import annotations

import itertools


def rows(rel):
    return [[bool(v) for v in r] for r in rel.matrix.tolist()]


def norm(mat) -> int:
    """Smallest k such that some k columns cover every row."""
    m, n = len(mat), len(mat[0])
    for k in range(1, n + 1):
        for cols in itertools.combinations(range(n), k):
            if all(any(mat[i][j] for j in cols) for i in range(m)):
                return k
    raise ValueError("no cover")


def dual(mat):
    m, n = len(mat), len(mat[0])
    return [[not mat[i][j] for i in range(m)] for j in range(n)]


def dual_norm(mat) -> int:
    return norm(dual(mat))


def seq_compose(A, B):
    """Rows ``(x, r)`` with ``r`` a tuple ``A+ -> B-``; columns ``(u, w)``; same orders as the library."""
    ma, na, mb, nb = len(A), len(A[0]), len(B), len(B[0])
    out = []
    for x in range(ma):
        for r in itertools.product(range(mb), repeat=na):
            out.append([A[x][u] and B[r[u]][w] for u in range(na) for w in range(nb)])
    return out


def is_morphism(A, B, minus_map, plus_map) -> bool:
    return all(
        (not A[minus_map[b]][a]) or B[b][plus_map[a]]
        for b in range(len(B))
        for a in range(len(A[0]))
    )


def first_morphism(A, B):
    """Walk the full product of maps: minus map outer, plus map inner, both lexicographic."""
    for mm in itertools.product(range(len(A)), repeat=len(B)):
        for pm in itertools.product(range(len(B[0])), repeat=len(A[0])):
            if is_morphism(A, B, mm, pm):
                return mm, pm
    return None


def all_relations(max_side: int):
    """Every admissible 0/1 matrix with sides in ``[1, max_side]``, generated cell by cell."""
    out = []
    for m in range(1, max_side + 1):
        for n in range(1, max_side + 1):
            for cells in itertools.product((False, True), repeat=m * n):
                mat = [list(cells[i * n:(i + 1) * n]) for i in range(m)]
                if all(any(r) for r in mat) and not any(all(mat[i][j] for i in range(m)) for j in range(n)):
                    out.append(mat)
    return out


# -- streams ------------------------------------------------------------------


def endpoints(gaps, count):
    """``a_0 .. a_{count-1}`` by summing gap values one at a time."""
    out = [0]
    while len(out) < count:
        out.append(out[-1] + gaps(len(out) - 1))
    return out


def agreeing_intervals(y, x, ends):
    """Indices ``k`` with ``y = x`` on ``[ends[k], ends[k+1])``."""
    return [k for k in range(len(ends) - 1) if all(y(n) == x(n) for n in range(ends[k], ends[k + 1]))]


def violations(f, g, lo, hi):
    return [n for n in range(lo, hi) if f(n) > g(n)]


def interval_has_agreeing_subinterval(big_ends, k, small_ends, x, xs):
    s, e = big_ends[k], big_ends[k + 1]
    for j in range(len(small_ends) - 1):
        a, b = small_ends[j], small_ends[j + 1]
        if a >= s and b <= e and all(x(n) == xs(n) for n in range(a, b)):
            return True
    return False
