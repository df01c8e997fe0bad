import sys
from pathlib import Path

import numpy as np
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from galois_tukey import FiniteRelation  # noqa: E402


@st.composite
def admissible_matrices(draw, max_side=5):
    """0/1 matrices with no empty row and no full column (both sides >= 2)."""
    m = draw(st.integers(2, max_side))
    n = draw(st.integers(2, max_side))
    rows = draw(st.lists(st.lists(st.booleans(), min_size=n, max_size=n), min_size=m, max_size=m))
    for i, r in enumerate(rows):
        if not any(r):
            r[i % n] = True
    for j in range(n):
        if all(r[j] for r in rows):
            rows[j % m][j] = False
            if not any(rows[j % m]):
                rows[j % m][(j + 1) % n] = True
    mat = np.array(rows, dtype=bool)
    if not mat.any(axis=1).all() or mat.all(axis=0).any():
        from hypothesis import assume

        assume(False)
    return rows


@st.composite
def relations(draw, max_side=5):
    rows = draw(admissible_matrices(max_side))
    return FiniteRelation(tuple(range(len(rows))), tuple(range(len(rows[0]))), np.array(rows, dtype=bool))
