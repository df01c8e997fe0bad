"""Product, old product and sequential composition of finite relations.

Index conventions (all row-major, left factor outer):

* product:  minus ``L:x`` for x in A- then ``R:y`` for y in B-; plus ``(a|b)``
* old product: minus ``(x|y)``, plus ``(a|b)``
* sequential composition ``A;B``: minus ``(x|<r0,r1,...>)`` where the
  function tables ``A+ -> B-`` are enumerated lexicographically; plus ``(u|w)``
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .morphisms import FiniteMorphism, MorphismError
from .relations import FiniteRelation

DEFAULT_SEQ_CAP = 10**6


class CapExceeded(ValueError):
    pass


def _pair(x, y) -> str:
    return f"({x}|{y})"


def _prov(name, *factors) -> str:
    return f"{name}(" + ", ".join(f.provenance or "?" for f in factors) + ")"


def product(A: FiniteRelation, B: FiniteRelation) -> FiniteRelation:
    """Categorical product: ``C(x, (a, b))`` iff x comes from A- and ``A(x, a)``, or from B- and ``B(x, b)``."""
    na, nb = len(A.plus), len(B.plus)
    top = np.repeat(A.matrix, nb, axis=1)   # column (a, b) -> A(x, a)
    bottom = np.tile(B.matrix, (1, na))     # column (a, b) -> B(y, b)
    return FiniteRelation(
        tuple(f"L:{x}" for x in A.minus) + tuple(f"R:{y}" for y in B.minus),
        tuple(_pair(a, b) for a in A.plus for b in B.plus),
        np.vstack([top, bottom]),
        _prov("product", A, B),
    )


def old_product(A: FiniteRelation, B: FiniteRelation) -> FiniteRelation:
    """``C((x, y), (a, b))`` iff ``A(x, a)`` and ``B(y, b)``; the matrix is a Kronecker product."""
    return FiniteRelation(
        tuple(_pair(x, y) for x in A.minus for y in B.minus),
        tuple(_pair(a, b) for a in A.plus for b in B.plus),
        np.kron(A.matrix, B.matrix).astype(bool),
        _prov("old_product", A, B),
    )


@dataclass(frozen=True)
class FunctionTable:
    """A total function ``range(domain_size) -> range(codomain_size)``."""

    values: tuple[int, ...]
    codomain_size: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        for i, v in enumerate(self.values):
            if not 0 <= v < self.codomain_size:
                raise ValueError(f"table value {v} at {i} outside range({self.codomain_size})")

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def __call__(self, u: int) -> int:
        return self.values[u]

    def index(self) -> int:
        """Position in the lexicographic enumeration of all such tables."""
        k = 0
        for v in self.values:
            k = k * self.codomain_size + v
        return k

    def label(self) -> str:
        return "<" + ",".join(map(str, self.values)) + ">"

    @classmethod
    def constant(cls, value: int, domain_size: int, codomain_size: int) -> FunctionTable:
        return cls((value,) * domain_size, codomain_size)


def function_tables(domain_size: int, codomain_size: int):
    for values in itertools.product(range(codomain_size), repeat=domain_size):
        yield FunctionTable(values, codomain_size)


@dataclass(frozen=True, eq=False)
class SeqComposition:
    """``A;B`` together with the bookkeeping needed to index into it."""

    relation: FiniteRelation
    left: FiniteRelation
    right: FiniteRelation

    @property
    def n_tables(self) -> int:
        return len(self.right.minus) ** len(self.left.plus)

    def minus_index(self, x: int, table: FunctionTable | Sequence[int]) -> int:
        if not isinstance(table, FunctionTable):
            table = FunctionTable(table, len(self.right.minus))
        if table.domain_size != len(self.left.plus) or table.codomain_size != len(self.right.minus):
            raise ValueError("function table has the wrong shape for this composition")
        return x * self.n_tables + table.index()

    def minus_element(self, index: int) -> tuple[int, FunctionTable]:
        x, k = divmod(index, self.n_tables)
        values = []
        base = len(self.right.minus)
        for _ in range(len(self.left.plus)):
            k, r = divmod(k, base)
            values.append(r)
        return x, FunctionTable(reversed(values), base)

    def plus_index(self, u: int, w: int) -> int:
        return u * len(self.right.plus) + w

    def plus_element(self, index: int) -> tuple[int, int]:
        return divmod(index, len(self.right.plus))


def seq_compose(A: FiniteRelation, B: FiniteRelation, cap: int = DEFAULT_SEQ_CAP) -> SeqComposition:
    """``A;B = (A- x B-^{A+}, A+ x B+, {((x, r), (u, w)) : A(x, u) and B(r(u), w)})``."""
    n_tables = len(B.minus) ** len(A.plus)
    if n_tables > cap:
        raise CapExceeded(f"|B-|^|A+| = {n_tables} exceeds cap {cap}")
    tables = np.array(list(itertools.product(range(len(B.minus)), repeat=len(A.plus))), dtype=np.intp)
    tables = tables.reshape(n_tables, len(A.plus))
    # right[k, u, w] = B(table_k(u), w)
    right = B.matrix[tables]
    full = A.matrix[:, None, :, None] & right[None, :, :, :]
    mat = full.reshape(len(A.minus) * n_tables, len(A.plus) * len(B.plus))
    labels = tuple(
        _pair(x, "<" + ",".join(str(B.minus[v]) for v in row) + ">") for x in A.minus for row in tables
    )
    rel = FiniteRelation(
        labels,
        tuple(_pair(u, w) for u in A.plus for w in B.plus),
        mat,
        _prov("seq_compose", A, B),
    )
    return SeqComposition(rel, A, B)


def curry_triple(alpha, beta, gamma, A: FiniteRelation, B: FiniteRelation, C: FiniteRelation,
                 cap: int = DEFAULT_SEQ_CAP) -> FiniteMorphism:
    """Assemble ``A;B -> C`` from a max-min triple.

    ``alpha[c]`` is in A-, ``beta[c][u]`` in B-, ``gamma[u][w]`` in C+.  The
    key property is ``A(alpha(c), u) and B(beta(c, u), w) => C(c, gamma(u, w))``;
    when it fails a :class:`~galois_tukey.morphisms.MorphismError` is raised
    whose ``counterexample`` is ``(c, (u, w))``.
    """
    seq = seq_compose(A, B, cap)
    nc, nu, nw = len(C.minus), len(A.plus), len(B.plus)
    alpha = list(alpha)
    beta = [list(row) for row in beta]
    gamma = [list(row) for row in gamma]
    if len(alpha) != nc or len(beta) != nc or any(len(r) != nu for r in beta):
        raise ValueError("alpha/beta are not total on C-")
    if len(gamma) != nu or any(len(r) != nw for r in gamma):
        raise ValueError("gamma is not total on A+ x B+")
    minus_map = [seq.minus_index(alpha[c], FunctionTable(beta[c], len(B.minus))) for c in range(nc)]
    plus_map = [gamma[u][w] for u in range(nu) for w in range(nw)]
    try:
        return FiniteMorphism(seq.relation, C, minus_map, plus_map)
    except MorphismError as exc:
        c, k = exc.counterexample
        u, w = seq.plus_element(k)
        raise MorphismError(
            f"key property fails at c={c}, (u, w)=({u}, {w})", (c, (u, w))
        ) from None


def uncurry(m: FiniteMorphism, seq: SeqComposition):
    """Split a morphism ``A;B -> C`` back into ``(alpha, beta, gamma)``."""
    if m.source != seq.relation:
        raise ValueError("morphism does not start at this sequential composition")
    alpha, beta = [], []
    for idx in m.minus_map:
        x, table = seq.minus_element(idx)
        alpha.append(x)
        beta.append(list(table.values))
    nw = len(seq.right.plus)
    gamma = [list(m.plus_map[u * nw:(u + 1) * nw]) for u in range(len(seq.left.plus))]
    return alpha, beta, gamma


def oldprod_from_seq(A: FiniteRelation, B: FiniteRelation, cap: int = DEFAULT_SEQ_CAP) -> FiniteMorphism:
    """``A;B -> old_product(A, B)``: ``(x, y)`` goes to ``(x, constant y)``; identity on plus sides."""
    seq = seq_compose(A, B, cap)
    target = old_product(A, B)
    nu, ny = len(A.plus), len(B.minus)
    minus_map = [
        seq.minus_index(x, FunctionTable.constant(y, nu, ny))
        for x in range(len(A.minus))
        for y in range(ny)
    ]
    return FiniteMorphism(seq.relation, target, minus_map, range(len(target.plus)))


def prod_from_oldprod(A: FiniteRelation, B: FiniteRelation, a0: int, b0: int) -> FiniteMorphism:
    """``old_product(A, B) -> product(A, B)`` using basepoints ``a0`` in A- and ``b0`` in B-."""
    if not 0 <= a0 < len(A.minus):
        raise IndexError(f"basepoint a0={a0} outside A-")
    if not 0 <= b0 < len(B.minus):
        raise IndexError(f"basepoint b0={b0} outside B-")
    nb = len(B.minus)
    minus_map = [x * nb + b0 for x in range(len(A.minus))] + [a0 * nb + y for y in range(nb)]
    source = old_product(A, B)
    return FiniteMorphism(source, product(A, B), minus_map, range(len(source.plus)))
