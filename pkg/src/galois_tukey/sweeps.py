"""Named verification suites: exhaustive finite laws and seeded randomized checks.

Each suite returns a JSON-compatible report with the parameters used, the
number of cases checked, the number of violations and the first few
violating cases.  Reports contain no timing, so equal inputs give equal
reports.
"""

from __future__ import annotations

import random

import numpy as np

from . import catalog, formats
from .combinators import old_product, oldprod_from_seq, prod_from_oldprod, product, seq_compose
from .morphisms import compose, search_morphism, verify
from .relations import FiniteRelation, dual_norm, enumerate_relations, inequality, norm
from .streams import ChoppedReal, engulfs, matches, non_engulf_witness

MAX_EXAMPLES = 5


def _report(suite, params, checked, violations, **extra):
    return {
        "suite": suite,
        "params": params,
        "checked": checked,
        "violations": len(violations),
        "examples": violations[:MAX_EXAMPLES],
        "passed": not violations,
        **extra,
    }


def _rows(rel: FiniteRelation):
    return rel.matrix.astype(int).tolist()


def random_relation(rng: random.Random, min_side: int = 1, max_side: int = 5) -> FiniteRelation:
    """Uniformly random admissible relation (rejection sampling over 0/1 matrices).

    With one row, any related column is related to everything; with one
    column, the same holds for that column.  So both sides get at least two
    elements.
    """
    lo = max(2, min_side)
    m, n = rng.randint(lo, max_side), rng.randint(lo, max_side)
    while True:
        mat = np.array([[rng.random() < 0.5 for _ in range(n)] for _ in range(m)], dtype=bool)
        if mat.any(axis=1).all() and not mat.all(axis=0).any():
            return FiniteRelation(tuple(range(m)), tuple(range(n)), mat)


def prop2(max_side: int = 3) -> dict:
    """``norm(A;B) = norm(A) norm(B)`` and ``dual_norm(A;B) = min`` on every pair with sides ``<= max_side``."""
    rels = list(enumerate_relations(max_side))
    info = [(norm(r), dual_norm(r)) for r in rels]
    bad = []
    for i, A in enumerate(rels):
        for j, B in enumerate(rels):
            S = seq_compose(A, B).relation
            n, dn = norm(S), dual_norm(S)
            if n != info[i][0] * info[j][0] or dn != min(info[i][1], info[j][1]):
                bad.append({"A": _rows(A), "B": _rows(B), "norm": n, "dual_norm": dn})
    return _report("prop2", {"max_side": max_side}, len(rels) ** 2, bad, relations=len(rels))


def _product_violations(A, B):
    nA, nB, dA, dB = norm(A), norm(B), dual_norm(A), dual_norm(B)
    P, O = product(A, B), old_product(A, B)
    out = []
    if norm(P) != max(nA, nB):
        out.append("product norm != max")
    if dual_norm(P) != min(dA, dB):
        out.append("product dual norm != min")
    if dual_norm(O) != min(dA, dB):
        out.append("old product dual norm != min")
    if not max(nA, nB) <= norm(O) <= nA * nB:
        out.append("old product norm outside [max, product]")
    return out


def product_laws(max_side: int = 3, n_random: int = 1000, seed: int = 0, random_max_side: int = 5) -> dict:
    rels = list(enumerate_relations(max_side))
    bad = []
    for A in rels:
        for B in rels:
            for msg in _product_violations(A, B):
                bad.append({"A": _rows(A), "B": _rows(B), "law": msg})
    rng = random.Random(seed)
    for _ in range(n_random):
        A = random_relation(rng, 2, random_max_side)
        B = random_relation(rng, 2, random_max_side)
        for msg in _product_violations(A, B):
            bad.append({"A": _rows(A), "B": _rows(B), "law": msg})
    params = {"max_side": max_side, "n_random": n_random, "seed": seed, "random_max_side": random_max_side}
    return _report("product-laws", params, len(rels) ** 2 + n_random, bad)


def morphism_soundness(max_side: int = 3) -> dict:
    """Every morphism found by search respects the norm inequalities."""
    rels = list(enumerate_relations(max_side))
    info = [(norm(r), dual_norm(r)) for r in rels]
    bad, found = [], 0
    for i, A in enumerate(rels):
        for j, B in enumerate(rels):
            m = search_morphism(A, B)
            if m is None:
                continue
            found += 1
            if not (info[i][0] >= info[j][0] and info[i][1] <= info[j][1]):
                bad.append({"A": _rows(A), "B": _rows(B), "minus_map": list(m.minus_map), "plus_map": list(m.plus_map)})
    none_exists = search_morphism(inequality(3), inequality(2)) is None
    if not none_exists:
        bad.append({"case": "neq3 -> neq2", "error": "a morphism was found"})
    return _report("morphism-soundness", {"max_side": max_side}, len(rels) ** 2, bad,
                   morphisms_found=found, neq3_to_neq2_none=none_exists)


def _chain_violations(A, B):
    out = []
    first = oldprod_from_seq(A, B)
    for a0 in range(len(A.minus)):
        for b0 in range(len(B.minus)):
            second = prod_from_oldprod(A, B, a0, b0)
            both = compose(first, second)
            if not verify(both.minus_map, both.plus_map, both.source, both.target).ok:
                out.append({"A": _rows(A), "B": _rows(B), "basepoints": [a0, b0]})
    return out


def chain(max_side: int = 2, n_random: int = 200, seed: int = 0, random_max_side: int = 3) -> dict:
    """``A;B -> old_product -> product`` verifies, alone and composed, for every basepoint choice.

    The two factor morphisms are verified on construction; the composite is
    re-verified here independently.
    """
    rels = list(enumerate_relations(max_side))
    pairs = [(A, B) for A in rels for B in rels]
    rng = random.Random(seed)
    pairs += [(random_relation(rng, 1, random_max_side), random_relation(rng, 1, random_max_side))
              for _ in range(n_random)]
    bad = []
    for A, B in pairs:
        bad.extend(_chain_violations(A, B))
    params = {"max_side": max_side, "n_random": n_random, "seed": seed, "random_max_side": random_max_side}
    return _report("chain", params, len(pairs), bad)


def _engulf_pair(rng: random.Random):
    small = catalog.random_chopped(rng)
    if rng.random() < 0.6:
        P = catalog.coarsen(small.partition, rng.randint(1, 4))
    else:
        P = catalog.random_partition(rng)
    if rng.random() < 0.6:
        sel = [rng.randrange(2) for _ in range(rng.randint(0, 3))] + [1]
        bits = catalog.matcher_on_intervals(small, sel, catalog.random_stream(rng))
    else:
        bits = catalog.random_stream(rng)
    return ChoppedReal(bits, P), small


def engulf_lemma(n: int = 100, seed: int = 0, matchers: int = 50, max_attempts: int = 100_000) -> dict:
    """Both directions of: the matchers of ``big`` are matchers of ``small`` iff ``big`` engulfs ``small``.

    Forward: for ``n`` engulfing pairs, ``matchers`` sampled matchers of
    ``big`` all match ``small``.  Reverse: for ``n`` non-engulfing pairs, the
    constructed witness matches ``big`` but not ``small``, both exactly.
    """
    rng = random.Random(seed)
    yes, no = [], []
    attempts = 0
    while (len(yes) < n or len(no) < n) and attempts < max_attempts:
        attempts += 1
        big, small = _engulf_pair(rng)
        (yes if engulfs(big, small).answer else no).append((big, small))
    yes, no = yes[:n], no[:n]
    bad = []
    for big, small in yes:
        for _ in range(matchers):
            sel = [rng.randrange(2) for _ in range(rng.randint(0, 3))] + [1]
            y = catalog.matcher_on_intervals(big, sel, catalog.random_stream(rng))
            mb, ms = matches(y, big), matches(y, small)
            if not (mb.answer and ms.answer and mb.exact and ms.exact):
                bad.append({"direction": "forward", "big": formats.to_json(big), "small": formats.to_json(small),
                            "y": y.to_dict()})
    for big, small in no:
        y = non_engulf_witness(big, small)
        mb, ms = matches(y, big), matches(y, small)
        if not (mb.answer and not ms.answer and mb.exact and ms.exact):
            bad.append({"direction": "reverse", "big": formats.to_json(big), "small": formats.to_json(small),
                        "y": y.to_dict()})
    shortfall = []
    if len(yes) < n or len(no) < n:
        shortfall.append({"error": f"only {len(yes)} engulfing / {len(no)} non-engulfing pairs generated"})
    return _report("engulf-lemma", {"n": n, "seed": seed, "matchers": matchers}, len(yes) * matchers + len(no),
                   bad + shortfall, engulfing_pairs=len(yes), non_engulfing_pairs=len(no))


DEFAULT_ENTRIES = ("s_le_d", "addcov", "addb", "maxmin_triple", "r3")


def catalog_suite(n: int = 100, seed: int = 0, entries=DEFAULT_ENTRIES, max_vacuous: float = 0.9) -> dict:
    """Hand-picked instances plus an ``n``-instance seeded sweep per entry."""
    per_entry, bad = {}, []
    for name in entries:
        entry = catalog.ENTRIES[name]
        hand = [(label, entry.run(inst)) for label, inst in entry.hand_picked()]
        swept = entry.sweep(n, seed)
        summary = catalog.summarize(swept)
        per_entry[name] = {"hand_picked": {label: r.status for label, r in hand}, "sweep": summary}
        for label, r in hand:
            if r.status == catalog.FAIL:
                bad.append({"entry": name, "hand_picked": label, "result": r.to_dict()})
        for r in swept:
            if r.status == catalog.FAIL:
                bad.append({"entry": name, "result": r.to_dict()})
        if summary["vacuous_fraction"] > max_vacuous:
            bad.append({"entry": name, "error": f"vacuous fraction {summary['vacuous_fraction']:.2f} > {max_vacuous}"})
    return _report("catalog", {"n": n, "seed": seed, "entries": list(entries)}, n * len(entries), bad,
                   entries=per_entry)


SUITES = {
    "prop2": prop2,
    "product-laws": product_laws,
    "morphism-soundness": morphism_soundness,
    "chain": chain,
    "engulf-lemma": engulf_lemma,
    "catalog": catalog_suite,
}
