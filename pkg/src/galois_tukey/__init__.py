"""Relations, Galois-Tukey morphisms and exact checks on finitely presented reals."""

from .combinators import (
    CapExceeded,
    FunctionTable,
    SeqComposition,
    curry_triple,
    old_product,
    oldprod_from_seq,
    prod_from_oldprod,
    product,
    seq_compose,
    uncurry,
)
from .morphisms import (
    FiniteMorphism,
    MorphismError,
    SearchCapExceeded,
    Verification,
    compose,
    dualize,
    identity,
    search_morphism,
    transport_cover,
    verify,
)
from .relations import (
    AdmissibilityError,
    FiniteRelation,
    dual,
    dual_norm,
    enumerate_relations,
    equality,
    from_predicate,
    inequality,
    is_cover,
    make_relation,
    min_cover,
    norm,
)
from .streams import (
    EXACT,
    HORIZON,
    ChoppedReal,
    Horizon,
    InfiniteSubset,
    IntervalPartition,
    Verdict,
    almost_constant,
    engulfs,
    increasing_enumeration,
    leq_star,
    matches,
    next_element_fn,
    non_engulf_witness,
    splits,
)
from .ulp import UlpFunction

__all__ = [name for name in dir() if not name.startswith("_")]
