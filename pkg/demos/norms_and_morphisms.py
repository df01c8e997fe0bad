"""Norms, products, sequential composition and morphism search on small relations."""

from galois_tukey import (
    compose,
    dual_norm,
    equality,
    inequality,
    min_cover,
    norm,
    old_product,
    oldprod_from_seq,
    prod_from_oldprod,
    product,
    search_morphism,
    seq_compose,
    verify,
)

neq2, neq3, eq2 = inequality(2), inequality(3), equality(2)

print("neq3: norm", norm(neq3), "cover", min_cover(neq3), "dual norm", dual_norm(neq3))
print("product(neq3, neq3): norm", norm(product(neq3, neq3)))
print("old_product(neq3, neq3): norm", norm(old_product(neq3, neq3)))

S = seq_compose(eq2, neq3).relation
print(f"seq_compose(eq2, neq3): {len(S.minus)}x{len(S.plus)}, norm {norm(S)} = {norm(eq2)} * {norm(neq3)},"
      f" dual norm {dual_norm(S)}")

m = search_morphism(eq2, neq3)
print("first morphism eq2 -> neq3:", m.minus_map, m.plus_map)
print("morphism neq3 -> neq2:", search_morphism(neq3, neq2))
print("counterexample for maps [0,1], [0,1,0]:", verify([0, 1], [0, 1, 0], neq3, neq2).counterexample)

chain = compose(oldprod_from_seq(neq3, eq2), prod_from_oldprod(neq3, eq2, 0, 0))
print("seq -> product composite verifies:", verify(chain.minus_map, chain.plus_map, chain.source, chain.target).ok)
