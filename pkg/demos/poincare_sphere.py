"""The Poincare homology sphere S^3 / SL(2,5): the orbifold loop ring is HH(LS^3) (x) k^9."""

# %%
from orbiloop import Field, default_catalog
from orbiloop.conditions import OrbifoldProblem, assemble
from orbiloop.groups import build_matrix_group

cat = default_catalog()
group = build_matrix_group(5)
print(group.name, "order", group.order, "classes", len(group.classes))

# %% over F7 (flagged algebraically closed) the center splits as k^9
for field in (Field(7, alg_closed=True), Field(0), Field(5)):
    rep = assemble(OrbifoldProblem(cat.manifold("S3"), cat.ambient("Spin(3)"), group, field), (-6, 8))
    print(f"\nk = {field}: applicable={rep.applicable}  verdict={rep.triviality_verdict.value}"
          f"  reason={rep.reason}")
    if rep.applicable:
        print("  center:", rep.result_ring.get("center_split", f"dim {rep.c_G}"))
        for row in rep.dimensions:
            print(f"  degree {row['degree']:>3}: {row['dim_A']} x 9 = {row['dim_result']}")
