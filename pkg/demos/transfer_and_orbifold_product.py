"""The sector model for Z/2 and S3: transfer, projection, and the literal orbifold product."""

# %%
from orbiloop import Field, GradedPresentation, SectorModel, named_group
from orbiloop.sectors import (orbifold_product, projection_p, tensor_iso_phi, transfer_mu,
                              verify_theorem)

Q = Field(0)
k = GradedPresentation.build([], name="k")

# %% Z/2 with A = k.  mu([s]) = 2 e_s, and ([s], 1) o ([s], 1) = 4 ([e], 1)
z2 = SectorModel(named_group("C2"), k, Q)
s = z2.quotient({(1, ()): 1})
print("mu([s])      =", transfer_mu(s))
print("[s] o [s]    =", orbifold_product(s, s))
print("phi([s])     =", tensor_iso_phi(s))
print("phi([s] o [s]) == phi([s])^2:", tensor_iso_phi(s * s) == tensor_iso_phi(s) * tensor_iso_phi(s))

# %% the literal product has unit ([e], 1) / |G|^2
au = GradedPresentation.build([("a", -3, 2), ("u", 2)], name="HH(LS3)")
model = SectorModel(named_group("S3"), au, Q)
e = model.quotient({(model.classes.class_of[0], au.unit): 1})
y = model.quotient({(2, (1, 1)): 1})
print("([e],1) o y  =", e * y, " (36 y)")
print("p(mu(y))     =", projection_p(transfer_mu(y)), " (6 y)")

# %% exhaustive check of phi on S3 over F7
rep = verify_theorem(named_group("S3"), au, Field(7), (-6, 8))
print("theorem check:", rep.ok, "pairs:", rep.pairs_checked)
for d, row in sorted(rep.dimensions.items()):
    print(f"  degree {d:>3}: dim A {row['dim_A']}, quotient {row['dim_quotient']}")
