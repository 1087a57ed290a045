"""Class sums, the brute-force center, and class constants for a few small groups."""

# %%
from orbiloop import Field, named_group
from orbiloop.group_algebra import center_brute_force, class_constants, class_sums, same_center

Q, F7 = Field(0), Field(7)

# %% conjugacy classes of S3: sizes 1, 3, 2 in order of least representative
s3 = named_group("S3")
for rep, cls, z in zip(s3.classes.representatives, s3.classes.classes, s3.classes.centralizer_orders):
    print(f"{s3.labels[rep]:>8}  size {len(cls)}  centralizer {z}")

# %% the class sums span the same space as the solutions of x e_g = e_g x
for name in ("S3", "Q8", "D5", "A4", "S4"):
    g = named_group(name)
    print(name, "c(G) =", len(class_sums(g, Q)), " brute force dim =", len(center_brute_force(g, F7)),
          " same span:", same_center(g, F7))

# %% structure constants: z_T z_T = 3 z_e + 3 z_R for the transpositions T of S3
c = class_constants(s3)
for i, row in enumerate(c.c):
    print(s3.labels[s3.classes.representatives[i]], row)
