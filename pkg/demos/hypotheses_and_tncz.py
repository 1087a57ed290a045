"""Which triviality criterion fires for various manifolds, ambient groups and fields."""

# %%
from orbiloop import Field, default_catalog, named_group
from orbiloop.conditions import OrbifoldProblem, check_trivial_action, tncz_lookup

cat = default_catalog()

# %% loop homology dimensions near the fundamental class
for name in ("S2", "CP2", "SU3"):
    m = cat.manifold(name)
    print(name, {p: m.top_rank(Field(p)) for p in (0, 2, 3)}, "top ranks by characteristic")

# %% verdicts
cases = [("S3", "Spin(3)", 7), ("S3", "SO(3)", 7), ("SU3", "SO(3)", 3), ("CP2", "SO(3)", 3),
         ("CP3", "SO(3)", 2), ("SU3", "U(1)", 3)]
for m, a, p in cases:
    prob = OrbifoldProblem(cat.manifold(m), cat.ambient(a), named_group("C5"), Field(p))
    print(f"{m:>4} / {a:<8} F{p}: tncz={tncz_lookup(prob.manifold, p).value:<7} "
          f"-> {check_trivial_action(prob).value}")
