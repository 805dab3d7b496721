# Representations of a bound quiver over F_5: Hom, Ext, tau and almost split
# sequences for the oriented 3-cycle with all paths of length two set to zero.
from pathlib import Path

from clusterchar.algebra import (
    ar_sequence, canonical_modules, decompose, ext1_dim, hom_dim, indecomposables,
    is_projective, load_json, tau,
)

# %%
alg, mods = load_json(Path(__file__).with_name("three_cycle.json"))
print("dim of the algebra:", alg.dimension)

cm = canonical_modules(alg)
print("projectives:", [P.dims for P in cm.projectives])
print("injectives: ", [I.dims for I in cm.injectives])

# %% Ext between simples reads off the arrows
S = cm.simples
for i, x in enumerate(S):
    print(f"Ext^1(S{i + 1}, -):", [ext1_dim(x, y) for y in S])

# %% tau rotates the simples around the cycle
for i, x in enumerate(S):
    print(f"tau S{i + 1} =", tau(x).dims)

# %% every non-projective indecomposable ends an almost split sequence
for x in indecomposables(alg):
    if is_projective(x):
        continue
    seq = ar_sequence(x)
    parts = [m.dims for m in decompose(seq.M)]
    print(f"0 -> {seq.L.dims} -> {parts} -> {x.dims} -> 0")

print("Hom(P1, S1) =", hom_dim(mods["P1"], mods["S1"]))
