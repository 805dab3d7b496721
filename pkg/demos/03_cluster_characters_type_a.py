# Cluster characters in type A_3: every triangulation of the hexagon, every
# arc, and the exchange identity across each Auslander-Reiten triangle.
from clusterchar.character import b_matrix, check_undecorated, cluster_character, verify_theorem
from clusterchar.algebra import ar_sequence
from clusterchar.typea import (
    algebra_from_triangulation, all_arcs, ar_triangle, classify, e_module,
    enumerate_triangulations, is_three_cycle,
)

# %%
ts = enumerate_triangulations(3)
print(len(ts), "triangulations of the hexagon")

fan = ts[0]
ta = algebra_from_triangulation(fan)
print("fan", fan.to_json(), "B =", b_matrix(ta.algebra).tolist())
for z in all_arcs(3):
    print(f"  {z}: {cluster_character(e_module(ta, z)).render()}")

# %% the exchange identity holds for every triangle in the sweep
passed = 0
for t in ts:
    alg = algebra_from_triangulation(t)
    for z in all_arcs(3):
        tri = ar_triangle(alg, z)
        passed += verify_theorem(tri.esigma, tri.ez, tri.ey).passed
print(passed, "of", len(ts) * 9, "triangles satisfy C(SZ) C(Z) = C(Y) + 1")

# %% on the 3-cycle the T-summands matter
t = next(t for t in ts if is_three_cycle(algebra_from_triangulation(t)))
ta = algebra_from_triangulation(t)
for z in all_arcs(3):
    tri = ar_triangle(ta, z)
    if classify(t, tri) == "a":
        v = check_undecorated(ar_sequence(tri.ez.module))
        print(f"{z}: undecorated {v.lhs}  vs  {v.rhs}")
        print(f"     with T-summands of Y: {verify_theorem(tri.esigma, tri.ez, tri.ey).passed}")
        break
