# Counting points of quiver Grassmannians over several F_q, interpolating the
# counting polynomial, and assembling F-polynomials.
import itertools

from clusterchar.algebra import Quiver, build_algebra, make_rep, canonical_modules, ar_sequence
from clusterchar.grassmann import (
    count_subreps, euler_char, f_polynomial, fiber_census, enumerate_strings,
    string_euler_char, string_module,
)

# %% lines in a plane: q + 1 points, Euler characteristic 2
point = build_algebra(Quiver.from_edges(1, []), [], 5)
plane = make_rep(point, [2])
gc = euler_char(plane, (1,))
print("counts:", gc.counts, "poly:", gc.counting_poly, "chi:", gc.euler)

# %% Kronecker quiver: a string module and its F-polynomial
kron = build_algebra(Quiver.from_edges(2, [("a", 0, 1), ("b", 0, 1)]), [], 5)
for s in enumerate_strings(kron, 3):
    m = string_module(kron, s)
    print(s.vertices, s.letters, "F =", f_polynomial(m).render())

# %% the combinatorial count of successor-closed subsets agrees
s = enumerate_strings(kron, 4)[-1]
m = string_module(kron, s)
for e in itertools.product(*(range(d + 1) for d in m.dims)):
    assert euler_char(m, e).euler == string_euler_char(s, e)
print("string oracle agrees for", s.vertices)

# %% fibers of U -> (preimage in L, image in N) along an almost split sequence
a2 = build_algebra(Quiver.from_edges(2, [("a", 0, 1)]), [], 3)
seq = ar_sequence(canonical_modules(a2).simples[0])
for g in itertools.product(*(range(d + 1) for d in seq.M.dims)):
    rep = fiber_census(seq, g)
    sizes = [(b.e, b.f, b.count, b.expected) for b in rep.buckets]
    print("g =", g, "points:", count_subreps(seq.M, g), "buckets:", sizes, "ok" if rep.passed else "MISMATCH")
