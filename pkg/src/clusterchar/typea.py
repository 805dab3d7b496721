"""Type A cluster categories through diagonals of an (n+3)-gon.

Polygon vertices are 1..n+3.  Triangulations play the part of cluster
tilting objects; their arcs, sorted, are the vertices 0..n-1 of the
cluster-tilted algebra (rendered x1..xn).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .algebra import (
    Algebra,
    ProjectiveInput,
    Quiver,
    ar_sequence,
    build_algebra,
    direct_sum,
    injective,
    is_indecomposable,
    is_isomorphic,
    projective,
    radical,
    socle_quotient,
    zero_module,
)
from .character import DecoratedObject, Verdict
from .grassmann import StringDescriptor, StringFamily, string_module

MAX_RANK = 7
DEFAULT_PRIME = 5

# +1: inside a triangle a < b < c the arrows run (a,c) -> (a,b) -> (b,c) -> (a,c).
# -1 reverses every arrow.
ORIENTATION = 1


class RankTooLarge(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Arc:
    i: int
    j: int

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError(f"arc endpoints must satisfy i < j, got {self.i}, {self.j}")

    def pair(self) -> list[int]:
        return [self.i, self.j]

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


def polygon_size(n: int) -> int:
    return n + 3


def is_edge(a: int, b: int, size: int) -> bool:
    """Boundary edge of the polygon (or a degenerate pair)."""
    d = (b - a) % size
    return d in (0, 1, size - 1)


def make_arc(a: int, b: int, size: int) -> Arc | None:
    """Arc between two polygon vertices (taken mod size), None for boundary edges."""
    a = (a - 1) % size + 1
    b = (b - 1) % size + 1
    if is_edge(a, b, size):
        return None
    return Arc(min(a, b), max(a, b))


def all_arcs(n: int) -> list[Arc]:
    size = polygon_size(n)
    return [Arc(i, j) for i in range(1, size + 1) for j in range(i + 2, size + 1)
            if not is_edge(i, j, size)]


def crosses(x: Arc, y: Arc) -> bool:
    if {x.i, x.j} & {y.i, y.j}:
        return False
    return (x.i < y.i < x.j) != (x.i < y.j < x.j)


def rotate(z: Arc, n: int, steps: int = -1) -> Arc:
    size = polygon_size(n)
    arc = make_arc(z.i + steps, z.j + steps, size)
    assert arc is not None
    return arc


@dataclass(frozen=True)
class Triangulation:
    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        arcs = tuple(sorted(set(self.arcs)))
        object.__setattr__(self, "arcs", arcs)
        size = polygon_size(self.n)
        if len(arcs) != self.n:
            raise ValueError(f"a triangulation of the {size}-gon has {self.n} arcs, got {len(arcs)}")
        for a in arcs:
            if a.i < 1 or a.j > size or is_edge(a.i, a.j, size):
                raise ValueError(f"{a} is not a diagonal of the {size}-gon")
        for k, a in enumerate(arcs):
            for b in arcs[k + 1:]:
                if crosses(a, b):
                    raise ValueError(f"{a} and {b} cross")

    @property
    def size(self) -> int:
        return polygon_size(self.n)

    def label(self, z: Arc) -> int:
        return self.arcs.index(z)

    def __contains__(self, z: Arc) -> bool:
        return z in self.arcs

    def to_json(self) -> list[list[int]]:
        return [a.pair() for a in self.arcs]

    @classmethod
    def from_json(cls, n: int, pairs) -> "Triangulation":
        return cls(n, tuple(Arc(min(p), max(p)) for p in pairs))


def _triangulate(poly: tuple[int, ...]) -> list[frozenset]:
    if len(poly) < 4:
        return [frozenset()]
    out = []
    first, last = poly[0], poly[-1]
    for k in range(1, len(poly) - 1):
        own = set()
        if k != 1:
            own.add(Arc(first, poly[k]))
        if k != len(poly) - 2:
            own.add(Arc(poly[k], last))
        for left in _triangulate(poly[:k + 1]):
            for right in _triangulate(poly[k:]):
                out.append(frozenset(own) | left | right)
    return out


@lru_cache(maxsize=None)
def enumerate_triangulations(n: int, max_rank: int = MAX_RANK) -> tuple[Triangulation, ...]:
    if n < 1:
        raise ValueError("rank must be at least 1")
    if n > max_rank:
        raise RankTooLarge(f"rank {n} exceeds the ceiling {max_rank}")
    found = [Triangulation(n, tuple(s)) for s in _triangulate(tuple(range(1, polygon_size(n) + 1)))]
    return tuple(sorted(found, key=lambda t: t.arcs))


def triangles(t: Triangulation) -> list[tuple[int, int, int]]:
    """Triangles a < b < c of t, each side an arc of t or a boundary edge."""
    size = t.size
    arcset = set(t.arcs)

    def side(a, b):
        return is_edge(a, b, size) or Arc(a, b) in arcset

    out = []
    for a in range(1, size + 1):
        for b in range(a + 1, size + 1):
            if not side(a, b):
                continue
            for c in range(b + 1, size + 1):
                if side(a, c) and side(b, c):
                    out.append((a, b, c))
    return out


@dataclass(frozen=True)
class TypeAAlgebra:
    triangulation: Triangulation
    algebra: Algebra
    orientation: int

    def arrow_between(self, x: int, y: int) -> str | None:
        for a in self.algebra.quiver.arrows:
            if (a.src, a.tgt) == (x, y):
                return a.id
        return None


@lru_cache(maxsize=None)
def algebra_from_triangulation(t: Triangulation, p: int = DEFAULT_PRIME,
                               orientation: int = ORIENTATION) -> TypeAAlgebra:
    edges = []
    relations = []
    label = {a: k for k, a in enumerate(t.arcs)}
    for a, b, c in triangles(t):
        cycle = [Arc(a, c), Arc(a, b), Arc(b, c)] if orientation > 0 else [Arc(a, c), Arc(b, c), Arc(a, b)]
        ids = []
        for k in range(3):
            x, y = cycle[k], cycle[(k + 1) % 3]
            if x in label and y in label:
                aid = f"a{label[x] + 1}_{label[y] + 1}"
                edges.append((aid, label[x], label[y]))
                ids.append(aid)
            else:
                ids.append(None)
        if all(ids):
            for k in range(3):
                relations.append([(1, (ids[k], ids[(k + 1) % 3]))])
    quiver = Quiver.from_edges(t.n, sorted(edges, key=lambda e: (e[1], e[2])))
    return TypeAAlgebra(t, build_algebra(quiver, relations, p), orientation)


def crossed_arcs(t: Triangulation, z: Arc) -> list[Arc]:
    """Arcs of t crossed by z, in the order met when walking along z."""
    size = t.size
    a = z.i
    crossed = []
    for w in t.arcs:
        if not crosses(z, w):
            continue
        inside, outside = (w.i, w.j) if z.i < w.i < z.j else (w.j, w.i)
        crossed.append(((inside - a) % size, -((outside - a) % size), w))
    return [w for _, _, w in sorted(crossed)]


def crossing_string(ta: TypeAAlgebra, z: Arc) -> StringDescriptor | None:
    t = ta.triangulation
    seq = crossed_arcs(t, z)
    if not seq:
        return None
    verts = tuple(t.label(w) for w in seq)
    letters = []
    for x, y in zip(verts, verts[1:]):
        fwd = ta.arrow_between(x, y)
        if fwd is not None:
            letters.append((fwd, True))
            continue
        back = ta.arrow_between(y, x)
        if back is None:
            raise AssertionError(f"consecutive crossed arcs {x + 1},{y + 1} share no arrow")
        letters.append((back, False))
    return StringDescriptor(verts, tuple(letters))


def e_module(ta: TypeAAlgebra, z: Arc) -> DecoratedObject:
    """Image of the object z under E, with its T-multiplicity."""
    t, alg = ta.triangulation, ta.algebra
    zero_mult = (0,) * t.n
    if z in t:
        mult = tuple(int(k == t.label(z)) for k in range(t.n))
        return DecoratedObject(zero_module(alg), mult, StringFamily(alg, ()))
    s = crossing_string(ta, z)
    if s is None:
        raise AssertionError(f"{z} crosses no arc but is not in the triangulation")
    return DecoratedObject(string_module(alg, s), zero_mult, StringFamily(alg, (s,)))


@dataclass(frozen=True)
class ArTriangle:
    z: Arc
    sigma_z: Arc
    y_summands: tuple[Arc, ...]
    ez: DecoratedObject
    esigma: DecoratedObject
    ey: DecoratedObject


def mesh(z: Arc, n: int) -> tuple[Arc, tuple[Arc, ...]]:
    size = polygon_size(n)
    sigma = rotate(z, n)
    ys = [make_arc(z.i - 1, z.j, size), make_arc(z.i, z.j - 1, size)]
    return sigma, tuple(sorted(y for y in ys if y is not None))


def ar_triangle(ta: TypeAAlgebra, z: Arc) -> ArTriangle:
    t, alg = ta.triangulation, ta.algebra
    sigma, ys = mesh(z, t.n)
    parts = [e_module(ta, y) for y in ys]
    strings = []
    for y in ys:
        if y not in t:
            strings.append(crossing_string(ta, y))
    mods = [d.module for d in parts if not d.module.is_zero()]
    ymod = direct_sum(mods, alg) if mods else zero_module(alg)
    mult = tuple(sum(d.t_mult[k] for d in parts) for k in range(t.n))
    ey = DecoratedObject(ymod, mult, StringFamily(alg, tuple(strings)))
    return ArTriangle(z, sigma, ys, e_module(ta, z), e_module(ta, sigma), ey)


def iter_triangles(n: int, p: int = DEFAULT_PRIME) -> Iterator[tuple[TypeAAlgebra, ArTriangle]]:
    """Every (triangulation, arc) pair of rank n."""
    for t in enumerate_triangulations(n):
        ta = algebra_from_triangulation(t, p)
        for z in all_arcs(n):
            yield ta, ar_triangle(ta, z)


def instance_name(t: Triangulation, z: Arc) -> str:
    return f"T={t.to_json()} z={z.pair()}"


def classify(t: Triangulation, tri: ArTriangle) -> str:
    if tri.z in t:
        return "c"
    if tri.sigma_z in t:
        return "b"
    return "a"


def crosscheck_remark(ta: TypeAAlgebra, tri: ArTriangle) -> Verdict:
    """Match the E-image of an AR triangle with the algebra engine."""
    t, alg = ta.triangulation, ta.algebra
    case = classify(t, tri)
    EZ, ES, EY = tri.ez.module, tri.esigma.module, tri.ey.module
    name = instance_name(t, tri.z)
    if case == "c":
        j = t.label(tri.z)
        I = injective(alg, j)
        ok = EZ.is_zero() and is_isomorphic(ES, I) and is_isomorphic(EY, socle_quotient(I))
        return Verdict("remark", name, ok, details=(("case", "c"), ("vertex", str(j + 1))))
    if case == "b":
        i = t.label(tri.sigma_z)
        P = projective(alg, i)
        ok = ES.is_zero() and is_isomorphic(EZ, P) and is_isomorphic(EY, radical(P))
        return Verdict("remark", name, ok, details=(("case", "b"), ("vertex", str(i + 1))))
    additive = EY.dims == tuple(a + b for a, b in zip(ES.dims, EZ.dims))
    if not additive or not is_indecomposable(EZ):
        return Verdict("remark", name, False, details=(("case", "a"), ("reason", "mesh dims or EZ")))
    try:
        seq = ar_sequence(EZ)
    except ProjectiveInput:
        return Verdict("remark", name, False, details=(("case", "a"), ("reason", "EZ projective")))
    ok = is_isomorphic(seq.L, ES) and is_isomorphic(seq.M, EY)
    return Verdict("remark", name, ok, str(list(seq.M.dims)), str(list(EY.dims)), (("case", "a"),))


def is_three_cycle(ta: TypeAAlgebra) -> bool:
    q = ta.algebra.quiver
    return q.n == 3 and len(q.arrows) == 3 and len(ta.algebra.relations) == 3
