"""Quiver Grassmannians over F_q: point counts, counting polynomials,
Euler characteristics, F-polynomials and the fiber census of an exact
sequence."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence, Union

from .algebra import (
    Algebra,
    Representation,
    ShortExactSeq,
    decompose,
    direct_sum,
    hom_dim,
    is_isomorphic,
    make_rep,
    quotient,
    splits,
    submodule,
    zero_module,
)
from .exactfield import DEFAULT_PRIMES, Matrix, RationalPoly, interpolate, primes_from, subspace_rref
from .laurent import LaurentPoly

Subspace = tuple[tuple[int, ...], ...]  # reduced echelon rows
Family = Union[Representation, Callable[[int], Representation]]

DEFAULT_MAX_DIM = 10


class BadDimensionVector(ValueError):
    pass


class NotPolynomialCount(ArithmeticError):
    pass


class SplitSequence(ValueError):
    pass


class NotAString(ValueError):
    pass


class ModuleTooLarge(ValueError):
    pass


# subspace enumeration --------------------------------------------------------


@lru_cache(maxsize=None)
def grassmannian(q: int, d: int, k: int) -> tuple[Subspace, ...]:
    """All k-dimensional subspaces of F_q^d as reduced echelon row bases."""
    out = []
    for pivots in itertools.combinations(range(d), k):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


def _in_span(vec: Sequence[int], rows: Subspace, pivots: Sequence[int], q: int) -> bool:
    v = list(vec)
    for row, pc in zip(rows, pivots):
        c = v[pc]
        if c:
            v = [(a - c * b) % q for a, b in zip(v, row)]
    return not any(v)


def _pivots(rows: Subspace) -> list[int]:
    return [next(i for i, x in enumerate(r) if x) for r in rows]


def _check_e(m: Representation, e: Sequence[int]) -> tuple[int, ...]:
    e = tuple(int(x) for x in e)
    if len(e) != len(m.dims) or any(not (0 <= a <= d) for a, d in zip(e, m.dims)):
        raise BadDimensionVector(f"{e} is not between 0 and {m.dims}")
    return e


def enumerate_subreps(m: Representation, e: Sequence[int]) -> Iterator[tuple[Subspace, ...]]:
    """Yield every subrepresentation of m with dimension vector e, as one
    reduced echelon row basis per vertex."""
    e = _check_e(m, e)
    alg = m.algebra
    quiver = alg.quiver
    q = m.p
    n = quiver.n
    order = sorted(range(n), key=lambda v: (-len(quiver.out_arrows(v)), v))
    mats = [mm.data for mm in m.maps]
    checks: list[list[int]] = [[] for _ in range(n)]
    placed = set()
    for v in order:
        placed.add(v)
        for k, a in enumerate(quiver.arrows):
            if (a.src == v and a.tgt in placed) or (a.tgt == v and a.src in placed):
                if k not in checks[v]:
                    checks[v].append(k)
    choice: list[Subspace | None] = [None] * n
    piv: list[list[int] | None] = [None] * n

    def ok(v: int) -> bool:
        for k in checks[v]:
            a = quiver.arrows[k]
            src_rows = choice[a.src]
            tgt_rows, tgt_piv = choice[a.tgt], piv[a.tgt]
            M = mats[k]
            for u in src_rows:
                img = tuple(sum(x * y for x, y in zip(row, u)) % q for row in M)
                if any(img) and not _in_span(img, tgt_rows, tgt_piv, q):
                    return False
        return True

    def rec(i: int):
        if i == n:
            yield tuple(choice)
            return
        v = order[i]
        for sub in grassmannian(q, m.dims[v], e[v]):
            choice[v] = sub
            piv[v] = _pivots(sub)
            if ok(v):
                yield from rec(i + 1)
        choice[v] = None

    yield from rec(0)


def count_subreps(m: Representation, e: Sequence[int], q: int | None = None) -> int:
    if q is not None and q != m.p:
        m = m.over(q)
    return sum(1 for _ in enumerate_subreps(m, e))


# counting polynomials ------------------------------------------------------------


def _at(family: Family, q: int) -> Representation:
    if isinstance(family, Representation):
        return family.over(q)
    return family(q)


@dataclass(frozen=True)
class GrCount:
    dims: tuple[int, ...]
    e: tuple[int, ...]
    counts: tuple[tuple[int, int], ...]  # (q, number of points)
    counting_poly: RationalPoly
    euler: int


def degree_bound(dims: Sequence[int], e: Sequence[int]) -> int:
    return sum(a * (d - a) for a, d in zip(e, dims))


def euler_char(m: Family, e: Sequence[int], primes: Sequence[int] = DEFAULT_PRIMES,
               dims: Sequence[int] | None = None) -> GrCount:
    """Euler characteristic of Gr_e as the counting polynomial at q = 1.

    Counts at degree-bound + 1 primes, interpolates, and requires one more
    held-out prime to agree.
    """
    if isinstance(m, Representation):
        dims = m.dims
    elif dims is None:
        dims = _at(m, primes[0]).dims
    e = tuple(int(x) for x in e)
    return _euler_char(m, e, tuple(primes), tuple(dims))


@lru_cache(maxsize=None)
def _euler_char(family, e, primes, dims) -> GrCount:
    bound = degree_bound(dims, e)
    qs = primes_from(primes, bound + 2)
    counts = []
    for q in qs:
        mod = _at(family, q)
        counts.append((q, count_subreps(mod, e)))
    poly = interpolate(counts[:-1])
    q_h, c_h = counts[-1]
    if poly(q_h) != c_h:
        raise NotPolynomialCount(
            f"counts {counts} for e={e} are not interpolated by {poly} (held-out q={q_h})")
    chi = poly(1)
    if chi.denominator != 1:
        raise NotPolynomialCount(f"non-integral Euler characteristic {chi} for e={e}")
    return GrCount(tuple(dims), e, tuple(counts), poly, int(chi))


@dataclass(frozen=True)
class FPolynomial:
    value: LaurentPoly
    counts: tuple[GrCount, ...] = ()

    def __post_init__(self):
        if self.value.coefficient((0,) * self.value.n) != 1:
            raise AssertionError("F-polynomial must have constant term 1")

    def render(self) -> str:
        return self.value.render("y")


def f_polynomial(m: Family, primes: Sequence[int] = DEFAULT_PRIMES, max_dim: int = DEFAULT_MAX_DIM,
                 dims: Sequence[int] | None = None) -> FPolynomial:
    """Sum over e of chi(Gr_e(m)) y^e."""
    if isinstance(m, Representation):
        dims = m.dims
    elif dims is None:
        dims = _at(m, primes[0]).dims
    if sum(dims) > max_dim:
        raise ModuleTooLarge(f"total dimension {sum(dims)} exceeds {max_dim}")
    return _f_polynomial(m, tuple(primes), tuple(dims))


@lru_cache(maxsize=None)
def _f_polynomial(family, primes, dims) -> FPolynomial:
    terms = {}
    records = []
    for e in itertools.product(*(range(d + 1) for d in dims)):
        gc = _euler_char(family, tuple(e), primes, dims)
        records.append(gc)
        if gc.euler:
            terms[tuple(e)] = gc.euler
    value = LaurentPoly(len(dims), terms)
    if value.coefficient(dims) != 1:
        raise AssertionError("F-polynomial must have top coefficient 1")
    return FPolynomial(value, tuple(records))


# fiber census -----------------------------------------------------------------------


@dataclass(frozen=True)
class Bucket:
    e: tuple[int, ...]       # dimension vector of A = preimage in L
    f: tuple[int, ...]       # dimension vector of C = image in N
    A: tuple[Subspace, ...]
    C: tuple[Subspace, ...]
    count: int
    expected: int
    hom_dim: int | None      # None for the (0, N) bucket

    @property
    def ok(self) -> bool:
        return self.count == self.expected


@dataclass(frozen=True)
class CensusReport:
    q: int
    g: tuple[int, ...]
    total: int
    buckets: tuple[Bucket, ...]
    stray: int  # submodules landing outside the enumerated pairs (must be 0)

    @property
    def passed(self) -> bool:
        return self.stray == 0 and all(b.ok for b in self.buckets) and \
            self.total == sum(b.count for b in self.buckets)


def _rows_to_columns(rows: Subspace, d: int, p: int) -> Matrix:
    return Matrix.from_columns(rows, d, p) if rows else Matrix.zeros(d, 0, p)


def fiber_census(s: ShortExactSeq, g: Sequence[int], q: int | None = None) -> CensusReport:
    """Bucket Gr_g(M) by U -> (inject^-1(U), project(U)) and compare every
    bucket with q^dim Hom(C, L/A); the (0, N) bucket must be empty."""
    p = s.M.p
    if q is not None and q != p:
        raise ValueError(f"sequence is defined over F_{p}, not F_{q}")
    if splits(s):
        raise SplitSequence("the sequence splits")
    g = _check_e(s.M, g)
    n = len(g)
    L, M, N = s.L, s.M, s.N
    observed: dict[tuple, int] = {}
    total = 0
    for U in enumerate_subreps(M, g):
        total += 1
        Ucols = [_rows_to_columns(U[v], M.dims[v], p) for v in range(n)]
        Q = quotient(M, Ucols).projection
        A, C = [], []
        for v in range(n):
            A.append(subspace_rref((Q[v] @ s.inject[v]).kernel_basis().columns(), p, L.dims[v]))
            C.append(subspace_rref((s.project[v] @ Ucols[v]).columns(), p, N.dims[v]))
        key = (tuple(A), tuple(C))
        observed[key] = observed.get(key, 0) + 1
    buckets = []
    seen = 0
    for e in itertools.product(*(range(min(d, x) + 1) for d, x in zip(L.dims, g))):
        f = tuple(x - a for x, a in zip(g, e))
        if any(b < 0 or b > d for b, d in zip(f, N.dims)):
            continue
        Ls = list(enumerate_subreps(L, e))
        Ns = list(enumerate_subreps(N, f))
        for A in Ls:
            Aq = quotient(L, [_rows_to_columns(A[v], L.dims[v], p) for v in range(n)]).module
            for C in Ns:
                count = observed.get((A, C), 0)
                seen += count
                if sum(e) == 0 and f == N.dims:
                    buckets.append(Bucket(e, f, A, C, count, 0, None))
                    continue
                Cm = submodule(N, [_rows_to_columns(C[v], N.dims[v], p) for v in range(n)])[0]
                h = hom_dim(Cm, Aq)
                buckets.append(Bucket(e, f, A, C, count, p ** h, h))
    return CensusReport(p, g, total, tuple(buckets), total - seen)


# string modules: construction and the combinatorial oracle ---------------------------


@dataclass(frozen=True)
class StringDescriptor:
    """A walk v0 -l1- v1 -l2- ... in the quiver; each letter is
    (arrow id, True) for a direct arrow v_t -> v_{t+1} or (arrow id, False)
    for an inverse one (arrow v_{t+1} -> v_t)."""

    vertices: tuple[int, ...]
    letters: tuple[tuple[str, bool], ...] = ()

    def validate(self, alg: Algebra) -> None:
        q = alg.quiver
        if len(self.vertices) != len(self.letters) + 1 or not self.vertices:
            raise NotAString("need exactly one more vertex than letters")
        for t, (aid, direct) in enumerate(self.letters):
            try:
                a = q.arrows[q.index(aid)]
            except KeyError:
                raise NotAString(f"unknown arrow {aid}") from None
            src, tgt = (self.vertices[t], self.vertices[t + 1]) if direct else \
                (self.vertices[t + 1], self.vertices[t])
            if (a.src, a.tgt) != (src, tgt):
                raise NotAString(f"letter {t} does not connect its vertices")

    def edges(self) -> list[tuple[int, int]]:
        """Coefficient-quiver edges between points 0..k."""
        return [(t, t + 1) if direct else (t + 1, t) for t, (_, direct) in enumerate(self.letters)]

    def reversed(self) -> "StringDescriptor":
        return StringDescriptor(tuple(reversed(self.vertices)),
                                tuple((a, not d) for a, d in reversed(self.letters)))


def string_module(alg: Algebra, s: StringDescriptor) -> Representation:
    s.validate(alg)
    q = alg.quiver
    local: list[int] = []
    dims = [0] * q.n
    for v in s.vertices:
        local.append(dims[v])
        dims[v] += 1
    entries: dict[str, list[list[int]]] = {
        a.id: [[0] * dims[a.src] for _ in range(dims[a.tgt])] for a in q.arrows}
    for t, (aid, direct) in enumerate(s.letters):
        src_pt, tgt_pt = (t, t + 1) if direct else (t + 1, t)
        entries[aid][local[tgt_pt]][local[src_pt]] = 1
    return make_rep(alg, dims, entries)


def string_euler_char(s: StringDescriptor, e: Sequence[int], n: int | None = None) -> int:
    """Number of successor-closed point sets of the coefficient quiver with
    dimension vector e."""
    if len(s.vertices) != len(s.letters) + 1 or not s.vertices:
        raise NotAString("need exactly one more vertex than letters")
    n = n if n is not None else len(e)
    target = tuple(e)
    pts = len(s.vertices)
    succ = [[] for _ in range(pts)]
    for a, b in s.edges():
        succ[a].append(b)
    count = 0
    for mask in range(1 << pts):
        closed = all(not (mask >> a) & 1 or all((mask >> b) & 1 for b in succ[a]) for a in range(pts))
        if not closed:
            continue
        dv = [0] * n
        for t in range(pts):
            if (mask >> t) & 1:
                dv[s.vertices[t]] += 1
        if tuple(dv) == target:
            count += 1
    return count


def enumerate_strings(alg: Algebra, max_points: int) -> list[StringDescriptor]:
    """Walks without immediate backtracking whose string module satisfies the
    relations, one per reversal class, with at most max_points points."""
    q = alg.quiver
    out: list[StringDescriptor] = []
    seen = set()

    def key(s: StringDescriptor):
        return (s.vertices, s.letters)

    def extend(s: StringDescriptor):
        if key(s) in seen or key(s.reversed()) in seen:
            pass
        else:
            try:
                string_module(alg, s)
            except ValueError:
                return
            seen.add(key(s))
            out.append(s)
        if len(s.vertices) >= max_points:
            return
        cur = s.vertices[-1]
        last = s.letters[-1] if s.letters else None
        for a in q.arrows:
            if a.src == cur and not (last and last == (a.id, False)):
                extend(StringDescriptor(s.vertices + (a.tgt,), s.letters + ((a.id, True),)))
            if a.tgt == cur and not (last and last == (a.id, True)):
                extend(StringDescriptor(s.vertices + (a.src,), s.letters + ((a.id, False),)))

    for v in range(q.n):
        extend(StringDescriptor((v,)))
    return out


@lru_cache(maxsize=None)
def _strings(alg: Algebra, max_points: int) -> tuple[StringDescriptor, ...]:
    return tuple(enumerate_strings(alg, max_points))


@dataclass(frozen=True)
class StringFamily:
    """A direct sum of string modules, readable over any prime."""

    algebra: Algebra
    strings: tuple[StringDescriptor, ...]

    def __call__(self, q: int) -> Representation:
        alg = self.algebra.over(q)
        if not self.strings:
            return zero_module(alg)
        return direct_sum([string_module(alg, s) for s in self.strings], alg)


def string_model(m: Representation) -> Family:
    """An integral stand-in for m: a sum of string modules isomorphic to m
    over its base field, or m itself when some summand is not a string."""
    alg = m.algebra
    if m.is_zero():
        return StringFamily(alg, ())
    found = []
    for part in decompose(m):
        for s in _strings(alg, part.total_dim):
            if len(s.vertices) != part.total_dim:
                continue
            cand = string_module(alg, s)
            if cand.dims == part.dims and is_isomorphic(cand, part):
                found.append(s)
                break
        else:
            return m
    return StringFamily(alg, tuple(found))
