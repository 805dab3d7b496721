"""Exact arithmetic over prime fields and the rationals.

Matrices are immutable, carry their prime, and store entries as reduced
Python ints.  Everything here is exact; there is no floating point.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


class DuplicateAbscissa(ValueError):
    pass


class InconsistentSystem(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def primes_from(start: Sequence[int], count: int) -> list[int]:
    """The first `count` primes of `start`, padded with the next primes."""
    out = list(start[:count])
    while len(out) < count:
        out.append(next_prime(out[-1] if out else 1))
    return out


def _check_prime(p: int) -> None:
    if not (2 <= p < 2**31) or not is_prime(p):
        raise ValueError(f"{p} is not a supported prime")


@dataclass(frozen=True)
class FieldElem:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise ValueError("field mismatch")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElem(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FieldElem(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FieldElem(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElem(self._coerce(other), self.p).inverse()

    def __int__(self):
        return self.value


# --------------------------------------------------------------------------
# row reduction on plain lists; Matrix wraps these


def _rref(rows: list[list[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fully reduced row echelon form in place.  Returns (nonzero rows, pivots)."""
    m = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        row = [(x * inv) % p for x in m[r]]
        m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c] % p
                if f:
                    mi = m[i]
                    m[i] = [(a - f * b) % p for a, b in zip(mi, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


@dataclass(frozen=True)
class Matrix:
    p: int
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("entries do not match the declared shape")

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], p: int, cols: int | None = None) -> "Matrix":
        data = tuple(tuple(int(x) % p for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(p, len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls(p, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls(p, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int, p: int) -> "Matrix":
        return cls.from_rows(([c[i] for c in columns] for i in range(nrows)), p, len(columns))

    @classmethod
    def random(cls, rows: int, cols: int, p: int, rng: random.Random) -> "Matrix":
        return cls.from_rows(([rng.randrange(p) for _ in range(cols)] for _ in range(rows)), p, cols)

    # views --------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def entries(self) -> tuple[int, ...]:
        """Row-major flattening."""
        return tuple(x for r in self.data for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def lifted(self) -> list[list[int]]:
        """Entries lifted to the symmetric range (-p/2, p/2]."""
        h = self.p // 2
        return [[x - self.p if x > h else x for x in r] for r in self.data]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.p, self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    # arithmetic -----------------------------------------------------------
    def _same(self, other: "Matrix") -> None:
        if self.p != other.p:
            raise ValueError("matrices over different primes")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.p
        return Matrix(p, self.rows, self.cols, tuple(
            tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        p = self.p
        return Matrix(p, self.rows, self.cols, tuple(tuple((-a) % p for a in r) for r in self.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: int) -> "Matrix":
        p = self.p
        return Matrix(p, self.rows, self.cols, tuple(tuple((a * c) % p for a in r) for r in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.p
        ocols = other.columns()
        data = tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in ocols) for r in self.data)
        return Matrix(p, self.rows, other.cols, data)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.data)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(self.p, self.rows, self.cols + other.cols,
                      tuple(r + s for r, s in zip(self.data, other.data)))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.p, self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.p, len(rows), len(cols), tuple(tuple(self.data[i][j] for j in cols) for i in rows))

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.rows, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # linear algebra ------------------------------------------------------
    def rref(self) -> tuple["Matrix", list[int]]:
        red, piv = _rref(self.tolist(), self.p, self.cols)
        return Matrix(self.p, len(red), self.cols, tuple(tuple(r) for r in red)), piv

    def rank(self) -> int:
        return len(_rref(self.tolist(), self.p, self.cols)[1])

    def kernel_basis(self) -> "Matrix":
        """Columns span the right kernel; the basis is the standard one read
        off the reduced echelon form, one column per free variable."""
        red, piv = _rref(self.tolist(), self.p, self.cols)
        p = self.p
        pivset = set(piv)
        free = [c for c in range(self.cols) if c not in pivset]
        cols = []
        for f in free:
            v = [0] * self.cols
            v[f] = 1
            for r, pc in enumerate(piv):
                v[pc] = (-red[r][f]) % p
            cols.append(v)
        return Matrix.from_columns(cols, self.cols, p)

    def column_space(self) -> "Matrix":
        """Reduced basis of the column space, as columns."""
        red, _ = _rref(self.T.tolist(), self.p, self.rows)
        return Matrix.from_columns(red, self.rows, self.p)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("non-square matrix")
        n = self.rows
        aug = self.hstack(Matrix.identity(n, self.p))
        red, piv = _rref(aug.tolist(), self.p, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return Matrix.from_rows((r[n:] for r in red[:n]), self.p, n)

    def solve(self, rhs: "Matrix") -> "Matrix":
        """Some X with self @ X == rhs; raises InconsistentSystem otherwise."""
        self._same(rhs)
        if rhs.rows != self.rows:
            raise ValueError("row mismatch in solve")
        n = self.cols
        aug = self.hstack(rhs)
        red, piv = _rref(aug.tolist(), self.p, n + rhs.cols)
        if any(c >= n for c in piv):
            raise InconsistentSystem("right-hand side not in the column space")
        x = [[0] * rhs.cols for _ in range(n)]
        for r, c in enumerate(piv):
            x[c] = red[r][n:]
        return Matrix.from_rows(x, self.p, rhs.cols)


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> Matrix:
    return m.kernel_basis()


def block_diag(blocks: Sequence[Matrix], p: int) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.data):
            out[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return Matrix.from_rows(out, p, cols)


def span_rank(vectors: Sequence[Sequence[int]], p: int, length: int) -> int:
    if not vectors:
        return 0
    return len(_rref([list(v) for v in vectors], p, length)[1])


def subspace_rref(vectors: Sequence[Sequence[int]], p: int, length: int) -> tuple[tuple[int, ...], ...]:
    """Canonical reduced basis (rows) of the span of `vectors`."""
    if not vectors:
        return ()
    red, _ = _rref([list(v) for v in vectors], p, length)
    return tuple(tuple(r) for r in red)


# --------------------------------------------------------------------------
# univariate polynomials over F_p (coefficient lists, lowest degree first)


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    m = _ptrim([x % p for x in m])
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        f = (a[-1] * inv) % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _ptrim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    b = _ptrim([x % p for x in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(x * inv) % p for x in a]
    return a


def poly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(base, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def poly_eval(a: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def poly_roots(a: Sequence[int], p: int, seed: int = 0) -> list[int]:
    """Distinct roots in F_p of a nonzero polynomial, sorted."""
    a = _ptrim([x % p for x in a])
    if len(a) <= 1:
        return []
    if p < 4096:
        return [x for x in range(p) if poly_eval(a, x, p) == 0]
    # gcd with x^p - x isolates the product of distinct linear factors
    xp = poly_powmod([0, 1], p, a, p)
    xp += [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = poly_gcd(a, _ptrim(xp), p)
    rng = random.Random(seed)
    roots: list[int] = []
    stack = [g] if len(g) > 1 else []
    while stack:
        f = stack.pop()
        if len(f) == 2:
            roots.append((-f[0] * pow(f[1], -1, p)) % p)
            continue
        while True:
            c = rng.randrange(p)
            h = poly_powmod([c, 1], (p - 1) // 2, f, p)
            h = h + [0] * (1 - len(h)) if h else [0]
            h[0] = (h[0] - 1) % p
            d = poly_gcd(f, _ptrim(h), p)
            if 1 < len(d) < len(f):
                break
        stack.append(d)
        q = _poly_div_exact(f, d, p)
        stack.append(q)
    return sorted(roots)


def _poly_div_exact(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    for k in range(len(out) - 1, -1, -1):
        f = (a[k + len(b) - 1] * inv) % p
        out[k] = f
        for i, c in enumerate(b):
            a[k + i] = (a[k + i] - f * c) % p
    return _ptrim(out)


def minimal_polynomial(m: Matrix) -> list[int]:
    """Monic minimal polynomial of a square matrix (lowest degree first)."""
    n = m.rows
    p = m.p
    if n == 0:
        return [1]
    powers = [Matrix.identity(n, p).entries()]
    cur = Matrix.identity(n, p)
    while True:
        cur = cur @ m
        target = cur.entries()
        basis = Matrix.from_columns(powers, n * n, p)
        try:
            x = basis.solve(Matrix.from_columns([target], n * n, p))
        except InconsistentSystem:
            powers.append(target)
            continue
        coeffs = [(-x.data[i][0]) % p for i in range(len(powers))]
        return coeffs + [1]


# --------------------------------------------------------------------------
# rational polynomials and interpolation


@dataclass(frozen=True)
class RationalPoly:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        c = [Fraction(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            else:
                term = f"{c}*{mono}" if mono else str(c)
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")


def interpolate(points: Sequence[tuple[int, int]]) -> RationalPoly:
    """Unique polynomial of degree < len(points) through the points (Newton form)."""
    if not points:
        raise ValueError("need at least one point")
    xs = [Fraction(q) for q, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("abscissas must be pairwise distinct")
    table = [Fraction(c) for _, c in points]
    n = len(xs)
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * n
    # expand from the innermost Newton term outwards
    basis = [Fraction(1)]
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += newton[k] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= xs[k] * b
        basis = nxt
    return RationalPoly(tuple(coeffs))
