"""Integer Laurent polynomials in a fixed number of variables."""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

ExpVector = tuple[int, ...]


class ArityMismatch(ValueError):
    pass


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    Terms are kept sorted lexicographically by exponent vector, which is
    also the rendering order.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[ExpVector, int] | Iterable[tuple[ExpVector, int]] = ()):
        acc: dict[ExpVector, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ArityMismatch(f"exponent {e} has length {len(e)}, expected {n}")
            acc[e] = acc.get(e, 0) + int(c)
        self.n = n
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def constant(cls, n: int, c: int) -> "LaurentPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def one(cls, n: int) -> "LaurentPoly":
        return cls.constant(n, 1)

    @classmethod
    def variable(cls, n: int, i: int) -> "LaurentPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    # views ---------------------------------------------------------------
    @property
    def terms(self) -> dict[ExpVector, int]:
        return dict(self._terms)

    def items(self) -> tuple[tuple[ExpVector, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, e: Sequence[int]) -> int:
        return self.terms.get(tuple(e), 0)

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "LaurentPoly") -> None:
        if self.n != other.n:
            raise ArityMismatch(f"{self.n} variables vs {other.n}")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.constant(self.n, other)
        self._check(other)
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        return LaurentPoly(self.n, self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, ((e, -c) for e, c in self._terms))

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        acc: dict[ExpVector, int] = {}
        for e, c in self._terms:
            for f, d in other._terms:
                k = tuple(a + b for a, b in zip(e, f))
                acc[k] = acc.get(k, 0) + c * d
        return LaurentPoly(self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only monomials with unit coefficient can be inverted")
            (e, c), = self._terms
            return LaurentPoly(self.n, {tuple(x * k for x in e): c ** (-k)})
        out = LaurentPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._terms))
        return self._hash

    # rendering ------------------------------------------------------------
    def render(self, var: str = "x") -> str:
        if not self._terms:
            return "0"
        out = ""
        for k, (e, c) in enumerate(self._terms):
            factors = []
            for i, a in enumerate(e):
                if a == 1:
                    factors.append(f"{var}{i + 1}")
                elif a != 0:
                    factors.append(f"{var}{i + 1}^{a}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __str__(self) -> str:
        return self.render("x")

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render('x')!r})"


def monomial(e: Sequence[int]) -> LaurentPoly:
    e = tuple(e)
    return LaurentPoly(len(e), {e: 1})


def multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def mat_vec(B: Sequence[Sequence[int]], v: Sequence[int]) -> ExpVector:
    return tuple(sum(b * x for b, x in zip(row, v)) for row in B)


def substitute_yhat(f: LaurentPoly, B: Sequence[Sequence[int]]) -> LaurentPoly:
    """Evaluate f at y_j = prod_i x_i^{B[i][j]}; y^e goes to x^{B e}."""
    n = f.n
    if len(B) != n or any(len(row) != n for row in B):
        raise ArityMismatch(f"B must be {n}x{n}")
    acc: dict[ExpVector, int] = {}
    for e, c in f.items():
        if any(a < 0 for a in e):
            raise ValueError("substitution needs nonnegative y-exponents")
        k = mat_vec(B, e)
        acc[k] = acc.get(k, 0) + c
    return LaurentPoly(n, acc)


def parse(text: str, n: int, var: str = "x") -> LaurentPoly:
    """Inverse of LaurentPoly.render, used by golden-file tests."""
    import re

    text = text.strip()
    if text == "0":
        return LaurentPoly(n)
    tokens = re.split(r"\s+([+-])\s+", text)
    signs = ["+"] + tokens[1::2]
    bodies = tokens[0::2]
    out: dict[ExpVector, int] = {}
    for s, body in zip(signs, bodies):
        sign = -1 if s == "-" else 1
        if body.startswith("-"):
            sign, body = -sign, body[1:]
        coef = 1
        e = [0] * n
        for factor in body.split("*"):
            m = re.fullmatch(rf"{var}(\d+)(?:\^(-?\d+))?", factor)
            if m:
                e[int(m.group(1)) - 1] += int(m.group(2) or 1)
            else:
                coef *= int(factor)
        key = tuple(e)
        out[key] = out.get(key, 0) + sign * coef
    return LaurentPoly(n, out)
