"""Finite-dimensional associative unital Q-algebras given by structure constants.

These are the test coefficient rings B (and C when commutative) for points
A -> M_n(B).  Elements are coordinate tuples; associativity and the unit are
verified once when the algebra is built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import ContractError


class FDAlgebra:
    def __init__(self, name: str, labels: Sequence[str], table, unit: Sequence, check: bool = True):
        self.name = name
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        m = self.dim
        # table[i][j] is the coordinate vector of basis_i * basis_j
        self.table = tuple(tuple(tuple(Fraction(c) for c in table[i][j]) for j in range(m))
                           for i in range(m))
        self.unit = tuple(Fraction(c) for c in unit)
        if check:
            self._validate()

    def _validate(self) -> None:
        one = self.one()
        for i in range(self.dim):
            b = self.basis(i)
            if one * b != b or b * one != b:
                raise ContractError(f"{self.name}: unit element fails on {self.labels[i]}")
        for i, j, k in product(range(self.dim), repeat=3):
            bi, bj, bk = self.basis(i), self.basis(j), self.basis(k)
            if (bi * bj) * bk != bi * (bj * bk):
                raise ContractError(f"{self.name}: not associative on basis triple {(i, j, k)}")

    def __repr__(self):
        return f"FDAlgebra({self.name})"

    def element(self, coords) -> "Elem":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.dim:
            raise ContractError(f"{self.name} elements have {self.dim} coordinates")
        return Elem(self, coords)

    def zero(self) -> "Elem":
        return Elem(self, (Fraction(0),) * self.dim)

    def one(self) -> "Elem":
        return Elem(self, self.unit)

    def scalar(self, c) -> "Elem":
        return self.one() * Fraction(c)

    def basis(self, i: int) -> "Elem":
        return Elem(self, tuple(Fraction(int(j == i)) for j in range(self.dim)))

    def random(self, rng, lo: int = -3, hi: int = 3) -> "Elem":
        return Elem(self, tuple(Fraction(rng.randint(lo, hi)) for _ in range(self.dim)))

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(self.dim))


@dataclass(frozen=True)
class Elem:
    algebra: FDAlgebra = field(compare=False, repr=False)
    coords: tuple[Fraction, ...]

    def _coerce(self, other) -> "Elem":
        if isinstance(other, Elem):
            if other.algebra is not self.algebra:
                raise ContractError("elements of different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        raise TypeError(f"cannot combine algebra element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return Elem(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Elem(self.algebra, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Elem(self.algebra, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        tab = self.algebra.table
        out = [Fraction(0)] * self.algebra.dim
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(tab[i][j]):
                    if c:
                        out[k] += ab * c
        return Elem(self.algebra, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return self._coerce(other) * self

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Elem):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        parts = [f"{c}*{l}" for c, l in zip(self.coords, self.algebra.labels) if c]
        return " + ".join(parts) or "0"


# --- standard test algebras (cached: elements compare by algebra identity) ---------

@cache
def rationals() -> FDAlgebra:
    return FDAlgebra("Q", ["1"], [[[1]]], [1])


@cache
def truncated_polynomials(k: int) -> FDAlgebra:
    """Q[t]/(t^k), basis 1, t, ..., t^(k-1); commutative and local."""
    table = [[[int(a + b == c) for c in range(k)] for b in range(k)] for a in range(k)]
    labels = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, k)]
    return FDAlgebra(f"Q[t]/(t^{k})", labels, table, [1] + [0] * (k - 1))


@cache
def dual_numbers() -> FDAlgebra:
    return truncated_polynomials(2)


def _unit_matrix_algebra(name, cells) -> FDAlgebra:
    # basis E_ij for (i,j) in cells, E_ij E_kl = delta_jk E_il
    index = {c: n for n, c in enumerate(cells)}
    m = len(cells)
    table = [[[0] * m for _ in range(m)] for _ in range(m)]
    for (i, j), a in index.items():
        for (k, l), b in index.items():
            if j == k:
                table[a][b][index[(i, l)]] = 1
    unit = [int(c[0] == c[1]) for c in cells]
    return FDAlgebra(name, [f"E{i + 1}{j + 1}" for i, j in cells], table, unit)


@cache
def matrix_algebra(n: int) -> FDAlgebra:
    return _unit_matrix_algebra(f"M_{n}(Q)", [(i, j) for i in range(n) for j in range(n)])


@cache
def upper_triangular(n: int = 2) -> FDAlgebra:
    """Upper-triangular n x n matrices: noncommutative and basic."""
    return _unit_matrix_algebra(f"T_{n}(Q)", [(i, j) for i in range(n) for j in range(i, n)])


@dataclass(frozen=True)
class AlgebraMorphism:
    """Unital algebra map given on basis vectors."""

    source: FDAlgebra
    target: FDAlgebra
    images: tuple[Elem, ...]

    def __post_init__(self):
        if len(self.images) != self.source.dim:
            raise ContractError("one image per source basis vector")
        if self(self.source.one()) != self.target.one():
            raise ContractError("morphism is not unital")
        for i, j in product(range(self.source.dim), repeat=2):
            bi, bj = self.source.basis(i), self.source.basis(j)
            if self(bi * bj) != self(bi) * self(bj):
                raise ContractError("morphism is not multiplicative")

    def __call__(self, x: Elem) -> Elem:
        out = self.target.zero()
        for c, img in zip(x.coords, self.images):
            if c:
                out = out + img * c
        return out


def conjugation(n: int, g, g_inv) -> AlgebraMorphism:
    """Inner automorphism X -> g X g^-1 of M_n(Q) for rational g."""
    A = matrix_algebra(n)
    images = []
    for i in range(n):
        for j in range(n):
            coords = [g[p][i] * g_inv[j][q] for p in range(n) for q in range(n)]
            images.append(A.element(coords))
    return AlgebraMorphism(A, A, tuple(images))
