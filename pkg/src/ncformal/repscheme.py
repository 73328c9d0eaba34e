"""Representation schemes rep_n A for A = Q<x1..xd>/(relations).

The coordinate ring is generated by the entries x_{ij,k} of generic matrices
X_1..X_d; the variable for (k, i, j) has position (k, i, j) in lexicographic
order, i.e. CommPoly generator ((k-1)*n + (i-1))*n + j.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import FDAlgebra
from .errors import ContractError
from .linalg import identity, inverse, is_zero_matrix, mat_mul, shape, zeros
from .ncpoly import CommPoly, NCPoly, parse_nc
from .quiver import Quiver, bundle_dim, enumerate_dimvectors, rep_dim


@dataclass(frozen=True)
class Presentation:
    d: int
    relations: tuple[NCPoly, ...] = ()

    def __post_init__(self):
        for r in self.relations:
            if r.d != self.d:
                raise ContractError(f"relation {r} is not on {self.d} generators")

    @classmethod
    def from_json(cls, data: dict | str) -> "Presentation":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            d = int(data["d"])
            return cls(d, tuple(parse_nc(r, d) for r in data.get("relations", [])))
        except (KeyError, TypeError) as exc:
            raise ContractError(f"malformed presentation JSON: {exc}") from None

    def to_json(self) -> dict:
        return {"d": self.d, "relations": [repr(r) for r in self.relations]}


def generic_variable(n: int, k: int, i: int, j: int) -> int:
    return ((k - 1) * n + (i - 1)) * n + j


def generic_matrix(n: int, k: int, d: int) -> list[list[CommPoly]]:
    """X_k = (x_{ij,k}) as commutative polynomials in d*n^2 variables."""
    return [[CommPoly.gen(d * n * n, generic_variable(n, k, i, j)) for j in range(1, n + 1)]
            for i in range(1, n + 1)]


def evaluate_nc(f: NCPoly, mats: Sequence, one, zero):
    """f(M_1, ..., M_d) for square matrices over any ring with the given 0 and 1."""
    if len(mats) != f.d:
        raise ContractError(f"need {f.d} matrices, got {len(mats)}")
    n = len(mats[0]) if mats else 0
    for m in mats:
        if shape(m) != (n, n):
            raise ContractError("all matrices must be square of the same size")
    prefix: dict = {(): identity(n, one, zero)}

    def word_value(w):
        hit = prefix.get(w)
        if hit is None:
            hit = mat_mul(word_value(w[:-1]), mats[w[-1] - 1], zero)
            prefix[w] = hit
        return hit

    out = zeros(n, n, zero)
    for w, c in f.terms.items():
        m = word_value(w)
        out = [[out[i][j] + m[i][j] * c for j in range(n)] for i in range(n)]
    return out


def evaluate_at_generic(f: NCPoly, n: int) -> list[list[CommPoly]]:
    N = f.d * n * n
    mats = [generic_matrix(n, k, f.d) for k in range(1, f.d + 1)]
    return evaluate_nc(f, mats, CommPoly.constant(N), CommPoly.zero(N))


@dataclass(frozen=True)
class RelationIdeal:
    n: int
    d: int
    polynomials: tuple[tuple[str, CommPoly], ...]

    @property
    def variable_count(self) -> int:
        return self.d * self.n * self.n

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "variables": self.variable_count,
                "variable_order": "x_{ij,k} by (k, i, j)",
                "polynomials": [{"label": l, "poly": repr(p)} for l, p in self.polynomials]}


def relation_ideal(P: Presentation, n: int) -> RelationIdeal:
    polys = []
    for r, rel in enumerate(P.relations, start=1):
        m = evaluate_at_generic(rel, n)
        for i in range(n):
            for j in range(n):
                polys.append((f"f{r}_{i + 1}{j + 1}", m[i][j]))
    return RelationIdeal(n, P.d, tuple(polys))


@dataclass(frozen=True)
class RepPoint:
    """One n x n matrix per generator, over Q or over a finite-dimensional algebra."""

    matrices: tuple
    algebra: FDAlgebra | None = None

    def __post_init__(self):
        mats = tuple(tuple(tuple(row) for row in m) for m in self.matrices)
        if mats:
            n = len(mats[0])
            if any(shape(m) != (n, n) for m in mats):
                raise ContractError("point matrices must all be n x n")
        object.__setattr__(self, "matrices", mats)

    @property
    def n(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0

    def ring(self):
        if self.algebra is None:
            return Fraction(1), Fraction(0)
        return self.algebra.one(), self.algebra.zero()

    def lists(self) -> list:
        return [[list(r) for r in m] for m in self.matrices]

    def coordinates(self) -> list:
        """Entries in the (k, i, j) order of the generic variables."""
        return [x for m in self.matrices for row in m for x in row]


def is_representation(P: Presentation, pt: RepPoint) -> bool:
    if len(pt.matrices) != P.d:
        raise ContractError(f"point has {len(pt.matrices)} matrices, presentation needs {P.d}")
    one, zero = pt.ring()
    return all(is_zero_matrix(evaluate_nc(r, pt.lists(), one, zero)) for r in P.relations)


def ideal_vanishes(ideal: RelationIdeal, pt: RepPoint) -> bool:
    """True iff every generator of the relation ideal vanishes at the point's coordinates."""
    if pt.algebra is not None and not pt.algebra.is_commutative():
        raise ContractError("coordinate evaluation needs a commutative coefficient algebra")
    if len(pt.matrices) != ideal.d or pt.n != ideal.n:
        raise ContractError("point does not match the ideal's (d, n)")
    one, zero = pt.ring()
    coords = pt.coordinates()
    return all(not p.evaluate(coords, one, zero) for _, p in ideal.polynomials)


def conjugate(pt: RepPoint, g) -> RepPoint:
    """X -> g X g^-1 for a rational invertible g (raises on singular g)."""
    g = [[Fraction(x) for x in row] for row in g]
    if shape(g) != (pt.n, pt.n):
        raise ContractError(f"g must be {pt.n} x {pt.n}")
    g_inv = inverse(g)
    _, zero = pt.ring()
    out = []
    for m in pt.lists():
        left = [[sum((m[t][j] * g[i][t] for t in range(pt.n)), zero) for j in range(pt.n)]
                for i in range(pt.n)]
        out.append([[sum((left[i][t] * g_inv[t][j] for t in range(pt.n)), zero)
                     for j in range(pt.n)] for i in range(pt.n)])
    return RepPoint(tuple(out), pt.algebra)


def random_point(d: int, n: int, rng, algebra: FDAlgebra | None = None, lo=-3, hi=3) -> RepPoint:
    if algebra is None:
        draw = lambda: Fraction(rng.randint(lo, hi))  # noqa: E731
    else:
        draw = lambda: algebra.random(rng, lo, hi)  # noqa: E731
    return RepPoint(tuple([[draw() for _ in range(n)] for _ in range(n)] for _ in range(d)), algebra)


def random_invertible(n: int, rng, lo=-3, hi=3) -> list[list[Fraction]]:
    while True:
        g = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        try:
            inverse(g)
            return g
        except ContractError:
            continue


def decompose_rep_quiver(Q: Quiver, n: int) -> list[dict]:
    """rep_n CQ as the disjoint union of GL_n x^{GL(alpha)} rep_alpha Q over |alpha| = n."""
    return [{"alpha": list(a), "rep_dim": rep_dim(Q, a), "bundle_dim": bundle_dim(n, Q, a)}
            for a in enumerate_dimvectors(Q.k, n)]


def identity_point(d: int, n: int) -> RepPoint:
    return RepPoint(tuple(identity(n) for _ in range(d)))
