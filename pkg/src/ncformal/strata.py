"""Substrata of semisimple n-dimensional representation types, tilde representations and local quivers."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, groupby, product
from typing import Sequence

from .errors import ContractError
from .linalg import Echelon
from .quiver import (DimVector, Quiver, QuiverRep, bundle_dim, enumerate_dimvectors,
                     euler_form_extended, extend_quiver, rep_dim)

Partition = tuple[int, ...]


def partitions(m: int) -> list[Partition]:
    """All partitions of m, reverse-lexicographic: (m), (m-1, 1), ..., (1, ..., 1)."""
    if m < 1:
        raise ContractError("m must be >= 1")

    def rec(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    return list(rec(m, m))


@dataclass(frozen=True)
class SemisimpleType:
    """Multiplicities e_1 >= ... >= e_z with one dimension vector per distinct simple."""

    partition: Partition
    alphas: tuple[DimVector, ...]

    def __post_init__(self):
        p = tuple(self.partition)
        if not p or any(e < 1 for e in p) or list(p) != sorted(p, reverse=True):
            raise ContractError(f"{p} is not a partition")
        if len(self.alphas) != len(p):
            raise ContractError("one dimension vector per part is required")
        object.__setattr__(self, "partition", p)
        object.__setattr__(self, "alphas", tuple(tuple(a) for a in self.alphas))

    @property
    def m(self) -> int:
        return sum(self.partition)

    def validate(self, n: int, Q: Quiver) -> None:
        for a in self.alphas:
            if len(a) != Q.k or any(x < 0 for x in a) or sum(a) != n:
                raise ContractError(f"{a} is not a dimension vector of total {n} for this quiver")

    def to_json(self) -> dict:
        return {"lambda": list(self.partition), "alphas": [list(a) for a in self.alphas]}


def enumerate_substrata(m: int, n: int, Q: Quiver) -> list[SemisimpleType]:
    """Every (lambda, alpha-tuple); alphas inside a run of equal parts form a multiset."""
    vectors = enumerate_dimvectors(Q.k, n)
    out = []
    for lam in partitions(m):
        runs = [len(list(g)) for _, g in groupby(lam)]
        choices = [list(combinations_with_replacement(vectors, size)) for size in runs]
        for pick in product(*choices):
            out.append(SemisimpleType(lam, tuple(a for run in pick for a in run)))
    return out


def multiset_count(m: int, v: int) -> int:
    """Sum over partitions of prod over equal-part runs of C(v + l - 1, l)."""
    from math import comb
    total = 0
    for lam in partitions(m):
        term = 1
        for _, g in groupby(lam):
            l = len(list(g))
            term *= comb(v + l - 1, l)
        total += term
    return total


def stratum_dimension(t: SemisimpleType, n: int, Q: Quiver) -> int:
    t.validate(n, Q)
    return sum(bundle_dim(n, Q, a) for a in t.alphas)


def is_nonempty(t: SemisimpleType, n: int, Q: Quiver) -> bool:
    """Coarse check: a dimension vector used twice needs a component with more than one point."""
    t.validate(n, Q)
    counts = Counter(t.alphas)
    return all(c == 1 or bundle_dim(n, Q, a) > 0 for a, c in counts.items())


# --- tilde representations and stability -------------------------------------------

@dataclass(frozen=True)
class TildeRep:
    """Representation of the plain extended quiver; vertex 1 is v_0."""

    base: Quiver
    n: int
    rep: QuiverRep

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rep.dims

    def to_json(self) -> dict:
        return {"n": self.n, "quiver": self.rep.quiver.to_json(), **self.rep.to_json()}


def build_tilde_rep(S: QuiverRep, n: int) -> TildeRep:
    alpha = S.dims
    if sum(alpha) != n:
        raise ContractError(f"|alpha| = {sum(alpha)} differs from n = {n}")
    ext = extend_quiver(S.quiver, n)
    maps = list(S.maps)
    offset = 0
    for j, a in enumerate(alpha, start=1):
        for q in range(1, n + 1):
            col = [[Fraction(int(offset + r + 1 == q))] for r in range(a)]
            maps.append(col)
        offset += a
    return TildeRep(S.quiver, n, QuiverRep(ext.quiver, (1,) + tuple(alpha), tuple(maps)))


def tilde_from_maps(S: QuiverRep, n: int, x_maps) -> TildeRep:
    """Tilde representation with explicit x-arrow columns x_maps[j-1][q-1] (length a_j)."""
    ext = extend_quiver(S.quiver, n)
    maps = list(S.maps)
    for j, a in enumerate(S.dims, start=1):
        for q in range(n):
            vec = x_maps[j - 1][q]
            if len(vec) != a:
                raise ContractError(f"x-arrow ({j},{q + 1}) needs {a} entries")
            maps.append([[Fraction(v)] for v in vec])
    return TildeRep(S.quiver, n, QuiverRep(ext.quiver, (1,) + tuple(S.dims), tuple(maps)))


def generated_dims(t: TildeRep) -> tuple[int, ...]:
    """Dimension vector of the smallest subrepresentation containing the v_0 line."""
    rep = t.rep
    if rep.dims[0] != 1:
        raise ContractError("the v_0 space must be one-dimensional")
    spans = [Echelon() for _ in rep.dims]
    spans[0].add({0: Fraction(1)})
    queue = [(0, {0: Fraction(1)})]
    arrows = rep.quiver.arrows
    while queue:
        v, vec = queue.pop()
        for a, (s, tt) in enumerate(arrows):
            if s - 1 != v:
                continue
            m = rep.maps[a]
            img = {}
            for r, row in enumerate(m):
                x = sum((row[c] * x for c, x in vec.items()), Fraction(0))
                if x:
                    img[r] = x
            if img and spans[tt - 1].add(img):
                queue.append((tt - 1, img))
    return tuple(s.rank for s in spans)


def is_generated_from_v0(t: TildeRep) -> bool:
    return generated_dims(t) == t.dims


def default_theta(alpha: Sequence[int]) -> tuple[int, ...]:
    return (-sum(alpha),) + (1,) * len(alpha)


def theta_pairing(theta: Sequence[int], beta: Sequence[int]) -> int:
    if len(theta) != len(beta):
        raise ContractError(f"theta has length {len(theta)}, dimension vector {len(beta)}")
    return sum(a * b for a, b in zip(theta, beta))


def check_theta_stability(t: TildeRep, theta: Sequence[int] | None = None) -> bool:
    """Stability for v_0-dimension 1, positive tail and theta(dim) = 0.

    Under those conditions a subrepresentation missing v_0 has positive pairing
    and one containing v_0 contains the generated one, so stability is exactly
    generation from v_0.
    """
    dims = t.dims
    if theta is None:
        theta = default_theta(dims[1:])
    if dims[0] != 1:
        raise ContractError("stability check supports v_0-dimension 1 only")
    if any(x <= 0 for x in theta[1:]):
        raise ContractError("theta must be strictly positive away from v_0")
    if theta_pairing(theta, dims) != 0:
        raise ContractError("theta must vanish on the dimension vector")
    return is_generated_from_v0(t)


# --- local quiver settings ------------------------------------------------------------

@dataclass(frozen=True)
class LocalQuiverSetting:
    gamma_quiver: Quiver
    gamma: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]
    ambient_dim: int

    def to_json(self) -> dict:
        return {"vertices": self.gamma_quiver.k, "arrow_counts": [list(r) for r in self.counts],
                "gamma": list(self.gamma), "ambient_dim": self.ambient_dim}


def local_quiver(t: SemisimpleType, n: int, Q: Quiver) -> LocalQuiverSetting:
    t.validate(n, Q)
    chi = euler_form_extended(Q, n)
    tilde = [(1,) + a for a in t.alphas]
    z = len(tilde)
    counts = [[int(i == j) - chi(tilde[i], tilde[j]) for j in range(z)] for i in range(z)]
    for i, j in product(range(z), repeat=2):
        if counts[i][j] < 0:
            raise ContractError(f"negative arrow count {counts[i][j]} from w{i + 1} to w{j + 1}")
    arrows = tuple((i + 1, j + 1) for i in range(z) for j in range(z) for _ in range(counts[i][j]))
    gamma_q = Quiver(z, arrows)
    gamma = t.partition
    return LocalQuiverSetting(gamma_q, gamma, tuple(map(tuple, counts)), rep_dim(gamma_q, gamma))


def fiber_setting_report(t: SemisimpleType, n: int, Q: Quiver) -> dict:
    setting = local_quiver(t, n, Q)
    return {**t.to_json(), "stratum_dimension": stratum_dimension(t, n, Q),
            "local_quiver": setting.to_json(),
            "theta": [{"alpha_tilde": [1, *a], "theta": list(default_theta(a)),
                       "pairing": theta_pairing(default_theta(a), (1, *a))} for a in t.alphas],
            "nullcone": "not computed"}
