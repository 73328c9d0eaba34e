"""Ordered Hall-type basis of the free Lie algebra on x1 < ... < xd.

Layers are built exactly by the rule

    B_1 = (x1, ..., xd)
    B_2 = {[xi, xj] : j < i}, ordered by (j, i)
    B_k = {[t, w] : t = [u, v] in B_l, w in B_(k-l), v <= w < t},  ordered by (w, t)

and B_l < B_k whenever l < k.  Every element gets a global index equal to its
position in this total order, so comparisons are integer comparisons.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContractError, RegistryTooSmall
from .linalg import Echelon, rank
from .ncpoly import NCPoly, nc_commutator


@dataclass(frozen=True)
class HallElement:
    index: int
    weight: int
    letter: int | None = None  # generator for leaves (1-based)
    left: int | None = None
    right: int | None = None

    @property
    def ord(self) -> int:
        return self.weight - 1

    @property
    def is_leaf(self) -> bool:
        return self.letter is not None


class HallBasis:
    """Eagerly generated registry of B_1..B_K; read-only once built."""

    def __init__(self, d: int, max_weight: int):
        if d < 1 or max_weight < 1:
            raise ContractError("need d >= 1 and max_weight >= 1")
        self.d = d
        self.max_weight = max_weight
        self.elements: list[HallElement] = []
        self.layers: list[tuple[int, ...]] = []
        self._by_children: dict[tuple[int, int], int] = {}
        self._expansions: dict[int, NCPoly] = {}
        self._solvers: dict[int, Echelon] = {}
        self._pair_cache: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._build()

    def _build(self) -> None:
        d = self.d
        for i in range(1, d + 1):
            self.elements.append(HallElement(index=i - 1, weight=1, letter=i))
        self.layers.append(tuple(range(d)))
        for k in range(2, self.max_weight + 1):
            cands = []  # (w, t) pairs; sort key (w, t) realises the within-layer order
            if k == 2:
                cands = [(j, i) for i in range(d) for j in range(d) if j < i]
            else:
                for l in range(2, k):
                    for t in self.layers[l - 1]:
                        v = self.elements[t].right
                        for w in self.layers[k - l - 1]:
                            if v <= w < t:
                                cands.append((w, t))
            cands.sort()
            start = len(self.elements)
            for n, (w, t) in enumerate(cands):
                idx = start + n
                self.elements.append(HallElement(index=idx, weight=k, left=t, right=w))
                self._by_children[(t, w)] = idx
            self.layers.append(tuple(range(start, start + len(cands))))

    # -- lookup ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> HallElement:
        return self.elements[i]

    def layer(self, k: int) -> tuple[int, ...]:
        if not 1 <= k <= self.max_weight:
            raise RegistryTooSmall(f"weight {k} outside registry 1..{self.max_weight}")
        return self.layers[k - 1]

    def weight(self, i: int) -> int:
        return self.elements[i].weight

    def ord(self, i: int) -> int:
        return self.elements[i].weight - 1

    def bracket_number(self, i: int) -> int:
        """Position b_1, b_2, ... among the elements of weight >= 2."""
        if i < self.d:
            raise ValueError("generators are not numbered among the b_i")
        return i - self.d + 1

    def find(self, left: int, right: int) -> int | None:
        return self._by_children.get((left, right))

    def sexpr(self, i: int) -> str:
        e = self.elements[i]
        if e.is_leaf:
            return f"x{e.letter}"
        return f"[{self.sexpr(e.left)},{self.sexpr(e.right)}]"

    # -- free-algebra realisation ----------------------------------------------

    def expand(self, i: int) -> NCPoly:
        """Word expansion in Q<x1..xd>, brackets read as commutators."""
        cached = self._expansions.get(i)
        if cached is None:
            e = self.elements[i]
            if e.is_leaf:
                cached = NCPoly.gen(self.d, e.letter)
            else:
                cached = nc_commutator(self.expand(e.left), self.expand(e.right))
            self._expansions[i] = cached
        return cached

    def _solver(self, k: int) -> Echelon:
        sol = self._solvers.get(k)
        if sol is None:
            sol = Echelon()
            for i in self.layer(k):
                if not sol.add(self.expand(i).terms, tag=i):
                    raise ArithmeticError(f"layer B_{k} is linearly dependent")
            self._solvers[k] = sol
        return sol

    def coordinates(self, p: NCPoly) -> dict[int, Fraction]:
        """Basis coordinates of a Lie polynomial given by its word expansion."""
        out: dict[int, Fraction] = {}
        by_degree: dict[int, dict] = {}
        for w, c in p.terms.items():
            by_degree.setdefault(len(w), {})[w] = c
        for k, part in by_degree.items():
            if k == 0:
                raise ValueError("constants are not Lie elements")
            coords = self._solver(k).coordinates(part)
            if coords is None:
                raise ValueError(f"degree-{k} part is not a Lie polynomial")
            out.update(coords)
        return out

    def bracket_pair(self, i: int, j: int) -> dict[int, Fraction]:
        """Basis expansion of [b_i, b_j]."""
        key = (i, j)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        w = self.weight(i) + self.weight(j)
        if w > self.max_weight:
            raise RegistryTooSmall(
                f"bracket of weight {w} exceeds registry max_weight {self.max_weight}")
        if i == j:
            res = {}
        elif i < j:
            res = {k: -c for k, c in self.bracket_pair(j, i).items()}
        elif (idx := self.find(i, j)) is not None:
            res = {idx: Fraction(1)}
        else:
            res = self.coordinates(nc_commutator(self.expand(i), self.expand(j)))
        self._pair_cache[key] = res
        return res


@dataclass(frozen=True)
class LieElement:
    """Finite rational combination of Hall basis elements."""

    basis: HallBasis = field(compare=False, hash=False, repr=False)
    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, basis: HallBasis, terms) -> "LieElement":
        acc: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for i, c in items:
            if not 0 <= i < len(basis):
                raise ValueError(f"basis index {i} not in registry")
            acc[i] = acc.get(i, 0) + Fraction(c)
        return cls(basis, tuple(sorted((i, c) for i, c in acc.items() if c)))

    @classmethod
    def basis_element(cls, basis: HallBasis, i: int) -> "LieElement":
        return cls.of(basis, {i: 1})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def weights(self) -> set[int]:
        return {self.basis.weight(i) for i, _ in self.terms}

    def expand(self) -> NCPoly:
        out = NCPoly.zero(self.basis.d)
        for i, c in self.terms:
            out = out + self.basis.expand(i).scale(c)
        return out

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement.of(self.basis, list(self.terms) + list(other.terms))

    def scale(self, c) -> "LieElement":
        return LieElement.of(self.basis, [(i, v * Fraction(c)) for i, v in self.terms])

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.basis.sexpr(i)}" for i, c in self.terms)


def generate_basis(d: int, K: int) -> HallBasis:
    return HallBasis(d, K)


def expand_to_words(basis: HallBasis, i: int) -> NCPoly:
    return basis.expand(i)


def bracket_normalize(a: LieElement, b: LieElement) -> LieElement:
    """Unique basis expansion of [a, b], bilinear in the two arguments."""
    basis = a.basis
    acc: dict[int, Fraction] = {}
    for i, ci in a.terms:
        for j, cj in b.terms:
            for k, ck in basis.bracket_pair(i, j).items():
                acc[k] = acc.get(k, 0) + ci * cj * ck
    return LieElement.of(basis, acc)


def lie_rank(d: int, k: int) -> int:
    """Brute-force dimension of the degree-k Lie polynomials.

    Rank over Q of all right-nested commutators [x_i1, [x_i2, ... x_ik]] as
    vectors of degree-k words; independent of the Hall construction.
    """
    vectors = []
    for idx in itertools.product(range(1, d + 1), repeat=k):
        p = NCPoly.gen(d, idx[-1])
        for i in reversed(idx[:-1]):
            p = nc_commutator(NCPoly.gen(d, i), p)
        if p:
            vectors.append(p.terms)
    return rank(vectors)
