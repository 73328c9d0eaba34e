"""Quivers, path algebras, Euler forms and the extended quiver with its localization data.

Vertices are 1-based.  A path is written as a product a_1 a_2 ... a_r with the
rightmost arrow traversed first, so ``p * q`` is nonzero only when q ends where
p starts (left concatenation).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import ContractError
from .linalg import identity, is_zero_matrix, mat_add, mat_mul, zeros

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    k: int
    arrows: tuple[tuple[int, int], ...] = ()
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        for s, t in self.arrows:
            if not (1 <= s <= self.k and 1 <= t <= self.k):
                raise ContractError(f"arrow {s}->{t} has an endpoint outside 1..{self.k}")
        if self.labels is not None and len(self.labels) != len(self.arrows):
            raise ContractError("one label per arrow")

    @property
    def vertices(self) -> range:
        return range(1, self.k + 1)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else f"a{a + 1}"

    def arrow_count(self, s: int, t: int) -> int:
        return sum(1 for a in self.arrows if a == (s, t))

    def to_json(self) -> dict:
        out = {"vertices": self.k, "arrows": [list(a) for a in self.arrows]}
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "Quiver":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            labels = data.get("labels")
            return cls(int(data["vertices"]), tuple(tuple(a) for a in data["arrows"]),
                       tuple(labels) if labels else None)
        except (KeyError, TypeError) as exc:
            raise ContractError(f"malformed quiver JSON: {exc}") from None

    @classmethod
    def loops(cls, d: int) -> "Quiver":
        return cls(1, ((1, 1),) * d)


@dataclass(frozen=True, order=True)
class Path:
    start: int
    end: int
    arrows: tuple[int, ...] = ()  # written order; last entry acts first

    @classmethod
    def trivial(cls, v: int) -> "Path":
        return cls(v, v, ())

    @classmethod
    def arrow(cls, Q: Quiver, a: int) -> "Path":
        s, t = Q.arrows[a]
        return cls(s, t, (a,))

    def __len__(self) -> int:
        return len(self.arrows)


def compose(p: Path, q: Path) -> Path | None:
    """p * q : first q, then p."""
    if q.end != p.start:
        return None
    return Path(q.start, p.end, p.arrows + q.arrows)


@dataclass(frozen=True)
class PathAlgebraElement:
    quiver: Quiver
    terms: tuple[tuple[Path, Fraction], ...] = ()

    @classmethod
    def of(cls, Q: Quiver, terms) -> "PathAlgebraElement":
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for p, c in items:
            if p.arrows:
                chk = Path(Q.arrows[p.arrows[-1]][0], Q.arrows[p.arrows[0]][1], p.arrows)
                if chk != p:
                    raise ContractError(f"inconsistent path {p}")
            acc[p] = acc.get(p, 0) + Fraction(c)
        return cls(Q, tuple(sorted((p, c) for p, c in acc.items() if c)))

    @classmethod
    def vertex(cls, Q: Quiver, v: int) -> "PathAlgebraElement":
        return cls.of(Q, {Path.trivial(v): 1})

    @classmethod
    def arrow(cls, Q: Quiver, a: int) -> "PathAlgebraElement":
        return cls.of(Q, {Path.arrow(Q, a): 1})

    @classmethod
    def one(cls, Q: Quiver) -> "PathAlgebraElement":
        return cls.of(Q, {Path.trivial(v): 1 for v in Q.vertices})

    @classmethod
    def zero(cls, Q: Quiver) -> "PathAlgebraElement":
        return cls(Q, ())

    def _check(self, other) -> None:
        if other.quiver != self.quiver:
            raise ContractError("path algebra elements over different quivers")

    def __add__(self, other):
        self._check(other)
        return PathAlgebraElement.of(self.quiver, self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return PathAlgebraElement.of(self.quiver, [(p, v * Fraction(c)) for p, v in self.terms])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return path_mul(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.terms:
            name = "*".join(self.quiver.label(a) for a in p.arrows) if p.arrows else f"v{p.start}"
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)


def path_mul(a: PathAlgebraElement, b: PathAlgebraElement) -> PathAlgebraElement:
    a._check(b)
    acc: dict = {}
    for p, c in a.terms:
        for q, e in b.terms:
            r = compose(p, q)
            if r is not None:
                acc[r] = acc.get(r, 0) + c * e
    return PathAlgebraElement.of(a.quiver, acc)


def enumerate_paths(Q: Quiver, max_length: int) -> list[Path]:
    out = [Path.trivial(v) for v in Q.vertices]
    frontier = list(out)
    for _ in range(max_length):
        nxt = []
        for p in frontier:
            for a, (s, t) in enumerate(Q.arrows):
                if s == p.end:
                    nxt.append(Path(p.start, t, (a,) + p.arrows))
        out.extend(nxt)
        frontier = nxt
    return out


def hom_paths(Q: Quiver, i: int, j: int, max_length: int) -> list[Path]:
    """Basis of Hom(P_i, P_j) up to a length bound: paths from v_j to v_i."""
    return [p for p in enumerate_paths(Q, max_length) if p.start == j and p.end == i]


# --- Euler forms and dimension data ---------------------------------------------

@dataclass(frozen=True)
class EulerForm:
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        n = len(self.matrix)
        if len(alpha) != n or len(beta) != n:
            raise ContractError(f"dimension vectors must have length {n}")
        return sum(alpha[i] * self.matrix[i][j] * beta[j] for i in range(n) for j in range(n))


def euler_form(Q: Quiver) -> EulerForm:
    m = [[int(i == j) for j in Q.vertices] for i in Q.vertices]
    for s, t in Q.arrows:
        m[s - 1][t - 1] -= 1
    return EulerForm(tuple(map(tuple, m)))


def euler_form_extended(Q: Quiver, n: int) -> EulerForm:
    """Block form: first row (1, -n, ..., -n), first column zero below, then chi_Q."""
    base = euler_form(Q).matrix
    rows = [(1,) + (-n,) * Q.k]
    rows += [(0,) + row for row in base]
    return EulerForm(tuple(rows))


def rep_dim(Q: Quiver, alpha: Sequence[int]) -> int:
    if len(alpha) != Q.k:
        raise ContractError(f"dimension vector length {len(alpha)} != {Q.k} vertices")
    return sum(alpha[s - 1] * alpha[t - 1] for s, t in Q.arrows)


def bundle_dim(n: int, Q: Quiver, alpha: Sequence[int]) -> int:
    """dim GL_n x^{GL(alpha)} rep_alpha Q."""
    if sum(alpha) != n:
        raise ContractError(f"dimension vector {tuple(alpha)} does not have total {n}")
    return n * n - sum(a * a for a in alpha) + rep_dim(Q, alpha)


def enumerate_dimvectors(k: int, n: int) -> list[DimVector]:
    """All length-k vectors of naturals summing to n, lexicographically descending."""
    if k == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(n, -1, -1):
        out.extend((first,) + rest for rest in enumerate_dimvectors(k - 1, n - first))
    return out


def numerical_condition(e: Sequence[int], f: Sequence[int], alpha: Sequence[int]) -> bool:
    if not len(e) == len(f) == len(alpha):
        raise ContractError("e, f and alpha must have equal length")
    return sum(x * a for x, a in zip(e, alpha)) == sum(y * a for y, a in zip(f, alpha))


# --- extended quiver and universal localization -----------------------------------

@dataclass(frozen=True)
class ExtendedQuiver:
    """Q plus vertex v_0 and n arrows x_{i1..in}: v_0 -> v_i (and y_{iq}: v_i -> v_0 if localized).

    ``quiver`` is the plain quiver on k+1 vertices with v_0 as vertex 1 and
    v_i as vertex i+1, so dimension vectors (a_0, alpha) line up positionally.
    Arrow order: base arrows, then x_{iq} by (i, q), then y_{iq} by (i, q).
    """

    base: Quiver
    n: int
    localized: bool
    quiver: Quiver = field(repr=False)

    def x_arrow(self, i: int, q: int) -> int:
        return len(self.base.arrows) + (i - 1) * self.n + (q - 1)

    def y_arrow(self, i: int, q: int) -> int:
        if not self.localized:
            raise ContractError("y-arrows exist only on the localized quiver")
        return len(self.base.arrows) + self.base.k * self.n + (i - 1) * self.n + (q - 1)

    def localization_data(self) -> "LocalizationData":
        if not self.localized:
            raise ContractError("localization data needs the localized extended quiver")
        return _localization_data(self)


def extend_quiver(Q: Quiver, n: int, localized: bool = False) -> ExtendedQuiver:
    if n < 1:
        raise ContractError("n must be >= 1")
    arrows = [(s + 1, t + 1) for s, t in Q.arrows]
    labels = [Q.label(a) for a in range(len(Q.arrows))]
    for i in Q.vertices:
        for q in range(1, n + 1):
            arrows.append((1, i + 1))
            labels.append(f"x{i}_{q}")
    if localized:
        for i in Q.vertices:
            for q in range(1, n + 1):
                arrows.append((i + 1, 1))
                labels.append(f"y{i}_{q}")
    plain = Quiver(Q.k + 1, tuple(arrows), tuple(labels))
    return ExtendedQuiver(Q, n, localized, plain)


@dataclass(frozen=True)
class LocalizationData:
    """M_sigma (k x n, entries x_{iq}), N_sigma (n x k, entries y_{jq}) and their relations.

    ``relations`` lists (label, lhs, rhs) for every entry of
    M_sigma N_sigma = diag(v_1..v_k) and N_sigma M_sigma = v_0 * identity.
    """

    ext: ExtendedQuiver
    sigma_matrix: tuple[tuple[int, ...], ...]
    inverse_matrix: tuple[tuple[int, ...], ...]
    relations: tuple[tuple[str, PathAlgebraElement, PathAlgebraElement], ...]


def _localization_data(ext: ExtendedQuiver) -> LocalizationData:
    Q, n, plain = ext.base, ext.n, ext.quiver
    M = tuple(tuple(ext.x_arrow(i, q) for q in range(1, n + 1)) for i in Q.vertices)
    N = tuple(tuple(ext.y_arrow(j, q) for j in Q.vertices) for q in range(1, n + 1))
    arrow = lambda a: PathAlgebraElement.arrow(plain, a)  # noqa: E731
    zero = PathAlgebraElement.zero(plain)
    rels = []
    for i in range(Q.k):
        for j in range(Q.k):
            lhs = zero
            for q in range(n):
                lhs = lhs + arrow(M[i][q]) * arrow(N[q][j])
            rhs = PathAlgebraElement.vertex(plain, i + 2) if i == j else zero
            rels.append((f"MN[{i + 1},{j + 1}]", lhs, rhs))
    for p in range(n):
        for q in range(n):
            lhs = zero
            for i in range(Q.k):
                lhs = lhs + arrow(N[p][i]) * arrow(M[i][q])
            rhs = PathAlgebraElement.vertex(plain, 1) if p == q else zero
            rels.append((f"NM[{p + 1},{q + 1}]", lhs, rhs))
    return LocalizationData(ext, M, N, tuple(rels))


# --- representations ---------------------------------------------------------------

@dataclass(frozen=True)
class QuiverRep:
    """Vector spaces Q^{dims[v]} and, per arrow s->t, a dims[t] x dims[s] matrix."""

    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple

    def __post_init__(self):
        Q = self.quiver
        if len(self.dims) != Q.k:
            raise ContractError(f"need {Q.k} vertex dimensions, got {len(self.dims)}")
        if len(self.maps) != len(Q.arrows):
            raise ContractError(f"need {len(Q.arrows)} arrow matrices, got {len(self.maps)}")
        fixed = []
        for a, ((s, t), m) in enumerate(zip(Q.arrows, self.maps)):
            rows, cols = self.dims[t - 1], self.dims[s - 1]
            m = [[Fraction(x) for x in row] for row in m]
            if len(m) != rows or any(len(r) != cols for r in m):
                if not (rows == 0 or cols == 0):
                    raise ContractError(f"arrow {a} needs a {rows}x{cols} matrix")
                m = zeros(rows, cols)
            fixed.append(tuple(tuple(r) for r in m))
        object.__setattr__(self, "maps", tuple(fixed))
        object.__setattr__(self, "dims", tuple(self.dims))

    def matrix(self, a: int) -> list[list[Fraction]]:
        return [list(r) for r in self.maps[a]]

    def to_json(self) -> dict:
        return {"dims": list(self.dims),
                "maps": [[[str(x) for x in row] for row in m] for m in self.maps]}

    @classmethod
    def from_json(cls, Q: Quiver, data: dict) -> "QuiverRep":
        try:
            return cls(Q, tuple(data["dims"]),
                       tuple([[Fraction(x) for x in row] for row in m] for m in data["maps"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ContractError(f"malformed representation JSON: {exc}") from None


def evaluate_path_element(x: PathAlgebraElement, rep: QuiverRep, start: int, end: int):
    """Matrix of the action of x from vertex space ``start`` to vertex space ``end``."""
    out = zeros(rep.dims[end - 1], rep.dims[start - 1])
    for p, c in x.terms:
        if p.start != start or p.end != end:
            continue
        if any(rep.dims[rep.quiver.arrows[a][1] - 1] == 0 for a in p.arrows) or rep.dims[start - 1] == 0:
            continue  # factors through a zero space
        m = identity(rep.dims[start - 1])
        for a in reversed(p.arrows):
            m = mat_mul(rep.matrix(a), m)
        out = mat_add(out, [[c * v for v in row] for row in m])
    return out


def check_localization_point(data: LocalizationData, rep: QuiverRep) -> bool:
    """True iff both matrix relations hold at ``rep`` (M_sigma(rep) invertible, inverse N_sigma(rep))."""
    if rep.quiver != data.ext.quiver:
        raise ContractError("representation is not over the localized extended quiver")
    for _label, lhs, rhs in data.relations:
        diff = lhs - rhs
        for start, end in all_vertex_pairs(rep.quiver):
            if not is_zero_matrix(evaluate_path_element(diff, rep, start, end)):
                return False
    return True


def random_rep(Q: Quiver, dims: Sequence[int], rng, lo: int = -3, hi: int = 3) -> QuiverRep:
    maps = []
    for s, t in Q.arrows:
        maps.append([[Fraction(rng.randint(lo, hi)) for _ in range(dims[s - 1])]
                     for _ in range(dims[t - 1])])
    return QuiverRep(Q, tuple(dims), tuple(maps))


def random_quiver(rng, max_vertices: int = 4, max_arrows: int = 5) -> Quiver:
    k = rng.randint(1, max_vertices)
    arrows = tuple((rng.randint(1, k), rng.randint(1, k)) for _ in range(rng.randint(0, max_arrows)))
    return Quiver(k, arrows)


def all_vertex_pairs(Q: Quiver):
    return product(Q.vertices, Q.vertices)


def localized_point(ext: ExtendedQuiver, alpha: Sequence[int], X, base_maps=None) -> QuiverRep:
    """Representation of the localized extended quiver with dims (1, alpha), |alpha| = n.

    Column q of the n x n matrix X gives x_{iq} (its block of rows for vertex i);
    the y-arrows are read from X^-1, so the point satisfies both matrix
    relations exactly when X is invertible.  Raises if X is singular.
    """
    from .linalg import inverse
    if not ext.localized:
        raise ContractError("need the localized extended quiver")
    n, Q = ext.n, ext.base
    if len(alpha) != Q.k or sum(alpha) != n:
        raise ContractError(f"alpha must have {Q.k} entries summing to {n}")
    Y = inverse(X)
    offsets = [sum(alpha[:i]) for i in range(Q.k)]
    maps = list(base_maps) if base_maps is not None else [
        zeros(alpha[t - 1], alpha[s - 1]) for s, t in Q.arrows]
    for i in range(Q.k):
        for q in range(n):
            maps.append([[X[offsets[i] + r][q]] for r in range(alpha[i])])
    for i in range(Q.k):
        for q in range(n):
            maps.append([[Y[q][offsets[i] + r] for r in range(alpha[i])]])
    return QuiverRep(ext.quiver, (1,) + tuple(alpha), tuple(maps))


def perturb_last_entry(rep: QuiverRep, delta=1) -> QuiverRep:
    """Add ``delta`` to the (0, 0) entry of the last arrow with a nonempty matrix."""
    maps = [[list(r) for r in m] for m in rep.maps]
    for a in range(len(maps) - 1, -1, -1):
        if maps[a] and maps[a][0]:
            maps[a][0][0] += delta
            return QuiverRep(rep.quiver, rep.dims, tuple(maps))
    raise ContractError("representation has no nonzero-size arrow matrix")
