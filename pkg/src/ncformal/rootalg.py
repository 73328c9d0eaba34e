"""Presentations of the n-th root algebra and its universal correspondence with A -> M_n(B).

Two kinds are materialised:

* free:  A = Q<x1..xd>; generators x_{ij,k}, no relations.
* path:  A = CQ; generators e^(i)_pq (the cycles y_ip x_iq through vertex i)
  and c^(a)_pq (the cycles y_ip a x_jq through arrow a: j -> i), with the
  matrix relations E^(i) E^(j) = delta_ij E^(i), sum_i E^(i) = 1,
  E^(t(a)) A^(a) = A^(a) = A^(a) E^(s(a)).

``lower`` reads a map A -> M_n(B) off entrywise; ``raise_`` assembles the
matrices back.  Relations are checked by exact evaluation in B.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraMorphism, Elem, FDAlgebra
from .errors import ContractError
from .linalg import identity, mat_mul, zeros
from .ncpoly import NCPoly
from .quiver import Quiver


@dataclass(frozen=True)
class RootPresentation:
    kind: str  # "free" or "path"
    n: int
    d: int = 0
    quiver: Quiver | None = None
    generators: tuple = field(default=(), compare=False)  # keys: ("x",k,i,j) / ("e",i,p,q) / ("c",a,p,q)
    relations: tuple = field(default=(), compare=False)  # (label, NCPoly over generator letters)

    @property
    def index(self) -> dict:
        return {g: pos for pos, g in enumerate(self.generators)}

    def gen_label(self, pos: int) -> str:
        kind, a, p, q = self.generators[pos]
        if kind == "x":
            return f"x{p}{q},{a}"
        if kind == "e":
            return f"e({a}){p}{q}"
        return f"c({self.quiver.label(a - 1)}){p}{q}"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "generator_count": len(self.generators),
               "generators": [self.gen_label(i) for i in range(len(self.generators))],
               "relations": [{"label": l, "poly": _format_rel(self, r)} for l, r in self.relations]}
        if self.kind == "free":
            out["d"] = self.d
        else:
            out["quiver"] = self.quiver.to_json()
        return out


def _format_rel(pres: RootPresentation, r: NCPoly) -> str:
    parts = []
    for w, c in r.items():
        mono = "*".join(pres.gen_label(i - 1) for i in w) if w else "1"
        parts.append(f"{c}*{mono}" if c != 1 else mono)
    return " + ".join(parts) or "0"


def root_presentation(kind: str, n: int, d: int | None = None, quiver: Quiver | None = None) -> RootPresentation:
    if n < 1:
        raise ContractError("n must be >= 1")
    rng = range(1, n + 1)
    if kind == "free":
        if d is None or d < 1:
            raise ContractError("free kind needs d >= 1")
        gens = tuple(("x", k, i, j) for k in range(1, d + 1) for i in rng for j in rng)
        return RootPresentation("free", n, d=d, generators=gens)
    if kind != "path" or quiver is None:
        raise ContractError("kind must be 'free' (with d) or 'path' (with a quiver)")
    Q = quiver
    gens = tuple(("e", i, p, q) for i in Q.vertices for p in rng for q in rng)
    gens += tuple(("c", a, p, q) for a in range(1, len(Q.arrows) + 1) for p in rng for q in rng)
    idx = {g: pos + 1 for pos, g in enumerate(gens)}
    N = len(gens)
    letter = lambda key: NCPoly.gen(N, idx[key])  # noqa: E731
    one = NCPoly.constant(N)
    rels = []
    for i in Q.vertices:
        for j in Q.vertices:
            for p in rng:
                for q in rng:
                    r = NCPoly.zero(N)
                    for s in rng:
                        r = r + letter(("e", i, p, s)) * letter(("e", j, s, q))
                    if i == j:
                        r = r - letter(("e", i, p, q))
                    rels.append((f"E{i}E{j}[{p},{q}]", r))
    for p in rng:
        for q in rng:
            r = NCPoly.zero(N)
            for i in Q.vertices:
                r = r + letter(("e", i, p, q))
            if p == q:
                r = r - one
            rels.append((f"sumE[{p},{q}]", r))
    for a, (s, t) in enumerate(Q.arrows, start=1):
        for p in rng:
            for q in rng:
                left = NCPoly.zero(N)
                right = NCPoly.zero(N)
                for u in rng:
                    left = left + letter(("e", t, p, u)) * letter(("c", a, u, q))
                    right = right + letter(("c", a, p, u)) * letter(("e", s, u, q))
                cpq = letter(("c", a, p, q))
                rels.append((f"E{t}A{a}[{p},{q}]", left - cpq))
                rels.append((f"A{a}E{s}[{p},{q}]", right - cpq))
    return RootPresentation("path", n, quiver=Q, generators=gens, relations=tuple(rels))


def effective_generators(pres: RootPresentation) -> int:
    """Generators left after eliminating those a linear one-variable relation pins to a constant."""
    pinned = set()
    for _, r in pres.relations:
        if r.degree() <= 1:
            letters = {w[0] for w in r.terms if w}
            if len(letters) == 1:
                pinned |= letters
    return len(pres.generators) - len(pinned)


# --- maps ----------------------------------------------------------------------------

def _check_matrix(m, n: int, B: FDAlgebra) -> None:
    if len(m) != n or any(len(r) != n for r in m):
        raise ContractError(f"expected an {n} x {n} matrix")
    for row in m:
        for x in row:
            if not isinstance(x, Elem) or x.algebra is not B:
                raise ContractError(f"matrix entries must be elements of {B.name}")


@dataclass(frozen=True)
class MatrixAlgebraMap:
    """Images in M_n(B): free kind, one per x_k; path kind, vertices v_1..v_k then arrows."""

    presentation: RootPresentation
    algebra: FDAlgebra
    images: tuple

    def __post_init__(self):
        pres = self.presentation
        want = pres.d if pres.kind == "free" else pres.quiver.k + len(pres.quiver.arrows)
        if len(self.images) != want:
            raise ContractError(f"need {want} matrix images, got {len(self.images)}")
        imgs = tuple(tuple(tuple(r) for r in m) for m in self.images)
        for m in imgs:
            _check_matrix(m, pres.n, self.algebra)
        object.__setattr__(self, "images", imgs)

    def violations(self) -> list[str]:
        pres = self.presentation
        if pres.kind == "free":
            return []
        B, n, Q = self.algebra, pres.n, pres.quiver
        one, zero = B.one(), B.zero()
        mul = lambda x, y: mat_mul(x, y, zero)  # noqa: E731
        V = [list(map(list, self.images[i])) for i in range(Q.k)]
        out = []
        for i in range(Q.k):
            for j in range(Q.k):
                want = V[i] if i == j else zeros(n, n, zero)
                if mul(V[i], V[j]) != want:
                    out.append(f"v{i + 1}v{j + 1}")
        total = zeros(n, n, zero)
        for m in V:
            total = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(total, m)]
        if total != identity(n, one, zero):
            out.append("sum of vertices")
        for a, (s, t) in enumerate(Q.arrows):
            A = list(map(list, self.images[Q.k + a]))
            if mul(V[t - 1], A) != A or mul(A, V[s - 1]) != A:
                out.append(f"arrow {a + 1}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()


@dataclass(frozen=True)
class RootMap:
    presentation: RootPresentation
    algebra: FDAlgebra
    images: tuple  # one Elem per generator

    def __post_init__(self):
        if len(self.images) != len(self.presentation.generators):
            raise ContractError(f"need {len(self.presentation.generators)} generator images")
        for x in self.images:
            if not isinstance(x, Elem) or x.algebra is not self.algebra:
                raise ContractError(f"images must be elements of {self.algebra.name}")
        object.__setattr__(self, "images", tuple(self.images))

    def evaluate(self, r: NCPoly) -> Elem:
        B = self.algebra
        total = B.zero()
        for w, c in r.terms.items():
            term = B.one()
            for i in w:
                term = term * self.images[i - 1]
            total = total + term * c
        return total

    def violations(self) -> list[str]:
        return [label for label, r in self.presentation.relations if self.evaluate(r)]

    def is_valid(self) -> bool:
        return not self.violations()


def lower(phi: MatrixAlgebraMap, check: bool = True) -> RootMap:
    """x_{ij,k} -> (i,j) entry of phi(x_k); e^(i)_pq, c^(a)_pq -> entries of phi(v_i), phi(a)."""
    if check and not phi.is_valid():
        raise ContractError(f"invalid map A -> M_n(B): {phi.violations()}")
    pres = phi.presentation
    out = []
    for g in pres.generators:
        kind, a, p, q = g
        if kind == "x":
            out.append(phi.images[a - 1][p - 1][q - 1])
        elif kind == "e":
            out.append(phi.images[a - 1][p - 1][q - 1])
        else:
            out.append(phi.images[pres.quiver.k + a - 1][p - 1][q - 1])
    return RootMap(pres, phi.algebra, tuple(out))


def raise_(psi: RootMap, check: bool = True) -> MatrixAlgebraMap:
    """Assemble matrices (psi(generator))_{pq} for every generator or arrow of A."""
    if check and not psi.is_valid():
        raise ContractError(f"invalid map root -> B: {psi.violations()}")
    pres = psi.presentation
    n = pres.n
    idx = pres.index
    if pres.kind == "free":
        blocks = [("x", k) for k in range(1, pres.d + 1)]
    else:
        blocks = [("e", i) for i in pres.quiver.vertices]
        blocks += [("c", a) for a in range(1, len(pres.quiver.arrows) + 1)]
    images = []
    for kind, a in blocks:
        images.append([[psi.images[idx[(kind, a, p, q)]] for q in range(1, n + 1)]
                       for p in range(1, n + 1)])
    return MatrixAlgebraMap(pres, psi.algebra, tuple(images))


def push_matrix_map(phi: MatrixAlgebraMap, f: AlgebraMorphism) -> MatrixAlgebraMap:
    """Compose A -> M_n(B) with M_n(f) for f: B -> B'."""
    if f.source is not phi.algebra:
        raise ContractError("morphism source differs from the map's algebra")
    return MatrixAlgebraMap(phi.presentation, f.target,
                            tuple([[f(x) for x in row] for row in m] for m in phi.images))


def push_root_map(psi: RootMap, f: AlgebraMorphism) -> RootMap:
    if f.source is not psi.algebra:
        raise ContractError("morphism source differs from the map's algebra")
    return RootMap(psi.presentation, f.target, tuple(f(x) for x in psi.images))


# --- random samples -----------------------------------------------------------------------

def _elementary_pair(n: int, B: FDAlgebra, rng):
    """Random g in GL_n(B) as a product of elementary matrices, with its inverse."""
    one, zero = B.one(), B.zero()
    g, g_inv = identity(n, one, zero), identity(n, one, zero)
    if n < 2:
        return g, g_inv
    for _ in range(rng.randint(1, 3)):
        p, q = rng.sample(range(n), 2)
        b = B.random(rng)
        e = identity(n, one, zero)
        e[p][q] = b
        e_inv = identity(n, one, zero)
        e_inv[p][q] = -b
        g = mat_mul(g, e, zero)
        g_inv = mat_mul(e_inv, g_inv, zero)
    return g, g_inv


def random_matrix_map(pres: RootPresentation, B: FDAlgebra, rng) -> MatrixAlgebraMap:
    n = pres.n
    rand = lambda: [[B.random(rng) for _ in range(n)] for _ in range(n)]  # noqa: E731
    if pres.kind == "free":
        return MatrixAlgebraMap(pres, B, tuple(rand() for _ in range(pres.d)))
    Q = pres.quiver
    zero, one = B.zero(), B.one()
    # split 1..n among the vertices, then conjugate the coordinate idempotents
    owner = [rng.randrange(Q.k) for _ in range(n)]
    g, g_inv = _elementary_pair(n, B, rng)
    V = []
    for i in range(Q.k):
        D = [[one if (r == c and owner[r] == i) else zero for c in range(n)] for r in range(n)]
        V.append(mat_mul(mat_mul(g, D, zero), g_inv, zero))
    arrows = [mat_mul(mat_mul(V[t - 1], rand(), zero), V[s - 1], zero) for s, t in Q.arrows]
    return MatrixAlgebraMap(pres, B, tuple(V + arrows))


def random_root_map(pres: RootPresentation, B: FDAlgebra, rng) -> RootMap:
    if pres.kind == "free":
        return RootMap(pres, B, tuple(B.random(rng) for _ in pres.generators))
    return lower(random_matrix_map(pres, B, rng))


def perturb_root_map(psi: RootMap, rng) -> RootMap:
    images = list(psi.images)
    pos = rng.randrange(len(images))
    images[pos] = images[pos] + psi.algebra.basis(rng.randrange(psi.algebra.dim))
    return RootMap(psi.presentation, psi.algebra, tuple(images))


def perturb_matrix_map(phi: MatrixAlgebraMap, rng) -> MatrixAlgebraMap:
    images = [list(map(list, m)) for m in phi.images]
    m = rng.randrange(len(images))
    p, q = rng.randrange(phi.presentation.n), rng.randrange(phi.presentation.n)
    images[m][p][q] = images[m][p][q] + phi.algebra.basis(rng.randrange(phi.algebra.dim))
    return MatrixAlgebraMap(phi.presentation, phi.algebra, tuple(images))


# --- abelianization vs coordinate ring ------------------------------------------------------

def abelianized_root_equals_rep_ring(pres: RootPresentation, rng, samples: int = 20,
                                     algebras=()) -> dict:
    """Compare commutative points of the root presentation with points of rep_n A.

    Free kind: generator count d*n^2 and no relations.  Path kind: over each
    commutative test algebra, validity of a root map must coincide with
    validity of its raised matrix map, and vice versa, on valid and perturbed samples.
    """
    report = {"kind": pres.kind, "n": pres.n, "generators": len(pres.generators),
              "relations": len(pres.relations), "checks": [], "counterexamples": []}
    if pres.kind == "free":
        ok = len(pres.generators) == pres.d * pres.n ** 2 and not pres.relations
        report["checks"].append({"check": "generator count d*n^2, no relations", "ok": ok})
        report["passed"] = ok
        return report
    report["effective_generators"] = effective_generators(pres)
    for B in algebras:
        if not B.is_commutative():
            raise ContractError(f"{B.name} is not commutative")
        tried = 0
        for _ in range(samples):
            phi = random_matrix_map(pres, B, rng)
            for cand in (phi, perturb_matrix_map(phi, rng)):
                tried += 1
                if cand.is_valid() != lower(cand, check=False).is_valid():
                    report["counterexamples"].append({"direction": "rep -> root", "algebra": B.name})
            psi = lower(phi)
            for cand in (psi, perturb_root_map(psi, rng)):
                tried += 1
                if cand.is_valid() != raise_(cand, check=False).is_valid():
                    report["counterexamples"].append({"direction": "root -> rep", "algebra": B.name})
        report["checks"].append({"check": f"point sets agree over {B.name}", "samples": tried,
                                 "ok": not any(c["algebra"] == B.name for c in report["counterexamples"])})
    report["passed"] = all(c["ok"] for c in report["checks"])
    return report


def presentation_from_args(free: tuple[int, int] | None, quiver_json: str | None, n: int | None):
    if free is not None:
        return root_presentation("free", free[1], d=free[0])
    with open(quiver_json) as fh:
        Q = Quiver.from_json(json.load(fh))
    return root_presentation("path", n, quiver=Q)


def scalar_point(B: FDAlgebra, values) -> tuple:
    return tuple(B.scalar(Fraction(v)) for v in values)
