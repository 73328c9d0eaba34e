"""PBW normal forms  sum_lambda [[f_lambda]] M_lambda  in Q<x1..xd>.

The ordered PBW basis of U(f_d) = Q<x1..xd> is taken over the Hall basis
x1 < ... < xd < b_1 < b_2 < ..., so a sorted factor sequence splits into a
commutative monomial in the letters followed by a bracket monomial M_lambda.
Straightening commutes adjacent descents, b_i b_j = b_j b_i + [b_i, b_j].
Every bracketing step raises ord by at least one, which is what makes the
``max_ord`` pruning below exact.
"""
from __future__ import annotations

import math
import threading
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterable

from .errors import ContractError, NotStabilized, RegistryTooSmall
from .hallbasis import HallBasis
from .ncpoly import (CommPoly, LocalizedElement, NCPoly, localized_derivative,
                     nc_mul, partial_derivative)


@dataclass(frozen=True, order=True)
class BracketMonomial:
    """Sorted multiset of Hall indices of weight >= 2, i.e. M_lambda."""

    ord: int
    entries: tuple[int, ...]

    @classmethod
    def of(cls, basis: HallBasis, entries: Iterable[int] = ()) -> "BracketMonomial":
        entries = tuple(sorted(entries))
        for i in entries:
            if not 0 <= i < len(basis):
                raise RegistryTooSmall(f"basis index {i} not in registry")
            if basis.weight(i) < 2:
                raise ContractError(f"index {i} is a generator, not a bracket")
        return cls(sum(basis.ord(i) for i in entries), entries)

    @classmethod
    def empty(cls) -> "BracketMonomial":
        return cls(0, ())

    def weight(self, basis: HallBasis) -> int:
        return sum(basis.weight(i) for i in self.entries)

    def __repr__(self):
        return f"M{list(self.entries)}"


class _Engine:
    """Memoised straightening attached to one Hall basis."""

    def __init__(self, basis: HallBasis):
        self.basis = basis
        self._ord = [e.weight - 1 for e in basis.elements]
        self._insert_cache: dict = {}

    def ord_of(self, seq) -> int:
        return sum(self._ord[i] for i in seq)

    def insert(self, x: int, s: tuple, budget) -> dict:
        """x * (sorted s) as a combination of sorted sequences of ord <= budget."""
        key = (x, s, budget)
        hit = self._insert_cache.get(key)
        if hit is not None:
            return hit
        if not s or x <= s[0]:
            out = {(x,) + s: Fraction(1)}
        else:
            s0, rest = s[0], s[1:]
            o = self._ord
            out: dict = {}
            sub_budget = None if budget is None else budget - o[s0]
            for t, c in self.insert(x, rest, sub_budget).items():
                out[(s0,) + t] = out.get((s0,) + t, 0) + c
            if budget is None or o[x] + o[s0] + 1 + self.ord_of(rest) <= budget:
                for k, ck in self.basis.bracket_pair(x, s0).items():
                    for t, c in self.insert(k, rest, budget).items():
                        v = out.get(t, 0) + ck * c
                        if v:
                            out[t] = v
                        else:
                            out.pop(t, None)
        self._insert_cache[key] = out
        return out

    def straighten(self, seq: tuple, budget=None) -> dict:
        if budget is not None and self.ord_of(seq) > budget:
            return {}
        acc: dict = {(): Fraction(1)}
        for pos in range(len(seq) - 1, -1, -1):
            x = seq[pos]
            b = None if budget is None else budget - self.ord_of(seq[:pos])
            nxt: dict = {}
            for t, c in acc.items():
                for u, cu in self.insert(x, t, b).items():
                    v = nxt.get(u, 0) + c * cu
                    if v:
                        nxt[u] = v
                    else:
                        nxt.pop(u, None)
            acc = nxt
        return acc


_ENGINES: "weakref.WeakKeyDictionary[HallBasis, _Engine]" = weakref.WeakKeyDictionary()
_ENGINE_LOCK = threading.Lock()


def _engine(basis: HallBasis) -> _Engine:
    with _ENGINE_LOCK:
        eng = _ENGINES.get(basis)
        if eng is None:
            eng = _ENGINES[basis] = _Engine(basis)
        return eng


def _letters(exps) -> tuple[int, ...]:
    return tuple(i for i, k in enumerate(exps) for _ in range(k))


@dataclass(eq=False)
class PBWElement:
    basis: HallBasis = field(repr=False)
    terms: dict  # BracketMonomial -> CommPoly (nonzero)

    def __post_init__(self):
        self.terms = {m: f for m, f in self.terms.items() if f}
        for m, f in self.terms.items():
            if f.d != self.basis.d:
                raise ContractError("coefficient alphabet does not match the basis")

    @classmethod
    def zero(cls, basis: HallBasis) -> "PBWElement":
        return cls(basis, {})

    @classmethod
    def block(cls, basis: HallBasis, f: CommPoly, entries: Iterable[int] = ()) -> "PBWElement":
        """The single block [[f]] M_lambda."""
        return cls(basis, {BracketMonomial.of(basis, entries): f})

    @property
    def d(self) -> int:
        return self.basis.d

    def items(self) -> list:
        return sorted(self.terms.items())

    def coefficient(self, mono: BracketMonomial) -> CommPoly:
        return self.terms.get(mono, CommPoly.zero(self.d))

    def degree(self) -> int:
        return max((f.degree() + m.weight(self.basis) for m, f in self.terms.items()), default=0)

    def min_ord(self) -> float:
        return min((m.ord for m in self.terms), default=math.inf)

    def truncate(self, K: int) -> "PBWElement":
        return PBWElement(self.basis, {m: f for m, f in self.terms.items() if m.ord < K})

    def __add__(self, other: "PBWElement") -> "PBWElement":
        acc = dict(self.terms)
        for m, f in other.terms.items():
            acc[m] = acc[m] + f if m in acc else f
        return PBWElement(self.basis, acc)

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        return self + other.scale(-1)

    def scale(self, c) -> "PBWElement":
        return PBWElement(self.basis, {m: f.scale(c) for m, f in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.basis.d == other.basis.d and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[[{f}]]*{m}" for m, f in self.items())


def _collect(basis: HallBasis, combos: dict, into: dict, scale=Fraction(1), shift=None) -> None:
    """Fold sorted sequences into {BracketMonomial: CommPoly}."""
    d = basis.d
    for seq, c in combos.items():
        split = 0
        while split < len(seq) and seq[split] < d:
            split += 1
        exps = [0] * d
        for i in seq[:split]:
            exps[i] += 1
        mono = BracketMonomial.of(basis, seq[split:])
        term = CommPoly._raw(d, {tuple(exps): c * scale})
        if shift is not None:
            term = term * shift
        into[mono] = into[mono] + term if mono in into else term


def pbw_normalize(p: NCPoly, basis: HallBasis, max_ord: int | None = None) -> PBWElement:
    """Unique PBW decomposition of ``p``; with ``max_ord`` only terms of ord <= max_ord."""
    if p.d != basis.d:
        raise ContractError(f"polynomial on {p.d} letters, basis on {basis.d}")
    need = p.degree() if max_ord is None else min(p.degree(), max_ord + 1)
    if need > basis.max_weight:
        raise RegistryTooSmall(f"need Hall layers up to weight {need}, have {basis.max_weight}")
    eng = _engine(basis)
    acc: dict = {}
    for w, c in p.terms.items():
        _collect(basis, eng.straighten(tuple(i - 1 for i in w), max_ord), acc, c)
    return PBWElement(basis, acc)


def lift_ordered(f: CommPoly) -> NCPoly:
    """[[f]]: each monomial becomes the nondecreasing word x1^a1 ... xd^ad."""
    return NCPoly(f.d, [(tuple(i + 1 for i in _letters(e)), c) for e, c in f.terms.items()])


def monomial_word_product(basis: HallBasis, mono: BracketMonomial) -> NCPoly:
    out = NCPoly.constant(basis.d)
    for i in mono.entries:
        out = nc_mul(out, basis.expand(i))
    return out


def pbw_expand(e: PBWElement) -> NCPoly:
    out = NCPoly.zero(e.d)
    for mono, f in e.terms.items():
        out = out + nc_mul(lift_ordered(f), monomial_word_product(e.basis, mono))
    return out


def filtration_degree(p: NCPoly, basis: HallBasis) -> float:
    """Largest k with p in F^{-k}; ``math.inf`` for the zero polynomial."""
    if p.is_zero():
        return math.inf
    return pbw_normalize(p, basis).min_ord()


def _block_product(basis, fa_exps, lam, gb_exps, mu, budget) -> dict:
    seq = _letters(fa_exps) + lam.entries + _letters(gb_exps) + mu.entries
    return _engine(basis).straighten(seq, budget)


def truncated_mul(a: PBWElement, b: PBWElement, K: int) -> PBWElement:
    """Product in Q<x>/F^{-K}: normalize(a*b) with every ord >= K term removed."""
    if a.basis is not b.basis:
        raise ContractError("operands live over different Hall registries")
    basis = a.basis
    if K < 1:
        raise ContractError("truncation K must be >= 1")
    need = a.degree() + b.degree()
    if need > basis.max_weight:
        raise RegistryTooSmall(f"need Hall layers up to weight {need}, have {basis.max_weight}")
    acc: dict = {}
    for lam, f in a.terms.items():
        for mu, g in b.terms.items():
            for ea, ca in f.terms.items():
                for eb, cb in g.terms.items():
                    combos = _block_product(basis, ea, lam, eb, mu, K - 1)
                    _collect(basis, combos, acc, ca * cb)
    return PBWElement(basis, acc)


# --- bilinear differential operators C_{lambda mu}^{nu} ----------------------

def _falling(a: tuple, alpha: tuple) -> int:
    out = 1
    for x, k in zip(a, alpha):
        for t in range(k):
            out *= x - t
    return out


def _leq(alpha, a) -> bool:
    return all(x <= y for x, y in zip(alpha, a))


def exponent_vectors(d: int, max_degree: int) -> list[tuple[int, ...]]:
    out = [e for e in product(range(max_degree + 1), repeat=d) if sum(e) <= max_degree]
    return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))


def derivative(f, alpha):
    """Apply d^alpha to a CommPoly or a LocalizedElement."""
    for i, k in enumerate(alpha):
        for _ in range(k):
            f = partial_derivative(f, i + 1) if isinstance(f, CommPoly) else localized_derivative(f, i + 1)
    return f


@dataclass(frozen=True)
class BilinearOperator:
    """(f, g) -> sum c(x) * d^alpha f * d^beta g, the coefficient of M_nu."""

    lam: BracketMonomial
    mu: BracketMonomial
    nu: BracketMonomial
    terms: tuple  # ((CommPoly coeff, alpha, beta), ...)
    bound: int
    stabilized: bool

    def apply(self, f, g):
        if isinstance(f, LocalizedElement) or isinstance(g, LocalizedElement):
            center = f.center if isinstance(f, LocalizedElement) else g.center
            total = LocalizedElement(CommPoly.zero(center.d), 0, center)
        else:
            total = CommPoly.zero(f.d)
        for c, alpha, beta in self.terms:
            df, dg = derivative(f, alpha), derivative(g, beta)
            if isinstance(df, LocalizedElement):
                total = total + df * dg * c
            elif isinstance(dg, LocalizedElement):
                total = total + dg * df * c
            else:
                total = total + c * df * dg
        return total

    def signature(self) -> tuple:
        return tuple((tuple(sorted(c.terms.items())), a, b) for c, a, b in self.terms)

    def describe(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, alpha, beta in self.terms:
            da = "*".join(f"d{i + 1}^{k}" if k > 1 else f"d{i + 1}" for i, k in enumerate(alpha) if k) or "1"
            db = "*".join(f"d{i + 1}^{k}" if k > 1 else f"d{i + 1}" for i, k in enumerate(beta) if k) or "1"
            parts.append(f"({c}) * {da}(f) * {db}(g)")
        return " + ".join(parts)


def extract_C_operator(basis: HallBasis, lam: BracketMonomial, mu: BracketMonomial,
                       nu: BracketMonomial, degree_bound: int,
                       require_stable: bool = True) -> BilinearOperator:
    """Interpolate C_{lam mu}^nu from its values on monomial pairs of degree <= bound.

    The unknown coefficients c_{alpha,beta}(x) are solved in order of |a|+|b|:
    on f = x^a, g = x^b the operator evaluates to
    sum_{alpha<=a, beta<=b} c_{alpha,beta} (a)_alpha (b)_beta x^(a-alpha+b-beta),
    a triangular system with diagonal a! b!.
    """
    if degree_bound < 1:
        raise ContractError("degree_bound must be >= 1")
    d = basis.d
    mons = exponent_vectors(d, degree_bound)
    pairs = sorted(product(mons, mons), key=lambda ab: sum(ab[0]) + sum(ab[1]))
    budget = nu.ord
    if budget >= 1 and budget + 1 > basis.max_weight:
        raise RegistryTooSmall(f"need Hall layers up to weight {budget + 1}")
    coeffs: dict = {}
    zero = CommPoly.zero(d)
    for a, b in pairs:
        acc: dict = {}
        _collect(basis, _block_product(basis, a, lam, b, mu, budget), acc)
        residual = acc.get(nu, zero)
        for (alpha, beta), c in coeffs.items():
            if _leq(alpha, a) and _leq(beta, b) and (alpha, beta) != (a, b):
                shift = tuple(x - y + u - v for x, y, u, v in zip(a, alpha, b, beta))
                residual = residual - c * CommPoly._raw(d, {shift: Fraction(_falling(a, alpha) * _falling(b, beta))})
        if residual:
            diag = _falling(a, a) * _falling(b, b)
            coeffs[(a, b)] = residual.scale(Fraction(1, diag))
    top = [ab for ab in coeffs if max(sum(ab[0]), sum(ab[1])) == degree_bound]
    stabilized = not top
    if require_stable and not stabilized:
        raise NotStabilized(
            f"C^{nu}_{lam},{mu} still changing at degree bound {degree_bound}; raise the bound")
    terms = tuple((c, alpha, beta) for (alpha, beta), c in
                  sorted(coeffs.items(), key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0])))
    return BilinearOperator(lam, mu, nu, terms, degree_bound, stabilized)


def default_bound(lam: BracketMonomial, mu: BracketMonomial, nu: BracketMonomial) -> int:
    # each unit of ord gained consumes at most one derivative per argument
    return max(2, nu.ord - lam.ord - mu.ord + 2)


def enumerate_monomials(basis: HallBasis, max_ord: int) -> list[BracketMonomial]:
    """All M_lambda with ord(lambda) <= max_ord, ordered by (ord, entries)."""
    if max_ord < 0:
        return []
    if max_ord + 1 > basis.max_weight and max_ord >= 1:
        raise RegistryTooSmall(f"need Hall layers up to weight {max_ord + 1}")
    brackets = [i for k in range(2, max_ord + 2) for i in basis.layer(k)]
    out = {BracketMonomial.empty()}
    for size in range(1, max_ord + 1):
        for combo in combinations_with_replacement(brackets, size):
            m = BracketMonomial.of(basis, combo)
            if m.ord <= max_ord:
                out.add(m)
    return sorted(out)


class OperatorTable:
    """Write-once cache of extracted operators for one Hall registry."""

    def __init__(self, basis: HallBasis, max_bound: int = 8):
        self.basis = basis
        self.max_bound = max_bound
        self._cache: dict = {}
        self._lock = threading.Lock()

    def get(self, lam: BracketMonomial, mu: BracketMonomial, nu: BracketMonomial) -> BilinearOperator:
        key = (lam, mu, nu)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if nu.ord < lam.ord + mu.ord:
            op = BilinearOperator(lam, mu, nu, (), 0, True)
        else:
            bound = min(default_bound(lam, mu, nu), self.max_bound)
            while True:
                op = extract_C_operator(self.basis, lam, mu, nu, bound, require_stable=False)
                if op.stabilized:
                    break
                bound += 1
                if bound > self.max_bound:
                    raise NotStabilized(f"missing operator C^{nu}_{lam},{mu}: no stabilization "
                                        f"up to bound {self.max_bound}")
        with self._lock:
            return self._cache.setdefault(key, op)


def associativity_sides(table: OperatorTable, l1, l2, l3, nu, f, g, h):
    """Both sides of the associativity constraint for C evaluated at (f, g, h)."""
    basis = table.basis
    mids = enumerate_monomials(basis, nu.ord)
    lhs = CommPoly.zero(basis.d)
    rhs = CommPoly.zero(basis.d)
    for m in mids:
        if l1.ord + l2.ord <= m.ord <= nu.ord - l3.ord:
            inner = table.get(l1, l2, m).apply(f, g)
            if inner:
                lhs = lhs + table.get(m, l3, nu).apply(inner, h)
        if l2.ord + l3.ord <= m.ord <= nu.ord - l1.ord:
            inner = table.get(l2, l3, m).apply(g, h)
            if inner:
                rhs = rhs + table.get(l1, m, nu).apply(f, inner)
    return lhs, rhs


def check_associativity_constraint(table: OperatorTable, l1, l2, l3, nu, samples) -> bool:
    return all(lhs == rhs for lhs, rhs in
               (associativity_sides(table, l1, l2, l3, nu, f, g, h) for f, g, h in samples))


# --- truncated formal sections over a basic open X(center) ---------------------

@dataclass(eq=False)
class FormalSection:
    """sum [[f_lambda]] M_lambda with f_lambda in Q[x][1/center], ord(lambda) < K."""

    basis: HallBasis = field(repr=False)
    center: CommPoly
    K: int
    terms: dict  # BracketMonomial -> LocalizedElement

    def __post_init__(self):
        clean = {}
        for m, f in self.terms.items():
            if not isinstance(f, LocalizedElement):
                f = LocalizedElement.from_poly(f, self.center)
            if f.center != self.center:
                raise ContractError("all coefficients must share the section's center")
            if m.ord >= self.K:
                raise ContractError(f"monomial {m} has ord {m.ord} >= K={self.K}")
            if f:
                clean[m] = f
        self.terms = clean

    @classmethod
    def from_pbw(cls, e: PBWElement, center: CommPoly, K: int) -> "FormalSection":
        return cls(e.basis, center, K, {m: f for m, f in e.terms.items() if m.ord < K})

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __eq__(self, other):
        if not isinstance(other, FormalSection):
            return NotImplemented
        return self.center == other.center and self.K == other.K and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[[{f}]]*{m}" for m, f in self.items())


def formal_section_mul(a: FormalSection, b: FormalSection, table: OperatorTable) -> FormalSection:
    if a.center != b.center:
        raise ContractError(f"center mismatch: {a.center} vs {b.center}")
    if a.K != b.K:
        raise ContractError(f"truncation mismatch: K={a.K} vs K={b.K}")
    targets = enumerate_monomials(table.basis, a.K - 1)
    acc: dict = {}
    for lam, f in a.terms.items():
        for mu, g in b.terms.items():
            for nu in targets:
                if nu.ord < lam.ord + mu.ord:
                    continue
                val = table.get(lam, mu, nu).apply(f, g)
                if val:
                    acc[nu] = acc[nu] + val if nu in acc else val
    return FormalSection(a.basis, a.center, a.K, acc)
