"""Exact arithmetic in the free algebra Q<x1..xd>, in Q[x1..xd], and in Q[x1..xd][1/f].

Generators are 1-based in the public API (``x1`` is generator 1).  Words are
tuples of generator indices, exponent vectors are tuples of length ``d``.
All values are immutable; every operation returns a new object.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import AlphabetMismatch, ContractError

Word = tuple[int, ...]
Exponents = tuple[int, ...]


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def _fmt_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join_terms(pieces: list[tuple[Fraction, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for n, (c, mono) in enumerate(pieces):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono == "":
            body = _fmt_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_scalar(a)}*{mono}"
        if n == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class _Sparse:
    """Finite map key -> nonzero Fraction with vector-space operations."""

    __slots__ = ("d", "_terms", "_hash")

    def __init__(self, d: int, terms: Mapping | Iterable = ()):
        self.d = d
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for k, c in items:
            k = tuple(k)
            self._check_key(k)
            acc[k] = acc.get(k, 0) + as_fraction(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    def _check_key(self, key) -> None:
        raise NotImplementedError

    @classmethod
    def _raw(cls, d: int, terms: dict):
        # terms already validated and free of zeros
        obj = cls.__new__(cls)
        obj.d = d
        obj._terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def _sort_key(key):
        return key

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def coefficient(self, key) -> Fraction:
        return self._terms.get(tuple(key), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.d != self.d:
            raise AlphabetMismatch(f"alphabet sizes differ: {self.d} vs {other.d}")

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return self.constant(self.d, other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        self._same(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            v = acc.get(k, 0) + c
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        return self._raw(self.d, acc)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.d, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "_Sparse":
        c = as_fraction(c)
        if c == 0:
            return self._raw(self.d, {})
        return self._raw(self.d, {k: v * c for k, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.constant(self.d, other)
        if type(other) is not type(self):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.d, frozenset(self._terms.items())))
        return self._hash


class NCPoly(_Sparse):
    """Element of the free associative algebra over Q on ``d`` generators."""

    __slots__ = ()

    def _check_key(self, key) -> None:
        for i in key:
            if not 1 <= i <= self.d:
                raise ContractError(f"generator x{i} outside 1..{self.d}")

    @staticmethod
    def _sort_key(key):
        return (len(key), key)

    @classmethod
    def constant(cls, d: int, c=1) -> "NCPoly":
        return cls(d, {(): c})

    @classmethod
    def zero(cls, d: int) -> "NCPoly":
        return cls._raw(d, {})

    @classmethod
    def gen(cls, d: int, i: int) -> "NCPoly":
        return cls(d, {(i,): 1})

    @classmethod
    def word(cls, d: int, w: Iterable[int], c=1) -> "NCPoly":
        return cls(d, {tuple(w): c})

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return nc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __repr__(self):
        return _join_terms([(c, "*".join(f"x{i}" for i in w)) for w, c in self.items()])


class CommPoly(_Sparse):
    """Commutative polynomial over Q, keyed by exponent vectors of length ``d``."""

    __slots__ = ()

    def _check_key(self, key) -> None:
        if len(key) != self.d or any(e < 0 for e in key):
            raise ContractError(f"bad exponent vector {key} for d={self.d}")

    @staticmethod
    def _sort_key(key):
        return (sum(key), tuple(-e for e in key))

    @classmethod
    def constant(cls, d: int, c=1) -> "CommPoly":
        return cls(d, {(0,) * d: c})

    @classmethod
    def zero(cls, d: int) -> "CommPoly":
        return cls._raw(d, {})

    @classmethod
    def gen(cls, d: int, i: int) -> "CommPoly":
        if not 1 <= i <= d:
            raise ContractError(f"generator x{i} outside 1..{d}")
        e = [0] * d
        e[i - 1] = 1
        return cls(d, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Iterable[int], c=1) -> "CommPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._same(other)
        acc: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return self._raw(self.d, {k: v for k, v in acc.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "CommPoly":
        out = CommPoly.constant(self.d)
        for _ in range(k):
            out = out * self
        return out

    def leading(self) -> tuple[Exponents, Fraction]:
        # lex order, x1 > x2 > ... ; used by exact division
        e = max(self._terms)
        return e, self._terms[e]

    def divide_exact(self, divisor: "CommPoly") -> "CommPoly | None":
        """Quotient ``self / divisor`` if it is a polynomial, else ``None``."""
        self._same(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = divisor.leading()
        rem = self
        quot: dict = {}
        while rem:
            re_, rc = rem.leading()
            if any(a < b for a, b in zip(re_, le)):
                return None
            q = tuple(a - b for a, b in zip(re_, le))
            qc = rc / lc
            quot[q] = quot.get(q, 0) + qc
            rem = rem - CommPoly._raw(self.d, {q: qc}) * divisor
        return CommPoly(self.d, quot)

    def evaluate(self, point, one=1, zero=0):
        """Substitute ring elements for x1..xd (the ring must be commutative)."""
        if len(point) != self.d:
            raise ContractError(f"point has {len(point)} coordinates, expected {self.d}")
        total = zero
        for e, c in self._terms.items():
            term = one * c if not isinstance(one, int) else c
            for x, k in zip(point, e):
                for _ in range(k):
                    term = term * x
            total = total + term
        return total

    def __repr__(self):
        pieces = []
        for e, c in self.items():
            mono = "*".join(f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
            pieces.append((c, mono))
        return _join_terms(pieces)


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    p._same(q)
    acc: dict = {}
    for w1, c1 in p._terms.items():
        for w2, c2 in q._terms.items():
            w = w1 + w2
            acc[w] = acc.get(w, 0) + c1 * c2
    return NCPoly._raw(p.d, {k: v for k, v in acc.items() if v})


def nc_commutator(p: NCPoly, q: NCPoly) -> NCPoly:
    return nc_mul(p, q) - nc_mul(q, p)


def _check_index(d: int, i: int) -> None:
    if not 1 <= i <= d:
        raise ContractError(f"derivative index {i} outside 1..{d}")


def partial_derivative(f: CommPoly, i: int) -> CommPoly:
    _check_index(f.d, i)
    acc = {}
    for e, c in f._terms.items():
        k = e[i - 1]
        if k:
            e2 = e[: i - 1] + (k - 1,) + e[i:]
            acc[e2] = c * k
    return CommPoly._raw(f.d, acc)


def abelianize(p: NCPoly) -> CommPoly:
    acc: dict = {}
    for w, c in p._terms.items():
        e = [0] * p.d
        for i in w:
            e[i - 1] += 1
        e = tuple(e)
        acc[e] = acc.get(e, 0) + c
    return CommPoly._raw(p.d, {k: v for k, v in acc.items() if v})


class LocalizedElement:
    """``numerator / center**denom_power`` in the localization Q[x][1/center].

    Kept reduced: when ``denom_power > 0`` the center does not divide the
    numerator, which makes equality structural.
    """

    __slots__ = ("numerator", "denom_power", "center")

    def __init__(self, numerator: CommPoly, denom_power: int, center: CommPoly):
        if center.is_zero():
            raise ContractError("localization center must be nonzero")
        if denom_power < 0:
            raise ContractError("denominator power must be a natural number")
        numerator._same(center)
        while denom_power > 0 and numerator:
            q = numerator.divide_exact(center)
            if q is None:
                break
            numerator, denom_power = q, denom_power - 1
        if not numerator:
            denom_power = 0
        self.numerator = numerator
        self.denom_power = denom_power
        self.center = center

    @classmethod
    def from_poly(cls, p: CommPoly, center: CommPoly) -> "LocalizedElement":
        return cls(p, 0, center)

    @property
    def d(self) -> int:
        return self.center.d

    def _check(self, other: "LocalizedElement") -> None:
        if other.center != self.center:
            raise ContractError(f"center mismatch: {self.center} vs {other.center}")

    def _coerce(self, other) -> "LocalizedElement":
        if isinstance(other, LocalizedElement):
            self._check(other)
            return other
        if isinstance(other, CommPoly):
            return LocalizedElement(other, 0, self.center)
        if isinstance(other, (int, Fraction)):
            return LocalizedElement(CommPoly.constant(self.d, other), 0, self.center)
        raise TypeError(f"cannot combine LocalizedElement with {type(other).__name__}")

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        m = max(self.denom_power, other.denom_power)
        num = (self.numerator * self.center ** (m - self.denom_power)
               + other.numerator * other.center ** (m - other.denom_power))
        return LocalizedElement(num, m, self.center)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElement(-self.numerator, self.denom_power, self.center)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        return LocalizedElement(self.numerator * other.numerator,
                                self.denom_power + other.denom_power, self.center)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (CommPoly, int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        return (self.center == other.center and self.denom_power == other.denom_power
                and self.numerator == other.numerator)

    def __hash__(self):
        return hash((self.numerator, self.denom_power, self.center))

    def __repr__(self):
        if self.denom_power == 0:
            return repr(self.numerator)
        return f"({self.numerator})/({self.center})^{self.denom_power}"


def localized_derivative(g: LocalizedElement, i: int) -> LocalizedElement:
    """Quotient rule: d(p/f^m) = (dp*f - m*p*df) / f^(m+1)."""
    _check_index(g.d, i)
    p, m, f = g.numerator, g.denom_power, g.center
    if m == 0:
        return LocalizedElement(partial_derivative(p, i), 0, f)
    num = partial_derivative(p, i) * f - (p * partial_derivative(f, i)).scale(m)
    return LocalizedElement(num, m + 1, f)


# --- text grammar ---------------------------------------------------------

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(?:x(\d+)(?:\^(\d+))?|(\d+(?:/\d+)?))$")


def _parse_terms(text: str):
    s = text.strip()
    if not s:
        raise ContractError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    parts = _TERM_SPLIT.split(s)
    # parts: ['', sign, body, sign, body, ...]
    if parts[0].strip():
        raise ContractError(f"cannot parse polynomial {text!r}")
    for sign, body in zip(parts[1::2], parts[2::2]):
        body = body.strip()
        if not body:
            raise ContractError(f"dangling sign in {text!r}")
        coeff = Fraction(1 if sign == "+" else -1)
        gens: list[int] = []
        for factor in body.split("*"):
            m = _FACTOR.match(factor.strip())
            if not m:
                raise ContractError(f"bad factor {factor!r} in {text!r}")
            if m.group(3) is not None:
                coeff *= Fraction(m.group(3))
            else:
                gens.extend([int(m.group(1))] * int(m.group(2) or 1))
        yield coeff, gens


def parse_nc(text: str, d: int) -> NCPoly:
    """Parse e.g. ``"3*x2*x1 - x1*x2"``; factor order is significant."""
    return NCPoly(d, [(tuple(g), c) for c, g in _parse_terms(text)])


def parse_comm(text: str, d: int) -> CommPoly:
    """Parse a commutative polynomial; factor order is irrelevant, ``x1^2`` allowed."""
    terms = []
    for c, gens in _parse_terms(text):
        e = [0] * d
        for i in gens:
            if not 1 <= i <= d:
                raise ContractError(f"generator x{i} outside 1..{d}")
            e[i - 1] += 1
        terms.append((tuple(e), c))
    return CommPoly(d, terms)


def random_ncpoly(d: int, max_degree: int, rng, max_terms: int = 4, lo: int = -3, hi: int = 3) -> NCPoly:
    """Seeded random element of Q<x1..xd> with small integer coefficients."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.randint(1, d) for _ in range(rng.randint(0, max_degree)))
        terms.append((w, rng.randint(lo, hi)))
    return NCPoly(d, terms)
