"""Small exact linear-algebra kit: sparse echelon bases over Q and dense matrices over a ring."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable

from .errors import ContractError

Vec = dict  # key -> Fraction, zeros never stored


class Echelon:
    """Incrementally built fully reduced echelon basis of a subspace of Q^(keys).

    Each stored row remembers which combination of inserted vectors produced it,
    so membership queries return coordinates with respect to the inserted tags.
    """

    def __init__(self):
        self._rows: list[tuple[Hashable, Vec, Vec]] = []  # (pivot, row, combination)
        self._pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: Vec, comb: Vec) -> tuple[Vec, Vec]:
        vec, comb = dict(vec), dict(comb)
        for pivot, row, rcomb in self._rows:
            c = vec.get(pivot)
            if not c:
                continue
            _axpy(vec, -c, row)
            _axpy(comb, -c, rcomb)
        return vec, comb

    def add(self, vec: Vec, tag: Hashable = None) -> bool:
        """Insert ``vec``; returns False if it was already in the span."""
        rest, comb = self._reduce(vec, {tag: Fraction(1)} if tag is not None else {})
        if not rest:
            return False
        pivot = min(rest)
        inv = 1 / Fraction(rest[pivot])
        rest = {k: v * inv for k, v in rest.items()}
        comb = {k: v * inv for k, v in comb.items()}
        # keep the basis fully reduced: clear the new pivot from older rows
        for n, (p, row, rcomb) in enumerate(self._rows):
            c = row.get(pivot)
            if c:
                _axpy(row, -c, rest)
                _axpy(rcomb, -c, comb)
        self._rows.append((pivot, rest, comb))
        self._pivots[pivot] = len(self._rows) - 1
        return True

    def coordinates(self, vec: Vec) -> Vec | None:
        """Coefficients over inserted tags reproducing ``vec``, or None if outside the span."""
        out: Vec = {}
        vec = dict(vec)
        for pivot, row, comb in self._rows:
            c = vec.get(pivot)
            if not c:
                continue
            _axpy(vec, -c, row)
            _axpy(out, c, comb)
        if vec:
            return None
        return out


def _axpy(y: Vec, a, x: Vec) -> None:
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


# --- dense matrices over a ring whose elements support + - * == ----------------

def zeros(rows: int, cols: int, zero=Fraction(0)) -> list[list]:
    return [[zero] * cols for _ in range(rows)]


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def shape(a) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def mat_mul(a, b, zero=Fraction(0)) -> list[list]:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2 and n and m:
        raise ContractError(f"cannot multiply {n}x{k} by {k2}x{m}")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = zero
            for t in range(k):
                s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_add(a, b) -> list[list]:
    if shape(a) != shape(b):
        raise ContractError(f"shape mismatch {shape(a)} vs {shape(b)}")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> list[list]:
    if shape(a) != shape(b):
        raise ContractError(f"shape mismatch {shape(a)} vs {shape(b)}")
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c) -> list[list]:
    return [[x * c for x in row] for row in a]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def inverse(a) -> list[list]:
    """Gauss-Jordan inverse over Q; raises ContractError when singular."""
    n, m = shape(a)
    if n != m:
        raise ContractError("only square matrices are invertible")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ContractError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def matrix_rank(a) -> int:
    return rank({j: Fraction(x) for j, x in enumerate(row) if x} for row in a)
