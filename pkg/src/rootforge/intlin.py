"""Small exact integer/rational linear algebra helpers.

Everything in the package works on "doubled" integer coordinate vectors,
so plain Python ints are enough; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple[int, ...]


def dot(u: Vec, v: Vec) -> int:
    return sum(a * b for a, b in zip(u, v))


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def scale(u: Vec, k: int) -> Vec:
    return tuple(k * a for a in u)


def rank(vectors: list[Vec]) -> int:
    """Rank over Q by fraction Gaussian elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / prow[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


class IntLattice:
    """Integer row lattice kept in echelon form, supporting membership tests.

    Rows are maintained so that each has a unique pivot column and pivots
    increase down the list (a Hermite-style form, enough for membership).
    """

    def __init__(self, dim: int, vectors: list[Vec] | None = None):
        self.dim = dim
        self.rows: list[list[int]] = []
        for v in vectors or []:
            self.add(v)

    @staticmethod
    def _pivot(row: list[int]) -> int | None:
        for j, x in enumerate(row):
            if x != 0:
                return j
        return None

    def add(self, vec: Vec) -> None:
        v = list(vec)
        while True:
            p = self._pivot(v)
            if p is None:
                return
            hit = None
            for idx, row in enumerate(self.rows):
                if self._pivot(row) == p:
                    hit = idx
                    break
            if hit is None:
                if v[p] < 0:
                    v = [-x for x in v]
                self.rows.append(v)
                self.rows.sort(key=lambda r: self._pivot(r))
                return
            row = self.rows[hit]
            a, b = row[p], v[p]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                # Replace the stored row by one whose pivot entry is gcd(a, b).
                g, s, t = _xgcd(a, b)
                new_row = [s * x + t * y for x, y in zip(row, v)]
                rest = [b // g * x - a // g * y for x, y in zip(row, v)]
                self.rows[hit] = new_row
                v = rest

    def __contains__(self, vec: Vec) -> bool:
        v = list(vec)
        for row in self.rows:
            p = self._pivot(row)
            if v[p] != 0:
                if v[p] % row[p] != 0:
                    return False
                q = v[p] // row[p]
                v = [x - q * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def solve_integer_combination(basis: list[Vec], target: Vec) -> list[int] | None:
    """Express target as an integer combination of basis vectors, or None.

    The basis vectors are assumed linearly independent over Q.
    """
    rows = [[Fraction(x) for x in v] for v in basis]
    rhs = [Fraction(x) for x in target]
    n = len(basis)
    coeffs = [Fraction(0)] * n
    # Solve x * M = target by Gaussian elimination on the transpose.
    ncols = len(target)
    cols = list(range(ncols))
    mat = [[rows[i][j] for i in range(n)] for j in cols]  # ncols x n
    vec = rhs[:]
    pivots: list[tuple[int, int]] = []
    used_rows: set[int] = set()
    for c in range(n):
        pr = next(
            (r for r in range(ncols) if r not in used_rows and mat[r][c] != 0), None
        )
        if pr is None:
            return None
        used_rows.add(pr)
        pivots.append((pr, c))
        pv = mat[pr][c]
        for r in range(ncols):
            if r != pr and mat[r][c] != 0:
                f = mat[r][c] / pv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[pr])]
                vec[r] = vec[r] - f * vec[pr]
    for pr, c in pivots:
        coeffs[c] = vec[pr] / mat[pr][c]
    for r in range(ncols):
        if r not in used_rows and vec[r] != 0:
            return None
    out = []
    for f in coeffs:
        if f.denominator != 1:
            return None
        out.append(int(f))
    return out
