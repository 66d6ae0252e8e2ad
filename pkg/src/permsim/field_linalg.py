"""Exact linear algebra over GF(p) and the rationals.

Nothing here uses floating point.  Residues mod p are plain ints in
``range(p)``; rationals are :class:`fractions.Fraction`.  Similarity of square
matrices is decided by comparing invariant factors, computed by diagonalizing
``xI - A`` over the polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _permutations

from sympy.ntheory import isprime

from . import polynomials as P
from .perm_core import Permutation


class FieldMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p), or the rationals when ``characteristic`` is 0."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (p > 1 and isprime(p)):
            raise ValueError(f"characteristic must be 0 or prime, got {p}")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        t = text.strip().upper()
        if t in ("Q", "QQ", "0", "RATIONALS"):
            return cls(0)
        if t.startswith("GF(") and t.endswith(")"):
            t = t[3:-1]
        elif t.startswith("GF"):
            t = t[2:]
        return cls(int(t))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def element(self, value):
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, p)) % p
        return int(value) % p

    def parse_element(self, text: str):
        return self.element(Fraction(text))

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def format(self, a) -> str:
        return str(a)

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)


@dataclass(frozen=True)
class FieldMatrix:
    field: FieldSpec
    rows: tuple[tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(self.field.element(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> FieldMatrix:
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int, field: FieldSpec) -> FieldMatrix:
        return cls(field, tuple((0,) * n_cols for _ in range(n_rows)))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check_compatible(self, other: FieldMatrix):
        if self.field != other.field:
            raise FieldMismatchError(f"fields {self.field} and {other.field} differ")

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        self._check_compatible(other)
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("shape mismatch")
        f = self.field
        return FieldMatrix(f, tuple(tuple(f.add(a, b) for a, b in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        self._check_compatible(other)
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("shape mismatch")
        f = self.field
        return FieldMatrix(f, tuple(tuple(f.sub(a, b) for a, b in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        self._check_compatible(other)
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        f = self.field
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = f.zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return FieldMatrix(f, tuple(out))

    def __pow__(self, k: int) -> FieldMatrix:
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = FieldMatrix.identity(self.n_rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def trace(self):
        f = self.field
        acc = f.zero
        for i in range(min(self.n_rows, self.n_cols)):
            acc = f.add(acc, self.rows[i][i])
        return acc

    def transpose(self) -> FieldMatrix:
        return FieldMatrix(self.field, tuple(zip(*self.rows)))

    def is_permutation_matrix(self) -> bool:
        if not self.is_square:
            return False
        for line in (*self.rows, *zip(*self.rows)):
            if sorted(line) != [0] * (len(line) - 1) + [1]:
                return False
        return True

    def to_permutation(self) -> Permutation:
        """The permutation whose matrix this is (entry 1 at (pi(j), j))."""
        if not self.is_permutation_matrix():
            raise ValueError("not a permutation matrix")
        cols = list(zip(*self.rows))
        return Permutation(tuple(col.index(1) + 1 for col in cols))


def perm_matrix(p: Permutation, field: FieldSpec) -> FieldMatrix:
    n = p.n
    rows = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        rows[p(j) - 1][j - 1] = 1
    return FieldMatrix(field, tuple(map(tuple, rows)))


def _row_echelon(A: FieldMatrix) -> tuple[list[list], int]:
    f = A.field
    m = [list(r) for r in A.rows]
    rank = 0
    for col in range(A.n_cols):
        pivot = next((i for i in range(rank, A.n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = f.inv(m[rank][col])
        m[rank] = [f.mul(inv, x) for x in m[rank]]
        for i in range(A.n_rows):
            if i != rank and m[i][col] != 0:
                c = m[i][col]
                m[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == A.n_rows:
            break
    return m, rank


def rank(A: FieldMatrix) -> int:
    return _row_echelon(A)[1]


def inverse(A: FieldMatrix) -> FieldMatrix:
    if not A.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = A.n_rows
    f = A.field
    aug = FieldMatrix(f, tuple(r + tuple(int(i == j) for j in range(n))
                               for i, r in enumerate(A.rows)))
    m, r = _row_echelon(aug)
    if any(m[i][i] != 1 for i in range(n)) or r < n:
        raise ZeroDivisionError("matrix is singular")
    return FieldMatrix(f, tuple(tuple(row[n:]) for row in m))


def fixed_space_dim(A: FieldMatrix) -> int:
    """Dimension of the eigenspace for eigenvalue 1."""
    if not A.is_square:
        raise ValueError("fixed space of a non-square matrix")
    return A.n_rows - rank(A - FieldMatrix.identity(A.n_rows, A.field))


@dataclass(frozen=True)
class InvariantFactorList:
    field: FieldSpec
    factors: tuple[P.Poly, ...]

    def product(self) -> P.Poly:
        return P.product(self.field, self.factors)

    def format(self, dense: bool = True) -> list[str]:
        fmt = P.format_dense if dense else P.format_pretty
        return [fmt(self.field, f) for f in self.factors]


def _diagonalize(A: FieldMatrix) -> list[P.Poly]:
    """Diagonal of the Smith form of xI - A, each entry monic.

    Pivot: a nonzero entry of minimal degree in the trailing block, ties to
    the first in row-major order.
    """
    f = A.field
    n = A.n_rows
    x = (f.zero, f.one)
    M = [[P.sub(f, x if i == j else (), P.normalize(f, [A.rows[i][j]]))
          for j in range(n)] for i in range(n)]

    def row_axpy(dst, src, q):
        # row[dst] -= q * row[src]
        M[dst] = [P.sub(f, a, P.mul(f, q, b)) for a, b in zip(M[dst], M[src])]

    def col_axpy(dst, src, q):
        for row in M:
            row[dst] = P.sub(f, row[dst], P.mul(f, q, row[src]))

    diag = []
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    e = M[i][j]
                    if e and (best is None or len(e) < len(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
            piv = M[t][t]
            clean = True
            for i in range(t + 1, n):
                if M[i][t]:
                    q, r = P.divmod_poly(f, M[i][t], piv)
                    row_axpy(i, t, q)
                    clean = clean and not r
            for j in range(t + 1, n):
                if M[t][j]:
                    q, r = P.divmod_poly(f, M[t][j], piv)
                    col_axpy(j, t, q)
                    clean = clean and not r
            if not clean:
                continue
            bad = next((i for i in range(t + 1, n) for j in range(t + 1, n)
                        if P.divmod_poly(f, M[i][j], piv)[1]), None)
            if bad is None:
                break
            M[t] = [P.add(f, a, b) for a, b in zip(M[t], M[bad])]
        diag.append(P.monic(f, M[t][t]))
    return diag


def invariant_factors(A: FieldMatrix) -> InvariantFactorList:
    """Non-constant invariant factors f_1 | f_2 | ... of A, all monic."""
    if not A.is_square:
        raise ValueError("invariant factors of a non-square matrix")
    diag = _diagonalize(A)
    return InvariantFactorList(A.field, tuple(d for d in diag if len(d) > 1))


def char_poly(A: FieldMatrix) -> P.Poly:
    return invariant_factors(A).product()


def char_poly_leibniz(A: FieldMatrix) -> P.Poly:
    """det(xI - A) by permutation expansion; only for small test matrices."""
    f = A.field
    n = A.n_rows
    x = (f.zero, f.one)
    entries = [[P.sub(f, x if i == j else (), P.normalize(f, [A.rows[i][j]]))
                for j in range(n)] for i in range(n)]
    total: P.Poly = ()
    for perm in _permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = P.product(f, (entries[i][perm[i]] for i in range(n)))
        total = P.sub(f, total, term) if inversions % 2 else P.add(f, total, term)
    return total


def similar(A: FieldMatrix, B: FieldMatrix) -> bool:
    if A.field != B.field:
        raise FieldMismatchError(f"fields {A.field} and {B.field} differ")
    if not (A.is_square and B.is_square) or A.n_rows != B.n_rows:
        raise ValueError("similarity needs square matrices of equal size")
    return invariant_factors(A) == invariant_factors(B)


def companion(field: FieldSpec, f: P.Poly) -> FieldMatrix:
    """Companion matrix of a monic polynomial of degree >= 1."""
    f = P.normalize(field, f)
    if len(f) < 2 or f[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    n = len(f) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = field.neg(f[i])
    return FieldMatrix(field, tuple(map(tuple, rows)))


def parse_matrix(text: str) -> FieldMatrix:
    """Read the text format: header ``p n_rows n_cols`` then one row per line."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 3:
        raise ValueError("matrix header must be 'p n_rows n_cols'")
    p, n_rows, n_cols = (int(t) for t in lines[0])
    field = FieldSpec(p)
    body = lines[1:]
    if len(body) != n_rows or any(len(r) != n_cols for r in body):
        raise ValueError(f"expected {n_rows} rows of {n_cols} entries")
    return FieldMatrix(field, tuple(tuple(field.parse_element(t) for t in r) for r in body))


def format_matrix(A: FieldMatrix) -> str:
    lines = [f"{A.field.characteristic} {A.n_rows} {A.n_cols}"]
    lines += [" ".join(A.field.format(x) for x in r) for r in A.rows]
    return "\n".join(lines) + "\n"
