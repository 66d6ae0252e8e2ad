"""The two-sided action (pi, sigma) . A = P_pi A P_sigma^{-1} of S_n x S_n on matrices.

Member sets are finite and enumerated explicitly, so everything here is a
brute-force count.  Matrices in a set are stored as row-major tuples of
residues; ``(P_pi A P_sigma^{-1})[i][j] = A[pi^{-1}(i)][sigma^{-1}(j)]``, which
lets fixed-point tests run on the encodings without any matrix products.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

from .field_linalg import FieldMatrix, FieldSpec, inverse, perm_matrix
from .perm_core import (CycleType, DegreeMismatchError, Permutation,
                        enumerate_cycle_types, format_cycle_type, representative)

DEFAULT_ENUMERATION_LIMIT = 10 ** 6


class EnumerationLimitError(RuntimeError):
    pass


def gl_order(n: int, p: int) -> int:
    q = p ** n
    out = 1
    for i in range(n):
        out *= q - p ** i
    return out


def _fixed_index_map(pi: Permutation, sigma: Permutation) -> list[int]:
    # Position (i, j) must hold the same entry as (pi(i), sigma(j)).
    n = pi.n
    return [(pi(i + 1) - 1) * n + (sigma(j + 1) - 1) for i in range(n) for j in range(n)]


def _generators(n: int) -> list[Permutation]:
    if n == 1:
        return []
    gens = [Permutation.from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([range(1, n + 1)], n))
    return gens


@dataclass(frozen=True)
class InvariantMatrixSet:
    field: FieldSpec
    n: int
    members: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.field.characteristic == 0:
            raise ValueError("member sets are enumerated over prime fields only")
        object.__setattr__(self, "members", tuple(sorted(self.members)))
        object.__setattr__(self, "_lookup", frozenset(self.members))
        for code in self.members:
            if len(code) != self.n * self.n:
                raise ValueError("member encoding has the wrong length")
        self._check_invariant()

    def _check_invariant(self):
        ident = Permutation.identity(self.n)
        for g in _generators(self.n):
            for pi, sigma in ((g, ident), (ident, g)):
                idx = _fixed_index_map(pi.inverse(), sigma.inverse())
                for code in self.members:
                    if tuple(code[t] for t in idx) not in self._lookup:
                        raise ValueError("member set is not invariant under the S_n x S_n action")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, A: FieldMatrix) -> bool:
        return encode(A) in self._lookup

    def matrices(self):
        for code in self.members:
            yield decode(code, self.n, self.field)


def encode(A: FieldMatrix) -> tuple[int, ...]:
    return tuple(int(x) for row in A.rows for x in row)


def decode(code, n: int, field: FieldSpec) -> FieldMatrix:
    return FieldMatrix(field, tuple(tuple(code[i * n:(i + 1) * n]) for i in range(n)))


def _invertible_matrices(n: int, p: int):
    # Choose rows one at a time outside the span of the rows so far.
    vectors = list(product(range(p), repeat=n))

    def extend(rows, span):
        if len(rows) == n:
            yield tuple(x for r in rows for x in r)
            return
        for v in vectors:
            if v in span:
                continue
            new_span = {tuple((s + c * x) % p for s, x in zip(w, v))
                        for w in span for c in range(p)}
            yield from extend(rows + [v], new_span)

    yield from extend([], {(0,) * n})


def build_set(kind: str, n: int, p: int,
              limit: int = DEFAULT_ENUMERATION_LIMIT) -> InvariantMatrixSet:
    """``kind`` is ``full_gl`` (all of GL(n, p)) or ``perm_matrices``."""
    field = FieldSpec(p)
    if p == 0:
        raise ValueError("p must be prime")
    kind = kind.replace("-", "_")
    if kind in ("full_gl", "gl"):
        size = gl_order(n, p)
        if size > limit:
            raise EnumerationLimitError(f"|GL({n},{p})| = {size} exceeds the limit {limit}")
        members = tuple(_invertible_matrices(n, p))
    elif kind in ("perm_matrices", "perm"):
        if factorial(n) > limit:
            raise EnumerationLimitError(f"{n}! exceeds the limit {limit}")
        members = tuple(encode(perm_matrix(Permutation(img), field))
                        for img in permutations(range(1, n + 1)))
    else:
        raise ValueError(f"unknown matrix set kind {kind!r}")
    return InvariantMatrixSet(field, n, members)


def act(pi: Permutation, sigma: Permutation, A: FieldMatrix) -> FieldMatrix:
    if not (pi.n == sigma.n == A.n_rows == A.n_cols):
        raise DegreeMismatchError("permutation degrees and matrix size must agree")
    return perm_matrix(pi, A.field) @ A @ inverse(perm_matrix(sigma, A.field))


def alpha_char(M: InvariantMatrixSet, pi: Permutation, sigma: Permutation) -> int:
    """Number of members A with P_pi A P_sigma^{-1} = A."""
    if not (pi.n == sigma.n == M.n):
        raise DegreeMismatchError("permutation degrees and matrix size must agree")
    idx = _fixed_index_map(pi, sigma)
    return sum(1 for code in M.members if all(code[t] == code[s] for s, t in enumerate(idx)))


def commutant_count(M: InvariantMatrixSet, pi: Permutation) -> int:
    """Number of members commuting with P_pi, by explicit matrix products."""
    if pi.n != M.n:
        raise DegreeMismatchError("permutation degree and matrix size must agree")
    P = perm_matrix(pi, M.field)
    return sum(1 for A in M.matrices() if P @ A == A @ P)


def random_conjugate(pi: Permutation, rng: random.Random) -> Permutation:
    images = list(range(1, pi.n + 1))
    rng.shuffle(images)
    g = Permutation(tuple(images))
    return g * pi * g.inverse()


def verify_2chars(M: InvariantMatrixSet, samples: int = 3, seed: int = 0) -> dict:
    """Check the fixed-point counts of the two-sided action on every pair of classes.

    For conjugate classes the count at (pi, sigma) must equal the number of
    members commuting with pi, for ``samples`` random conjugates sigma of pi.
    For non-conjugate classes it must be 0.
    """
    rng = random.Random(seed)
    types = enumerate_cycle_types(M.n)
    rows = []
    commutants: dict[CycleType, int] = {}
    for t1 in types:
        pi = representative(t1)
        commutants[t1] = commutant_count(M, pi)
        for t2 in types:
            if t1 == t2:
                sigmas = [random_conjugate(pi, rng) for _ in range(samples)]
                values = [alpha_char(M, pi, s) for s in sigmas]
                ok = all(v == commutants[t1] for v in values)
            else:
                values = [alpha_char(M, pi, representative(t2))]
                ok = values[0] == 0
            rows.append({
                "type1": format_cycle_type(t1),
                "type2": format_cycle_type(t2),
                "conjugate": t1 == t2,
                "alpha_char": values[0],
                "samples": values,
                "commutant_count": commutants[t1],
                "pass": ok,
            })
    return {
        "field": str(M.field),
        "n": M.n,
        "size": len(M),
        "rows": rows,
        "pass": all(r["pass"] for r in rows),
    }
