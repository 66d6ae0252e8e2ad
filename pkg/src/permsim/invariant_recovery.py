"""Recover a permutation's cycle type from cycle counts of its powers.

The only data used is ``m(pi^k)``, the number of cycles of the k-th power.
For a permutation matrix that number is the dimension of its fixed space,
which is a similarity invariant over every field, so recovery works from the
matrix alone, in any characteristic.

From ``m(pi^k)`` we get ``m_d(pi)`` (cycles with length divisible by d) by
peeling one prime at a time off d, and then ``c_d(pi)`` (cycles of length
exactly d) by Moebius inversion over the multiples of d.
"""

from __future__ import annotations

import threading
from itertools import combinations
from math import gcd, lcm
from typing import Callable, Sequence

from sympy.ntheory import factorint

from .field_linalg import FieldMatrix, fixed_space_dim
from .perm_core import CycleType, num_cycles, power_cycle_type


class OracleInconsistencyError(ValueError):
    """The query values cannot come from any permutation."""


class NotAPermutationMatrixError(ValueError):
    pass


class CycleCountOracle:
    """Answers ``query(k) = m(pi^k)`` for a hidden permutation of degree ``n``.

    Answers are memoized; the root oracle also keeps a trace of every
    distinct power it was asked about.
    """

    def __init__(self, n: int, query: Callable[[int], int]):
        self.n = n
        self._query = query
        self._memo: dict[int, int] = {}
        self._lock = threading.Lock()

    def query(self, k: int) -> int:
        if k < 1:
            raise ValueError("powers start at 1")
        with self._lock:
            if k in self._memo:
                return self._memo[k]
        value = self._query(k)
        if not 1 <= value <= self.n:
            raise OracleInconsistencyError(
                f"m(pi^{k}) = {value} is outside 1..{self.n}")
        with self._lock:
            self._memo[k] = value
        return value

    def shifted(self, p: int) -> CycleCountOracle:
        """Oracle for pi^p, answering through this one."""
        return CycleCountOracle(self.n, lambda k: self.query(p * k))

    def trace(self) -> list[tuple[int, int]]:
        with self._lock:
            return sorted(self._memo.items())


def oracle_from_cycle_type(ct: CycleType) -> CycleCountOracle:
    return CycleCountOracle(ct.n, lambda k: num_cycles(power_cycle_type(ct, k)))


def oracle_from_matrix(A: FieldMatrix) -> CycleCountOracle:
    if not A.is_permutation_matrix():
        raise NotAPermutationMatrixError(
            "matrix must have exactly one 1 in each row and column and zeros elsewhere")
    return CycleCountOracle(A.n_rows, lambda k: fixed_space_dim(A ** k))


def oracle_from_matrix_unchecked(A: FieldMatrix) -> CycleCountOracle:
    """Like :func:`oracle_from_matrix` but trusts the input; the recovery
    consistency checks are then the only guard against non-permutation data."""
    if not A.is_square:
        raise ValueError("matrix must be square")
    return CycleCountOracle(A.n_rows, lambda k: fixed_space_dim(A ** k))


def smallest_prime_factor(d: int) -> int:
    return min(factorint(d))


def mobius(n: int) -> int:
    exps = factorint(n)
    if any(e > 1 for e in exps.values()):
        return 0
    return -1 if len(exps) % 2 else 1


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r or q < 0:
        raise OracleInconsistencyError(f"{what}: {num}/{den} is not a nonnegative integer")
    return q


def recover_m_d(oracle: CycleCountOracle, d: int,
                route: Sequence[int] | None = None) -> int:
    """Number of cycles of the hidden permutation with length divisible by ``d``.

    With d = p*t, p prime::

        m_d(pi) = (m_t(pi^p) - m_t(pi)) / (p - 1)   if gcd(p, t) == 1
        m_d(pi) = m_t(pi^p) / p                     otherwise

    ``route`` optionally fixes which prime is peeled off at each level (it
    must be a rearrangement of d's prime factors with multiplicity); by
    default the smallest prime factor is used each time.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return oracle.query(1)
    if route:
        p, rest = route[0], route[1:]
        if d % p or len(factorint(p)) != 1 or factorint(p)[p] != 1:
            raise ValueError(f"route prime {p} does not divide {d}")
    else:
        p, rest = smallest_prime_factor(d), None
    t = d // p
    mt_of_power = recover_m_d(oracle.shifted(p), t, rest)
    if gcd(p, t) == 1:
        mt = recover_m_d(oracle, t, rest)
        return _exact_div(mt_of_power - mt, p - 1, f"m_{d}")
    return _exact_div(mt_of_power, p, f"m_{d}")


def recover_c_d(oracle: CycleCountOracle, d: int) -> int:
    """Number of cycles of length exactly ``d``: sum of mu(j) * m_{dj} over dj <= n."""
    if d < 1:
        raise ValueError("d must be positive")
    total = 0
    for j in range(1, oracle.n // d + 1):
        mu = mobius(j)
        if mu:
            total += mu * recover_m_d(oracle, d * j)
    if total < 0:
        raise OracleInconsistencyError(f"c_{d} came out negative ({total})")
    return total


def inclusion_exclusion_levels(m_of: Callable[[int], int], d: int, n: int) -> list[int]:
    """Level sums of the set-based inclusion-exclusion for c_d.

    Writing I_e for the cycles with length divisible by e, c_d counts I_d
    minus the union of I_{dk} (k > 1).  Level 0 is |I_d|; level r is the sum of
    |I_{dk_1} & ... & I_{dk_r}| = m_lcm(...) over r-element sets of multiples.
    Only multiples with a nonempty I contribute, so the others are skipped.
    Then c_d = sum((-1)**r * levels[r]).
    """
    multiples = [e for e in range(2 * d, n + 1, d) if m_of(e) > 0]
    levels = [m_of(d)]
    for r in range(1, len(multiples) + 1):
        s = 0
        for combo in combinations(multiples, r):
            e = lcm(*combo)
            s += m_of(e) if e <= n else 0
        levels.append(s)
    return levels


def recover_cycle_type(oracle: CycleCountOracle) -> CycleType:
    counts = {d: recover_c_d(oracle, d) for d in range(1, oracle.n + 1)}
    total = sum(d * c for d, c in counts.items())
    if total != oracle.n:
        raise OracleInconsistencyError(
            f"recovered cycle lengths sum to {total}, not {oracle.n}: "
            "input was not a permutation")
    return CycleType.from_counts({d: c for d, c in counts.items() if c}, oracle.n)
