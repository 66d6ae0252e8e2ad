"""Permutation characters of S_n acting on tuples and subsets of {1..n}.

Each character value is the number of points of the action set fixed by a
permutation, and depends only on its cycle type.  k-tuples have distinct
entries, so tuples(n) is the regular representation.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import comb, prod

from .perm_core import CycleType, DegreeMismatchError, fix, num_cycles


class RepKind(enum.Enum):
    NATURAL = "natural"
    TUPLES = "tuples"
    SUBSETS = "subsets"
    POWER_SET = "powerset"
    EVEN_SUBSETS = "even-subsets"
    ODD_SUBSETS = "odd-subsets"


@dataclass(frozen=True)
class RepresentationSpec:
    kind: RepKind
    n: int
    k: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be positive")
        if self.kind in (RepKind.TUPLES, RepKind.SUBSETS):
            if self.k is None or not 1 <= self.k <= self.n:
                raise ValueError(f"{self.kind.value} needs 1 <= k <= n, got k={self.k}, n={self.n}")
        elif self.kind is RepKind.NATURAL:
            object.__setattr__(self, "k", 1)
        elif self.k is not None:
            raise ValueError(f"{self.kind.value} takes no k")

    @classmethod
    def parse(cls, text: str, n: int) -> RepresentationSpec:
        """Parse ``tuples:K``, ``subsets:K``, ``natural``, ``powerset``,
        ``even-subsets`` or ``odd-subsets``."""
        m = re.fullmatch(r"\s*([a-z_-]+)\s*(?::\s*(\d+))?\s*", text.lower())
        if not m:
            raise ValueError(f"bad representation {text!r}")
        name = m.group(1).replace("_", "-")
        name = {"power-set": "powerset", "even": "even-subsets", "odd": "odd-subsets"}.get(name, name)
        try:
            kind = RepKind(name)
        except ValueError:
            raise ValueError(f"unknown representation {text!r}") from None
        k = int(m.group(2)) if m.group(2) else None
        return cls(kind, n, k)

    @property
    def is_natural(self) -> bool:
        return self.kind is RepKind.NATURAL or (self.kind is RepKind.TUPLES and self.k == 1)

    def label(self) -> str:
        if self.kind in (RepKind.TUPLES, RepKind.SUBSETS):
            return f"{self.kind.value}:{self.k}"
        return self.kind.value

    def action_set_size(self) -> int:
        n = self.n
        if self.kind is RepKind.NATURAL:
            return n
        if self.kind is RepKind.TUPLES:
            return prod(range(n - self.k + 1, n + 1))
        if self.kind is RepKind.SUBSETS:
            return comb(n, self.k)
        if self.kind is RepKind.POWER_SET:
            return 2 ** n
        return 2 ** (n - 1)

    def __str__(self) -> str:
        return self.label()


def all_specs(n: int) -> list[RepresentationSpec]:
    specs = [RepresentationSpec(RepKind.NATURAL, n)]
    specs += [RepresentationSpec(RepKind.TUPLES, n, k) for k in range(1, n + 1)]
    specs += [RepresentationSpec(RepKind.SUBSETS, n, k) for k in range(1, n + 1)]
    specs += [RepresentationSpec(kind, n) for kind in
              (RepKind.POWER_SET, RepKind.EVEN_SUBSETS, RepKind.ODD_SUBSETS)]
    return specs


def tuple_char(ct: CycleType, k: int) -> int:
    """Ordered k-tuples of distinct fixed points: c_1 (c_1 - 1) ... (c_1 - k + 1)."""
    c1 = fix(ct)
    if k > c1:
        return 0
    return prod(range(c1 - k + 1, c1 + 1))


def subset_gen_fn(ct: CycleType) -> tuple[int, ...]:
    """Coefficients of prod_i (1 + t^i)^{c_i}; entry k counts fixed k-subsets."""
    coeffs = [1] + [0] * ct.n
    deg = 0
    for length, c in ct.parts:
        for _ in range(c):
            for j in range(deg, -1, -1):
                if coeffs[j]:
                    coeffs[j + length] += coeffs[j]
            deg += length
    return tuple(coeffs)


def eval_gen_fn(coeffs, t: int) -> int:
    return sum(c * t ** k for k, c in enumerate(coeffs))


def subset_char(ct: CycleType, k: int) -> int:
    if not 0 <= k <= ct.n:
        raise ValueError(f"k must lie in 0..{ct.n}")
    return subset_gen_fn(ct)[k]


def _partitions_as_multiplicities(k: int, max_part: int | None = None):
    """Yield {part: multiplicity} for each partition of k."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield {}
        return
    for part in range(min(k, max_part), 0, -1):
        for mult in range(1, k // part + 1):
            for rest in _partitions_as_multiplicities(k - part * mult, part - 1):
                yield {part: mult, **rest}


def subset_char_by_partitions(ct: CycleType, k: int) -> int:
    """Sum over partitions of k (lambda_i parts equal to i) of prod_i C(c_i, lambda_i).

    Chooses which cycles make up a fixed k-subset directly; used to check the
    generating function.
    """
    counts = ct.counts
    return sum(prod(comb(counts.get(i, 0), lam) for i, lam in mu.items())
               for mu in _partitions_as_multiplicities(k))


def has_odd_cycle(ct: CycleType) -> bool:
    return any(length % 2 for length, _ in ct.parts)


def powerset_char(ct: CycleType) -> int:
    return 2 ** num_cycles(ct)


def even_subsets_char(ct: CycleType) -> int:
    m = num_cycles(ct)
    return 2 ** (m - 1) if has_odd_cycle(ct) else 2 ** m


def odd_subsets_char(ct: CycleType) -> int:
    return 2 ** (num_cycles(ct) - 1) if has_odd_cycle(ct) else 0


def rep_char(spec: RepresentationSpec, ct: CycleType) -> int:
    if spec.n != ct.n:
        raise DegreeMismatchError(f"representation degree {spec.n} != cycle type degree {ct.n}")
    kind = spec.kind
    if kind is RepKind.NATURAL:
        return fix(ct)
    if kind is RepKind.TUPLES:
        return tuple_char(ct, spec.k)
    if kind is RepKind.SUBSETS:
        return subset_char(ct, spec.k)
    if kind is RepKind.POWER_SET:
        return powerset_char(ct)
    if kind is RepKind.EVEN_SUBSETS:
        return even_subsets_char(ct)
    return odd_subsets_char(ct)
