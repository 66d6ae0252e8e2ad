"""Permutations of {1..n}, their cycle types, and cycle-type arithmetic.

Points are 1-based in every external format.  A :class:`Permutation` stores
its one-line images, also 1-based.  A :class:`CycleType` records how many
cycles of each exact length a permutation has; most of the library works
with cycle types alone since they label the conjugacy classes of S_n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping

from sympy.utilities.iterables import partitions


class PermutationSyntaxError(ValueError):
    """Malformed permutation text.  ``position`` is a 0-based offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DegreeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a bijection of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], n: int) -> Permutation:
        images = list(range(1, n + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # (p * q)(i) = p(q(i)), so that perm_matrix(p * q) = P_p @ P_q.
        if self.n != other.n:
            raise DegreeMismatchError(f"degrees {self.n} and {other.n} differ")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles including fixed points, each starting at its least point."""
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i - 1]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved)

    def __str__(self) -> str:
        return " ".join(map(str, self.images))


@dataclass(frozen=True)
class CycleType:
    """Cycle counts of a permutation of degree ``n``.

    ``parts`` holds ``(length, count)`` pairs sorted by length, zero counts
    dropped, so equal cycle types compare and hash equal.
    """

    n: int
    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        parts = tuple(sorted((int(d), int(c)) for d, c in self.parts if c != 0))
        if any(d < 1 or c < 0 for d, c in parts):
            raise ValueError(f"invalid cycle counts {parts}")
        if len({d for d, _ in parts}) != len(parts):
            raise ValueError(f"repeated cycle length in {parts}")
        total = sum(d * c for d, c in parts)
        if total != self.n:
            raise ValueError(f"cycle lengths sum to {total}, expected degree {self.n}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], n: int | None = None) -> CycleType:
        if n is None:
            n = sum(d * c for d, c in counts.items())
        return cls(n, tuple(counts.items()))

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> CycleType:
        counts: dict[int, int] = {}
        for length in lengths:
            counts[length] = counts.get(length, 0) + 1
        return cls.from_counts(counts)

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.parts)

    def lengths(self) -> list[int]:
        """Cycle lengths, longest first."""
        return [d for d, c in reversed(self.parts) for _ in range(c)]

    def __str__(self) -> str:
        return format_cycle_type(self)


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse one-line ("2 1 4 3") or cycle ("(1 2)(3 4)") notation.

    Points inside cycles may be separated by spaces or commas.  Points not
    mentioned in cycle notation are fixed.  When ``n`` is omitted it is the
    length of the one-line form, or the largest point named in the cycles.
    """
    if "(" in text or ")" in text:
        return _parse_cycles(text, n)
    tokens = [(m.group(), m.start()) for m in re.finditer(r"[^\s,]+", text)]
    if not tokens:
        raise PermutationSyntaxError("empty permutation", 0)
    values = []
    for tok, pos in tokens:
        if not tok.isdigit():
            raise PermutationSyntaxError(f"unexpected token {tok!r}", pos)
        values.append((int(tok), pos))
    if n is None:
        n = len(values)
    elif len(values) != n:
        raise PermutationSyntaxError(
            f"one-line form has {len(values)} entries, expected {n}", tokens[-1][1]
        )
    seen: set[int] = set()
    for v, pos in values:
        if not 1 <= v <= n:
            raise PermutationSyntaxError(f"point {v} out of range 1..{n}", pos)
        if v in seen:
            raise PermutationSyntaxError(f"duplicate point {v}", pos)
        seen.add(v)
    return Permutation(tuple(v for v, _ in values))


_CYCLE_TOKEN = re.compile(r"\s+|,|\(|\)|\d+|.")


def _parse_cycles(text: str, n: int | None) -> Permutation:
    cycles: list[list[tuple[int, int]]] = []
    current: list[tuple[int, int]] | None = None
    for m in _CYCLE_TOKEN.finditer(text):
        tok, pos = m.group(), m.start()
        if tok.isspace() or tok == ",":
            if tok == "," and current is None:
                raise PermutationSyntaxError("comma outside a cycle", pos)
            continue
        if tok == "(":
            if current is not None:
                raise PermutationSyntaxError("nested '('", pos)
            current = []
        elif tok == ")":
            if current is None:
                raise PermutationSyntaxError("unmatched ')'", pos)
            cycles.append(current)
            current = None
        elif tok.isdigit():
            if current is None:
                raise PermutationSyntaxError("point outside a cycle", pos)
            current.append((int(tok), pos))
        else:
            raise PermutationSyntaxError(f"unexpected character {tok!r}", pos)
    if current is not None:
        raise PermutationSyntaxError("unclosed '('", len(text))

    if n is None:
        n = max((v for cyc in cycles for v, _ in cyc), default=0)
        if n == 0:
            raise PermutationSyntaxError("cannot infer degree of empty permutation", 0)
    seen: set[int] = set()
    for cyc in cycles:
        for v, pos in cyc:
            if not 1 <= v <= n:
                raise PermutationSyntaxError(f"point {v} out of range 1..{n}", pos)
            if v in seen:
                raise PermutationSyntaxError(f"duplicate point {v}", pos)
            seen.add(v)
    return Permutation.from_cycles(([v for v, _ in cyc] for cyc in cycles), n)


_TYPE_PART = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_cycle_type(text: str, n: int | None = None) -> CycleType:
    """Parse bracket notation such as ``[3^2,6^2,9,12^2]`` (brackets optional)."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    counts: dict[int, int] = {}
    for raw in body.split(","):
        part = raw.strip()
        m = _TYPE_PART.match(part)
        if not m or int(m.group(1)) < 1:
            raise ValueError(f"bad cycle-type part {part!r} in {text!r}")
        d = int(m.group(1))
        counts[d] = counts.get(d, 0) + int(m.group(2) or 1)
    ct = CycleType.from_counts(counts)
    if n is not None and ct.n != n:
        raise DegreeMismatchError(f"cycle type {text!r} has degree {ct.n}, expected {n}")
    return ct


def format_cycle_type(ct: CycleType) -> str:
    items = [str(d) if c == 1 else f"{d}^{c}" for d, c in ct.parts]
    return "[" + ",".join(items) + "]"


def cycle_type(p: Permutation) -> CycleType:
    return CycleType.from_lengths(len(c) for c in p.cycles())


def power_cycle_type(ct: CycleType, k: int) -> CycleType:
    """Cycle type of the k-th power: an L-cycle splits into gcd(L, k) cycles of length L/gcd(L, k)."""
    if k < 1:
        raise ValueError("k must be positive")
    counts: dict[int, int] = {}
    for length, c in ct.parts:
        g = gcd(length, k)
        counts[length // g] = counts.get(length // g, 0) + g * c
    return CycleType.from_counts(counts, ct.n)


def perm_power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        raise ValueError("k must be nonnegative")
    images = [0] * p.n
    for cyc in p.cycles():
        length = len(cyc)
        for idx, point in enumerate(cyc):
            images[point - 1] = cyc[(idx + k) % length]
    return Permutation(tuple(images))


def order(ct: CycleType) -> int:
    return reduce(lcm, (d for d, _ in ct.parts), 1)


def num_cycles(ct: CycleType) -> int:
    return sum(c for _, c in ct.parts)


def m_d(ct: CycleType, d: int) -> int:
    """Number of cycles whose length is divisible by ``d``."""
    return sum(c for length, c in ct.parts if length % d == 0)


def c_d(ct: CycleType, d: int) -> int:
    return ct.counts.get(d, 0)


def fix(ct: CycleType) -> int:
    return c_d(ct, 1)


def is_conjugate(ct1: CycleType, ct2: CycleType) -> bool:
    if ct1.n != ct2.n:
        raise DegreeMismatchError(f"degrees {ct1.n} and {ct2.n} differ")
    return ct1.parts == ct2.parts


def iter_cycle_types(n: int) -> Iterator[CycleType]:
    # sympy yields partitions in reverse lexicographic order of their
    # descending part lists: [n], [n-1,1], ..., [1^n].
    for part in partitions(n):
        yield CycleType.from_counts(dict(part), n)


def enumerate_cycle_types(n: int) -> list[CycleType]:
    if n < 1:
        raise ValueError("n must be positive")
    return list(iter_cycle_types(n))


def representative(ct: CycleType) -> Permutation:
    """Canonical permutation of type ``ct``: cycles on consecutive points, longest first."""
    cycles = []
    start = 1
    for length in ct.lengths():
        cycles.append(range(start, start + length))
        start += length
    return Permutation.from_cycles(cycles, ct.n)
