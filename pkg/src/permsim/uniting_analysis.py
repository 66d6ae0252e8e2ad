"""Which permutation representations of S_n make non-conjugate elements similar.

Over a field of characteristic 0, T(sigma) ~ T(tau) exactly when the
characters agree on sigma^k and tau^k for every k; for elements of equal
order m it is enough to take the divisors k of m.  For permutation
representations the same answer holds over every field: the representation factors through the induced permutation on the
action set, and permutation matrices are similar iff the permutations are
conjugate.  :func:`united_by_induced_type` uses that route and is an
independent check on :func:`united_by_char`.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import lcm
from typing import Iterator

from sympy.ntheory import divisors, factorint

from .characters import RepKind, RepresentationSpec, rep_char
from .perm_core import (CycleType, DegreeMismatchError, Permutation, cycle_type,
                        enumerate_cycle_types, fix, format_cycle_type, is_conjugate,
                        order, power_cycle_type, representative)

DEFAULT_ACTION_LIMIT = 10 ** 6


class ActionSetTooLargeError(RuntimeError):
    pass


def _same_degree(ct1: CycleType, ct2: CycleType):
    if ct1.n != ct2.n:
        raise DegreeMismatchError(f"degrees {ct1.n} and {ct2.n} differ")


def united_by_char(spec: RepresentationSpec, ct1: CycleType, ct2: CycleType) -> bool:
    """Whether the representation sends the two classes to similar matrices.

    Decided by comparing characters on all powers: the k-th power only
    depends on gcd(k, order), so the divisors k of lcm(order1, order2) cover
    every power.  With equal orders that is the divisors of the common order.
    A faithful representation never unites elements of different orders, but
    a non-faithful one (e.g. ``subsets:n``, the trivial action) can.
    """
    _same_degree(ct1, ct2)
    if spec.n != ct1.n:
        raise DegreeMismatchError(f"representation degree {spec.n} != {ct1.n}")
    m1, m2 = order(ct1), order(ct2)
    return all(rep_char(spec, power_cycle_type(ct1, k)) == rep_char(spec, power_cycle_type(ct2, k))
               for k in divisors(lcm(m1, m2)))


def is_faithful(spec: RepresentationSpec) -> bool:
    """No non-identity element fixes every point of the action set."""
    size = spec.action_set_size()
    return all(rep_char(spec, ct) < size for ct in enumerate_cycle_types(spec.n) if order(ct) > 1)


def is_almost_similar(ct1: CycleType, ct2: CycleType) -> bool:
    """Equal order m, and conjugate p-th powers for every prime p dividing m."""
    _same_degree(ct1, ct2)
    m = order(ct1)
    if m != order(ct2):
        return False
    return all(power_cycle_type(ct1, p) == power_cycle_type(ct2, p) for p in factorint(m))


def almost_similar_fix_gap(ct1: CycleType, ct2: CycleType) -> int:
    if not is_almost_similar(ct1, ct2):
        raise ValueError(f"{format_cycle_type(ct1)} and {format_cycle_type(ct2)} are not almost similar")
    return fix(ct1) - fix(ct2)


def pair_key(ct1: CycleType, ct2: CycleType) -> tuple[str, str]:
    a, b = format_cycle_type(ct1), format_cycle_type(ct2)
    return (a, b) if a <= b else (b, a)


@dataclass
class UnitingReport:
    n: int
    spec: RepresentationSpec
    united_pairs: list[tuple[CycleType, CycleType]] = field(default_factory=list)
    almost_similar_pairs_checked: int = 0
    pairs_checked: int = 0
    almost_similar_only: bool = False

    @property
    def unites(self) -> bool:
        return bool(self.united_pairs)

    @property
    def verdict(self) -> str:
        return "unites" if self.unites else "does-not-unite"

    def labels(self) -> list[tuple[str, str]]:
        return [pair_key(a, b) for a, b in self.united_pairs]

    def contains(self, ct1: CycleType, ct2: CycleType) -> bool:
        return pair_key(ct1, ct2) in set(self.labels())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rep": self.spec.label(),
            "verdict": self.verdict,
            "united_pairs": [list(lbl) for lbl in self.labels()],
            "almost_similar_pairs_checked": self.almost_similar_pairs_checked,
            "pairs_checked": self.pairs_checked,
            "almost_similar_only": self.almost_similar_only,
        }


def _check_pairs(args) -> list[tuple[bool, bool]]:
    spec, pairs = args
    return [(is_almost_similar(a, b), united_by_char(spec, a, b)) for a, b in pairs]


def _chunks(items: list, size: int) -> Iterator[list]:
    for i in range(0, len(items), size):
        yield items[i:i + size]


def find_united_pairs(spec: RepresentationSpec, *, almost_similar_only: bool = False,
                      workers: int = 1) -> UnitingReport:
    """Scan pairs of distinct cycle types of degree ``spec.n``.

    With ``almost_similar_only`` the scan skips pairs that are not almost
    similar.  For a faithful representation some pair is united iff some
    almost-similar pair is, so the verdict is unchanged but the pair list may
    be shorter.
    """
    types = enumerate_cycle_types(spec.n)
    pairs = list(combinations(types, 2))
    if almost_similar_only:
        pairs = [(a, b) for a, b in pairs if is_almost_similar(a, b)]
    if workers > 1 and len(pairs) > 64:
        size = max(16, len(pairs) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for chunk in pool.map(_check_pairs, ((spec, c) for c in _chunks(pairs, size)))
                       for r in chunk]
    else:
        results = _check_pairs((spec, pairs))

    report = UnitingReport(spec.n, spec, pairs_checked=len(pairs),
                           almost_similar_only=almost_similar_only)
    for (a, b), (almost, united) in zip(pairs, results):
        report.almost_similar_pairs_checked += almost
        if united:
            if format_cycle_type(b) < format_cycle_type(a):
                a, b = b, a
            report.united_pairs.append((a, b))
    report.united_pairs.sort(key=lambda ab: pair_key(*ab))
    return report


def action_set(spec: RepresentationSpec, limit: int = DEFAULT_ACTION_LIMIT) -> list[tuple[int, ...]]:
    """The set S_n acts on, in canonical order.

    Tuples come in lexicographic order; subsets are sorted tuples ordered by
    size, then lexicographically.
    """
    size = spec.action_set_size()
    if size > limit:
        raise ActionSetTooLargeError(f"action set of {spec.label()} on n={spec.n} has {size} "
                                     f"elements, above the limit {limit}")
    points = range(1, spec.n + 1)
    kind = spec.kind
    if kind in (RepKind.NATURAL, RepKind.TUPLES):
        return list(permutations(points, spec.k))
    if kind is RepKind.SUBSETS:
        return list(combinations(points, spec.k))
    sizes = range(spec.n + 1)
    if kind is RepKind.EVEN_SUBSETS:
        sizes = range(0, spec.n + 1, 2)
    elif kind is RepKind.ODD_SUBSETS:
        sizes = range(1, spec.n + 1, 2)
    return [s for r in sizes for s in combinations(points, r)]


def induced_permutation(p: Permutation, spec: RepresentationSpec,
                        limit: int = DEFAULT_ACTION_LIMIT) -> Permutation:
    if p.n != spec.n:
        raise DegreeMismatchError(f"permutation degree {p.n} != representation degree {spec.n}")
    elements = action_set(spec, limit)
    index = {e: i for i, e in enumerate(elements, start=1)}
    ordered = spec.kind in (RepKind.NATURAL, RepKind.TUPLES)
    images = []
    for e in elements:
        moved = tuple(p(i) for i in e)
        images.append(index[moved if ordered else tuple(sorted(moved))])
    return Permutation(tuple(images))


def induced_cycle_type(ct: CycleType, spec: RepresentationSpec,
                       limit: int = DEFAULT_ACTION_LIMIT) -> CycleType:
    return cycle_type(induced_permutation(representative(ct), spec, limit))


def united_by_induced_type(spec: RepresentationSpec, ct1: CycleType, ct2: CycleType,
                           limit: int = DEFAULT_ACTION_LIMIT) -> bool:
    _same_degree(ct1, ct2)
    return is_conjugate(induced_cycle_type(ct1, spec, limit), induced_cycle_type(ct2, spec, limit))


def default_workers() -> int:
    return os.cpu_count() or 1
