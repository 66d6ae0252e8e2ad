"""The theorem battery behind ``permsim verify-paper``.

Every check is an exhaustive or exact computation at small degree; each one
returns a :class:`CheckResult` and the battery never stops at the first
failure.  Results are listed in a fixed order and contain no timings, so the
output is byte-identical across runs and worker counts.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable

from sympy.ntheory import factorint

from .alpha_action import build_set, verify_2chars
from .characters import (RepKind, RepresentationSpec, all_specs, eval_gen_fn, has_odd_cycle,
                         powerset_char, subset_char_by_partitions, subset_gen_fn)
from .field_linalg import QQ, FieldSpec, char_poly, fixed_space_dim, perm_matrix, similar
from .invariant_recovery import (inclusion_exclusion_levels, oracle_from_cycle_type,
                                 oracle_from_matrix, recover_c_d, recover_cycle_type, recover_m_d)
from .perm_core import (CycleType, Permutation, cycle_type, enumerate_cycle_types,
                        format_cycle_type, is_conjugate, m_d, num_cycles, order,
                        parse_cycle_type, perm_power, power_cycle_type, representative)
from .uniting_analysis import (almost_similar_fix_gap, find_united_pairs, induced_permutation,
                               is_almost_similar, is_faithful, united_by_char, united_by_induced_type)

FIELDS = (FieldSpec(2), FieldSpec(3), QQ)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


def _all_perms(n: int):
    for img in permutations(range(1, n + 1)):
        yield Permutation(img)


def _type_pairs(n: int):
    return combinations(enumerate_cycle_types(n), 2)


def check_power_splitting(max_n: int) -> CheckResult:
    top = min(max_n, 6)
    bad = [(p, k) for n in range(1, top + 1) for p in _all_perms(n) for k in range(1, 13)
           if cycle_type(perm_power(p, k)) != power_cycle_type(cycle_type(p), k)]
    return CheckResult("power-of-cycle-splits-by-gcd", not bad,
                       f"all permutations n<={top}, k<=12; {len(bad)} mismatches")


def check_fixed_space(max_n: int) -> CheckResult:
    bad = 0
    count = 0
    for n in range(1, max_n + 1):
        for ct in enumerate_cycle_types(n):
            for field in FIELDS:
                A = perm_matrix(representative(ct), field)
                for k in range(1, order(ct) + 1):
                    count += 1
                    bad += fixed_space_dim(A ** k) != num_cycles(power_cycle_type(ct, k))
    return CheckResult("fixed-space-dimension-counts-cycles", not bad,
                       f"{count} (type, field, power) cases n<={max_n}; {bad} mismatches")


def check_trace_powers(max_n: int) -> CheckResult:
    bad = 0
    for n in range(1, max_n + 1):
        for ct in enumerate_cycle_types(n):
            A = perm_matrix(representative(ct), QQ)
            counts = ct.counts
            for d in range(1, n + 1):
                expected = sum(k * counts.get(k, 0) for k in range(1, d + 1) if d % k == 0)
                bad += (A ** d).trace() != expected
    return CheckResult("trace-of-powers-over-Q", not bad, f"n<={max_n}; {bad} mismatches")


def check_worked_example(_: int) -> CheckResult:
    ct = parse_cycle_type("[3^2,6^2,9,12^2]")
    oracle = oracle_from_cycle_type(ct)
    got = {
        "pi^2": format_cycle_type(power_cycle_type(ct, 2)),
        "pi^3": format_cycle_type(power_cycle_type(ct, 3)),
        "m_4(pi^3)": m_d(power_cycle_type(ct, 3), 4),
        "m_4(pi)": m_d(ct, 4),
        "m_6(pi^2)": m_d(power_cycle_type(ct, 2), 6),
        "m_12 via 3*4": recover_m_d(oracle, 12, (3, 2, 2)),
        "m_12 via 2*6": recover_m_d(oracle, 12, (2, 2, 3)),
        "c_3": recover_c_d(oracle, 3),
        "inclusion-exclusion levels": inclusion_exclusion_levels(lambda e: m_d(ct, e), 3, ct.n),
    }
    want = {
        "pi^2": "[3^6,6^4,9]", "pi^3": "[1^6,2^6,3^3,4^6]",
        "m_4(pi^3)": 6, "m_4(pi)": 2, "m_6(pi^2)": 4,
        "m_12 via 3*4": 2, "m_12 via 2*6": 2, "c_3": 2,
        "inclusion-exclusion levels": [7, 7, 2, 0],
    }
    bad = [k for k in want if got[k] != want[k]]
    return CheckResult("divisible-cycle-counts-worked-example", not bad,
                       "type [3^2,6^2,9,12^2]: " + ("all values match" if not bad else f"mismatch {bad}"))


def check_char2_collision(_: int) -> CheckResult:
    gf2 = FieldSpec(2)
    mats = [perm_matrix(representative(parse_cycle_type(t)), gf2) for t in ("[4]", "[2^2]", "[1^4]")]
    same_poly = len({char_poly(A) for A in mats}) == 1 and char_poly(mats[0]) == (1, 0, 0, 0, 1)
    distinct = not any(similar(a, b) for a, b in combinations(mats, 2))
    recovered = [format_cycle_type(recover_cycle_type(oracle_from_matrix(A))) for A in mats]
    ok = same_poly and distinct and recovered == ["[4]", "[2^2]", "[1^4]"]
    return CheckResult("char-2-equal-charpoly-not-similar", ok,
                       f"charpoly (x+1)^4 shared: {same_poly}; pairwise non-similar: {distinct}; "
                       f"recovered {recovered}")


def check_recovery(max_n: int) -> CheckResult:
    fields = (FieldSpec(2), FieldSpec(3), FieldSpec(5), QQ)
    full = min(max_n, 5)
    bad = 0
    count = 0
    for n in range(1, max_n + 1):
        perms = _all_perms(n) if n <= full else (representative(ct) for ct in enumerate_cycle_types(n))
        for p in perms:
            for field in fields:
                count += 1
                bad += recover_cycle_type(oracle_from_matrix(perm_matrix(p, field))) != cycle_type(p)
    return CheckResult("cycle-type-recovered-from-matrix", not bad,
                       f"{count} cases (all permutations n<={full}, class representatives to n={max_n}, "
                       f"GF(2), GF(3), GF(5), Q); {bad} failures")


def check_natural_similarity(max_n: int) -> CheckResult:
    bad = 0
    count = 0
    for n in range(1, max_n + 1):
        types = enumerate_cycle_types(n)
        for field in FIELDS:
            mats = {ct: perm_matrix(representative(ct), field) for ct in types}
            for a in types:
                for b in types:
                    count += 1
                    bad += similar(mats[a], mats[b]) != is_conjugate(a, b)
    return CheckResult("natural-representation-does-not-unite", not bad,
                       f"{count} class pairs over GF(2), GF(3), Q, n<={max_n}; {bad} mismatches")


def check_generating_function(max_n: int) -> CheckResult:
    example = subset_gen_fn(parse_cycle_type("[1^2,2]")) == (1, 2, 2, 2, 1)
    bad = 0
    for n in range(1, max_n + 1):
        for ct in enumerate_cycle_types(n):
            f = subset_gen_fn(ct)
            bad += eval_gen_fn(f, 1) != powerset_char(ct)
            bad += eval_gen_fn(f, -1) != (0 if has_odd_cycle(ct) else 2 ** num_cycles(ct))
            bad += any(f[k] != subset_char_by_partitions(ct, k) for k in range(n + 1))
    return CheckResult("subset-generating-function", example and not bad,
                       f"(1+t)^2(1+t^2) example: {example}; n<={max_n}: {bad} mismatches")


def check_fix_gap(max_n: int) -> CheckResult:
    bad = 0
    count = 0
    for n in range(1, max_n + 1):
        for a, b in _type_pairs(n):
            if not is_almost_similar(a, b):
                continue
            count += 1
            gap = almost_similar_fix_gap(a, b)
            bad += any(gap % p for p in factorint(order(a)))
            bad += gap == 0
    return CheckResult("almost-similar-fixed-point-gap", not bad,
                       f"{count} non-conjugate almost-similar pairs n<={max_n}; {bad} violations")


def _paired_types(n: int) -> tuple[CycleType, CycleType]:
    """[2^(n/2)] and [1^2, 2^((n-2)/2)] for even n; one extra fixed point each for odd n."""
    half = n // 2
    if n % 2 == 0:
        return CycleType.from_counts({2: half}), CycleType.from_counts({1: 2, 2: half - 1})
    return CycleType.from_counts({1: 1, 2: half}), CycleType.from_counts({1: 3, 2: half - 1})


def _scan(spec: RepresentationSpec, workers: int):
    return find_united_pairs(spec, workers=workers)


def uniting_checks(ns, workers: int = 1) -> list[CheckResult]:
    ns = list(ns)
    out = []

    def record(name, per_n):
        fails = [n for n, ok in per_n if not ok]
        out.append(CheckResult(name, not fails,
                               f"n in {ns[0]}..{ns[-1]}" + (f"; fails at n={fails}" if fails else "")
                               if ns else "no degrees"))

    T = RepKind.TUPLES
    record("ordered-singletons-do-not-unite",
           [(n, not _scan(RepresentationSpec(T, n, 1), workers).unites) for n in ns])
    record("ordered-pairs-do-not-unite",
           [(n, not _scan(RepresentationSpec(T, n, 2), workers).unites) for n in ns if n >= 2])
    per_n = []
    for n in ns:
        if n < 3:
            continue
        rep = _scan(RepresentationSpec(T, n, 3), workers)
        ok = rep.unites == (n % 2 == 0)
        if n % 2 == 0:
            ok = ok and rep.contains(*_paired_types(n))
        per_n.append((n, ok))
    record("ordered-triples-unite-iff-n-even", per_n)
    per_n = []
    for n in ns:
        for k in range(4, n + 1):
            rep = _scan(RepresentationSpec(T, n, k), workers)
            per_n.append((n, rep.unites and rep.contains(*_paired_types(n))))
    record("ordered-k-tuples-k-ge-4-always-unite", per_n)
    record("power-set-does-not-unite",
           [(n, not _scan(RepresentationSpec(RepKind.POWER_SET, n), workers).unites) for n in ns])
    record("odd-sized-subsets-do-not-unite",
           [(n, not _scan(RepresentationSpec(RepKind.ODD_SUBSETS, n), workers).unites) for n in ns])
    per_n = []
    for n in ns:
        rep = _scan(RepresentationSpec(RepKind.EVEN_SUBSETS, n), workers)
        ok = rep.unites == (n % 2 == 0)
        if n % 2 == 0 and n >= 4:
            ok = ok and rep.contains(*_paired_types(n))
        per_n.append((n, ok))
    record("even-sized-subsets-unite-iff-n-even", per_n)
    return out


def check_almost_similar_witness(max_n: int, workers: int = 1) -> CheckResult:
    scanned = 0
    bad = []
    for n in range(1, max_n + 1):
        for spec in filter(is_faithful, all_specs(n)):
            rep = find_united_pairs(spec, workers=workers)
            if rep.unites:
                scanned += 1
                if not any(is_almost_similar(a, b) for a, b in rep.united_pairs):
                    bad.append(f"{spec.label()}@n={n}")
    return CheckResult("uniting-implies-almost-similar-united-pair", not bad,
                       f"{scanned} uniting faithful (spec, n) scans n<={max_n}; missing witness: {bad}")


def check_regular(max_n: int) -> CheckResult:
    top = min(max_n, 6)
    bad = 0
    for n in range(1, top + 1):
        spec = RepresentationSpec(RepKind.TUPLES, n, n)
        for a, b in _type_pairs(n):
            bad += united_by_char(spec, a, b) != (order(a) == order(b))
    return CheckResult("regular-representation-unites-equal-order", not bad,
                       f"n<={top}; {bad} mismatches")


def check_cross_oracle(max_n: int, limit: int = 10 ** 5) -> CheckResult:
    top = min(max_n, 5)
    bad = 0
    count = 0
    for n in range(1, top + 1):
        for spec in all_specs(n):
            if spec.action_set_size() > limit:
                continue
            for a, b in _type_pairs(n):
                count += 1
                bad += united_by_char(spec, a, b) != united_by_induced_type(spec, a, b, limit)
    return CheckResult("character-criterion-matches-induced-permutation", not bad,
                       f"{count} (spec, pair) cases n<={top}; {bad} disagreements")


def check_finite_field_similarity(max_n: int, max_size: int = 16) -> CheckResult:
    """Similarity of induced permutation matrices over GF(2) and GF(3), by invariant factors."""
    top = min(max_n, 4)
    bad = 0
    count = 0
    for n in range(1, top + 1):
        for spec in all_specs(n):
            if spec.action_set_size() > max_size:
                continue
            for field in (FieldSpec(2), FieldSpec(3)):
                mats = {ct: perm_matrix(induced_permutation(representative(ct), spec), field)
                        for ct in enumerate_cycle_types(n)}
                for a, b in _type_pairs(n):
                    count += 1
                    bad += similar(mats[a], mats[b]) != united_by_char(spec, a, b)
    return CheckResult("uniting-answer-independent-of-field", not bad,
                       f"{count} cases, action sets <= {max_size}, n<={top}; {bad} disagreements")


def check_two_sided_action(max_n: int) -> CheckResult:
    sets = [("full_gl", 2, 2), ("full_gl", 2, 3), ("full_gl", 3, 2)]
    sets += [("perm_matrices", n, 2) for n in range(1, min(max_n, 5) + 1)]
    failed = []
    rows = 0
    for kind, n, p in sets:
        report = verify_2chars(build_set(kind, n, p))
        rows += len(report["rows"])
        if not report["pass"]:
            failed.append(f"{kind}({n},{p})")
    return CheckResult("two-sided-action-fixed-point-counts", not failed,
                       f"{len(sets)} member sets, {rows} class pairs; failed: {failed}")


SIMPLE_CHECKS: list[Callable[[int], CheckResult]] = [
    check_power_splitting,
    check_fixed_space,
    check_trace_powers,
    check_worked_example,
    check_char2_collision,
    check_recovery,
    check_natural_similarity,
    check_generating_function,
    check_fix_gap,
]


def _run_job(job) -> list[CheckResult]:
    fn, args = job
    out = fn(*args)
    return out if isinstance(out, list) else [out]


def run_battery(max_n: int = 6, workers: int = 1) -> list[CheckResult]:
    """Run every check.  With several workers the checks themselves run in a
    process pool; results are collected in the fixed job order."""
    inner = 1 if workers > 1 else workers
    jobs = [(check, (max_n,)) for check in SIMPLE_CHECKS]
    jobs += [
        (uniting_checks, (range(3, max_n + 1), inner)),
        (check_almost_similar_witness, (max_n, inner)),
        (check_regular, (max_n,)),
        (check_cross_oracle, (max_n,)),
        (check_finite_field_similarity, (max_n,)),
        (check_two_sided_action, (max_n,)),
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_job, jobs))
    else:
        chunks = [_run_job(job) for job in jobs]
    return [r for chunk in chunks for r in chunk]
