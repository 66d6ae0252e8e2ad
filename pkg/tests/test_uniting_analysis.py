from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from sympy import primefactors

from permsim.characters import RepresentationSpec, all_specs, rep_char
from permsim.field_linalg import QQ, FieldSpec, perm_matrix, similar
from permsim.perm_core import (DegreeMismatchError, Permutation, cycle_type,
                               enumerate_cycle_types, order, parse_cycle_type, parse_permutation,
                               perm_power, power_cycle_type, representative)
from permsim.uniting_analysis import (ActionSetTooLargeError, action_set, almost_similar_fix_gap,
                                      find_united_pairs, induced_cycle_type, induced_permutation,
                                      is_almost_similar, is_faithful, united_by_char,
                                      united_by_induced_type)

from .conftest import cycle_types


def ct(text):
    return parse_cycle_type(text)


def spec(text, n):
    return RepresentationSpec.parse(text, n)


def brute_almost_similar(a, b):
    """Direct from the definition: equal order, conjugate k-th powers for all k | m, k != 1."""
    m = order(a)
    if m != order(b):
        return False
    return all(power_cycle_type(a, k) == power_cycle_type(b, k) for k in range(2, m + 1) if m % k == 0)


class TestUnitedByChar:
    def test_triples_even_n(self):
        assert united_by_char(spec("tuples:3", 4), ct("[2^2]"), ct("[1^2,2]"))

    def test_natural_never_unites(self):
        for n in range(1, 8):
            for a, b in combinations(enumerate_cycle_types(n), 2):
                assert not united_by_char(spec("natural", n), a, b)

    def test_powerset_n4(self):
        assert not find_united_pairs(spec("powerset", 4)).unites

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            united_by_char(spec("natural", 3), ct("[1^3]"), ct("[4]"))

    def test_trivial_action_unites_everything(self):
        rep = find_united_pairs(spec("subsets:4", 4))
        assert len(rep.united_pairs) == 10
        assert not is_faithful(spec("subsets:4", 4))

    def test_faithful(self):
        assert is_faithful(spec("tuples:3", 5))
        assert not is_faithful(spec("even-subsets", 2))


class TestScanReports:
    def test_triples_at_four(self):
        rep = find_united_pairs(spec("tuples:3", 4))
        assert rep.labels() == [("[1^2,2]", "[2^2]")]
        assert rep.verdict == "unites"
        assert rep.pairs_checked == 10

    def test_triples_at_five_empty(self):
        rep = find_united_pairs(spec("tuples:3", 5))
        assert rep.united_pairs == [] and rep.verdict == "does-not-unite"

    def test_almost_similar_filter_keeps_verdict(self):
        for n in range(3, 8):
            for s in filter(is_faithful, all_specs(n)):
                full = find_united_pairs(s)
                filtered = find_united_pairs(s, almost_similar_only=True)
                assert full.unites == filtered.unites
                assert set(filtered.labels()) <= set(full.labels())

    def test_to_dict(self):
        d = find_united_pairs(spec("tuples:3", 4)).to_dict()
        assert d["united_pairs"] == [["[1^2,2]", "[2^2]"]]
        assert d["rep"] == "tuples:3" and d["n"] == 4

    def test_workers_do_not_change_result(self):
        s = spec("tuples:4", 8)
        assert find_united_pairs(s, workers=1).to_dict() == find_united_pairs(s, workers=2).to_dict()


class TestAlmostSimilar:
    def test_fix_gap(self):
        assert almost_similar_fix_gap(ct("[1,2^2]"), ct("[1^3,2]")) == -2

    def test_not_almost_similar(self):
        assert not is_almost_similar(ct("[4]"), ct("[2^2]"))
        with pytest.raises(ValueError):
            almost_similar_fix_gap(ct("[4]"), ct("[2^2]"))

    @pytest.mark.parametrize("n", range(1, 10))
    def test_prime_divisors_suffice(self, n):
        for a, b in combinations(enumerate_cycle_types(n), 2):
            assert is_almost_similar(a, b) == brute_almost_similar(a, b)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_gap_divisible_by_every_prime_of_order(self, n):
        for a, b in combinations(enumerate_cycle_types(n), 2):
            if is_almost_similar(a, b):
                gap = almost_similar_fix_gap(a, b)
                assert gap != 0
                assert all(gap % p == 0 for p in primefactors(order(a)))


class TestInducedAction:
    def test_transposition_on_two_subsets(self):
        p = induced_permutation(parse_permutation("(1 2)", 3), spec("subsets:2", 3))
        assert cycle_type(p) == ct("[1,2]")

    def test_action_set_orders(self):
        assert action_set(spec("subsets:2", 3)) == [(1, 2), (1, 3), (2, 3)]
        assert action_set(spec("tuples:2", 3))[:3] == [(1, 2), (1, 3), (2, 1)]
        assert action_set(spec("even-subsets", 3)) == [(), (1, 2), (1, 3), (2, 3)]

    def test_limit(self):
        with pytest.raises(ActionSetTooLargeError):
            action_set(spec("tuples:8", 8), limit=1000)

    def test_is_homomorphism(self):
        s = spec("tuples:2", 4)
        for a in map(Permutation, permutations(range(1, 5))):
            b = parse_permutation("(1 2 3 4)")
            assert induced_permutation(a * b, s) == induced_permutation(a, s) * induced_permutation(b, s)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_cross_oracle(self, n):
        for s in all_specs(n):
            for a, b in combinations(enumerate_cycle_types(n), 2):
                assert united_by_char(s, a, b) == united_by_induced_type(s, a, b), (s.label(), a, b)

    def test_induced_matrices_over_finite_fields(self):
        # Similarity of the induced matrices over GF(2) decides uniting as well.
        s = spec("tuples:3", 4)
        for a, b in combinations(enumerate_cycle_types(4), 2):
            A = perm_matrix(induced_permutation(representative(a), s), FieldSpec(2))
            B = perm_matrix(induced_permutation(representative(b), s), FieldSpec(2))
            assert similar(A, B) == united_by_char(s, a, b)


class TestRegular:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_unites_equal_orders(self, n):
        s = spec(f"tuples:{n}", n)
        for a, b in combinations(enumerate_cycle_types(n), 2):
            assert united_by_char(s, a, b) == (order(a) == order(b))


class TestProperties:
    @settings(max_examples=30, deadline=None)
    @given(cycle_types(max_n=8), cycle_types(max_n=8))
    def test_symmetric_and_reflexive(self, a, b):
        if a.n != b.n:
            return
        for s in all_specs(a.n):
            assert united_by_char(s, a, a)
            assert united_by_char(s, a, b) == united_by_char(s, b, a)

    @settings(max_examples=30, deadline=None)
    @given(cycle_types(max_n=8), cycle_types(max_n=8))
    def test_conjugate_powers_stay_united(self, a, b):
        if a.n != b.n:
            return
        for s in all_specs(a.n):
            if united_by_char(s, a, b):
                for k in range(1, 7):
                    assert united_by_char(s, power_cycle_type(a, k), power_cycle_type(b, k))

    @settings(max_examples=20, deadline=None)
    @given(cycle_types(min_n=2, max_n=6))
    def test_character_is_trace_over_q(self, t):
        p = representative(t)
        for s in all_specs(t.n):
            if s.action_set_size() > 800:
                continue
            assert perm_matrix(induced_permutation(p, s), QQ).trace() == rep_char(s, t)
            assert induced_cycle_type(t, s) == cycle_type(induced_permutation(perm_power(p, 1), s))
