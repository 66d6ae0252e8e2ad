from fractions import Fraction
from itertools import combinations, permutations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from permsim import polynomials as P
from permsim.field_linalg import (QQ, FieldMatrix, FieldMismatchError, FieldSpec, char_poly,
                                  char_poly_leibniz, companion, fixed_space_dim, format_matrix,
                                  invariant_factors, inverse, parse_matrix, perm_matrix, rank,
                                  similar)
from permsim.perm_core import (Permutation, cycle_type, enumerate_cycle_types, is_conjugate,
                               num_cycles, parse_cycle_type, parse_permutation, power_cycle_type,
                               representative)

from .conftest import permutations_of

GF2, GF3, GF5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)
FIELDS = [GF2, GF3, QQ]


def rep_matrix(type_text, field):
    return perm_matrix(representative(parse_cycle_type(type_text)), field)


def determinantal_invariant_factors(A: FieldMatrix):
    """Invariant factors as ratios of gcds of k x k minors of xI - A, via sympy."""
    x = sympy.Symbol("x")
    n = A.n_rows
    p = A.field.characteristic
    M = sympy.Matrix(n, n, lambda i, j: (x if i == j else 0) - sympy.Rational(A[i, j]))
    opts = {"modulus": p} if p else {"domain": "QQ"}
    prev = sympy.Poly(1, x, **opts)
    factors = []
    for k in range(1, n + 1):
        g = sympy.Poly(0, x, **opts)
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = g.gcd(sympy.Poly(M.extract(list(rows), list(cols)).det(), x, **opts))
        g = g.monic()
        f = g.exquo(prev)
        prev = g
        if f.degree() > 0:
            coeffs = [c % p if p else Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
            factors.append(P.normalize(A.field, coeffs))
    return tuple(factors)


def matrices(field, n_max=4):
    p = field.characteristic

    @st.composite
    def build(draw):
        n = draw(st.integers(1, n_max))
        elem = st.integers(0, p - 1) if p else st.fractions(-3, 3, max_denominator=3)
        rows = draw(st.lists(st.lists(elem, min_size=n, max_size=n), min_size=n, max_size=n))
        return FieldMatrix(field, tuple(map(tuple, rows)))
    return build()


def invertible(field, n, rng):
    while True:
        M = FieldMatrix(field, tuple(tuple(rng.randrange(-3, 4) if not field.characteristic
                                           else rng.randrange(field.characteristic)
                                           for _ in range(n)) for _ in range(n)))
        if rank(M) == n:
            return M


class TestFieldSpec:
    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            FieldSpec(4)
        with pytest.raises(ValueError):
            FieldSpec(1)

    def test_parse(self):
        assert FieldSpec.parse("GF(7)") == FieldSpec(7)
        assert FieldSpec.parse("Q") == QQ
        assert FieldSpec.parse("3") == GF3

    def test_rational_entries_mod_p(self):
        assert GF5.parse_element("1/2") == 3
        assert QQ.parse_element("-2/4") == Fraction(-1, 2)


class TestPermMatrix:
    def test_identity(self):
        assert perm_matrix(Permutation.identity(3), GF3) == FieldMatrix.identity(3, GF3)

    def test_transposition(self):
        assert perm_matrix(parse_permutation("(1 2)"), GF2).rows == ((0, 1), (1, 0))

    def test_entry_convention(self):
        p = parse_permutation("(1 2 3)")
        A = perm_matrix(p, QQ)
        for j in range(1, 4):
            assert A[p(j) - 1, j - 1] == 1

    @given(permutations_of(max_n=6), permutations_of(max_n=6))
    def test_homomorphism(self, p, q):
        if p.n != q.n:
            return
        assert perm_matrix(p * q, GF3) == perm_matrix(p, GF3) @ perm_matrix(q, GF3)

    @given(permutations_of(max_n=7))
    def test_trace_counts_fixed_points_over_q(self, p):
        assert perm_matrix(p, QQ).trace() == cycle_type(p).counts.get(1, 0)

    def test_round_trip_to_permutation(self):
        p = parse_permutation("(1 4 2)(3 5)")
        assert perm_matrix(p, GF2).to_permutation() == p


class TestRank:
    def test_examples(self):
        assert rank(FieldMatrix.zeros(3, 2, GF2)) == 0
        assert rank(FieldMatrix.identity(4, QQ)) == 4
        assert rank(FieldMatrix(GF2, ((1, 1), (1, 1)))) == 1

    def test_depends_on_characteristic(self):
        A = FieldMatrix(GF2, ((1, 1), (1, -1)))
        assert rank(A) == 1
        assert rank(FieldMatrix(QQ, ((1, 1), (1, -1)))) == 2

    @settings(max_examples=60)
    @given(matrices(QQ))
    def test_matches_sympy_over_q(self, A):
        assert rank(A) == sympy.Matrix([[sympy.Rational(x) for x in r] for r in A.rows]).rank()

    def test_inverse(self, rng):
        for field in FIELDS:
            M = invertible(field, 4, rng)
            assert M @ inverse(M) == FieldMatrix.identity(4, field)


class TestFixedSpace:
    def test_double_transposition_fixed_space(self):
        assert fixed_space_dim(perm_matrix(parse_permutation("(1,2)(3)(4)"), GF2)) == 3

    def test_identity(self):
        assert fixed_space_dim(FieldMatrix.identity(5, GF5)) == 5

    @pytest.mark.parametrize("field", [GF2, GF3, GF5, QQ])
    def test_full_cycle(self, field):
        A = rep_matrix("[6]", field)
        assert fixed_space_dim(A) == 1
        assert rank(A - FieldMatrix.identity(6, field)) == 5

    @pytest.mark.parametrize("field", FIELDS)
    def test_counts_cycles_of_powers(self, field):
        for n in range(1, 7):
            for t in enumerate_cycle_types(n):
                A = perm_matrix(representative(t), field)
                for k in range(1, 13):
                    assert fixed_space_dim(A ** k) == num_cycles(power_cycle_type(t, k))


class TestCharPoly:
    def test_cycle_over_q(self):
        for k in range(1, 7):
            assert char_poly(rep_matrix(f"[{k}]", QQ)) == P.normalize(QQ, [-1] + [0] * (k - 1) + [1])

    def test_four_cycle_over_gf2(self):
        assert char_poly(rep_matrix("[4]", GF2)) == (1, 0, 0, 0, 1)
        assert P.product(GF2, [(1, 1)] * 4) == (1, 0, 0, 0, 1)

    def test_char2_collision(self):
        polys = {char_poly(rep_matrix(t, GF2)) for t in ("[4]", "[2^2]", "[1^4]")}
        assert polys == {(1, 0, 0, 0, 1)}

    @pytest.mark.parametrize("field", [GF2, GF3, QQ])
    def test_matches_leibniz(self, field):
        @settings(max_examples=40, deadline=None)
        @given(matrices(field))
        def check(A):
            assert char_poly(A) == char_poly_leibniz(A)
        check()


class TestInvariantFactors:
    def test_scalar(self):
        assert invariant_factors(FieldMatrix.identity(3, QQ)).factors == ((-1, 1),) * 3

    def test_gf2_types_distinct(self):
        f4 = invariant_factors(rep_matrix("[4]", GF2)).factors
        f22 = invariant_factors(rep_matrix("[2^2]", GF2)).factors
        assert f4 == ((1, 0, 0, 0, 1),)
        assert f22 == ((1, 0, 1), (1, 0, 1))
        assert f4 != f22

    def test_companion_has_single_factor(self):
        for field in FIELDS:
            f = P.normalize(field, [2, 0, 1, 1, 1])
            assert invariant_factors(companion(field, f)).factors == (f,)

    @pytest.mark.parametrize("field", [GF2, GF3, QQ])
    def test_matches_determinantal_divisors(self, field):
        @settings(max_examples=25, deadline=None)
        @given(matrices(field, n_max=3))
        def check(A):
            assert invariant_factors(A).factors == determinantal_invariant_factors(A)
        check()

    @pytest.mark.parametrize("field", [GF2, GF3, QQ])
    def test_matches_determinantal_divisors_on_permutations(self, field):
        for t in enumerate_cycle_types(4):
            A = perm_matrix(representative(t), field)
            assert invariant_factors(A).factors == determinantal_invariant_factors(A)

    @pytest.mark.parametrize("field", [GF2, GF3, QQ])
    def test_chain_and_product(self, field):
        @settings(max_examples=40, deadline=None)
        @given(matrices(field))
        def check(A):
            inv = invariant_factors(A)
            for f, g in zip(inv.factors, inv.factors[1:]):
                assert P.divmod_poly(field, g, f)[1] == ()
            assert all(f[-1] == 1 for f in inv.factors)
            assert len(inv.product()) - 1 == A.n_rows
        check()

    @pytest.mark.parametrize("field", [GF2, GF3, QQ])
    def test_conjugation_invariance(self, field, rng):
        for _ in range(15):
            n = rng.randint(1, 5)
            A = FieldMatrix(field, tuple(tuple(rng.randrange(3) for _ in range(n)) for _ in range(n)))
            S = invertible(field, n, rng)
            assert invariant_factors(S @ A @ inverse(S)) == invariant_factors(A)


class TestSimilar:
    def test_conjugated_matrix(self, rng):
        for field in FIELDS:
            A = rep_matrix("[1,2,3]", field) + FieldMatrix.identity(6, field)
            S = invertible(field, 6, rng)
            assert similar(A, S @ A @ inverse(S))

    def test_gf2_collision_resolved(self):
        assert not similar(rep_matrix("[4]", GF2), rep_matrix("[1^4]", GF2))
        assert not similar(rep_matrix("[4]", GF2), rep_matrix("[2^2]", GF2))
        assert not similar(rep_matrix("[2^2]", GF2), rep_matrix("[1^4]", GF2))

    def test_conjugate_permutations(self):
        p = parse_permutation("(1 2 3)(4 5)")
        q = parse_permutation("(2 5 4)(1 3)")
        assert similar(perm_matrix(p, GF2), perm_matrix(q, GF2))

    def test_mismatch_errors(self):
        with pytest.raises(FieldMismatchError):
            similar(FieldMatrix.identity(2, GF2), FieldMatrix.identity(2, GF3))
        with pytest.raises(ValueError):
            similar(FieldMatrix.identity(2, GF2), FieldMatrix.identity(3, GF2))

    @pytest.mark.slow
    @pytest.mark.parametrize("field", FIELDS)
    def test_similar_iff_conjugate_all_permutations(self, field):
        for n in range(1, 7):
            types = enumerate_cycle_types(n)
            by_type = {t: invariant_factors(perm_matrix(representative(t), field)) for t in types}
            assert len(set(by_type.values())) == len(types)
            for img in permutations(range(1, n + 1)):
                p = Permutation(img)
                assert invariant_factors(perm_matrix(p, field)) == by_type[cycle_type(p)]
            for a in types:
                for b in types:
                    assert (by_type[a] == by_type[b]) == is_conjugate(a, b)

    def test_trace_of_powers_over_q(self):
        for n in range(1, 8):
            for t in enumerate_cycle_types(n):
                A = perm_matrix(representative(t), QQ)
                for d in range(1, n + 1):
                    expected = sum(k * t.counts.get(k, 0) for k in range(1, d + 1) if d % k == 0)
                    assert (A ** d).trace() == expected


class TestMatrixFormat:
    def test_round_trip(self):
        A = FieldMatrix(QQ, ((Fraction(1, 2), 0), (-3, Fraction(5, 7))))
        assert parse_matrix(format_matrix(A)) == A

    def test_header(self):
        A = parse_matrix("3 2 2\n1 2\n5 0\n")
        assert A.field == GF3 and A.rows == ((1, 2), (2, 0))

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            parse_matrix("2 2 2\n1 0\n")

    def test_polynomial_rendering(self):
        assert P.format_dense(GF2, (1, 0, 0, 0, 1)) == "[1, 0, 0, 0, 1]"
        assert P.format_pretty(QQ, P.normalize(QQ, [-1, 0, 1])) == "x^2 - 1"
