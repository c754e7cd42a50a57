from fractions import Fraction

import pytest

from algebra.laurent import (
    LaurentPolynomial,
    chebyshev_T,
    lp_add,
    lp_compose,
    lp_div_exact,
    lp_eval,
    lp_is_nonneg,
    lp_mul,
    parse,
    render,
)
from exceptions import DivisionByZero, NotDivisible, ParseError, VariableCountMismatch, ZeroCoordinate


def P(text, nvars=2):
    return parse(text, nvars=nvars)


class TestArithmetic:
    def test_additive_inverse_is_empty(self):
        assert lp_add(P("x1"), P("-x1")).is_zero
        assert lp_add(P("x1"), P("-x1")).terms == ()

    def test_like_terms_merge(self):
        assert lp_add(P("x1 + x2"), P("x2")) == P("x1 + 2*x2")

    def test_disjoint_supports(self):
        assert render(lp_add(P("x1^2*x2^-1"), P("1"))) == "x1^2*x2^-1 + 1"

    def test_difference_of_squares(self):
        assert lp_mul(P("x1 + x2"), P("x1 - x2")) == P("x1^2 - x2^2")

    def test_unit_monomial(self):
        assert lp_mul(P("x1^-1"), P("x1")) == LaurentPolynomial.constant(2, 1)

    def test_zero_annihilates(self):
        assert lp_mul(LaurentPolynomial.zero(2), P("x1 + 7*x2^-3")).is_zero

    def test_variable_count_mismatch(self):
        with pytest.raises(VariableCountMismatch):
            lp_add(P("x1", 1), P("x1", 2))


class TestDivision:
    def test_factorization(self):
        assert lp_div_exact(P("x1^2 - 1"), P("x1 - 1")) == P("x1 + 1")

    def test_monomial_divisor(self):
        assert lp_div_exact(P("1 + x2^2"), P("x1")) == P("x1^-1 + x1^-1*x2^2")

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            lp_div_exact(P("x1 + x2"), P("x1 - x2"))

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            lp_div_exact(P("x1"), LaurentPolynomial.zero(2))

    def test_product_divides_back(self, rng):
        for _ in range(20):
            p = LaurentPolynomial.from_dict(
                2, {(rng.randint(-2, 2), rng.randint(-2, 2)): rng.randint(-3, 3) for _ in range(3)}
            )
            q = LaurentPolynomial.from_dict(
                2, {(rng.randint(-2, 2), rng.randint(-2, 2)): rng.randint(1, 3) for _ in range(2)}
            )
            assert lp_div_exact(lp_mul(p, q), q) == p


class TestEvaluation:
    def test_direct_substitution(self):
        assert lp_eval(P("x1^-1 + x2"), (2, 3)) == Fraction(7, 2)

    def test_casimir_at_ones(self):
        p = lp_div_exact(P("x1^2 + 1 + x2^2"), P("x1*x2"))
        assert lp_eval(p, (1, 1)) == 3

    def test_constant(self):
        assert lp_eval(LaurentPolynomial.constant(2, 5), (Fraction(3, 7), -11)) == 5

    def test_zero_coordinate(self):
        with pytest.raises(ZeroCoordinate):
            lp_eval(P("x1^-1"), (0, 1))


class TestPositivity:
    def test_positive_coefficients(self):
        assert lp_is_nonneg(P("x1^-1 + x1^-1*x2^2"))

    def test_negative_coefficient(self):
        assert not lp_is_nonneg(P("x1 - x2"))

    def test_zero_is_vacuously_nonneg(self):
        assert lp_is_nonneg(LaurentPolynomial.zero(2))


class TestChebyshev:
    def test_base_cases(self):
        assert chebyshev_T(0) == LaurentPolynomial.constant(1, 1)
        assert chebyshev_T(1) == LaurentPolynomial.variable(1, 1)

    def test_t3(self):
        assert chebyshev_T(3) == parse("4*x1^3 - 3*x1", nvars=1)

    @pytest.mark.parametrize("n", range(0, 21))
    def test_cosine_identity(self, n):
        # 2·T_n(y/2) при y = z + 1/z равно zⁿ + z⁻ⁿ
        scaled = {}
        for (k,), c in chebyshev_T(n).terms:
            assert (2 * c) % 2 ** k == 0
            scaled[(k,)] = 2 * c // 2 ** k
        z = LaurentPolynomial.variable(1, 1)
        value = lp_compose(LaurentPolynomial.from_dict(1, scaled), z + z ** -1)
        expected = LaurentPolynomial.from_dict(1, {(n,): 1, (-n,): 1}) if n else LaurentPolynomial.constant(1, 2)
        assert value == expected


class TestText:
    def test_render_parse_agree(self):
        p = P("3*x1^2*x2^-1 - x2 + 1")
        assert parse(render(p), nvars=2) == p

    def test_random_polynomials_survive_text(self, rng):
        for _ in range(100):
            nvars = rng.randint(1, 4)
            terms = {
                tuple(rng.randint(-3, 3) for _ in range(nvars)): rng.choice((-1, 1)) * rng.randint(1, 12)
                for _ in range(rng.randint(1, 6))
            }
            p = LaurentPolynomial.from_dict(nvars, terms)
            assert parse(render(p), nvars=nvars) == p

    def test_custom_names(self):
        p = parse("A^2 - 1 + A^-2", names=("A",))
        assert render(p, ("A",)) == "A^2 - 1 + A^-2"

    @pytest.mark.parametrize("text", ["", "x1 +", "2x", "x0", "x1*3"])
    def test_rejects_garbage(self, text):
        with pytest.raises(ParseError):
            parse(text, nvars=2)
