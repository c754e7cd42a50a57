import io
import json
import math
from fractions import Fraction

import pandas as pd
import pytest
import sympy

from algebra.annulus import (
    a11_variable,
    admissible_moduli,
    canonical_basis_element,
    casimir,
    chebyshev_casimir_check,
    format_sweep,
    is_admissible_modulus,
    is_hecke_discrete,
    moduli_sweep,
    roots_of_unity_check,
    solve_moduli,
    tau_identity_residual,
    verify_trace_exchange,
)
from algebra.laurent import LaurentPolynomial, lp_eval, lp_is_nonneg, parse
from exceptions import BoundExceeded, DiscriminantNegative, InvalidParameters, UnknownFormat


def P(text):
    return parse(text, nvars=2)


class TestVariables:
    def test_initial(self):
        assert a11_variable(1) == P("x1")
        assert a11_variable(2) == P("x2")

    def test_x3(self):
        assert a11_variable(3) == P("x1^-1 + x1^-1*x2^2")

    def test_x4(self):
        assert a11_variable(4) == P("x2^-1 + x1^-2*x2^-1 + 2*x1^-2*x2 + x1^-2*x2^3")

    @pytest.mark.parametrize("i", range(-10, 11))
    def test_recurrence(self, i):
        one = LaurentPolynomial.constant(2, 1)
        assert a11_variable(i - 1) * a11_variable(i + 1) == a11_variable(i) ** 2 + one

    @pytest.mark.parametrize("i", range(-8, 9))
    def test_positive_coefficients(self, i):
        assert lp_is_nonneg(a11_variable(i))

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            a11_variable(13)


class TestCasimir:
    def test_value(self):
        assert casimir() == P("x1*x2^-1 + x1^-1*x2^-1 + x1^-1*x2")

    def test_at_ones(self):
        assert lp_eval(casimir(), (1, 1)) == 3

    def test_monomial_basis(self):
        assert canonical_basis_element(1, 0) == P("x1")
        assert canonical_basis_element(0, 0) == LaurentPolynomial.constant(2, 1)
        assert canonical_basis_element(2, 1, i=3) == a11_variable(3) ** 2 * a11_variable(4)

    def test_chebyshev_family(self):
        c = casimir()
        element = canonical_basis_element(n=3, family="chebyshev")
        assert element == 4 * c ** 3 - 3 * c
        assert len(element.terms) == 10
        swapped = {(b, a): value for (a, b), value in element.terms}
        assert swapped == element.as_dict()

    def test_chebyshev_needs_n(self):
        with pytest.raises(InvalidParameters):
            canonical_basis_element(n=2, family="chebyshev")


class TestModuli:
    def test_boundary(self):
        solution = solve_moduli(4)
        assert solution.x1 == pytest.approx(2 * math.sqrt(2), rel=1e-12)
        assert solution.x2 == pytest.approx(2 * math.sqrt(2), rel=1e-12)

    def test_t5(self):
        solution = solve_moduli(5)
        assert solution.x1 == pytest.approx(2 * math.sqrt(5), rel=1e-12)
        assert solution.x2 == pytest.approx(math.sqrt(5), rel=1e-12)

    @pytest.mark.parametrize("t", [4, 5, 17 / 4])
    def test_residuals_at_fixed_points(self, t):
        solution = solve_moduli(t)
        assert solution.residual1 <= 1e-12
        assert solution.residual2 <= 1e-12

    def test_random_t(self, rng):
        for _ in range(100):
            t = rng.uniform(4, 100)
            solution = solve_moduli(t)
            assert solution.residual1 <= 1e-12
            assert solution.residual2 <= 1e-12
            assert solution.casimir == pytest.approx((t + 1 / t) / 2, rel=1e-12)

    def test_discriminant_negative(self):
        with pytest.raises(DiscriminantNegative):
            solve_moduli(3.9)

    @pytest.mark.parametrize("t", [4, 5, 10])
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_chebyshev_basis_at_moduli(self, t, n):
        assert chebyshev_casimir_check(t, n) <= 1e-9


class TestAdmissibleSet:
    def test_discrete_values(self):
        moduli = admissible_moduli(12)
        first, second = moduli.discrete[0], moduli.discrete[1]
        assert (first.n, first.t, first.lam) == (3, pytest.approx(1.0), pytest.approx(1.0))
        assert (second.n, second.t, second.lam) == (4, pytest.approx(2.0), pytest.approx(math.sqrt(2)))
        assert moduli.continuous[0] == 4

    def test_discrete_approaches_continuum(self):
        values = [m.t for m in admissible_moduli(400).discrete]
        assert values == sorted(values)
        assert values[-1] < 4
        assert 4 - values[-1] < 1e-3

    @pytest.mark.parametrize("t, expected", [(1.0, True), (2.0, True), (3.0, True), (2.5, False), (4.5, True), (0.5, False)])
    def test_membership(self, t, expected):
        assert is_admissible_modulus(t) is expected

    @pytest.mark.parametrize("lam, expected", [(math.sqrt(2), True), (2.0, True), (1.5, False)])
    def test_hecke_image(self, lam, expected):
        assert is_hecke_discrete(lam) is expected


class TestRootsOfUnity:
    @pytest.mark.parametrize("n", range(3, 33))
    def test_periodicity(self, n):
        assert roots_of_unity_check(n) <= 1e-12

    def test_gaussian_integer(self):
        assert sympy.I ** 4 + sympy.I ** -4 == 2

    @pytest.mark.parametrize("n", range(3, 33))
    def test_tau_identity(self, n):
        assert tau_identity_residual(n) <= 1e-12


class TestTraceExchange:
    @pytest.mark.parametrize("t, value", [(1, Fraction(1, 4)), (4, Fraction(4, 25))])
    def test_examples(self, t, value):
        assert Fraction(t) / (1 + Fraction(t)) ** 2 == value
        assert verify_trace_exchange(t)

    def test_random_rationals(self, rng):
        for _ in range(20):
            assert verify_trace_exchange(Fraction(rng.randint(1, 100), rng.randint(1, 100)))


class TestSweep:
    def test_csv(self):
        text = format_sweep(moduli_sweep([4, 5, 6.5]), "csv")
        frame = pd.read_csv(io.StringIO(text))
        assert list(frame.columns) == ["t", "x1", "x2", "residual1", "residual2"]
        assert list(frame["t"]) == [4, 5, 6.5]

    def test_json(self):
        rows = json.loads(format_sweep(moduli_sweep([5]), "json"))
        assert rows[0]["t"] == 5
        assert rows[0]["x1"] == pytest.approx(2 * math.sqrt(5), rel=1e-15)

    def test_unknown_format(self):
        with pytest.raises(UnknownFormat):
            format_sweep([], "xml")
