from fractions import Fraction

import pytest

from algebra.cluster import (
    ExchangeMatrix,
    Seed,
    check_positivity,
    enumerate_cluster_variables,
    evaluate_cluster,
    is_finite_type,
    markov_invariant,
    matrix_mutate,
    mutate_sequence,
    numeric_mutate,
    seed_mutate,
)
from algebra.laurent import parse
from exceptions import BudgetExceeded, IndexOutOfRange, InvalidSeed, ZeroEntry
from models import FiniteTypeStatus


def M(rows):
    return ExchangeMatrix.from_rows(rows)


def P(text, nvars):
    return parse(text, nvars=nvars)


def random_matrix(rng, max_rank=4, max_entry=3):
    n = rng.randint(1, max_rank)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rng.randint(-max_entry, max_entry)
            rows[j][i] = -rows[i][j]
    return M(rows)


def random_point(rng, n):
    return tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n))


class TestMatrixMutation:
    def test_rank_two_flips_signs(self, a11):
        assert matrix_mutate(a11.matrix, 1) == M([[0, -2], [2, 0]])

    def test_markov(self, markov):
        assert matrix_mutate(markov.matrix, 1) == M([[0, -2, 2], [2, 0, -2], [-2, 2, 0]])

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_zero_matrix(self, k):
        zero = M([[0] * 3] * 3)
        assert matrix_mutate(zero, k) == zero

    def test_direction_out_of_range(self, a11):
        with pytest.raises(IndexOutOfRange):
            matrix_mutate(a11.matrix, 3)

    def test_rejects_non_skew(self):
        with pytest.raises(InvalidSeed):
            M([[0, 1], [1, 0]])


class TestSeedMutation:
    def test_a11_exchange(self, a11):
        assert seed_mutate(a11, 1).cluster[0] == P("x1^-1 + x1^-1*x2^2", 2)

    def test_markov_exchange(self, markov):
        assert seed_mutate(markov, 1).cluster[0] == P("x1^-1*x2^2 + x1^-1*x3^2", 3)

    def test_involution_on_standard_seeds(self, a11, markov, a2, rank1):
        for seed in (a11, markov, a2, rank1):
            for k in range(1, seed.n + 1):
                assert seed_mutate(seed_mutate(seed, k), k) == seed

    def test_involution_and_skew_symmetry_on_random_seeds(self, rng):
        for _ in range(1000):
            matrix = random_matrix(rng)
            seed = Seed.initial(matrix)
            k = rng.randint(1, matrix.n)
            mutated = seed_mutate(seed, k)
            rows = mutated.matrix.to_rows()
            assert all(rows[i][j] == -rows[j][i] for i in range(matrix.n) for j in range(matrix.n))
            assert seed_mutate(mutated, k) == seed

    def test_involution_after_premutation(self, rng):
        for _ in range(10):
            matrix = random_matrix(rng, max_rank=3, max_entry=2)
            seed = mutate_sequence(Seed.initial(matrix), [rng.randint(1, matrix.n) for _ in range(2)])
            k = rng.randint(1, matrix.n)
            assert seed_mutate(seed_mutate(seed, k), k) == seed

    def test_rank1_exchange(self, rank1):
        assert seed_mutate(rank1, 1).cluster[0] == P("2*x1^-1", 1)


class TestNumericShadow:
    def test_a11_from_ones(self, a11):
        assert numeric_mutate((1, 1), a11.matrix, 1) == (2, 1)

    def test_a11_from_two_three(self, a11):
        assert numeric_mutate((2, 3), a11.matrix, 1) == (5, 3)

    def test_markov_from_ones(self, markov):
        assert numeric_mutate((1, 1, 1), markov.matrix, 1) == (2, 1, 1)

    def test_zero_entry(self, a11):
        with pytest.raises(ZeroEntry):
            numeric_mutate((0, 1), a11.matrix, 1)

    def test_matches_symbolic_evaluation(self, markov, rng):
        directions = [rng.randint(1, 3) for _ in range(5)]
        mu, matrix = (Fraction(1),) * 3, markov.matrix
        for k in directions:
            mu = numeric_mutate(mu, matrix, k)
            matrix = matrix_mutate(matrix, k)
        assert mu == evaluate_cluster(mutate_sequence(markov, directions), (1, 1, 1))

    def test_commutes_with_evaluation_at_random_points(self, rng):
        checked = 0
        while checked < 100:
            matrix = random_matrix(rng, max_rank=3, max_entry=2)
            directions = [rng.randint(1, matrix.n) for _ in range(3)]
            symbolic = mutate_sequence(Seed.initial(matrix), directions)
            for _ in range(10):
                point = random_point(rng, matrix.n)
                mu, current = point, matrix
                for k in directions:
                    mu = numeric_mutate(mu, current, k)
                    current = matrix_mutate(current, k)
                assert current == symbolic.matrix
                assert mu == evaluate_cluster(symbolic, point)
                checked += 1

    def test_markov_triples_stay_on_surface(self, markov, rng):
        mu, matrix = (1, 1, 1), markov.matrix
        for _ in range(8):
            k = rng.randint(1, 3)
            mu = numeric_mutate(mu, matrix, k)
            matrix = matrix_mutate(matrix, k)
            assert markov_invariant(mu) == 0


class TestEnumeration:
    def test_depth_zero(self, markov):
        assert enumerate_cluster_variables(markov, 0) == frozenset(markov.cluster)

    def test_a11_depth_two(self, a11):
        variables = enumerate_cluster_variables(a11, 2)
        assert P("x1^-1 + x1^-1*x2^2", 2) in variables
        assert P("x2^-1 + x1^2*x2^-1", 2) in variables
        x4 = P("x2^-1 + x1^-2*x2^-1 + 2*x1^-2*x2 + x1^-2*x2^3", 2)
        assert x4 in variables
        assert len(variables) == 6

    def test_a2_reaches_fixpoint(self, a2):
        assert len(enumerate_cluster_variables(a2, 6)) == 5

    def test_rank3_depth_limit(self, markov):
        with pytest.raises(BudgetExceeded):
            enumerate_cluster_variables(markov, 9)

    def test_threads_do_not_change_result(self, markov):
        assert enumerate_cluster_variables(markov, 3, threads=4) == enumerate_cluster_variables(markov, 3)


class TestPositivity:
    def test_a11_depth_six(self, a11):
        assert check_positivity(enumerate_cluster_variables(a11, 6)).positive

    def test_markov_depth_four(self, markov):
        assert check_positivity(enumerate_cluster_variables(markov, 4)).positive

    def test_counterexample(self):
        bad = P("x1 - x2", 2)
        result = check_positivity({bad, P("x1", 2)})
        assert not result.positive
        assert result.witness == bad


class TestFiniteType:
    def test_a2(self, a2):
        result = is_finite_type(a2, budget=10 ** 4)
        assert result.status == FiniteTypeStatus.FINITE
        assert result.count == 5

    def test_a11_is_infinite(self, a11):
        assert is_finite_type(a11, budget=10 ** 3).status == FiniteTypeStatus.EXCEEDED_BUDGET

    def test_rank1(self, rank1):
        result = is_finite_type(rank1, budget=10)
        assert result.status == FiniteTypeStatus.FINITE
        assert result.count == 2
