"""Сиды, мутации (символьные и числовые), проверка Лорана и положительности."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from algebra.laurent import (
    LaurentPolynomial,
    lp_div_exact,
    lp_eval,
    lp_is_nonneg,
    render,
)
from config import settings
from exceptions import (
    BudgetExceeded,
    IndexOutOfRange,
    InvalidSeed,
    LaurentViolation,
    NotDivisible,
    ZeroEntry,
)
from models import EquivalenceMode, FiniteTypeStatus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExchangeMatrix:
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise InvalidSeed("Пустая матрица обмена")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise InvalidSeed(f"Матрица обмена не квадратная: строка {i + 1} длины {len(row)}")
            for j in range(n):
                if row[j] != -self.entries[j][i]:
                    raise InvalidSeed(
                        f"Матрица обмена не кососимметрична: b[{i + 1}][{j + 1}]={row[j]}, "
                        f"b[{j + 1}][{i + 1}]={self.entries[j][i]}"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "ExchangeMatrix":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def to_rows(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class Seed:
    cluster: Tuple[LaurentPolynomial, ...]
    matrix: ExchangeMatrix

    def __post_init__(self):
        if len(self.cluster) != self.matrix.n:
            raise InvalidSeed(
                f"Кластер из {len(self.cluster)} переменных при матрице {self.matrix.n}×{self.matrix.n}"
            )
        for entry in self.cluster:
            if entry.nvars != self.matrix.n:
                raise InvalidSeed(f"Переменная {render(entry)} задана не в {self.matrix.n} переменных")

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "Seed":
        n = matrix.n
        return cls(tuple(LaurentPolynomial.variable(n, i) for i in range(1, n + 1)), matrix)

    @property
    def n(self) -> int:
        return self.matrix.n

    def describe(self) -> List[str]:
        return [render(x) for x in self.cluster]


def _check_direction(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"Направление мутации {k} вне диапазона 1..{n}")


def matrix_mutate(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    _check_direction(B.n, k)
    c = k - 1
    rows = []
    for i in range(B.n):
        row = []
        for j in range(B.n):
            if i == c or j == c:
                row.append(-B[i, j])
            else:
                b_ik, b_kj = B[i, c], B[c, j]
                row.append(B[i, j] + (abs(b_ik) * b_kj + b_ik * abs(b_kj)) // 2)
        rows.append(tuple(row))
    return ExchangeMatrix(tuple(rows))


def exchange_monomials(values: Sequence, B: ExchangeMatrix, k: int, one):
    """Два слагаемых соотношения обмена в направлении k"""
    c = k - 1
    positive, negative = one, one
    for i, value in enumerate(values):
        b_ik = B[i, c]
        if b_ik > 0:
            positive = positive * value ** b_ik
        elif b_ik < 0:
            negative = negative * value ** -b_ik
    return positive, negative


def seed_mutate(s: Seed, k: int) -> Seed:
    _check_direction(s.n, k)
    one = LaurentPolynomial.constant(s.n, 1)
    positive, negative = exchange_monomials(s.cluster, s.matrix, k, one)
    try:
        replaced = lp_div_exact(positive + negative, s.cluster[k - 1])
    except NotDivisible as exc:
        raise LaurentViolation(
            f"Мутация в направлении {k} вывела из кольца Лорана: {exc.message}",
            witness=s.describe(),
        ) from exc
    cluster = s.cluster[:k - 1] + (replaced,) + s.cluster[k:]
    return Seed(cluster, matrix_mutate(s.matrix, k))


def mutate_sequence(s: Seed, directions: Iterable[int]) -> Seed:
    for k in directions:
        s = seed_mutate(s, k)
    return s


def numeric_mutate(mu: Sequence, B: ExchangeMatrix, k: int) -> Tuple[Fraction, ...]:
    """Числовая тень мутации: μ_k ↦ (Π μ_i^{[b_ik]+} + Π μ_i^{[-b_ik]+}) / μ_k"""
    _check_direction(B.n, k)
    values = tuple(Fraction(v) for v in mu)
    if len(values) != B.n:
        raise IndexOutOfRange(f"Набор из {len(values)} чисел при ранге {B.n}")
    if values[k - 1] == 0:
        raise ZeroEntry(f"μ_{k} = 0")
    positive, negative = exchange_monomials(values, B, k, Fraction(1))
    replaced = (positive + negative) / values[k - 1]
    return values[:k - 1] + (replaced,) + values[k:]


def markov_invariant(mu: Sequence) -> Fraction:
    """μ1² + μ2² + μ3² − 3μ1μ2μ3; равен нулю на марковских тройках"""
    a, b, c = (Fraction(v) for v in mu)
    return a * a + b * b + c * c - 3 * a * b * c


def expand_seeds(seeds: Sequence[Seed], threads: int = 1) -> List[List[Seed]]:
    """Дети каждого сида в порядке направлений k = 1..n"""

    def children(seed: Seed) -> List[Seed]:
        return [seed_mutate(seed, k) for k in range(1, seed.n + 1)]

    if threads > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(children, seeds))
    return [children(seed) for seed in seeds]


def sort_variables(variables: Iterable[LaurentPolynomial]) -> List[LaurentPolynomial]:
    return sorted(variables, key=lambda p: (len(p.terms), render(p)))


def enumerate_cluster_variables(
    s: Seed,
    depth: int,
    budget: Optional[int] = None,
    threads: int = 1,
) -> FrozenSet[LaurentPolynomial]:
    if depth < 0:
        raise IndexOutOfRange(f"Глубина должна быть неотрицательной: {depth}")
    if s.n >= 3 and depth > settings.enumeration_depth_limit:
        raise BudgetExceeded(
            f"Глубина {depth} превышает предел {settings.enumeration_depth_limit} для ранга {s.n}"
        )
    budget = budget or settings.node_budget

    variables = set(s.cluster)
    seen = {s}
    frontier = [s]
    for level in range(1, depth + 1):
        next_frontier = []
        for children in expand_seeds(frontier, threads):
            for child in children:
                if child in seen:
                    continue
                seen.add(child)
                if len(seen) > budget:
                    raise BudgetExceeded(f"Превышен лимит узлов {budget} на уровне {level}")
                next_frontier.append(child)
                variables.update(child.cluster)
        frontier = next_frontier
        logger.info(f"Уровень {level}: новых сидов {len(frontier)}, переменных {len(variables)}")
    return frozenset(variables)


@dataclass(frozen=True)
class PositivityCheck:
    positive: bool
    witness: Optional[LaurentPolynomial] = None


def check_positivity(variables: Iterable[LaurentPolynomial]) -> PositivityCheck:
    for variable in sort_variables(variables):
        if not lp_is_nonneg(variable):
            return PositivityCheck(False, variable)
    return PositivityCheck(True)


def exchange_graph_is_two_finite(B: ExchangeMatrix, budget: int) -> Optional[bool]:
    """Обход класса мутаций матрицы B.

    False: найдена матрица с |b_ij·b_ji| ≥ 4 (бесконечный тип),
    True: класс исчерпан без таких матриц, None: исчерпан бюджет.
    """
    seen = {B}
    frontier = [B]
    while frontier:
        next_frontier = []
        for matrix in frontier:
            if any(abs(v) >= 2 for row in matrix.entries for v in row):
                return False
            for k in range(1, matrix.n + 1):
                mutated = matrix_mutate(matrix, k)
                if mutated not in seen:
                    seen.add(mutated)
                    if len(seen) > budget:
                        return None
                    next_frontier.append(mutated)
        frontier = next_frontier
    return True


@dataclass(frozen=True)
class FiniteTypeResult:
    status: FiniteTypeStatus
    count: Optional[int] = None
    seeds_visited: int = 0


def is_finite_type(
    s: Seed,
    budget: Optional[int] = None,
    mode: EquivalenceMode = EquivalenceMode.PERMUTED,
) -> FiniteTypeResult:
    """Обход сидов с глобальным отсевом повторов и отсевом ℓ-эквивалентных на уровне.

    В режиме permuted ℓ-эквивалентные сиды отличаются только перенумерацией
    и порождают те же переменные.
    """
    from algebra.bratteli import class_key

    budget = budget or settings.finite_type_budget
    if budget < 1:
        raise IndexOutOfRange(f"Бюджет должен быть положительным: {budget}")

    if exchange_graph_is_two_finite(s.matrix, budget) is False:
        logger.info("В классе мутаций найдена пара |b_ij·b_ji| ≥ 4: обход сидов не завершится")
        return FiniteTypeResult(FiniteTypeStatus.EXCEEDED_BUDGET)

    variables = set(s.cluster)
    seen = {s}
    frontier = [s]
    while frontier:
        next_frontier = []
        level_classes = set()
        for children in expand_seeds(frontier):
            for child in children:
                key = class_key(child, mode)
                if child in seen or key in level_classes:
                    continue
                level_classes.add(key)
                seen.add(child)
                if len(seen) > budget:
                    return FiniteTypeResult(FiniteTypeStatus.EXCEEDED_BUDGET, seeds_visited=len(seen))
                next_frontier.append(child)
                variables.update(child.cluster)
        frontier = next_frontier
    logger.info(f"Конечный тип: {len(variables)} переменных, {len(seen)} сидов")
    return FiniteTypeResult(FiniteTypeStatus.FINITE, len(variables), len(seen))


def a11_seed() -> Seed:
    return Seed.initial(ExchangeMatrix.from_rows([[0, 2], [-2, 0]]))


def markov_seed() -> Seed:
    return Seed.initial(ExchangeMatrix.from_rows([[0, 2, -2], [-2, 0, 2], [2, -2, 0]]))


def a2_seed() -> Seed:
    return Seed.initial(ExchangeMatrix.from_rows([[0, 1], [-1, 0]]))


def rank1_seed() -> Seed:
    return Seed.initial(ExchangeMatrix.from_rows([[0]]))


def evaluate_cluster(s: Seed, point: Sequence) -> Tuple[Fraction, ...]:
    return tuple(lp_eval(x, point) for x in s.cluster)
