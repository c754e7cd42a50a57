"""Группы размерности как индуктивные пределы решёток Z^k."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix, factorint

from algebra.bratteli import BratteliDiagram, incidence_matrices
from algebra.laurent import LaurentPolynomial, lp_is_nonneg, lp_sub, render
from config import settings
from exceptions import (
    IndexOutOfRange,
    InvalidFactor,
    InvalidParameters,
    LevelOutOfRange,
    NotComparable,
    NotPrimitive,
)
from models import EqualityStatus, PositivityStatus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class K0Element:
    level: int
    vector: Tuple[int, ...]

    @classmethod
    def of(cls, level: int, vector: Iterable[int]) -> "K0Element":
        return cls(level, tuple(int(v) for v in vector))

    @property
    def is_zero(self) -> bool:
        return not any(self.vector)


def _check_element(e: K0Element, d: BratteliDiagram) -> None:
    if not 0 <= e.level <= d.depth:
        raise LevelOutOfRange(f"Уровень {e.level} вне диаграммы глубины {d.depth}")
    if len(e.vector) != len(d.levels[e.level]):
        raise LevelOutOfRange(
            f"Вектор длины {len(e.vector)} на уровне {e.level} из {len(d.levels[e.level])} вершин"
        )


def _apply(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(a * v for a, v in zip(row, vector)) for row in matrix)


def k0_push(e: K0Element, d: BratteliDiagram, target_level: int) -> K0Element:
    _check_element(e, d)
    if target_level < e.level or target_level > d.depth:
        raise LevelOutOfRange(f"Нельзя перенести элемент с уровня {e.level} на уровень {target_level}")
    matrices = incidence_matrices(d)
    vector = e.vector
    for m in range(e.level, target_level):
        vector = _apply(matrices[m], vector)
    return K0Element(target_level, vector)


def k0_add(a: K0Element, b: K0Element, d: BratteliDiagram) -> K0Element:
    level = max(a.level, b.level)
    u, v = k0_push(a, d, level), k0_push(b, d, level)
    return K0Element(level, tuple(x + y for x, y in zip(u.vector, v.vector)))


def k0_scale(a: K0Element, factor: int) -> K0Element:
    return K0Element(a.level, tuple(factor * x for x in a.vector))


def is_injective(matrix: Sequence[Sequence[int]]) -> bool:
    """Точный ранг над Q равен числу столбцов"""
    return Matrix(matrix).rank() == len(matrix[0])


def _horizon(d: BratteliDiagram, horizon: Optional[int]) -> int:
    return min(d.depth, horizon if horizon is not None else settings.k0_horizon)


@dataclass(frozen=True)
class EqualityResult:
    status: EqualityStatus
    level: Optional[int] = None


def k0_equal(a: K0Element, b: K0Element, d: BratteliDiagram, horizon: Optional[int] = None) -> EqualityResult:
    _check_element(a, d)
    _check_element(b, d)
    limit = _horizon(d, horizon)
    common = max(a.level, b.level)
    if common > limit:
        return EqualityResult(EqualityStatus.UNKNOWN)

    matrices = incidence_matrices(d)
    u, v = k0_push(a, d, common).vector, k0_push(b, d, common).vector
    injective = True
    for level in range(common, limit + 1):
        if u == v:
            return EqualityResult(EqualityStatus.EQUAL, level)
        if level == limit:
            break
        injective = injective and is_injective(matrices[level])
        u, v = _apply(matrices[level], u), _apply(matrices[level], v)
    if injective:
        return EqualityResult(EqualityStatus.NOT_EQUAL, limit)
    return EqualityResult(EqualityStatus.UNKNOWN, limit)


@dataclass(frozen=True)
class TraceState:
    """Веса по уровням 0..s, где s начало стационарной части: τ_*(e) = ⟨w_level, v⟩ / λ^level.

    w_s нормирован на сумму 1, ниже w_m = w_{m+1}·A_m / λ.
    """
    level_weights: Tuple[Tuple[float, ...], ...]
    eigenvalue: float
    iterations: int = 0

    @property
    def weights(self) -> Tuple[float, ...]:
        return self.level_weights[0]

    @property
    def stationary_from(self) -> int:
        return len(self.level_weights) - 1

    def weights_at(self, level: int) -> Tuple[float, ...]:
        if level < 0:
            raise LevelOutOfRange(f"Отрицательный уровень {level}")
        return self.level_weights[min(level, self.stationary_from)]

    def evaluate(self, e: K0Element) -> float:
        weights = self.weights_at(e.level)
        if len(e.vector) != len(weights):
            raise LevelOutOfRange(
                f"Вектор длины {len(e.vector)} на уровне {e.level} из {len(weights)} вершин"
            )
        return float(np.dot(weights, e.vector)) / self.eigenvalue ** e.level


def is_primitive(matrix: Sequence[Sequence[int]]) -> bool:
    pattern = (np.array(matrix, dtype=np.int64) > 0).astype(np.int64)
    size = pattern.shape[0]
    if pattern.shape != (size, size):
        return False
    power = pattern.copy()
    # Граница Виландта: (size - 1)^2 + 1
    for _ in range((size - 1) ** 2 + 1):
        if power.all():
            return True
        power = ((power @ pattern) > 0).astype(np.int64)
    return bool(power.all())


def stationary_start(matrices: Sequence[Sequence[Sequence[int]]]) -> int:
    """Первый уровень, начиная с которого все матрицы совпадают с последней"""
    start = len(matrices) - 1
    while start > 0 and matrices[start - 1] == matrices[-1]:
        start -= 1
    return start


def stationary_matrix(d: BratteliDiagram) -> List[List[int]]:
    matrices = incidence_matrices(d)
    if not matrices:
        raise NotPrimitive("В диаграмме нет ни одной матрицы кратностей")
    return matrices[-1]


def trace_state(d: BratteliDiagram) -> TraceState:
    matrix = stationary_matrix(d)
    matrices = incidence_matrices(d)
    start = stationary_start(matrices)
    # ранние матрицы: столбцы уровня m, строки уровня m + 1
    if not is_primitive(matrix):
        raise NotPrimitive(f"Матрица {matrix} не примитивна")
    a = np.array(matrix, dtype=float)
    w = np.ones(a.shape[0]) / a.shape[0]
    eigenvalue = 0.0
    converged, previous = False, math.inf
    for step in range(1, settings.power_iteration_max_steps + 1):
        image = w @ a
        eigenvalue = float(image.sum())
        image = image / eigenvalue
        delta = float(np.abs(image - w).max())
        w = image
        converged = converged or delta < settings.power_iteration_tolerance
        # после сходимости доводим до машинной точности, пока шаг уменьшается
        if converged and (delta == 0.0 or delta >= previous):
            break
        previous = delta
    if not converged:
        raise NotPrimitive(f"Степенной метод не сошёлся за {settings.power_iteration_max_steps} шагов")
    logger.info(f"Степенной метод: λ={eigenvalue:.15g} за {step} шагов, стационарно с уровня {start}")

    # Перенос на уровни ниже start
    level_weights = [w]
    for m in range(start - 1, -1, -1):
        level_weights.append(level_weights[-1] @ np.array(matrices[m], dtype=float) / eigenvalue)
    return TraceState(
        tuple(tuple(float(x) for x in weights) for weights in reversed(level_weights)),
        eigenvalue,
        step,
    )


@dataclass(frozen=True)
class PositivityResult:
    status: PositivityStatus
    level: Optional[int] = None
    vector: Optional[Tuple[int, ...]] = None
    is_zero: bool = False
    certificate: Optional[float] = None


def _eventually_stationary(matrices, start: int, stop: int) -> bool:
    window = matrices[start:stop]
    return bool(window) and all(m == window[-1] for m in window)


def k0_is_positive(e: K0Element, d: BratteliDiagram, horizon: Optional[int] = None) -> PositivityResult:
    _check_element(e, d)
    limit = max(_horizon(d, horizon), e.level)
    matrices = incidence_matrices(d)
    vector = e.vector
    for level in range(e.level, limit + 1):
        if not any(vector):
            return PositivityResult(PositivityStatus.POSITIVE, level, vector, is_zero=True)
        if all(v >= 0 for v in vector):
            return PositivityResult(PositivityStatus.POSITIVE, level, vector)
        if level < limit:
            vector = _apply(matrices[level], vector)

    if _eventually_stationary(matrices, e.level, limit):
        try:
            state = trace_state(d)
        except NotPrimitive:
            return PositivityResult(PositivityStatus.UNKNOWN, limit, vector)
        value = float(np.dot(state.weights_at(limit), vector))
        if value < -settings.numeric_tolerance:
            return PositivityResult(PositivityStatus.NOT_POSITIVE, limit, vector, certificate=value)
    return PositivityResult(PositivityStatus.UNKNOWN, limit, vector)


# Сверхнатуральные числа и Q(n)

INFINITY = math.inf


@dataclass(frozen=True)
class SupernaturalNumber:
    exponents: Tuple[Tuple[int, float], ...] = ()

    def exponent(self, prime: int) -> float:
        return dict(self.exponents).get(prime, 0)

    def describe(self) -> Dict[int, str]:
        return {p: ("inf" if e == INFINITY else str(int(e))) for p, e in self.exponents}


def supernatural_of(block: Sequence[int]) -> SupernaturalNumber:
    """Периодическая последовательность множителей: показатель простого 0 или ∞"""
    if not block:
        raise InvalidFactor("Пустой блок множителей")
    primes = set()
    for k in block:
        if k < 2:
            raise InvalidFactor(f"Множитель {k} меньше 2")
        primes.update(int(p) for p in factorint(k))
    return SupernaturalNumber(tuple((p, INFINITY) for p in sorted(primes)))


def qn_contains(n: SupernaturalNumber, r: Union[Fraction, int, str]) -> bool:
    value = Fraction(r)
    return all(e <= n.exponent(p) for p, e in factorint(value.denominator).items())


# Алгебра GICAR: K0 = Z[x], положительный конус: многочлены, положительные на (0,1)


@dataclass(frozen=True)
class GicarElement:
    polynomial: LaurentPolynomial

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int]) -> "GicarElement":
        """Коэффициенты по возрастанию степеней"""
        return cls(LaurentPolynomial.from_dict(1, {(k,): c for k, c in enumerate(coefficients)}))

    def coefficients(self) -> List[int]:
        if self.polynomial.is_zero:
            return []
        degree = self.polynomial.max_exponents()[0]
        values = self.polynomial.as_dict()
        return [values.get((k,), 0) for k in range(degree + 1)]

    @property
    def degree(self) -> int:
        return len(self.coefficients()) - 1

    def __str__(self) -> str:
        return render(self.polynomial, ("x",))


def gicar_rho(k: int, n: int) -> GicarElement:
    """ρ([e_k^n]) = x^k (1 - x)^{n-k}"""
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"Нужно 0 ≤ k ≤ n, получено k={k}, n={n}")
    x = LaurentPolynomial.variable(1, 1)
    one_minus_x = LaurentPolynomial.constant(1, 1) - x
    return GicarElement(x ** k * one_minus_x ** (n - k))


def gicar_evaluate(p: GicarElement, point: Union[Fraction, int]) -> Fraction:
    value = Fraction(point)
    return sum((Fraction(c) * value ** k for k, c in enumerate(p.coefficients())), Fraction(0))


def bernstein_coordinates(p: GicarElement, n: int) -> List[Fraction]:
    """Координаты p в базисе {x^k (1-x)^{n-k}}: треугольное исключение снизу вверх"""
    target = p.coefficients()
    if len(target) - 1 > n:
        raise InvalidParameters(f"Степень {len(target) - 1} больше n={n}")
    residual = [Fraction(c) for c in target] + [Fraction(0)] * (n + 1 - len(target))
    coordinates = []
    for k in range(n + 1):
        # младший моном x^k (1-x)^{n-k} равен x^k с коэффициентом 1
        c = residual[k]
        coordinates.append(c)
        if c:
            for j, b in enumerate(gicar_rho(k, n).coefficients()):
                residual[j] -= c * b
    return coordinates


def _dyadic_points(levels: int):
    for level in range(1, levels + 1):
        denominator = 2 ** level
        for numerator in range(1, denominator, 2):
            yield Fraction(numerator, denominator)


@dataclass(frozen=True)
class GicarPositivity:
    status: PositivityStatus
    degree: Optional[int] = None
    coordinates: Optional[Tuple[Fraction, ...]] = None
    point: Optional[Fraction] = None
    value: Optional[Fraction] = None


def gicar_is_positive(p: GicarElement, max_degree: Optional[int] = None) -> GicarPositivity:
    if p.polynomial.is_zero:
        raise InvalidParameters("Нулевой многочлен не рассматривается")
    if p.polynomial.min_exponents()[0] < 0:
        raise InvalidParameters("Элемент GICAR должен быть обычным многочленом")
    max_degree = max_degree if max_degree is not None else settings.gicar_max_degree

    for n in range(p.degree, max_degree + 1):
        coordinates = bernstein_coordinates(p, n)
        if all(c >= 0 for c in coordinates):
            return GicarPositivity(PositivityStatus.POSITIVE, n, tuple(coordinates))

    # Двоичные точки: сначала 1/2, затем 1/4 и 3/4 и т.д.
    for point in _dyadic_points(settings.gicar_refinement_levels):
        value = gicar_evaluate(p, point)
        if value < 0:
            return GicarPositivity(PositivityStatus.NOT_POSITIVE, point=point, value=value)
    return GicarPositivity(PositivityStatus.UNKNOWN)


def riesz_interpolate(
    a1: LaurentPolynomial,
    a2: LaurentPolynomial,
    b1: LaurentPolynomial,
    b2: LaurentPolynomial,
) -> LaurentPolynomial:
    """c с a_i ≤ c ≤ b_j; коэффициент c равен максимуму коэффициентов a1 и a2"""
    for a in (a1, a2):
        for b in (b1, b2):
            difference = lp_sub(b, a)
            if not lp_is_nonneg(difference):
                raise NotComparable(
                    f"Не выполнено {render(a)} ≤ {render(b)}",
                    witness=render(difference),
                )
    left, right = a1.as_dict(), a2.as_dict()
    c = LaurentPolynomial.from_dict(
        a1.nvars,
        {e: max(left.get(e, 0), right.get(e, 0)) for e in set(left) | set(right)},
    )
    for a in (a1, a2):
        assert lp_is_nonneg(lp_sub(c, a)), "c - a_i должен быть неотрицательным"
    for b in (b1, b2):
        assert lp_is_nonneg(lp_sub(b, c)), "b_j - c должен быть неотрицательным"
    return c
