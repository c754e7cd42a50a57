"""Алгебра A(1,1): переменные рекурсии, каноническая база, Казимир, модули кольца."""

import json
import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from algebra.laurent import (
    LaurentPolynomial,
    chebyshev_T,
    lp_compose,
    lp_div_exact,
)
from config import settings
from exceptions import (
    BoundExceeded,
    DiscriminantNegative,
    InvalidParameters,
    UnknownFormat,
)
from models import BasisFamily, TableFormat

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _a11(i: int) -> LaurentPolynomial:
    if i in (1, 2):
        return LaurentPolynomial.variable(2, i)
    one = LaurentPolynomial.constant(2, 1)
    if i > 2:
        # x_{i-2} x_i = x_{i-1}^2 + 1
        return lp_div_exact(_a11(i - 1) ** 2 + one, _a11(i - 2))
    # x_i x_{i+2} = x_{i+1}^2 + 1
    return lp_div_exact(_a11(i + 1) ** 2 + one, _a11(i + 2))


def a11_variable(i: int) -> LaurentPolynomial:
    """x_i в начальном кластере (x1, x2); рекурсия x_{i-1}x_{i+1} = x_i² + 1 в обе стороны"""
    if abs(i) > settings.a11_bound:
        raise BoundExceeded(f"|i| = {abs(i)} превышает предел {settings.a11_bound}")
    return _a11(i)


def casimir() -> LaurentPolynomial:
    x1, x2, x3, x4 = (a11_variable(i) for i in (1, 2, 3, 4))
    result = x1 * x4 - x2 * x3
    expected = LaurentPolynomial.from_dict(2, {(1, -1): 1, (-1, -1): 1, (-1, 1): 1})
    assert result == expected, f"x1x4 - x2x3 = {result}"
    return result


def canonical_basis_element(
    p: int = 0,
    q: int = 0,
    n: Optional[int] = None,
    i: int = 1,
    family: Union[BasisFamily, str] = BasisFamily.MONOMIAL,
) -> LaurentPolynomial:
    try:
        family = BasisFamily(family)
    except ValueError:
        raise InvalidParameters(f"Неизвестное семейство базиса: {family!r}")

    if family == BasisFamily.CHEBYSHEV:
        if n is None or n < 3:
            raise InvalidParameters(f"Для семейства Чебышёва нужно n ≥ 3, получено {n}")
        return lp_compose(chebyshev_T(n), casimir())

    if p < 0 or q < 0:
        raise InvalidParameters(f"Показатели должны быть неотрицательными: p={p}, q={q}")
    return a11_variable(i) ** p * a11_variable(i + 1) ** q


@dataclass(frozen=True)
class ModulusSolution:
    t: float
    x1: float
    x2: float
    residual1: float
    residual2: float
    casimir: float


def _numeric_casimir(x1: float, x2: float) -> float:
    x3 = (x2 * x2 + 1) / x1
    x4 = (x3 * x3 + 1) / x2
    return x1 * x4 - x2 * x3


def solve_moduli(t: float) -> ModulusSolution:
    """Решение системы x1·x2 = 2t, x1² + x2² = t² при t ≥ 4"""
    t = float(t)
    if not math.isfinite(t):
        raise InvalidParameters(f"Модуль должен быть конечным: {t}")
    if t < 4:
        raise DiscriminantNegative(f"Дискриминант t²(t²-16) < 0 при t = {t}")

    s = math.sqrt(t * t - 16)
    big = (t * t + t * s) / 2
    # меньший корень через произведение x1²·x2² = 4t², без вычитания
    small = 4 * t * t / big
    x1, x2 = math.sqrt(big), math.sqrt(small)

    residual1 = abs(x1 * x2 - 2 * t) / (2 * t)
    residual2 = abs(x1 * x1 + x2 * x2 - t * t) / (t * t)
    tolerance = settings.numeric_tolerance
    assert residual1 <= tolerance and residual2 <= tolerance, (
        f"Невязки {residual1:.3e}, {residual2:.3e} при t = {t}"
    )

    value = _numeric_casimir(x1, x2)
    expected = (t + 1 / t) / 2
    assert abs(value - expected) <= tolerance * expected, (
        f"x1x4 - x2x3 = {value!r}, ожидалось {expected!r}"
    )
    return ModulusSolution(t, x1, x2, residual1, residual2, value)


@dataclass(frozen=True)
class DiscreteModulus:
    n: int
    t: float
    lam: float


@dataclass(frozen=True)
class AdmissibleModuli:
    continuous: Tuple[float, float]
    discrete: List[DiscreteModulus]
    hecke_continuous: Tuple[float, float] = (2.0, math.inf)


def admissible_moduli(n_max: int) -> AdmissibleModuli:
    if n_max < 3:
        raise InvalidParameters(f"Нужно n_max ≥ 3, получено {n_max}")
    discrete = []
    for n in range(3, n_max + 1):
        lam = 2 * math.cos(math.pi / n)
        t = 4 * math.cos(math.pi / n) ** 2
        assert abs(t - lam * lam) <= 1e-14, f"t_{n} = {t!r}, λ² = {lam * lam!r}"
        discrete.append(DiscreteModulus(n, t, lam))
    return AdmissibleModuli((4.0, math.inf), discrete)


def is_admissible_modulus(t: float, tolerance: Optional[float] = None) -> bool:
    """t ∈ [4, ∞) ∪ {4cos²(π/n) : n ≥ 3}"""
    tolerance = tolerance if tolerance is not None else settings.numeric_tolerance
    if t >= 4 - tolerance:
        return True
    if t < 1 - tolerance:
        return False
    ratio = min(max(math.sqrt(max(t, 0.0)) / 2, -1.0), 1.0)
    angle = math.acos(ratio)
    if angle == 0:
        return False
    n = round(math.pi / angle)
    return n >= 3 and abs(4 * math.cos(math.pi / n) ** 2 - t) <= tolerance


def is_hecke_discrete(lam: float, tolerance: Optional[float] = None) -> bool:
    """Образ допустимых модулей при t = λ²: [2, ∞) ∪ {2cos(π/n)}"""
    return lam > 0 and is_admissible_modulus(lam * lam, tolerance)


def roots_of_unity_check(n: int) -> float:
    if n < 3:
        raise InvalidParameters(f"Нужно n ≥ 3, получено {n}")
    t = np.exp(2j * np.pi / n)
    return float(abs(t ** n + t ** -n - 2))


def tau_identity_residual(n: int) -> float:
    """|t/(1+t)² - 1/(4cos²(π/n))| при t = e^{2πi/n}"""
    if n < 3:
        raise InvalidParameters(f"Нужно n ≥ 3, получено {n}")
    t = np.exp(2j * np.pi / n)
    return float(abs(t / (1 + t) ** 2 - 1 / (4 * math.cos(math.pi / n) ** 2)))


def verify_trace_exchange(t: Union[Fraction, int, str]) -> bool:
    t = Fraction(t)
    if t <= 0:
        raise InvalidParameters(f"Нужно t > 0, получено {t}")
    product, squares = 2 * t, t * t  # x1x2 и x1² + x2²
    left = product / (2 * (squares + product + 1))
    right = t / (1 + t) ** 2
    return left == right


def _evaluate(p: LaurentPolynomial, point: Tuple[float, float]) -> float:
    return math.fsum(
        c * math.prod(v ** e for v, e in zip(point, exps)) for exps, c in p.terms
    )


def chebyshev_casimir_check(t: float, n: int) -> float:
    """Относительная невязка T_n(Казимир)(x1, x2) = (tⁿ + t⁻ⁿ)/2 в решении модулей"""
    solution = solve_moduli(t)
    value = _evaluate(canonical_basis_element(n=n, family=BasisFamily.CHEBYSHEV), (solution.x1, solution.x2))
    expected = (t ** n + t ** -n) / 2
    return abs(value - expected) / expected


def moduli_sweep(values: Iterable[float]) -> List[ModulusSolution]:
    rows = [solve_moduli(t) for t in values]
    logger.info(f"Модули: {len(rows)} значений t")
    return rows


_SWEEP_COLUMNS = ("t", "x1", "x2", "residual1", "residual2")


def _digits(value: float) -> str:
    return format(value, ".17g")


def format_sweep(rows: List[ModulusSolution], format: Union[TableFormat, str] = TableFormat.JSON) -> str:
    try:
        fmt = TableFormat(format)
    except ValueError:
        raise UnknownFormat(f"Неизвестный формат таблицы: {format!r}")
    if fmt == TableFormat.CSV:
        frame = pd.DataFrame([asdict(row) for row in rows], columns=list(_SWEEP_COLUMNS))
        return frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")
    records = []
    for row in rows:
        data = asdict(row)
        records.append(
            "{" + ",".join(f"{json.dumps(key)}:{_digits(data[key])}" for key in _SWEEP_COLUMNS) + "}"
        )
    return "[" + ",".join(records) + "]\n"
