"""Точная арифметика многочленов Лорана над целыми числами.

Многочлен хранится как отсортированный кортеж пар (вектор показателей,
коэффициент) без нулевых коэффициентов, от старшего члена к младшему
(лексикографический порядок). Поэтому равные многочлены совпадают
побайтно в тексте и имеют одинаковый hash.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from exceptions import (
    DivisionByZero,
    NotDivisible,
    ParseError,
    VariableCountMismatch,
    ZeroCoordinate,
)

logger = logging.getLogger(__name__)

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class LaurentPolynomial:
    nvars: int
    terms: Tuple[Tuple[ExponentVector, int], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, mapping: Mapping[ExponentVector, int]) -> "LaurentPolynomial":
        if nvars < 1:
            raise VariableCountMismatch(f"Число переменных должно быть положительным: {nvars}")
        for exponents in mapping:
            if len(exponents) != nvars:
                raise VariableCountMismatch(
                    f"Вектор показателей {exponents} не соответствует числу переменных {nvars}"
                )
        cleaned = ((tuple(e), int(c)) for e, c in mapping.items() if c)
        return cls(nvars, tuple(sorted(cleaned, reverse=True)))

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPolynomial":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, value: int) -> "LaurentPolynomial":
        return cls.from_dict(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient: int = 1) -> "LaurentPolynomial":
        return cls.from_dict(len(exponents), {tuple(exponents): coefficient})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "LaurentPolynomial":
        """Переменная x_index (нумерация с 1)"""
        exponents = [0] * nvars
        exponents[index - 1] = 1
        return cls.monomial(exponents)

    def as_dict(self) -> Dict[ExponentVector, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exponents(self) -> ExponentVector:
        return tuple(min(e[i] for e, _ in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> ExponentVector:
        return tuple(max(e[i] for e, _ in self.terms) for i in range(self.nvars))

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.as_dict().get(tuple(exponents), 0)

    def __add__(self, other):
        return lp_add(self, _coerce(other, self.nvars))

    __radd__ = __add__

    def __sub__(self, other):
        return lp_sub(self, _coerce(other, self.nvars))

    def __rsub__(self, other):
        return lp_sub(_coerce(other, self.nvars), self)

    def __neg__(self):
        return lp_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return lp_scale(self, other)
        return lp_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return lp_pow(self, exponent)

    def __str__(self) -> str:
        return render(self)


def _coerce(value, nvars: int) -> LaurentPolynomial:
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, int):
        return LaurentPolynomial.constant(nvars, value)
    raise TypeError(f"Ожидался многочлен Лорана или целое число, получено {type(value).__name__}")


def _check_nvars(p: LaurentPolynomial, q: LaurentPolynomial) -> None:
    if p.nvars != q.nvars:
        raise VariableCountMismatch(f"Разное число переменных: {p.nvars} и {q.nvars}")


def _shift(exponents: ExponentVector, delta: ExponentVector) -> ExponentVector:
    return tuple(a + b for a, b in zip(exponents, delta))


def lp_add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    _check_nvars(p, q)
    result = p.as_dict()
    for exponents, coefficient in q.terms:
        result[exponents] = result.get(exponents, 0) + coefficient
    return LaurentPolynomial.from_dict(p.nvars, result)


def lp_sub(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return lp_add(p, lp_scale(q, -1))


def lp_scale(p: LaurentPolynomial, factor: int) -> LaurentPolynomial:
    if not factor:
        return LaurentPolynomial.zero(p.nvars)
    return LaurentPolynomial(p.nvars, tuple((e, c * factor) for e, c in p.terms))


def lp_mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    _check_nvars(p, q)
    result: Dict[ExponentVector, int] = {}
    for e1, c1 in p.terms:
        for e2, c2 in q.terms:
            key = _shift(e1, e2)
            result[key] = result.get(key, 0) + c1 * c2
    return LaurentPolynomial.from_dict(p.nvars, result)


def lp_pow(p: LaurentPolynomial, exponent: int) -> LaurentPolynomial:
    """Целая степень; отрицательная допустима только для мономов ±x^e"""
    if exponent < 0:
        if not p.is_monomial or abs(p.terms[0][1]) != 1:
            raise NotDivisible(f"Многочлен {render(p)} не обратим в кольце Лорана")
        exps, coefficient = p.terms[0]
        return LaurentPolynomial.monomial(
            tuple(-e * -exponent for e in exps), coefficient ** (-exponent)
        )
    result = LaurentPolynomial.constant(p.nvars, 1)
    base = p
    while exponent:
        if exponent & 1:
            result = lp_mul(result, base)
        exponent >>= 1
        if exponent:
            base = lp_mul(base, base)
    return result


def _graded_lex(exponents: ExponentVector):
    return (sum(exponents), exponents)


def lp_div_exact(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    """Точное деление: r * q == p, иначе NotDivisible.

    Оба операнда сдвигаются на моном (покомпонентный минимум показателей)
    в обычные многочлены, затем выполняется деление столбиком в
    градуированном лексикографическом порядке.
    """
    _check_nvars(p, q)
    if q.is_zero:
        raise DivisionByZero("Деление на нулевой многочлен")
    if p.is_zero:
        return LaurentPolynomial.zero(p.nvars)

    if q.is_monomial:
        q_exps, q_coef = q.terms[0]
        result = {}
        for exps, coefficient in p.terms:
            if coefficient % q_coef:
                raise NotDivisible(f"{render(p)} не делится на {render(q)}")
            result[tuple(a - b for a, b in zip(exps, q_exps))] = coefficient // q_coef
        return LaurentPolynomial.from_dict(p.nvars, result)

    p_min = p.min_exponents()
    q_min = q.min_exponents()
    remainder = {tuple(a - b for a, b in zip(e, p_min)): c for e, c in p.terms}
    divisor = [(tuple(a - b for a, b in zip(e, q_min)), c) for e, c in q.terms]
    lead_exps, lead_coef = max(divisor, key=lambda term: _graded_lex(term[0]))

    quotient: Dict[ExponentVector, int] = {}
    while remainder:
        exps = max(remainder, key=_graded_lex)
        coefficient = remainder[exps]
        delta = tuple(a - b for a, b in zip(exps, lead_exps))
        if min(delta) < 0 or coefficient % lead_coef:
            raise NotDivisible(f"{render(p)} не делится на {render(q)}")
        factor = coefficient // lead_coef
        quotient[delta] = factor
        for d_exps, d_coef in divisor:
            key = _shift(delta, d_exps)
            value = remainder.get(key, 0) - factor * d_coef
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)

    offset = tuple(a - b for a, b in zip(p_min, q_min))
    return LaurentPolynomial.from_dict(p.nvars, {_shift(e, offset): c for e, c in quotient.items()})


def lp_eval(p: LaurentPolynomial, point: Sequence) -> Fraction:
    if len(point) != p.nvars:
        raise VariableCountMismatch(f"Точка из {len(point)} координат, переменных {p.nvars}")
    values = [Fraction(v) for v in point]
    if any(v == 0 for v in values):
        raise ZeroCoordinate("Нулевая координата: отрицательные степени не определены")
    total = Fraction(0)
    for exps, coefficient in p.terms:
        term = Fraction(coefficient)
        for value, e in zip(values, exps):
            if e:
                term *= value ** e
        total += term
    return total


def lp_is_nonneg(p: LaurentPolynomial) -> bool:
    return all(c > 0 for _, c in p.terms)


def lp_compose(p: LaurentPolynomial, value: LaurentPolynomial) -> LaurentPolynomial:
    """Подстановка value в одномерный многочлен p (схема Горнера)"""
    if p.nvars != 1:
        raise VariableCountMismatch("Подстановка определена для многочленов от одной переменной")
    if p.is_zero:
        return LaurentPolynomial.zero(value.nvars)
    low = min(e[0] for e, _ in p.terms)
    high = max(e[0] for e, _ in p.terms)
    coefficients = p.as_dict()
    result = LaurentPolynomial.zero(value.nvars)
    for degree in range(high, low - 1, -1):
        result = lp_mul(result, value) + coefficients.get((degree,), 0)
    if low:
        result = lp_mul(result, lp_pow(value, low))
    return result


def chebyshev_T(n: int) -> LaurentPolynomial:
    """Многочлен Чебышёва первого рода: T_0 = 1, T_1 = x, T_n = 2x T_{n-1} - T_{n-2}"""
    if n < 0:
        raise ValueError(f"Степень многочлена Чебышёва должна быть неотрицательной: {n}")
    x = LaurentPolynomial.variable(1, 1)
    previous, current = LaurentPolynomial.constant(1, 1), x
    if n == 0:
        return previous
    for _ in range(n - 1):
        previous, current = current, lp_mul(x * 2, current) - previous
    return current


# Текстовый формат: `3*x1^2*x2^-1 + 1`

_TERM = re.compile(r"([+-]?)((?:\^[+-]?|[^+\-])+)")
_FACTOR = re.compile(r"([A-Za-z_][A-Za-z_]*?)(\d*)(?:\^([+-]?\d+))?")


def default_names(nvars: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, nvars + 1))


def render(p: LaurentPolynomial, names: Optional[Sequence[str]] = None) -> str:
    names = tuple(names) if names else default_names(p.nvars)
    if p.is_zero:
        return "0"
    pieces = []
    for position, (exps, coefficient) in enumerate(p.terms):
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        magnitude = abs(coefficient)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if position == 0:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
    return " ".join(pieces)


def parse(text: str, nvars: Optional[int] = None, names: Optional[Sequence[str]] = None) -> LaurentPolynomial:
    source = "".join(text.split())
    if not source:
        raise ParseError("Пустая строка вместо многочлена")

    lookup = {name: i for i, name in enumerate(names)} if names else None
    parsed_terms = []
    position = 0
    for match in _TERM.finditer(source):
        if match.start() != position or (position and not match.group(1)):
            raise ParseError(f"Неожиданный символ в позиции {position}: {text!r}")
        position = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coefficient = sign
        exponents: Dict[int, int] = {}
        for index, piece in enumerate(match.group(2).split("*")):
            if not piece:
                raise ParseError(f"Пустой множитель в {text!r}")
            if piece.isdigit():
                if index:
                    raise ParseError(f"Коэффициент должен стоять первым: {piece!r}")
                coefficient *= int(piece)
                continue
            factor = _FACTOR.fullmatch(piece)
            if not factor:
                raise ParseError(f"Некорректный множитель {piece!r}")
            name, digits, power = factor.groups()
            if lookup is not None:
                key = name + digits
                if key not in lookup:
                    raise ParseError(f"Неизвестная переменная {key!r}")
                slot = lookup[key]
            else:
                if name != "x" or not digits or int(digits) < 1:
                    raise ParseError(f"Ожидалась переменная вида x<k>: {piece!r}")
                slot = int(digits) - 1
            exponents[slot] = exponents.get(slot, 0) + (int(power) if power else 1)
        parsed_terms.append((exponents, coefficient))
    if position != len(source):
        raise ParseError(f"Не удалось разобрать хвост строки: {source[position:]!r}")

    if names:
        size = len(names)
    else:
        used = max((max(e) + 1 for e, _ in parsed_terms if e), default=1)
        size = nvars if nvars is not None else used
        if used > size:
            raise VariableCountMismatch(f"Переменная x{used} при числе переменных {size}")
    result: Dict[ExponentVector, int] = {}
    for exponents, coefficient in parsed_terms:
        key = tuple(exponents.get(i, 0) for i in range(size))
        result[key] = result.get(key, 0) + coefficient
    return LaurentPolynomial.from_dict(size, result)


def total_variables(polynomials: Iterable[LaurentPolynomial]) -> int:
    counts = {p.nvars for p in polynomials}
    if len(counts) != 1:
        raise VariableCountMismatch(f"Многочлены от разного числа переменных: {sorted(counts)}")
    return counts.pop()
