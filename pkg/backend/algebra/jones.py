"""Алгебра Темперли–Либа на диаграммах, представление кос, след Маркова и многочлен Джонса.

Точки диаграммы на n нитях: верхняя i ↦ i, нижняя i ↦ n + i (нумерация с 0).
Произведение a·b ставит a над b: низ a склеивается с верхом b, каждая
замкнутая петля даёт множитель δ = -A² - A⁻².
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from algebra.laurent import LaurentPolynomial, lp_div_exact
from config import settings
from exceptions import (
    IndexOutOfRange,
    InvalidParameters,
    NotDivisible,
    RelationViolated,
    StrandMismatch,
    TooManyCrossings,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

DELTA = LaurentPolynomial.from_dict(1, {(2,): -1, (-2,): -1})
ONE = LaurentPolynomial.constant(1, 1)
MAX_ORACLE_CROSSINGS = 20


def _a_power(e: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial((e,))


def _circular(point: int, n: int) -> int:
    # обход границы: верх слева направо, затем низ справа налево
    return point if point < n else 3 * n - 1 - point


@dataclass(frozen=True, order=True)
class PlanarPairing:
    n: int
    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        points = sorted(p for pair in self.pairs for p in pair)
        if points != list(range(2 * self.n)):
            raise InvalidParameters(f"Разбиение {self.pairs} не является совершенным паросочетанием на {2 * self.n} точках")
        arcs = [tuple(sorted((_circular(a, self.n), _circular(b, self.n)))) for a, b in self.pairs]
        for (a, b), (c, d) in itertools.combinations(arcs, 2):
            if a < c < b < d or c < a < d < b:
                raise InvalidParameters(f"Дуги {self.pairs} пересекаются")

    @classmethod
    def of(cls, n: int, pairs: Iterable[Pair]) -> "PlanarPairing":
        return cls(n, tuple(sorted(tuple(sorted(pair)) for pair in pairs)))

    @classmethod
    def identity(cls, n: int) -> "PlanarPairing":
        return cls.of(n, [(i, n + i) for i in range(n)])

    @classmethod
    def generator(cls, n: int, i: int) -> "PlanarPairing":
        """E_i: соединяет верхние точки i-1, i и нижние i-1, i (i с единицы)"""
        if not 1 <= i <= n - 1:
            raise IndexOutOfRange(f"Генератор E_{i} не существует при n = {n}")
        pairs = [(i - 1, i), (n + i - 1, n + i)]
        pairs += [(j, n + j) for j in range(n) if j not in (i - 1, i)]
        return cls.of(n, pairs)

    @property
    def partner(self) -> Dict[int, int]:
        result = {}
        for a, b in self.pairs:
            result[a], result[b] = b, a
        return result


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _matchings(positions: Sequence[int]):
    if not positions:
        yield []
        return
    first = positions[0]
    for k in range(1, len(positions), 2):
        for inner in _matchings(positions[1:k]):
            for outer in _matchings(positions[k + 1:]):
                yield [(first, positions[k])] + inner + outer


@lru_cache(maxsize=None)
def tl_basis(n: int) -> Tuple[PlanarPairing, ...]:
    """Все некрещёные паросочетания 2n точек; их число равно n-му числу Каталана"""
    if n < 1:
        raise InvalidParameters(f"Число нитей должно быть положительным: {n}")

    def point(position: int) -> int:
        return position if position < n else 3 * n - 1 - position

    basis = [
        PlanarPairing.of(n, [(point(a), point(b)) for a, b in matching])
        for matching in _matchings(list(range(2 * n)))
    ]
    return tuple(sorted(basis))


@lru_cache(maxsize=None)
def compose(a: PlanarPairing, b: PlanarPairing) -> Tuple[PlanarPairing, int]:
    """(a·b, число замкнутых петель)"""
    if a.n != b.n:
        raise StrandMismatch(f"Диаграммы на {a.n} и {b.n} нитях")
    n = a.n
    upper, lower = a.partner, b.partner
    middle_seen = set()

    def walk(side: str, point: int) -> int:
        while True:
            if side == "a":
                partner = upper[point]
                if partner < n:
                    return partner
                middle_seen.add(partner - n)
                side, point = "b", partner - n
            else:
                partner = lower[point]
                if partner >= n:
                    return partner
                middle_seen.add(partner)
                side, point = "a", n + partner

    pairs = []
    done = set()
    for start, side in [(i, "a") for i in range(n)] + [(n + i, "b") for i in range(n)]:
        if start in done:
            continue
        end = walk(side, start)
        done.update((start, end))
        pairs.append((start, end))

    loops = 0
    for i in range(n):
        if i in middle_seen:
            continue
        loops += 1
        current = i
        while True:
            middle_seen.add(current)
            j = lower[current]
            middle_seen.add(j)
            current = upper[n + j] - n
            if current == i:
                break
    return PlanarPairing.of(n, pairs), loops


def closure_loops(d: PlanarPairing) -> int:
    """Число петель при замыкании верхней точки i с нижней i"""
    partner = d.partner
    seen = set()
    loops = 0
    for start in range(d.n):
        if start in seen:
            continue
        loops += 1
        point = start
        while point not in seen:
            seen.add(point)
            other = partner[point]
            seen.add(other)
            point = other - d.n if other >= d.n else other + d.n
    return loops


@dataclass(frozen=True)
class TLElement:
    n: int
    combo: Tuple[Tuple[PlanarPairing, LaurentPolynomial], ...] = ()

    @classmethod
    def from_dict(cls, n: int, mapping: Mapping[PlanarPairing, LaurentPolynomial]) -> "TLElement":
        for d in mapping:
            if d.n != n:
                raise StrandMismatch(f"Диаграмма на {d.n} нитях в элементе TL_{n}")
        return cls(n, tuple(sorted((d, c) for d, c in mapping.items() if not c.is_zero)))

    @classmethod
    def identity(cls, n: int) -> "TLElement":
        return cls.from_dict(n, {PlanarPairing.identity(n): ONE})

    @classmethod
    def generator(cls, n: int, i: int) -> "TLElement":
        return cls.from_dict(n, {PlanarPairing.generator(n, i): ONE})

    def as_dict(self) -> Dict[PlanarPairing, LaurentPolynomial]:
        return dict(self.combo)

    def __add__(self, other: "TLElement") -> "TLElement":
        return tl_add(self, other)

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_mul(self, other)
        return tl_scale(self, other)

    __rmul__ = __mul__


def tl_add(a: TLElement, b: TLElement) -> TLElement:
    if a.n != b.n:
        raise StrandMismatch(f"Элементы TL_{a.n} и TL_{b.n}")
    result = a.as_dict()
    for d, c in b.combo:
        result[d] = result[d] + c if d in result else c
    return TLElement.from_dict(a.n, result)


def tl_scale(a: TLElement, factor) -> TLElement:
    if isinstance(factor, int):
        factor = LaurentPolynomial.constant(1, factor)
    return TLElement.from_dict(a.n, {d: c * factor for d, c in a.combo})


def tl_mul(a: TLElement, b: TLElement) -> TLElement:
    if a.n != b.n:
        raise StrandMismatch(f"Произведение TL_{a.n} на TL_{b.n}")
    result: Dict[PlanarPairing, LaurentPolynomial] = {}
    for d1, c1 in a.combo:
        for d2, c2 in b.combo:
            d, loops = compose(d1, d2)
            term = c1 * c2 * DELTA ** loops
            result[d] = result[d] + term if d in result else term
    return TLElement.from_dict(a.n, result)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise InvalidParameters(f"Число нитей должно быть положительным: {self.strands}")
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise IndexOutOfRange(f"Буква {letter} недопустима для кос на {self.strands} нитях")

    @classmethod
    def parse(cls, strands: int, text: str) -> "BraidWord":
        try:
            letters = tuple(int(token) for token in text.replace(",", " ").split())
        except ValueError:
            raise InvalidParameters(f"Некорректное слово косы: {text!r}")
        return cls(strands, letters)

    @property
    def writhe(self) -> int:
        return sum(1 if letter > 0 else -1 for letter in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-letter for letter in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters)


def _letter_image(n: int, letter: int) -> TLElement:
    i = abs(letter)
    sign = 1 if letter > 0 else -1
    return TLElement.from_dict(n, {
        PlanarPairing.identity(n): _a_power(sign),
        PlanarPairing.generator(n, i): _a_power(-sign),
    })


def braid_to_tl(w: BraidWord) -> TLElement:
    """σ_i ↦ A·1 + A⁻¹E_i, σ_i⁻¹ ↦ A⁻¹·1 + A·E_i"""
    result = TLElement.identity(w.strands)
    for letter in w.letters:
        result = tl_mul(result, _letter_image(w.strands, letter))
    return result


@dataclass(frozen=True)
class DeltaQuotient:
    """numerator / δ^delta_power"""
    numerator: LaurentPolynomial
    delta_power: int = 0

    @property
    def is_laurent(self) -> bool:
        return self.delta_power <= 0

    def times_delta(self, power: int) -> "DeltaQuotient":
        return _reduce(self.numerator, self.delta_power - power)

    def as_laurent(self) -> LaurentPolynomial:
        if self.delta_power > 0:
            raise NotDivisible(f"{self} не является многочленом Лорана")
        return self.numerator * DELTA ** -self.delta_power

    def __str__(self) -> str:
        if self.delta_power == 0:
            return str(self.numerator)
        return f"({self.numerator}) / δ^{self.delta_power}"


def _reduce(numerator: LaurentPolynomial, power: int) -> DeltaQuotient:
    if numerator.is_zero:
        return DeltaQuotient(numerator, 0)
    if power < 0:
        return DeltaQuotient(numerator * DELTA ** -power, 0)
    while power > 0:
        try:
            numerator = lp_div_exact(numerator, DELTA)
        except NotDivisible:
            break
        power -= 1
    return DeltaQuotient(numerator, power)


def markov_trace(x: TLElement) -> DeltaQuotient:
    """tr(D) = δ^{петли замыкания - n}, tr(1) = 1"""
    numerator = LaurentPolynomial.zero(1)
    for d, c in x.combo:
        numerator = numerator + c * DELTA ** closure_loops(d)
    return _reduce(numerator, x.n)


@dataclass(frozen=True)
class HalfIntLaurent:
    """Многочлен от t^{1/2}: ключ: удвоенный показатель, члены по возрастанию степени"""
    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int]) -> "HalfIntLaurent":
        return cls(tuple(sorted((e, c) for e, c in mapping.items() if c)))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def __str__(self) -> str:
        return render_jones(self)


def _t_power(doubled: int) -> str:
    if doubled % 2:
        return f"t^({doubled}/2)"
    if doubled == 2:
        return "t"
    return f"t^{doubled // 2}"


def render_jones(v: HalfIntLaurent) -> str:
    if not v.terms:
        return "0"
    pieces = []
    for position, (doubled, coefficient) in enumerate(v.terms):
        magnitude = abs(coefficient)
        if doubled == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = _t_power(doubled)
        else:
            body = f"{magnitude}*{_t_power(doubled)}"
        if position == 0:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
    return " ".join(pieces)


def mirror(v: HalfIntLaurent) -> HalfIntLaurent:
    return HalfIntLaurent.from_dict({-e: c for e, c in v.terms})


def jones_from_bracket(bracket: LaurentPolynomial, writhe: int) -> HalfIntLaurent:
    """(-A)^{-3w}·⟨L⟩ с подстановкой A = t^{1/4}"""
    normalized = bracket * LaurentPolynomial.monomial((-3 * writhe,), (-1) ** (writhe % 2))
    result = {}
    for (e,), c in normalized.terms:
        if e % 2:
            raise RelationViolated(f"Показатель A^{e} не даёт степени t^(k/2)", witness=str(normalized))
        result[e // 2] = c
    if len({e % 2 for e in result}) > 1:
        raise RelationViolated("Целые и полуцелые степени t вперемешку", witness=str(normalized))
    return HalfIntLaurent.from_dict(result)


def bracket_of(w: BraidWord) -> LaurentPolynomial:
    """Скобка Кауфмана замыкания через след: δ^{n-1}·tr(braid_to_tl(w))"""
    return markov_trace(braid_to_tl(w)).times_delta(w.strands - 1).as_laurent()


def jones_polynomial(w: BraidWord) -> HalfIntLaurent:
    return jones_from_bracket(bracket_of(w), w.writhe)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        self.parent[self.find(x)] = self.find(y)

    def components(self) -> int:
        return len({self.find(x) for x in range(len(self.parent))})


def _state_loops(w: BraidWord, vertical: Sequence[bool]) -> int:
    n, c = w.strands, len(w.letters)
    cells = _UnionFind(n * c)

    def node(row: int, strand: int) -> int:
        return (row % c) * n + strand

    for j, letter in enumerate(w.letters):
        left, right = abs(letter) - 1, abs(letter)
        for s in range(n):
            if s not in (left, right):
                cells.union(node(j, s), node(j + 1, s))
        if vertical[j]:
            cells.union(node(j, left), node(j + 1, left))
            cells.union(node(j, right), node(j + 1, right))
        else:
            cells.union(node(j, left), node(j, right))
            cells.union(node(j + 1, left), node(j + 1, right))
    return cells.components()


def kauffman_oracle(w: BraidWord) -> LaurentPolynomial:
    """Скобка замкнутой косы полным перебором 2^c состояний"""
    c = len(w.letters)
    if c > MAX_ORACLE_CROSSINGS:
        raise TooManyCrossings(f"{c} перекрёстков, предел {MAX_ORACLE_CROSSINGS}")
    if c == 0:
        return DELTA ** (w.strands - 1)
    total = LaurentPolynomial.zero(1)
    for state in itertools.product((True, False), repeat=c):
        # A-сглаживание положительного перекрёстка вертикально, отрицательного горизонтально
        vertical = [a_smoothing == (letter > 0) for a_smoothing, letter in zip(state, w.letters)]
        a_count = sum(state)
        loops = _state_loops(w, vertical)
        total = total + _a_power(2 * a_count - c) * DELTA ** (loops - 1)
    return total


# Алгебра TL_n над Q в нормировке проекторов: e_i = E_i / δ, τ = δ⁻²


@lru_cache(maxsize=None)
def word_lengths(n: int) -> Dict[PlanarPairing, int]:
    """Наименьшая длина слова в E_1..E_{n-1}, дающего диаграмму"""
    identity = PlanarPairing.identity(n)
    lengths = {identity: 0}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for d in frontier:
            for i in range(1, n):
                image, _ = compose(d, PlanarPairing.generator(n, i))
                if image not in lengths:
                    lengths[image] = lengths[d] + 1
                    next_frontier.append(image)
        frontier = next_frontier
    assert len(lengths) == catalan(n), f"Достижимо {len(lengths)} диаграмм из {catalan(n)}"
    return lengths


RationalElement = Dict[PlanarPairing, Fraction]


class RationalTL:
    """Базис b_D = D / δ^{ℓ(D)}: структурные константы: степени τ"""

    def __init__(self, n: int, t: Union[Fraction, int, str]):
        self.n = n
        self.t = Fraction(t)
        self.tau = self.t / (1 + self.t) ** 2
        self.lengths = word_lengths(n)

    def _tau_power(self, doubled: int) -> Fraction:
        assert doubled % 2 == 0, f"Нечётная степень δ: {doubled}"
        return self.tau ** (doubled // 2)

    def identity(self) -> RationalElement:
        return {PlanarPairing.identity(self.n): Fraction(1)}

    def e(self, i: int) -> RationalElement:
        return {PlanarPairing.generator(self.n, i): Fraction(1)}

    def s(self, i: int) -> RationalElement:
        """s_i = t·e_i - (1 - e_i)"""
        return self.sub(self.scale(self.e(i), self.t + 1), self.identity())

    @staticmethod
    def add(x: RationalElement, y: RationalElement) -> RationalElement:
        result = dict(x)
        for d, c in y.items():
            result[d] = result.get(d, 0) + c
        return {d: c for d, c in result.items() if c}

    @staticmethod
    def scale(x: RationalElement, factor: Fraction) -> RationalElement:
        return {d: c * factor for d, c in x.items() if c * factor}

    def sub(self, x: RationalElement, y: RationalElement) -> RationalElement:
        return self.add(x, self.scale(y, Fraction(-1)))

    def mul(self, x: RationalElement, y: RationalElement) -> RationalElement:
        result: RationalElement = {}
        for d1, c1 in x.items():
            for d2, c2 in y.items():
                d, loops = compose(d1, d2)
                # δ^{loops + ℓ(d) - ℓ(d1) - ℓ(d2)} = τ^{-(...)/2}
                power = loops + self.lengths[d] - self.lengths[d1] - self.lengths[d2]
                result[d] = result.get(d, 0) + c1 * c2 * self._tau_power(-power)
        return {d: c for d, c in result.items() if c}

    def product(self, factors: Sequence[RationalElement]) -> RationalElement:
        result = self.identity()
        for factor in factors:
            result = self.mul(result, factor)
        return result

    def trace(self, x: RationalElement) -> Fraction:
        total = Fraction(0)
        for d, c in x.items():
            total += c * self._tau_power(self.n + self.lengths[d] - closure_loops(d))
        return total


@dataclass
class RelationReport:
    n: int
    t: Fraction
    tau: Fraction
    checks: Dict[str, int] = field(default_factory=dict)


def _expect(condition: bool, check: str, witness) -> None:
    if not condition:
        raise RelationViolated(f"Нарушено соотношение ({check})", witness=witness)


def verify_tl_relations(
    n: int,
    t: Union[Fraction, int, str],
    tau: Optional[Union[Fraction, int, str]] = None,
    words: Optional[int] = None,
) -> RelationReport:
    """Соотношения проекторов e_i, косы s_i и марковское свойство следа в TL_n над Q.

    tau: ожидаемое значение e_ie_{i±1}e_i / e_i; по умолчанию t/(1+t)².
    """
    if not 2 <= n <= 6:
        raise InvalidParameters(f"Нужно 2 ≤ n ≤ 6, получено {n}")
    t = Fraction(t)
    if t <= 0:
        raise InvalidParameters(f"Нужно t > 0, получено {t}")

    algebra = RationalTL(n, t)
    expected = Fraction(tau) if tau is not None else algebra.tau
    report = RelationReport(n, t, expected)
    mul, e = algebra.mul, algebra.e

    for i in range(1, n):
        _expect(mul(e(i), e(i)) == e(i), "e", (i, i))
    report.checks["idempotent"] = n - 1

    # (a) дальняя коммутативность
    count = 0
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i >= 2:
            _expect(mul(e(i), e(j)) == mul(e(j), e(i)), "a", (i, j))
            count += 1
    report.checks["far_commutation"] = count

    # (b) e_i e_{i±1} e_i = τ e_i
    count = 0
    for i in range(1, n):
        for j in (i - 1, i + 1):
            if 1 <= j <= n - 1:
                _expect(algebra.product([e(i), e(j), e(i)]) == algebra.scale(e(i), expected), "b", (i, j))
                count += 1
    report.checks["projection_relation"] = count

    # (c) соотношения кос для s_i = t·e_i - (1 - e_i)
    count = 0
    for i in range(1, n - 1):
        s_i, s_j = algebra.s(i), algebra.s(i + 1)
        _expect(algebra.product([s_i, s_j, s_i]) == algebra.product([s_j, s_i, s_j]), "c", (i, i + 1))
        count += 1
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i >= 2:
            _expect(mul(algebra.s(i), algebra.s(j)) == mul(algebra.s(j), algebra.s(i)), "c", (i, j))
            count += 1
    report.checks["braid_relation"] = count

    # (d) tr(x·e_n) = τ·tr(x) для случайных слов x в e_1..e_{n-1}
    larger = RationalTL(n + 1, t)
    rng = random.Random(settings.random_seed)
    total = words if words is not None else settings.tl_random_words
    for _ in range(total):
        word = [rng.randint(1, n - 1) for _ in range(rng.randint(0, 2 * n))]
        x = algebra.product([algebra.e(i) for i in word])
        lifted = larger.product([larger.e(i) for i in word] + [larger.e(n)])
        _expect(larger.trace(lifted) == expected * algebra.trace(x), "d", word)
    report.checks["markov_property"] = total

    logger.info(f"TL_{n}, t={t}: проверено {sum(report.checks.values())} соотношений")
    return report
