"""Дерево мутаций T_n, фактор по ℓ-эквивалентности и диаграммы Браттели."""

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.cluster import Seed, expand_seeds
from algebra.laurent import render
from config import settings
from exceptions import (
    BudgetExceeded,
    InconsistentQuotient,
    InvalidParameters,
    RankMismatch,
    UnknownFormat,
)
from models import EquivalenceMode, ExportFormat

logger = logging.getLogger(__name__)

Vertex = Tuple[int, int]  # (уровень, номер вершины на уровне)


@dataclass
class TreeNode:
    seed: Seed
    level: int
    parent: Optional[int] = None
    direction: Optional[int] = None
    children: List[int] = field(default_factory=list)


@dataclass
class MutationTree:
    root: Seed
    nodes: List[TreeNode]
    depth: int

    def level(self, m: int) -> List[int]:
        return [index for index, node in enumerate(self.nodes) if node.level == m]


def build_mutation_tree(
    s: Seed,
    depth: int,
    budget: Optional[int] = None,
    threads: int = 1,
) -> MutationTree:
    """Полное n-арное дерево сидов; дети упорядочены по направлению k"""
    if depth < 0:
        raise InvalidParameters(f"Глубина должна быть неотрицательной: {depth}")
    budget = budget or settings.node_budget
    total = sum(s.n ** level for level in range(depth + 1))
    if total > budget:
        raise BudgetExceeded(f"Дерево глубины {depth} содержит {total} узлов, лимит {budget}")

    nodes = [TreeNode(s, 0)]
    frontier = [0]
    for level in range(1, depth + 1):
        next_frontier = []
        expanded = expand_seeds([nodes[i].seed for i in frontier], threads)
        for parent, children in zip(frontier, expanded):
            for direction, child in enumerate(children, start=1):
                nodes.append(TreeNode(child, level, parent, direction))
                nodes[parent].children.append(len(nodes) - 1)
                next_frontier.append(len(nodes) - 1)
        frontier = next_frontier
    logger.info(f"Дерево мутаций: глубина {depth}, узлов {len(nodes)}")
    return MutationTree(s, nodes, depth)


def _rotate(values: Sequence, shift: int) -> tuple:
    return tuple(values[(i + shift) % len(values)] for i in range(len(values)))


def _rotate_matrix(entries, shift: int) -> tuple:
    n = len(entries)
    return tuple(
        tuple(entries[(i + shift) % n][(j + shift) % n] for j in range(n))
        for i in range(n)
    )


def _mode(mode) -> EquivalenceMode:
    return EquivalenceMode(mode or settings.equivalence_mode)


def seeds_l_equivalent(a: Seed, b: Seed, mode: Union[EquivalenceMode, str, None] = None) -> bool:
    """Условия (ii) и (iii): совпадение кластеров с точностью до циклического сдвига и B"""
    if a.n != b.n:
        raise RankMismatch(f"Ранги сидов различны: {a.n} и {b.n}")
    mode = _mode(mode)
    for shift in range(a.n):
        if _rotate(a.cluster, shift) != b.cluster:
            continue
        if mode == EquivalenceMode.LITERAL:
            if a.matrix == b.matrix:
                return True
        elif _rotate_matrix(a.matrix.entries, shift) == b.matrix.entries:
            return True
    return False


def class_key(seed: Seed, mode: Union[EquivalenceMode, str, None] = None) -> tuple:
    """Канонический ключ класса: наименьший циклический сдвиг записанного кластера"""
    entries = tuple(render(x) for x in seed.cluster)
    if _mode(mode) == EquivalenceMode.LITERAL:
        return (min(_rotate(entries, r) for r in range(seed.n)), seed.matrix.entries)
    return min(
        (_rotate(entries, r), _rotate_matrix(seed.matrix.entries, r))
        for r in range(seed.n)
    )


@dataclass
class BratteliDiagram:
    levels: List[List[str]]
    edges: List[Dict[Tuple[int, int], int]]
    class_sizes: List[List[int]] = field(default_factory=list)
    mode: Optional[str] = None

    @property
    def level_sizes(self) -> List[int]:
        return [len(level) for level in self.levels]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


def quotient_to_bratteli(
    t: MutationTree,
    mode: Union[EquivalenceMode, str, None] = None,
) -> BratteliDiagram:
    mode = _mode(mode)
    node_class: Dict[int, int] = {}
    levels: List[List[str]] = []
    class_sizes: List[List[int]] = []
    edges: List[Dict[Tuple[int, int], int]] = []
    members_by_level: List[List[List[int]]] = []

    for m in range(t.depth + 1):
        members: Dict[tuple, List[int]] = {}
        for index in t.level(m):
            members.setdefault(class_key(t.nodes[index].seed, mode), []).append(index)
        groups = list(members.values())
        for group in groups:
            for index in group[1:]:
                if not seeds_l_equivalent(t.nodes[group[0]].seed, t.nodes[index].seed, mode):
                    raise InconsistentQuotient(
                        f"Сиды одного класса на уровне {m} не ℓ-эквивалентны",
                        witness=(t.nodes[group[0]].seed.describe(), t.nodes[index].seed.describe()),
                    )

        if m > 0:
            previous = members_by_level[-1]
            incoming: List[Counter] = [Counter() for _ in groups]
            position = {}
            for number, group in enumerate(groups):
                for index in group:
                    position[index] = number
            for parent_number, group in enumerate(previous):
                for child in t.nodes[group[0]].children:
                    incoming[position[child]][parent_number] += 1
            order = sorted(
                range(len(groups)),
                key=lambda g: (
                    Fraction(sum(p * c for p, c in incoming[g].items()), sum(incoming[g].values()))
                    if incoming[g] else Fraction(len(previous)),
                    g,
                ),
            )
            groups = [groups[g] for g in order]

        for number, group in enumerate(groups):
            for index in group:
                node_class[index] = number
        members_by_level.append(groups)
        levels.append(["(" + ", ".join(t.nodes[g[0]].seed.describe()) + ")" for g in groups])
        class_sizes.append([len(g) for g in groups])

        if m > 0:
            edges.append(_audited_edges(t, members_by_level[-2], node_class, m - 1))

    diagram = BratteliDiagram(levels, edges, class_sizes, mode.value)
    logger.info(f"Фактор T_n mod ℓ ({mode.value}): уровни {diagram.level_sizes}")
    return diagram


def _audited_edges(t: MutationTree, groups, node_class, level: int) -> Dict[Tuple[int, int], int]:
    """Кратности рёбер от канонического представителя с проверкой независимости"""
    result: Dict[Tuple[int, int], int] = {}
    for number, group in enumerate(groups):
        reference = Counter(node_class[c] for c in t.nodes[group[0]].children)
        for other in group[1:]:
            counts = Counter(node_class[c] for c in t.nodes[other].children)
            if counts != reference:
                raise InconsistentQuotient(
                    f"Кратности рёбер на уровне {level} зависят от представителя класса {number}",
                    witness=(t.nodes[group[0]].seed.describe(), t.nodes[other].seed.describe()),
                )
        for target, multiplicity in sorted(reference.items()):
            result[(number, target)] = multiplicity
    return result


def incidence_matrices(d: BratteliDiagram) -> List[List[List[int]]]:
    """Матрица m→m+1: элемент (r, s) равен кратности ребра s → r"""
    matrices = []
    for m, level_edges in enumerate(d.edges):
        rows = [[0] * len(d.levels[m]) for _ in d.levels[m + 1]]
        for (source, target), multiplicity in level_edges.items():
            rows[target][source] = multiplicity
        matrices.append(rows)
    return matrices


def diagram_from_matrices(matrices: Sequence[Sequence[Sequence[int]]]) -> BratteliDiagram:
    if not matrices or any(not matrix or not matrix[0] for matrix in matrices):
        raise InvalidParameters("Нужна хотя бы одна непустая матрица кратностей")
    sizes = [len(matrices[0][0])]
    edges = []
    for m, matrix in enumerate(matrices):
        if any(len(row) != sizes[-1] for row in matrix):
            raise InvalidParameters(f"Матрица {m} не согласована с уровнем {m}: ожидалось {sizes[-1]} столбцов")
        level_edges = {}
        for r, row in enumerate(matrix):
            for s, value in enumerate(row):
                if value < 0:
                    raise InvalidParameters(f"Отрицательная кратность в матрице {m}")
                if value:
                    level_edges[(s, r)] = int(value)
        edges.append(level_edges)
        sizes.append(len(matrix))
    levels = [[f"v{i + 1}" for i in range(size)] for size in sizes]
    return BratteliDiagram(levels, edges)


def stationary_diagram(matrix: Sequence[Sequence[int]], repetitions: int) -> BratteliDiagram:
    if repetitions < 1:
        raise InvalidParameters(f"Число повторений должно быть положительным: {repetitions}")
    return diagram_from_matrices([matrix] * repetitions)


def pascal_diagram(depth: int) -> BratteliDiagram:
    """Диаграмма GICAR: треугольник Паскаля"""
    matrices = []
    for m in range(depth):
        matrices.append([[1 if r in (s, s + 1) else 0 for s in range(m + 1)] for r in range(m + 2)])
    if not matrices:
        return BratteliDiagram([["v1"]], [])
    return diagram_from_matrices(matrices)


def _as_json(d: BratteliDiagram) -> str:
    edges = []
    for m, level_edges in enumerate(d.edges):
        for (source, target), multiplicity in sorted(level_edges.items()):
            edges.append({"from": [m, source], "to": [m + 1, target], "mult": multiplicity})
    return json.dumps({"levels": d.level_sizes, "edges": edges}, separators=(",", ":"))


def _as_dot(d: BratteliDiagram) -> str:
    lines = [
        "digraph bratteli {",
        "  rankdir=TB;",
        '  node [shape=circle, label="", width=0.15];',
    ]
    for m, level in enumerate(d.levels):
        vertices = " ".join(f"L{m}_{i};" for i in range(len(level)))
        lines.append(f"  {{ rank=same; {vertices} }}")
    for m, level_edges in enumerate(d.edges):
        for (source, target), multiplicity in sorted(level_edges.items()):
            label = f' [label="{multiplicity}"]' if multiplicity > 1 else ""
            lines.append(f"  L{m}_{source} -> L{m + 1}_{target}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_diagram(d: BratteliDiagram, format: Union[ExportFormat, str] = ExportFormat.JSON) -> str:
    try:
        fmt = ExportFormat(format)
    except ValueError:
        raise UnknownFormat(f"Неизвестный формат экспорта: {format!r}")
    if fmt == ExportFormat.DOT:
        return _as_dot(d)
    return _as_json(d)
