from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from algebra.bratteli import BratteliDiagram, diagram_from_matrices, pascal_diagram, stationary_diagram
from algebra.cluster import ExchangeMatrix, Seed
from algebra.k0 import K0Element
from algebra.laurent import parse
from models import (
    BasisFamily,
    EqualityStatus,
    EquivalenceMode,
    ExportFormat,
    FiniteTypeStatus,
    PositivityStatus,
)
from exceptions import InvalidParameters, InvalidSeed


# Seed schemas
class SeedSchema(BaseModel):
    n: Optional[int] = None
    B: List[List[int]]
    cluster: Optional[List[str]] = None

    @field_validator("B")
    @classmethod
    def check_square(cls, value):
        if not value:
            raise ValueError("Матрица B не может быть пустой")
        if any(len(row) != len(value) for row in value):
            raise ValueError("Матрица B должна быть квадратной")
        return value

    def to_seed(self) -> Seed:
        matrix = ExchangeMatrix.from_rows(self.B)
        if self.n is not None and self.n != matrix.n:
            raise InvalidSeed(f"n = {self.n}, а матрица B имеет размер {matrix.n}")
        if self.cluster is None:
            return Seed.initial(matrix)
        return Seed(tuple(parse(x, nvars=matrix.n) for x in self.cluster), matrix)

    @classmethod
    def from_seed(cls, seed: Seed) -> "SeedSchema":
        return cls(n=seed.n, B=seed.matrix.to_rows(), cluster=seed.describe())


class MutateRequest(BaseModel):
    seed: SeedSchema
    directions: List[int] = Field(min_length=1)


class VariablesRequest(BaseModel):
    seed: SeedSchema
    depth: int = Field(ge=0)
    budget: Optional[int] = Field(default=None, ge=1)


class VariablesResponse(BaseModel):
    count: int
    variables: List[str]
    positive: bool
    witness: Optional[str] = None


class FiniteTypeRequest(BaseModel):
    seed: SeedSchema
    budget: Optional[int] = Field(default=None, ge=1)
    mode: EquivalenceMode = EquivalenceMode.PERMUTED


class FiniteTypeResponse(BaseModel):
    status: FiniteTypeStatus
    count: Optional[int] = None
    seeds_visited: int

    class Config:
        from_attributes = True


# Bratteli diagram schemas
class DiagramRequest(BaseModel):
    seed: SeedSchema
    depth: int = Field(ge=0)
    mode: Optional[EquivalenceMode] = None
    format: ExportFormat = ExportFormat.JSON


class DiagramResponse(BaseModel):
    mode: str
    levels: List[int]
    labels: List[List[str]]
    class_sizes: List[List[int]]
    matrices: List[List[List[int]]]
    export: str


class EdgeSchema(BaseModel):
    source: List[int] = Field(alias="from", min_length=2, max_length=2)
    target: List[int] = Field(alias="to", min_length=2, max_length=2)
    mult: int = Field(ge=1)

    class Config:
        populate_by_name = True


class DiagramSchema(BaseModel):
    """Диаграмма: уровни и рёбра, стационарная матрица или треугольник Паскаля"""
    levels: Optional[List[int]] = None
    edges: Optional[List[EdgeSchema]] = None
    matrix: Optional[List[List[int]]] = None
    repetitions: Optional[int] = Field(default=None, ge=1)
    pascal_depth: Optional[int] = Field(default=None, ge=0)

    @field_validator("levels")
    @classmethod
    def check_levels(cls, value):
        if value is not None and (not value or min(value) < 1):
            raise ValueError("Каждый уровень должен содержать хотя бы одну вершину")
        return value

    def to_diagram(self) -> BratteliDiagram:
        if self.matrix is not None:
            return stationary_diagram(self.matrix, self.repetitions or 1)
        if self.pascal_depth is not None:
            return pascal_diagram(self.pascal_depth)
        if self.levels is None:
            raise InvalidParameters("Нужно задать levels/edges, matrix или pascal_depth")
        matrices = [
            [[0] * self.levels[m] for _ in range(self.levels[m + 1])]
            for m in range(len(self.levels) - 1)
        ]
        for edge in self.edges or []:
            (m, source), (m_next, target) = edge.source, edge.target
            if m_next != m + 1 or not 0 <= m < len(matrices):
                raise InvalidParameters(f"Ребро {edge.source} → {edge.target} соединяет несоседние уровни")
            if not (0 <= source < self.levels[m] and 0 <= target < self.levels[m_next]):
                raise InvalidParameters(f"Ребро {edge.source} → {edge.target} ведёт в несуществующую вершину")
            matrices[m][target][source] += edge.mult
        if not matrices:
            return BratteliDiagram([[f"v{i + 1}" for i in range(self.levels[0])]], [])
        return diagram_from_matrices(matrices)


# K0 schemas
class K0ElementSchema(BaseModel):
    level: int = Field(ge=0)
    vector: List[int]

    def to_element(self) -> K0Element:
        return K0Element.of(self.level, self.vector)


class K0PushRequest(BaseModel):
    diagram: DiagramSchema
    element: K0ElementSchema
    target_level: int


class K0EqualRequest(BaseModel):
    diagram: DiagramSchema
    a: K0ElementSchema
    b: K0ElementSchema
    horizon: Optional[int] = Field(default=None, ge=0)


class K0EqualResponse(BaseModel):
    status: EqualityStatus
    level: Optional[int] = None


class K0PositiveRequest(BaseModel):
    diagram: DiagramSchema
    element: K0ElementSchema
    horizon: Optional[int] = Field(default=None, ge=0)


class K0PositiveResponse(BaseModel):
    status: PositivityStatus
    level: Optional[int] = None
    vector: Optional[List[int]] = None
    is_zero: bool = False
    certificate: Optional[float] = None


class TraceRequest(BaseModel):
    diagram: DiagramSchema
    element: Optional[K0ElementSchema] = None


class TraceResponse(BaseModel):
    weights: List[float]
    eigenvalue: float
    value: Optional[float] = None


class SupernaturalRequest(BaseModel):
    block: List[int] = Field(min_length=1)
    rationals: List[str] = []

    @field_validator("rationals")
    @classmethod
    def check_rationals(cls, value):
        for item in value:
            try:
                Fraction(item)
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"Некорректное рациональное число: {item!r}")
        return value


class SupernaturalResponse(BaseModel):
    exponents: Dict[int, str]
    contains: Dict[str, bool]


class GicarRequest(BaseModel):
    coefficients: List[int] = Field(min_length=1, description="Коэффициенты по возрастанию степеней")
    max_degree: Optional[int] = Field(default=None, ge=0)


class GicarResponse(BaseModel):
    polynomial: str
    status: PositivityStatus
    degree: Optional[int] = None
    coordinates: Optional[List[str]] = None
    point: Optional[str] = None
    value: Optional[str] = None


# Annulus schemas
class ModulusRow(BaseModel):
    t: float
    x1: float
    x2: float
    residual1: float
    residual2: float
    casimir: float

    class Config:
        from_attributes = True


class DiscreteModulusSchema(BaseModel):
    n: int
    t: float
    lam: float

    class Config:
        from_attributes = True


class AdmissibleResponse(BaseModel):
    continuous_from: float
    hecke_from: float
    discrete: List[DiscreteModulusSchema]


class CasimirResponse(BaseModel):
    casimir: str
    element: Optional[str] = None
    family: BasisFamily


# Jones schemas
class JonesRequest(BaseModel):
    strands: int = Field(ge=1)
    braid: str = ""


class JonesResponse(BaseModel):
    polynomial: str
    mirror: str
    bracket: str
    writhe: int


class RelationsRequest(BaseModel):
    n: int = Field(ge=2, le=6)
    t: str
    tau: Optional[str] = None

    @field_validator("t", "tau")
    @classmethod
    def check_fraction(cls, value):
        if value is not None:
            try:
                if Fraction(value) <= 0:
                    raise ValueError(f"Ожидалось положительное число: {value!r}")
            except ZeroDivisionError:
                raise ValueError(f"Некорректное рациональное число: {value!r}")
        return value


class RelationsResponse(BaseModel):
    n: int
    t: str
    tau: str
    checks: Dict[str, int]
