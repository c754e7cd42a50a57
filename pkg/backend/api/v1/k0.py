from fractions import Fraction

from fastapi import APIRouter

from algebra.k0 import (
    GicarElement,
    gicar_is_positive,
    k0_equal,
    k0_is_positive,
    k0_push,
    qn_contains,
    supernatural_of,
    trace_state,
)
from schemas import (
    GicarRequest,
    GicarResponse,
    K0ElementSchema,
    K0EqualRequest,
    K0EqualResponse,
    K0PositiveRequest,
    K0PositiveResponse,
    K0PushRequest,
    SupernaturalRequest,
    SupernaturalResponse,
    TraceRequest,
    TraceResponse,
)

router = APIRouter()


@router.post("/push", response_model=K0ElementSchema)
def push(request: K0PushRequest):
    """Перенос класса на более высокий уровень"""
    result = k0_push(request.element.to_element(), request.diagram.to_diagram(), request.target_level)
    return K0ElementSchema(level=result.level, vector=list(result.vector))


@router.post("/equal", response_model=K0EqualResponse)
def equal(request: K0EqualRequest):
    result = k0_equal(request.a.to_element(), request.b.to_element(), request.diagram.to_diagram(), request.horizon)
    return K0EqualResponse(status=result.status, level=result.level)


@router.post("/positive", response_model=K0PositiveResponse)
def positive(request: K0PositiveRequest):
    result = k0_is_positive(request.element.to_element(), request.diagram.to_diagram(), request.horizon)
    return K0PositiveResponse(
        status=result.status,
        level=result.level,
        vector=list(result.vector) if result.vector is not None else None,
        is_zero=result.is_zero,
        certificate=result.certificate,
    )


@router.post("/trace", response_model=TraceResponse)
def trace(request: TraceRequest):
    """Канонический след стационарной диаграммы"""
    state = trace_state(request.diagram.to_diagram())
    value = state.evaluate(request.element.to_element()) if request.element else None
    return TraceResponse(weights=list(state.weights), eigenvalue=state.eigenvalue, value=value)


@router.post("/supernatural", response_model=SupernaturalResponse)
def supernatural(request: SupernaturalRequest):
    """Сверхнатуральное число периодической последовательности и принадлежность Q(n)"""
    number = supernatural_of(request.block)
    return SupernaturalResponse(
        exponents=number.describe(),
        contains={r: qn_contains(number, Fraction(r)) for r in request.rationals},
    )


@router.post("/gicar", response_model=GicarResponse)
def gicar(request: GicarRequest):
    """Положительность многочлена в K0 алгебры GICAR"""
    element = GicarElement.from_coefficients(request.coefficients)
    result = gicar_is_positive(element, request.max_degree)
    return GicarResponse(
        polynomial=str(element),
        status=result.status,
        degree=result.degree,
        coordinates=[str(c) for c in result.coordinates] if result.coordinates is not None else None,
        point=str(result.point) if result.point is not None else None,
        value=str(result.value) if result.value is not None else None,
    )
