from fastapi import APIRouter

from algebra.cluster import check_positivity, enumerate_cluster_variables, is_finite_type, mutate_sequence, sort_variables
from algebra.laurent import render
from config import settings
from schemas import (
    FiniteTypeRequest,
    FiniteTypeResponse,
    MutateRequest,
    SeedSchema,
    VariablesRequest,
    VariablesResponse,
)

router = APIRouter()


@router.post("/mutate", response_model=SeedSchema)
def mutate(request: MutateRequest):
    """Последовательность мутаций сида"""
    seed = mutate_sequence(request.seed.to_seed(), request.directions)
    return SeedSchema.from_seed(seed)


@router.post("/variables", response_model=VariablesResponse)
def variables(request: VariablesRequest):
    """Кластерные переменные до заданной глубины и проверка положительности"""
    found = enumerate_cluster_variables(
        request.seed.to_seed(), request.depth, request.budget, threads=settings.threads
    )
    positivity = check_positivity(found)
    return VariablesResponse(
        count=len(found),
        variables=[render(x) for x in sort_variables(found)],
        positive=positivity.positive,
        witness=render(positivity.witness) if positivity.witness is not None else None,
    )


@router.post("/finite-type", response_model=FiniteTypeResponse)
def finite_type(request: FiniteTypeRequest):
    """Проверка конечности типа обходом сидов"""
    return is_finite_type(request.seed.to_seed(), request.budget, request.mode)
