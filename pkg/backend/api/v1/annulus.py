from typing import Optional

from fastapi import APIRouter, Query

from algebra.annulus import admissible_moduli, canonical_basis_element, casimir as casimir_element, solve_moduli
from algebra.laurent import render
from models import BasisFamily
from schemas import AdmissibleResponse, CasimirResponse, DiscreteModulusSchema, ModulusRow

router = APIRouter()


@router.get("/moduli", response_model=ModulusRow)
def moduli(t: float = Query(..., description="Модуль кольца, t ≥ 4")):
    """Решение системы x1·x2 = 2t, x1² + x2² = t²"""
    return solve_moduli(t)


@router.get("/admissible", response_model=AdmissibleResponse)
def admissible(n_max: int = Query(12, ge=3)):
    """Допустимые модули: непрерывная часть и дискретная серия 4cos²(π/n)"""
    result = admissible_moduli(n_max)
    return AdmissibleResponse(
        continuous_from=result.continuous[0],
        hecke_from=result.hecke_continuous[0],
        discrete=[DiscreteModulusSchema.model_validate(item) for item in result.discrete],
    )


@router.get("/casimir", response_model=CasimirResponse)
def casimir(
    family: BasisFamily = BasisFamily.MONOMIAL,
    p: int = 0,
    q: int = 0,
    n: Optional[int] = None,
    i: int = 1,
):
    """Казимир x1x4 - x2x3 и элемент канонического базиса"""
    element = canonical_basis_element(p, q, n, i, family)
    return CasimirResponse(casimir=render(casimir_element()), element=render(element), family=family)
