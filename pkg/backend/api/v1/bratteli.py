from fastapi import APIRouter

from algebra.bratteli import build_mutation_tree, export_diagram, incidence_matrices, quotient_to_bratteli
from config import settings
from schemas import DiagramRequest, DiagramResponse

router = APIRouter()


@router.post("/diagram", response_model=DiagramResponse)
def diagram(request: DiagramRequest):
    """Диаграмма Браттели как фактор дерева мутаций по ℓ-эквивалентности"""
    tree = build_mutation_tree(request.seed.to_seed(), request.depth, threads=settings.threads)
    result = quotient_to_bratteli(tree, request.mode)
    return DiagramResponse(
        mode=result.mode,
        levels=result.level_sizes,
        labels=result.levels,
        class_sizes=result.class_sizes,
        matrices=incidence_matrices(result),
        export=export_diagram(result, request.format),
    )
