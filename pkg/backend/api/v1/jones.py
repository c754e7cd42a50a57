from fastapi import APIRouter

from algebra.jones import BraidWord, bracket_of, jones_from_bracket, mirror, render_jones, verify_tl_relations
from algebra.laurent import render
from schemas import JonesRequest, JonesResponse, RelationsRequest, RelationsResponse

router = APIRouter()


@router.post("/polynomial", response_model=JonesResponse)
def polynomial(request: JonesRequest):
    """Многочлен Джонса замыкания косы"""
    word = BraidWord.parse(request.strands, request.braid)
    bracket = bracket_of(word)
    value = jones_from_bracket(bracket, word.writhe)
    return JonesResponse(
        polynomial=render_jones(value),
        mirror=render_jones(mirror(value)),
        bracket=render(bracket, ("A",)),
        writhe=word.writhe,
    )


@router.post("/relations", response_model=RelationsResponse)
def relations(request: RelationsRequest):
    """Соотношения Темперли–Либа, кос и марковского следа над Q"""
    report = verify_tl_relations(request.n, request.t, request.tau)
    return RelationsResponse(n=report.n, t=str(report.t), tau=str(report.tau), checks=report.checks)
