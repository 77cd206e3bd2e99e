"""Discriminant resource - API routes for group ranking."""

from fastapi import APIRouter
from pydantic import BaseModel

from src.preftree.core import PrefTreeError
from src.preftree.discriminant.service import DiscriminantService
from src.preftree.middleware import http_error

router = APIRouter(prefix="/discriminant", tags=["Discriminant"])


class RankRequest(BaseModel):
    """Coefficients keyed by group."""
    coefficients: dict[str, float]


class RankResponse(BaseModel):
    order: list[str]


@router.post("/rank", response_model=RankResponse)
async def rank_groups(data: RankRequest):
    """Order groups by descending classification coefficient."""
    try:
        order = DiscriminantService.rank_by_coefficient(data.coefficients)
    except PrefTreeError as e:
        raise http_error(e)
    return RankResponse(order=order)
