"""Discriminant domain module."""

from src.preftree.discriminant.core import ClassFunction, ClassificationModel, LabeledMatrix
from src.preftree.discriminant.repository import CoefficientRepository
from src.preftree.discriminant.service import DiscriminantService

__all__ = [
    "ClassFunction",
    "ClassificationModel",
    "LabeledMatrix",
    "CoefficientRepository",
    "DiscriminantService",
]
