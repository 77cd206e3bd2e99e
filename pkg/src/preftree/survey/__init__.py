"""Survey domain module."""

from src.preftree.survey.core import AttributeSchema, CompletenessReport, SurveyTable
from src.preftree.survey.repository import SurveyRepository
from src.preftree.survey.service import SurveyService

__all__ = [
    "AttributeSchema",
    "CompletenessReport",
    "SurveyTable",
    "SurveyRepository",
    "SurveyService",
]
