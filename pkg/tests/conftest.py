from pathlib import Path

import pytest

from src.preftree.graph.core import WeightedGraph
from src.preftree.survey.repository import SurveyRepository
from src.preftree.survey.service import SurveyService

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def survey_path() -> Path:
    return DATA_DIR / "students_survey.csv"


@pytest.fixture
def schema_path() -> Path:
    return DATA_DIR / "students_schema.json"


@pytest.fixture
def coefficients_path() -> Path:
    return DATA_DIR / "students_coefficients.json"


@pytest.fixture
def survey(survey_path):
    return SurveyRepository.load_csv(survey_path)


@pytest.fixture
def schema(schema_path):
    return SurveyRepository.load_schema(schema_path)


@pytest.fixture
def composites(survey, schema):
    return SurveyService.aggregate_composites(SurveyService.impute_mean(survey), schema)


@pytest.fixture
def labelled_survey_path(tmp_path, survey_path) -> Path:
    """Bundled survey with a population column: 24 Students, 16 Faculty."""
    lines = survey_path.read_text(encoding="utf-8").splitlines()
    out = []
    for i, line in enumerate(lines):
        respondent, rest = line.split(",", 1)
        label = "population" if i == 0 else ("Students" if i <= 24 else "Faculty")
        out.append(f"{respondent},{label},{rest}")
    path = tmp_path / "labelled_survey.csv"
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def write_file(tmp_path):
    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def triangle() -> WeightedGraph:
    return WeightedGraph.from_edges([("A", "B", 3.0), ("B", "C", 2.0), ("C", "A", 1.0)])
