"""Survey repository - CSV and schema file operations."""

import json
import math
import re
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError

from src.preftree.config import settings
from src.preftree.core import DataFileError, InputError, SchemaError
from src.preftree.survey.core import RESPONDENT_ID, AttributeSchema, SurveyTable


_INTEGER = re.compile(r"[+-]?\d+")
_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


def format_cell(value: float) -> str:
    """Shortest text that reads back to the same float; integers stay integers."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    value = float(value)
    if value.is_integer():
        return str(int(value))
    return repr(value)


class SurveyRepository:
    """Repository for survey table and schema files."""

    @staticmethod
    def load_csv(
        path: str | Path,
        expected_range: Optional[tuple[float, float]] = None,
        label_column: Optional[str] = None,
        integer_only: bool = True,
    ) -> SurveyTable:
        """Load a survey CSV: ``respondent_id`` first, then one column per attribute.

        Empty cells are missing. With ``integer_only`` off, real-valued cells
        (e.g. an already imputed or aggregated table) are accepted.
        """
        lo, hi = expected_range or (settings.value_min, settings.value_max)
        path = Path(path)
        try:
            raw = pd.read_csv(
                path,
                header=None,
                dtype=str,
                keep_default_na=False,
                encoding="utf-8",
                skipinitialspace=True,
            )
        except FileNotFoundError as e:
            raise DataFileError(f"survey file not found: {path}") from e
        except pd.errors.EmptyDataError as e:
            raise InputError(f"survey file is empty: {path}") from e
        except pd.errors.ParserError as e:
            raise InputError(f"malformed survey file {path}: {e}") from e
        except UnicodeDecodeError as e:
            raise InputError(f"survey file is not valid UTF-8: {path}: {e}") from e
        except OSError as e:
            raise DataFileError(f"cannot read survey file {path}: {e}") from e

        # short rows come back padded with NaN; empty cells are ""
        widths = raw.notna().sum(axis=1).to_numpy()
        raw = raw.fillna("")
        header = [str(h).strip() for h in raw.iloc[0]]
        if not header or header[0] != RESPONDENT_ID:
            raise InputError(f"first header cell must be '{RESPONDENT_ID}' in {path}")
        seen: set[str] = set()
        for name in header[1:]:
            if not name:
                raise InputError(f"empty column name in header of {path}")
            if name == RESPONDENT_ID:
                raise InputError(f"duplicate '{RESPONDENT_ID}' column in {path}")
            if name in seen:
                raise InputError(f"duplicate attribute name '{name}' in {path}")
            seen.add(name)
        if label_column is not None and label_column not in seen:
            raise InputError(f"label column '{label_column}' not found in {path}")

        body = raw.iloc[1:]
        if body.empty:
            raise InputError(f"survey file has no data rows: {path}")
        for r, n in enumerate(widths[1:]):
            if n != len(header):
                raise InputError(f"row {r + 2}: expected {len(header)} fields, got {n}")

        attributes = [h for h in header[1:] if h != label_column]
        ids: list[str] = []
        labels: list[str] = []
        values = np.full((len(body), len(attributes)), np.nan)
        for r, (_, row) in enumerate(body.iterrows()):
            cells = dict(zip(header, (str(c).strip() for c in row)))
            respondent = cells[RESPONDENT_ID]
            line = r + 2
            if not respondent:
                raise InputError(f"row {line}: empty respondent id")
            if respondent in ids:
                raise InputError(f"row {line}: duplicate respondent id '{respondent}'")
            ids.append(respondent)
            if label_column is not None:
                if not cells[label_column]:
                    raise InputError(f"row {line} ({respondent}): empty label in '{label_column}'")
                labels.append(cells[label_column])
            for c, name in enumerate(attributes):
                text = cells[name]
                if text == "":
                    continue
                values[r, c] = SurveyRepository._parse_cell(
                    text, respondent, name, lo, hi, integer_only
                )

        frame = pd.DataFrame(values, index=pd.Index(ids, name=RESPONDENT_ID), columns=attributes)
        series = pd.Series(labels, index=frame.index, name=label_column) if label_column else None
        table = SurveyTable(frame=frame, labels=series, label_column=label_column)
        logger.info(
            f"loaded {path.name}: {table.n} respondents x {len(attributes)} attributes, "
            f"{int(table.missing_mask.to_numpy().sum())} missing"
        )
        return table

    @staticmethod
    def _parse_cell(
        text: str, respondent: str, column: str, lo: float, hi: float, integer_only: bool
    ) -> float:
        where = f"respondent '{respondent}', column '{column}'"
        pattern, kind = (_INTEGER, "integer") if integer_only else (_DECIMAL, "number")
        if pattern.fullmatch(text) is None:
            raise InputError(f"non-{kind} cell '{text}' at {where}")
        value = float(text)
        if not math.isfinite(value):
            raise InputError(f"non-finite cell '{text}' at {where}")
        if value < lo or value > hi:
            raise InputError(f"value {text} outside [{lo:g}, {hi:g}] at {where}")
        return value

    @staticmethod
    def write_csv(table: SurveyTable, path: str | Path) -> None:
        """Write a table in the format ``load_csv`` reads, at full precision."""
        path = Path(path)
        try:
            path.write_text(SurveyRepository.to_csv_text(table), encoding="utf-8")
        except OSError as e:
            raise DataFileError(f"cannot write {path}: {e}") from e

    @staticmethod
    def to_csv_text(table: SurveyTable) -> str:
        header = [RESPONDENT_ID]
        if table.labels is not None:
            header.append(table.label_column or str(table.labels.name))
        header.extend(table.attribute_names)
        lines = [",".join(_quote(h) for h in header)]
        for respondent, row in table.frame.iterrows():
            cells = [_quote(str(respondent))]
            if table.labels is not None:
                cells.append(_quote(str(table.labels[respondent])))
            cells.extend(format_cell(v) for v in row.to_numpy(dtype=float))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    @staticmethod
    def load_schema(path: str | Path) -> AttributeSchema:
        """Load the JSON attribute schema (``composites``, ``groups``, optional ``labels``)."""
        path = Path(path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise DataFileError(f"schema file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise SchemaError(f"schema file {path} is not valid JSON: {e}") from e
        except OSError as e:
            raise DataFileError(f"cannot read schema file {path}: {e}") from e
        try:
            return AttributeSchema.model_validate(document)
        except ValidationError as e:
            reasons = "; ".join(err["msg"] for err in e.errors())
            raise SchemaError(f"invalid schema {path}: {reasons}") from e


def _quote(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text
