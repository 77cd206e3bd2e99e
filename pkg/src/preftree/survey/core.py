"""Survey domain models and schemas."""

from typing import Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator


RESPONDENT_ID = "respondent_id"


# ============== Survey Table ==============

class SurveyTable(BaseModel):
    """Respondents x attributes matrix of Likert values; NaN marks a missing cell."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    frame: pd.DataFrame
    labels: Optional[pd.Series] = None
    label_column: Optional[str] = None

    @model_validator(mode="after")
    def _check_frame(self) -> "SurveyTable":
        ids = list(self.frame.index)
        if any(not isinstance(i, str) or not i for i in ids):
            raise ValueError("respondent ids must be non-empty strings")
        if len(set(ids)) != len(ids):
            raise ValueError("respondent ids must be unique")
        names = list(self.frame.columns)
        if len(set(names)) != len(names):
            raise ValueError("attribute names must be unique")
        if self.labels is not None and list(self.labels.index) != ids:
            raise ValueError("labels must be indexed by the respondent ids")
        return self

    @classmethod
    def from_rows(
        cls,
        respondent_ids: Sequence[str],
        attribute_names: Sequence[str],
        rows: Sequence[Sequence[Optional[float]]],
        labels: Optional[Sequence[str]] = None,
        label_column: Optional[str] = None,
    ) -> "SurveyTable":
        """Build a table from plain rows; None marks a missing cell."""
        values = np.array(
            [[np.nan if v is None else float(v) for v in row] for row in rows],
            dtype=float,
        ).reshape(len(respondent_ids), len(attribute_names))
        frame = pd.DataFrame(values, index=list(respondent_ids), columns=list(attribute_names))
        frame.index.name = RESPONDENT_ID
        series = None
        if labels is not None:
            series = pd.Series(list(labels), index=frame.index, name=label_column or "label")
        return cls(frame=frame, labels=series, label_column=label_column)

    def with_frame(self, frame: pd.DataFrame) -> "SurveyTable":
        """New table over the same respondents and labels."""
        frame.index.name = RESPONDENT_ID
        return SurveyTable(frame=frame, labels=self.labels, label_column=self.label_column)

    @property
    def respondent_ids(self) -> list[str]:
        return list(self.frame.index)

    @property
    def attribute_names(self) -> list[str]:
        return list(self.frame.columns)

    @property
    def n(self) -> int:
        """Respondent count."""
        return len(self.frame.index)

    @property
    def missing_mask(self) -> pd.DataFrame:
        return self.frame.isna()

    @property
    def has_missing(self) -> bool:
        return bool(self.frame.isna().to_numpy().any())

    def column(self, name: str) -> np.ndarray:
        """Values of one attribute as a float array."""
        return self.frame[name].to_numpy(dtype=float)

    def permuted(self, order: Sequence[int]) -> "SurveyTable":
        """Same table with respondent rows reordered."""
        frame = self.frame.iloc[list(order)].copy()
        labels = self.labels.iloc[list(order)].copy() if self.labels is not None else None
        return SurveyTable(frame=frame, labels=labels, label_column=self.label_column)


class CompletenessReport(BaseModel):
    """Missing-value summary taken before imputation."""

    missing_by_column: dict[str, int]
    missing_cells: int
    total_cells: int

    @property
    def fraction(self) -> float:
        if self.total_cells == 0:
            return 0.0
        return self.missing_cells / self.total_cells

    @property
    def is_complete(self) -> bool:
        return self.missing_cells == 0


# ============== Attribute Schema ==============

class AttributeSchema(BaseModel):
    """Simple -> composite -> group mapping.

    Group members that are not declared under ``composites`` are single-member
    composites over the simple attribute of the same name.
    """

    model_config = ConfigDict(frozen=True)

    composites: dict[str, list[str]] = Field(default_factory=dict)
    groups: dict[str, list[str]]
    labels: dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_mapping(self) -> "AttributeSchema":
        if not self.groups:
            raise ValueError("schema declares no groups")

        owner: dict[str, str] = {}
        for composite, members in self.composites.items():
            if not members:
                raise ValueError(f"composite '{composite}' is empty")
            for simple in members:
                if simple in owner:
                    raise ValueError(
                        f"simple attribute '{simple}' appears in composites "
                        f"'{owner[simple]}' and '{composite}'"
                    )
                owner[simple] = composite

        grouped: dict[str, str] = {}
        for group, members in self.groups.items():
            if not members:
                raise ValueError(f"group '{group}' is empty")
            for composite in members:
                if composite in grouped:
                    raise ValueError(
                        f"composite '{composite}' appears in groups "
                        f"'{grouped[composite]}' and '{group}'"
                    )
                grouped[composite] = group

        ungrouped = [c for c in self.composites if c not in grouped]
        if ungrouped:
            raise ValueError(f"composites not assigned to any group: {', '.join(ungrouped)}")

        # implicit single-member composites must not reuse a simple attribute
        for composite in grouped:
            if composite not in self.composites and composite in owner:
                raise ValueError(
                    f"'{composite}' is grouped as its own composite but is also a member "
                    f"of composite '{owner[composite]}'"
                )
        return self

    @property
    def group_names(self) -> list[str]:
        return list(self.groups)

    @property
    def composite_names(self) -> list[str]:
        """Declared composites in order, then implicit ones in group order."""
        names = list(self.composites)
        for members in self.groups.values():
            names.extend(c for c in members if c not in self.composites)
        return names

    @property
    def simple_names(self) -> list[str]:
        """Every simple attribute the schema references."""
        return [s for c in self.composite_names for s in self.members(c)]

    def members(self, composite: str) -> list[str]:
        """Simple attributes that make up a composite."""
        return list(self.composites.get(composite, [composite]))

    def label(self, name: str) -> str:
        """Display label for a group or composite, falling back to its name."""
        return self.labels.get(name, name)

    def resolve(self, key: str) -> Optional[str]:
        """Group name for a key given as a group name or a group label."""
        if key in self.groups:
            return key
        for group in self.groups:
            if self.labels.get(group) == key:
                return group
        return None

    def without_group(self, group: str) -> "AttributeSchema":
        """Schema with one group and its composites removed."""
        dropped = set(self.groups.get(group, []))
        return AttributeSchema(
            composites={c: m for c, m in self.composites.items() if c not in dropped},
            groups={g: m for g, m in self.groups.items() if g != group},
            labels=self.labels,
        )
