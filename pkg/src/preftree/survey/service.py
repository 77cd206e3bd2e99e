"""Survey service - imputation and attribute aggregation."""

import pandas as pd
from loguru import logger

from src.preftree.core import ImputationError, SchemaError
from src.preftree.survey.core import AttributeSchema, CompletenessReport, SurveyTable


class SurveyService:
    """Service for survey preprocessing."""

    @staticmethod
    def completeness(table: SurveyTable) -> CompletenessReport:
        """Count missing cells per column."""
        missing = table.missing_mask.sum(axis=0)
        return CompletenessReport(
            missing_by_column={name: int(missing[name]) for name in table.attribute_names},
            missing_cells=int(missing.sum()),
            total_cells=table.n * len(table.attribute_names),
        )

    @staticmethod
    def impute_mean(table: SurveyTable) -> SurveyTable:
        """Replace each missing cell with its column's observed mean (not rounded)."""
        frame = table.frame
        means = frame.mean(axis=0, skipna=True)
        empty = [name for name in table.attribute_names if frame[name].isna().all()]
        if empty:
            raise ImputationError(
                f"cannot impute column '{empty[0]}': no observed values"
                + (f" (also: {', '.join(empty[1:])})" if len(empty) > 1 else "")
            )
        if not table.has_missing:
            return table

        filled = frame.fillna(means)
        logger.info(f"imputed {int(frame.isna().to_numpy().sum())} missing cells with column means")
        return table.with_frame(filled)

    @staticmethod
    def aggregate_composites(table: SurveyTable, schema: AttributeSchema) -> SurveyTable:
        """Average simple attributes into composites.

        Columns follow the schema's composite order; simple attributes the schema
        never mentions pass through unchanged after them.
        """
        if table.has_missing:
            raise SchemaError("aggregation needs a complete table; impute missing values first")
        present = set(table.attribute_names)
        absent = [s for s in schema.simple_names if s not in present]
        if absent:
            raise SchemaError(f"schema references columns absent from the table: {', '.join(absent)}")

        columns: dict[str, pd.Series] = {}
        for composite in schema.composite_names:
            members = schema.members(composite)
            columns[composite] = table.frame[members].mean(axis=1)

        referenced = set(schema.simple_names)
        passthrough = [
            name for name in table.attribute_names
            if name not in referenced and name not in columns
        ]
        for name in passthrough:
            columns[name] = table.frame[name]
        if passthrough:
            logger.warning(f"attributes outside every group pass through: {', '.join(passthrough)}")

        frame = pd.DataFrame(columns, index=table.frame.index)
        return table.with_frame(frame)

    @staticmethod
    def group_scores(table: SurveyTable, schema: AttributeSchema) -> SurveyTable:
        """One column per group: the mean of its composite values."""
        present = set(table.attribute_names)
        missing = [c for c in schema.composite_names if c not in present]
        if missing:
            raise SchemaError(f"table lacks composite columns: {', '.join(missing)}")

        columns = {
            group: table.frame[members].mean(axis=1)
            for group, members in schema.groups.items()
        }
        return table.with_frame(pd.DataFrame(columns, index=table.frame.index))
