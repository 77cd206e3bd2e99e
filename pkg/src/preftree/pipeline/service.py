"""Pipeline service - runs the survey-to-preference-model steps in order."""

import math
from typing import Mapping, Optional

from loguru import logger
from pydantic import ValidationError

from src.preftree.config import settings
from src.preftree.core import InputError, SchemaError, pipeline_step
from src.preftree.discriminant.core import ClassificationModel, LabeledMatrix
from src.preftree.discriminant.repository import CoefficientRepository
from src.preftree.discriminant.service import DiscriminantService
from src.preftree.graph.core import Edge, SpanningForest, WeightedGraph
from src.preftree.graph.service import GraphService
from src.preftree.pipeline.core import (
    DiscriminantMode,
    EdgeSelection,
    GroupResult,
    PipelineConfig,
    PreferenceModel,
    RemovedEdge,
)
from src.preftree.stats.core import CorrelationMatrix
from src.preftree.stats.service import StatsService
from src.preftree.survey.core import AttributeSchema, SurveyTable
from src.preftree.survey.repository import SurveyRepository
from src.preftree.survey.service import SurveyService


class PipelineService:
    """Service orchestrating the preference-model pipeline."""

    # ============== Steps f-i ==============

    @staticmethod
    def select_positive_edges(m: CorrelationMatrix) -> EdgeSelection:
        """Keep strictly positive correlations as edges; record the rest as removed."""
        edges: list[Edge] = []
        removed: list[RemovedEdge] = []
        for u, v, r in m.pairs():
            if r is not None and r > 0:
                edges.append(Edge(u=u, v=v, w=r))
                continue
            if r is None:
                logger.warning(f"dropping {u}-{v}: correlation undefined (constant column)")
            removed.append(RemovedEdge(u=u, v=v, r=r))
        return EdgeSelection(graph=WeightedGraph(nodes=list(m.names), edges=edges), removed=removed)

    @staticmethod
    def compute_total_cost(forests: Mapping[str, SpanningForest]) -> float:
        """Sum of every selected edge weight across groups."""
        return math.fsum(e.w for forest in forests.values() for e in forest.edges)

    @staticmethod
    def attribute_order(forest: SpanningForest) -> list[str]:
        """Preference chain read off a forest.

        Root is the node with the largest incident forest weight; the rest follow
        the Kruskal insertion order of the edge that first reaches them. Nodes no
        edge touches come last, in node order.
        """
        incident = {node: 0.0 for node in forest.nodes}
        for e in forest.edges:
            incident[e.u] += e.w
            incident[e.v] += e.w

        def rank(node: str) -> tuple[float, str]:
            return (-incident[node], node)

        order: list[str] = []
        touched = [n for n in forest.nodes if any(n in (e.u, e.v) for e in forest.edges)]
        if touched:
            order.append(min(touched, key=rank))
        for e in forest.edges:
            fresh = sorted((x for x in (e.u, e.v) if x not in order), key=rank)
            order.extend(fresh)
        order.extend(n for n in forest.nodes if n not in order)
        return order

    @staticmethod
    def model_group(table: SurveyTable, composites: list[str]) -> tuple[EdgeSelection, SpanningForest]:
        """Correlate, select and span one group's composites."""
        with pipeline_step("f"):
            matrix = StatsService.correlation_matrix(table, composites)
        with pipeline_step("g"):
            selection = PipelineService.select_positive_edges(matrix)
        with pipeline_step("h"):
            forest = GraphService.kruskal_max_forest(selection.graph)
            if not forest.is_connected:
                logger.warning(
                    f"forest over {', '.join(composites)} is disconnected: "
                    f"{forest.component_count} components"
                )
        return selection, forest

    @staticmethod
    def build_model(
        composites: SurveyTable,
        schema: AttributeSchema,
        group_coefficients: Mapping[str, float],
    ) -> PreferenceModel:
        """Steps e (ordering) and f-i from aggregated composites and group coefficients."""
        with pipeline_step("e"):
            missing = [g for g in schema.group_names if g not in group_coefficients]
            if missing:
                raise SchemaError(f"no ranking coefficient for group(s): {', '.join(missing)}")
            group_order = DiscriminantService.rank_by_coefficient(
                {g: group_coefficients[g] for g in schema.group_names}
            )
            logger.info(f"group order: {' > '.join(group_order)}")

        results: dict[str, GroupResult] = {}
        for group in group_order:
            selection, forest = PipelineService.model_group(composites, schema.groups[group])
            results[group] = GroupResult(
                coefficient=float(group_coefficients[group]),
                attribute_order=PipelineService.attribute_order(forest),
                edges=forest.edges,
                removed_edges=selection.removed,
                component_count=forest.component_count,
                forest=forest,
            )

        with pipeline_step("i"):
            total = PipelineService.compute_total_cost({g: r.forest for g, r in results.items()})
            return PreferenceModel(
                group_order=group_order,
                groups=results,
                total_cost=total,
                labels=dict(schema.labels),
            )

    # ============== Step e ==============

    @staticmethod
    def select_class(model: ClassificationModel, target: Optional[str]) -> str:
        """Class whose classification function ranks the groups."""
        if target is not None:
            if target not in model.functions:
                raise InputError(f"class '{target}' not in {', '.join(model.class_names)}")
            return target
        if len(model.functions) == 1:
            return model.class_names[0]
        if settings.target_class in model.functions:
            return settings.target_class
        raise InputError(
            f"several classes ({', '.join(model.class_names)}); choose one as the target class"
        )

    @staticmethod
    def group_coefficients(
        model: ClassificationModel, schema: AttributeSchema, target: str
    ) -> dict[str, float]:
        """Target class coefficients keyed by group name (features may use group labels)."""
        resolved: dict[str, float] = {}
        for feature, value in model.coefficients_of(target).items():
            group = schema.resolve(feature)
            if group is None:
                raise SchemaError(f"coefficient feature '{feature}' matches no schema group")
            resolved[group] = value
        return resolved

    @staticmethod
    def fit_model(groups: SurveyTable, priors: Optional[Mapping[str, float]], ridge: bool) -> ClassificationModel:
        try:
            data = LabeledMatrix.from_table(groups)
        except (ValidationError, ValueError) as e:
            raise InputError(f"cannot fit classification functions: {e}") from e
        return DiscriminantService.fit_classification_functions(data, priors=priors, ridge=ridge)

    # ============== Whole Run ==============

    @staticmethod
    def run_pipeline(cfg: PipelineConfig) -> PreferenceModel:
        """Load, impute, aggregate, group, rank, correlate, select, span, assemble."""
        fitting = cfg.mode == DiscriminantMode.FIT

        with pipeline_step("b"):
            table = SurveyRepository.load_csv(
                cfg.data_path,
                expected_range=cfg.bounds,
                label_column=cfg.labels_column if fitting else None,
            )
            completeness = SurveyService.completeness(table)
            if not completeness.is_complete:
                logger.info(
                    f"{completeness.missing_cells} of {completeness.total_cells} cells missing "
                    f"({completeness.fraction:.2%})"
                )
            imputed = SurveyService.impute_mean(table)

        with pipeline_step("c"):
            schema = SurveyRepository.load_schema(cfg.schema_path)
            composites = SurveyService.aggregate_composites(imputed, schema)

        with pipeline_step("d"):
            groups = SurveyService.group_scores(composites, schema)

        with pipeline_step("e"):
            if fitting:
                model = PipelineService.fit_model(groups, cfg.priors, cfg.ridge)
            else:
                model = CoefficientRepository.load(cfg.coefficients_path)
            target = PipelineService.select_class(model, cfg.target_class)
            coefficients = PipelineService.group_coefficients(model, schema, target)

        result = PipelineService.build_model(composites, schema, coefficients)
        return result.model_copy(
            update={
                "target_class": target,
                "completeness": completeness,
                "descriptives": StatsService.describe(composites),
            }
        )
