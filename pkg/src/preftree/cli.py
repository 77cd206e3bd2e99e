"""Command-line surface: the whole pipeline (``run``) and one subcommand per stage."""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from src.preftree import __version__
from src.preftree.config import settings
from src.preftree.core import (
    EXIT_INPUT,
    EXIT_IO,
    EXIT_OK,
    DataFileError,
    InputError,
    PrefTreeError,
    configure_logging,
    fixed,
)
from src.preftree.discriminant.repository import CoefficientRepository
from src.preftree.discriminant.service import DiscriminantService
from src.preftree.graph.repository import GraphRepository
from src.preftree.graph.service import GraphService
from src.preftree.pipeline.core import DiscriminantMode, PipelineConfig
from src.preftree.pipeline.repository import ModelRepository
from src.preftree.pipeline.service import PipelineService
from src.preftree.stats.core import CorrelationMatrix
from src.preftree.stats.service import StatsService
from src.preftree.survey.core import SurveyTable
from src.preftree.survey.repository import SurveyRepository
from src.preftree.survey.service import SurveyService


# ============== Argument Types ==============

def _bounds(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi but got '{text}'") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"lower bound must be below upper bound: '{text}'")
    return lo, hi


def _priors(text: str) -> dict[str, float]:
    priors: dict[str, float] = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise argparse.ArgumentTypeError(f"expected name=value pairs but got '{item}'")
        try:
            priors[name.strip()] = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"prior for '{name}' is not a number: '{value}'") from None
    return priors


def _names(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _emit(text: str, out: Optional[Path]) -> None:
    """Write to a file when given, else to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as e:
        raise DataFileError(f"cannot write {out}: {e}") from e


# ============== Commands ==============

def cmd_run(args: argparse.Namespace) -> int:
    """Whole pipeline: survey CSV + schema -> preference model files."""
    try:
        cfg = PipelineConfig(
            data_path=args.data,
            schema_path=args.schema,
            mode=DiscriminantMode.COEFFICIENTS if args.coefficients else DiscriminantMode.FIT,
            coefficients_path=args.coefficients,
            labels_column=args.labels_column,
            target_class=args.target_class,
            priors=args.priors,
            ridge=args.ridge,
            out_path=args.out,
            dot_path=args.dot,
            report_path=args.report,
            **({"bounds": args.bounds} if args.bounds else {}),
        )
    except ValidationError as e:
        raise InputError("; ".join(err["msg"] for err in e.errors())) from e

    model = PipelineService.run_pipeline(cfg)
    ModelRepository.save(model, cfg.out_path, cfg.dot_path, cfg.report_path)
    print(model.summary(settings.decimals))
    return EXIT_OK


def cmd_impute(args: argparse.Namespace) -> int:
    table = SurveyRepository.load_csv(args.data, args.bounds, label_column=args.labels_column)
    report = SurveyService.completeness(table)
    for name, count in report.missing_by_column.items():
        if count:
            logger.info(f"{name}: {count} missing")
    imputed = SurveyService.impute_mean(table)
    _write_table(imputed, args.out)
    return EXIT_OK


def cmd_aggregate(args: argparse.Namespace) -> int:
    table = SurveyRepository.load_csv(
        args.data, args.bounds, label_column=args.labels_column, integer_only=False
    )
    schema = SurveyRepository.load_schema(args.schema)
    _write_table(SurveyService.aggregate_composites(table, schema), args.out)
    return EXIT_OK


def cmd_group(args: argparse.Namespace) -> int:
    table = SurveyRepository.load_csv(
        args.data, args.bounds, label_column=args.labels_column, integer_only=False
    )
    schema = SurveyRepository.load_schema(args.schema)
    _write_table(SurveyService.group_scores(table, schema), args.out)
    return EXIT_OK


def cmd_describe(args: argparse.Namespace) -> int:
    table = SurveyRepository.load_csv(
        args.data, args.bounds, label_column=args.labels_column, integer_only=False
    )
    lines = ["attribute,n,mean,sd,min,max"]
    for s in StatsService.describe(table):
        lines.append(
            ",".join([s.name, str(s.n)] + [fixed(v, settings.decimals) for v in (s.mean, s.stddev, s.minimum, s.maximum)])
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_correlate(args: argparse.Namespace) -> int:
    table = SurveyRepository.load_csv(
        args.data, args.bounds, label_column=args.labels_column, integer_only=False
    )
    if args.group:
        if not args.schema:
            raise InputError("--group needs --schema")
        schema = SurveyRepository.load_schema(args.schema)
        if args.group not in schema.groups:
            raise InputError(f"unknown group '{args.group}'")
        columns = schema.groups[args.group]
    else:
        columns = args.columns or table.attribute_names
    matrix = StatsService.correlation_matrix(table, columns)
    _emit(_matrix_csv(matrix, full_precision=args.out is not None), args.out)
    if args.edges:
        selection = PipelineService.select_positive_edges(matrix)
        GraphRepository.write_text(GraphRepository.format_edge_list(selection.graph.edges), args.edges)
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    if args.coefficients:
        model = CoefficientRepository.load(args.coefficients)
    else:
        if args.data is None or not args.labels_column:
            raise InputError("rank needs --coefficients or --data with --labels-column")
        table = SurveyRepository.load_csv(
            args.data, args.bounds, label_column=args.labels_column, integer_only=False
        )
        model = PipelineService.fit_model(table, args.priors, args.ridge)
        if args.out:
            CoefficientRepository.save(model, args.out)
    target = PipelineService.select_class(model, args.target_class)
    print(" ".join(DiscriminantService.rank_by_coefficient(model.coefficients_of(target))))
    return EXIT_OK


def cmd_mst(args: argparse.Namespace) -> int:
    graph = GraphRepository.load_edge_list(args.edges, nodes=args.nodes)
    forest = GraphService.kruskal_max_forest(graph)
    for e in forest.edges:
        print(f"{e.u} -- {e.v}  {fixed(e.w, settings.decimals)}")
    print(
        f"total_weight={fixed(forest.total_weight, settings.decimals)} "
        f"components={forest.component_count}"
    )
    if not forest.is_connected and graph.edges:
        logger.warning(f"graph is disconnected: {forest.component_count} components")
    if args.out:
        _emit(forest.model_dump_json(indent=2) + "\n", args.out)
    if args.dot:
        GraphRepository.write_text(GraphRepository.forest_dot(forest), args.dot)
    return EXIT_OK


def _write_table(table: SurveyTable, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(SurveyRepository.to_csv_text(table))
        return
    SurveyRepository.write_csv(table, out)


def _matrix_csv(matrix: CorrelationMatrix, full_precision: bool) -> str:
    def cell(r: Optional[float]) -> str:
        if r is None:
            return ""
        return repr(r) if full_precision else fixed(r, settings.decimals)

    lines = [",".join(["attribute"] + matrix.names)]
    for name, row in zip(matrix.names, matrix.entries):
        lines.append(",".join([name] + [cell(r) for r in row]))
    return "\n".join(lines) + "\n"


# ============== Parser ==============

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="preftree",
        description="Likert requirement surveys to preference-ordered maximum spanning tree models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    sub = parser.add_subparsers(dest="command", required=True)

    def data_options(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("--data", type=Path, required=required, help="survey CSV")
        p.add_argument("--bounds", type=_bounds, default=None, help="value bounds lo,hi (default from settings)")
        p.add_argument("--labels-column", default=None, help="class label column to carry through")

    run = sub.add_parser("run", help="run the whole pipeline")
    run.add_argument("--data", type=Path, required=True, help="survey CSV")
    run.add_argument("--schema", type=Path, required=True, help="attribute schema JSON")
    mode = run.add_mutually_exclusive_group(required=True)
    mode.add_argument("--coefficients", type=Path, help="classification coefficient JSON")
    mode.add_argument("--labels-column", help="fit classification functions on this label column")
    run.add_argument("--target-class", default=None, help="class whose coefficients rank the groups")
    run.add_argument("--priors", type=_priors, default=None, help="class priors name=value,...")
    run.add_argument("--out", type=Path, required=True, help="model JSON output")
    run.add_argument("--dot", type=Path, default=None, help="DOT rendering output")
    run.add_argument("--report", type=Path, default=None, help="text report output")
    run.add_argument("--ridge", action="store_true", help="repair a singular pooled covariance")
    run.add_argument("--bounds", type=_bounds, default=None, help="value bounds lo,hi")
    run.set_defaults(handler=cmd_run)

    impute = sub.add_parser("impute", help="replace missing cells with column means")
    data_options(impute)
    impute.add_argument("--out", type=Path, default=None)
    impute.set_defaults(handler=cmd_impute)

    aggregate = sub.add_parser("aggregate", help="average simple attributes into composites")
    data_options(aggregate)
    aggregate.add_argument("--schema", type=Path, required=True)
    aggregate.add_argument("--out", type=Path, default=None)
    aggregate.set_defaults(handler=cmd_aggregate)

    group = sub.add_parser("group", help="per-respondent group scores from composites")
    data_options(group)
    group.add_argument("--schema", type=Path, required=True)
    group.add_argument("--out", type=Path, default=None)
    group.set_defaults(handler=cmd_group)

    describe = sub.add_parser("describe", help="mean, standard deviation, min and max per attribute")
    data_options(describe)
    describe.add_argument("--out", type=Path, default=None)
    describe.set_defaults(handler=cmd_describe)

    correlate = sub.add_parser("correlate", help="pairwise Pearson correlation")
    data_options(correlate)
    correlate.add_argument("--columns", type=_names, default=None, help="comma-separated columns")
    correlate.add_argument("--schema", type=Path, default=None)
    correlate.add_argument("--group", default=None, help="correlate this schema group's composites")
    correlate.add_argument("--out", type=Path, default=None, help="matrix CSV (full precision)")
    correlate.add_argument("--edges", type=Path, default=None, help="positive-correlation edge list u,v,w")
    correlate.set_defaults(handler=cmd_correlate)

    rank = sub.add_parser("rank", help="order groups by classification coefficient")
    data_options(rank, required=False)
    rank.add_argument("--coefficients", type=Path, default=None)
    rank.add_argument("--target-class", default=None)
    rank.add_argument("--priors", type=_priors, default=None)
    rank.add_argument("--ridge", action="store_true")
    rank.add_argument("--out", type=Path, default=None, help="fitted coefficient JSON")
    rank.set_defaults(handler=cmd_rank)

    mst = sub.add_parser("mst", help="maximum spanning forest of an edge list")
    mst.add_argument("--edges", type=Path, required=True, help="CSV with header u,v,w")
    mst.add_argument("--nodes", type=_names, default=None, help="node order, including isolated nodes")
    mst.add_argument("--out", type=Path, default=None, help="forest JSON")
    mst.add_argument("--dot", type=Path, default=None)
    mst.set_defaults(handler=cmd_mst)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: settings.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
    configure_logging(level)
    try:
        return args.handler(args)
    except PrefTreeError as e:
        step = f" [step {e.step}]" if e.step else ""
        print(f"error{step}: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
