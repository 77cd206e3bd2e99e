import json
import math

import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from src.preftree.core import DataFileError, ImputationError, InputError, SchemaError, SingularCovarianceError
from src.preftree.graph.core import Edge, SpanningForest
from src.preftree.graph.service import GraphService
from src.preftree.pipeline.core import DiscriminantMode, PipelineConfig
from src.preftree.pipeline.repository import ModelRepository
from src.preftree.pipeline.service import PipelineService
from src.preftree.stats.core import CorrelationMatrix
from src.preftree.stats.service import StatsService
from src.preftree.survey.core import AttributeSchema, SurveyTable


PUBLISHED_COEFFICIENTS = {"Applications": 14.048, "Media": 9.374, "Output": 8.074}


def _matrix(names, pairs):
    k = len(names)
    entries = [[1.0 if i == j else None for j in range(k)] for i in range(k)]
    for (a, b), r in pairs.items():
        i, j = names.index(a), names.index(b)
        entries[i][j] = entries[j][i] = r
    return CorrelationMatrix(names=names, entries=entries)


@pytest.fixture
def coefficients_config(survey_path, schema_path, coefficients_path):
    return PipelineConfig(
        data_path=survey_path,
        schema_path=schema_path,
        mode=DiscriminantMode.COEFFICIENTS,
        coefficients_path=coefficients_path,
    )


# ============== select_positive_edges ==============

def test_keeps_only_positive_pairs():
    m = _matrix(["p10", "p11", "p12"], {("p10", "p11"): 0.139, ("p10", "p12"): -0.2, ("p11", "p12"): 0.0})
    selection = PipelineService.select_positive_edges(m)
    assert [(e.u, e.v, e.w) for e in selection.graph.edges] == [("p10", "p11", 0.139)]
    assert [(r.u, r.v, r.r) for r in selection.removed] == [("p10", "p12", -0.2), ("p11", "p12", 0.0)]
    assert selection.graph.nodes == ["p10", "p11", "p12"]


def test_all_negative_matrix_is_edgeless():
    m = _matrix(["a", "b", "c"], {("a", "b"): -0.1, ("a", "c"): -0.3, ("b", "c"): -0.9})
    selection = PipelineService.select_positive_edges(m)
    assert selection.graph.edges == []
    assert len(selection.removed) == 3


def test_undefined_correlation_is_removed():
    m = _matrix(["a", "b"], {("a", "b"): None})
    selection = PipelineService.select_positive_edges(m)
    assert selection.graph.edges == []
    assert selection.removed[0].r is None


@st.composite
def correlation_matrices(draw):
    k = draw(st.integers(1, 6))
    names = [f"p{i}" for i in range(k)]
    pairs = {
        (names[i], names[j]): draw(st.one_of(st.none(), st.just(0.0), st.floats(-1, 1)))
        for i in range(k)
        for j in range(i + 1, k)
    }
    return _matrix(names, pairs)


@settings(max_examples=200, deadline=None)
@given(correlation_matrices())
def test_selection_never_keeps_non_positive_pairs(m):
    selection = PipelineService.select_positive_edges(m)
    assert all(e.w > 0 for e in selection.graph.edges)
    assert len(selection.graph.edges) + len(selection.removed) == len(m.pairs())
    for e in selection.graph.edges:
        assert m.get(e.u, e.v) == e.w


# ============== compute_total_cost ==============

def _forest(weights):
    edges = [Edge(u=f"a{i}", v=f"b{i}", w=w) for i, w in enumerate(weights)]
    nodes = [x for e in edges for x in (e.u, e.v)]
    return SpanningForest(nodes=nodes, edges=edges, total_weight=math.fsum(weights))


def test_published_total_cost():
    forests = {
        "Applications": _forest([0.297, 0.273, 0.268, 0.206]),
        "Media": _forest([0.49, 0.143735]),
        "Output": _forest([0.139]),
    }
    assert abs(PipelineService.compute_total_cost(forests) - 1.816735) <= 1e-9


def test_total_cost_edge_cases():
    assert PipelineService.compute_total_cost({"G": _forest([])}) == 0.0
    assert PipelineService.compute_total_cost({"G": _forest([0.139])}) == 0.139
    assert PipelineService.compute_total_cost({}) == 0.0


# ============== attribute_order ==============

def test_order_starts_at_heaviest_node(triangle):
    forest = GraphService.kruskal_max_forest(triangle)
    assert PipelineService.attribute_order(forest) == ["B", "A", "C"]


def test_order_for_edge_with_two_new_endpoints():
    forest = SpanningForest(
        nodes=["A", "B", "C", "D"],
        edges=[Edge(u="C", v="D", w=2.0), Edge(u="A", v="B", w=1.0)],
    )
    assert PipelineService.attribute_order(forest) == ["C", "D", "A", "B"]


def test_isolated_nodes_go_last():
    forest = SpanningForest(nodes=["X", "A", "B"], edges=[Edge(u="A", v="B", w=0.5)])
    assert PipelineService.attribute_order(forest) == ["A", "B", "X"]


def test_order_of_edgeless_forest_is_node_order():
    assert PipelineService.attribute_order(SpanningForest(nodes=["b", "a"])) == ["b", "a"]


# ============== build_model ==============

def test_bundled_fixture_group_order(composites, schema):
    model = PipelineService.build_model(composites, schema, PUBLISHED_COEFFICIENTS)
    assert model.group_order == ["Applications", "Media", "Output"]
    output = model.groups["Output"]
    assert len(output.edges) == 1
    assert output.edges[0].w == pytest.approx(0.139, abs=0.0005)
    assert output.component_count == 1
    assert sorted(output.attribute_order) == ["Custom mash up", "Result as Mash up"]
    assert model.total_cost == math.fsum(e.w for g in model.groups.values() for e in g.edges)
    for group in model.group_order:
        result = model.groups[group]
        assert sorted(result.attribute_order) == sorted(schema.groups[group])
        assert all(e.w > 0 for e in result.edges)
        assert len(result.edges) == len(schema.groups[group]) - result.component_count


def test_forests_are_maximum(composites, schema):
    model = PipelineService.build_model(composites, schema, PUBLISHED_COEFFICIENTS)
    for group, result in model.groups.items():
        matrix = StatsService.correlation_matrix(composites, schema.groups[group])
        graph = PipelineService.select_positive_edges(matrix).graph
        best = GraphService.brute_force_max_spanning_weight(graph)
        assert abs(best - result.forest.total_weight) <= 1e-12
        assert GraphService.validate_forest(graph, result.forest).passed


@pytest.mark.parametrize("dropped", ["Applications", "Media", "Output"])
def test_dropping_a_group_removes_only_its_cost(composites, schema, dropped):
    full = PipelineService.build_model(composites, schema, PUBLISHED_COEFFICIENTS)
    rest = {g: c for g, c in PUBLISHED_COEFFICIENTS.items() if g != dropped}
    reduced = PipelineService.build_model(composites, schema.without_group(dropped), rest)
    assert dropped not in reduced.groups
    expected = full.total_cost - full.groups[dropped].forest.total_weight
    assert abs(reduced.total_cost - expected) <= 1e-12
    assert reduced.group_order == [g for g in full.group_order if g != dropped]
    for group, result in reduced.groups.items():
        assert result.edges == full.groups[group].edges


def test_single_composite_group_costs_nothing():
    schema = AttributeSchema(groups={"Solo": ["Audio"], "Pair": ["x", "y"]})
    table = SurveyTable.from_rows(
        ["r1", "r2", "r3"], ["Audio", "x", "y"], [[1, 1, 2], [3, 2, 3], [5, 4, 5]]
    )
    model = PipelineService.build_model(table, schema, {"Solo": 1.0, "Pair": 2.0})
    solo = model.groups["Solo"]
    assert solo.edges == []
    assert solo.attribute_order == ["Audio"]
    assert solo.component_count == 1
    assert model.total_cost == model.groups["Pair"].edges[0].w


def test_missing_group_coefficient():
    schema = AttributeSchema(groups={"A": ["x"], "B": ["y"]})
    table = SurveyTable.from_rows(["r1", "r2"], ["x", "y"], [[1, 2], [2, 1]])
    with pytest.raises(SchemaError) as err:
        PipelineService.build_model(table, schema, {"A": 1.0})
    assert err.value.step == "e"


def test_correlation_errors_carry_step_letter(composites):
    with pytest.raises(InputError) as err:
        PipelineService.model_group(composites, ["2D", "Nowhere"])
    assert err.value.step == "f"


# ============== run_pipeline ==============

def test_coefficients_mode(coefficients_config):
    model = PipelineService.run_pipeline(coefficients_config)
    assert model.group_order == ["Applications", "Media", "Output"]
    assert model.target_class == "Students"
    assert model.completeness.missing_cells == 8
    assert [s.name for s in model.descriptives][:2] == ["Multilingual", "Semantic Maps"]
    assert model.summary().startswith("groups=Applications>Media>Output edges=")


def test_coefficients_keyed_by_group_label(coefficients_config, write_file):
    path = write_file(
        "labels.json",
        json.dumps({"Students": {"coefficients": {"G1": 14.048, "G2": 9.374, "G3": 8.074}, "constant": -46.475}}),
    )
    by_label = PipelineService.run_pipeline(coefficients_config.model_copy(update={"coefficients_path": path}))
    by_name = PipelineService.run_pipeline(coefficients_config)
    assert ModelRepository.to_json(by_label) == ModelRepository.to_json(by_name)


def test_unknown_coefficient_feature(coefficients_config, write_file):
    path = write_file(
        "c.json",
        json.dumps({"Students": {"coefficients": {"Applications": 1.0, "Elsewhere": 2.0}, "constant": 0}}),
    )
    with pytest.raises(SchemaError) as err:
        PipelineService.run_pipeline(coefficients_config.model_copy(update={"coefficients_path": path}))
    assert err.value.step == "e"


def test_unknown_target_class(coefficients_config):
    cfg = coefficients_config.model_copy(update={"target_class": "Faculty"})
    with pytest.raises(InputError, match="Faculty"):
        PipelineService.run_pipeline(cfg)


def test_fit_mode(labelled_survey_path, schema_path):
    cfg = PipelineConfig(
        data_path=labelled_survey_path,
        schema_path=schema_path,
        mode=DiscriminantMode.FIT,
        labels_column="population",
    )
    model = PipelineService.run_pipeline(cfg)
    assert model.target_class == "Students"
    assert sorted(model.group_order) == ["Applications", "Media", "Output"]
    coefficients = [model.groups[g].coefficient for g in model.group_order]
    assert coefficients == sorted(coefficients, reverse=True)


def test_fit_mode_singular_covariance(write_file):
    data = write_file(
        "flat.csv",
        "respondent_id,population,a,b\n"
        "r1,X,1,2\nr2,X,1,2\nr3,X,1,2\nr4,Y,4,5\nr5,Y,4,5\nr6,Y,4,5\n",
    )
    schema = write_file("flat.json", json.dumps({"groups": {"G1": ["a"], "G2": ["b"]}}))
    cfg = PipelineConfig(
        data_path=data, schema_path=schema, mode=DiscriminantMode.FIT,
        labels_column="population", target_class="X",
    )
    with pytest.raises(SingularCovarianceError) as err:
        PipelineService.run_pipeline(cfg)
    assert err.value.step == "e"
    assert err.value.exit_code == 3


def test_all_missing_column_fails_at_step_b(write_file, schema_path, coefficients_path):
    data = write_file("holes.csv", "respondent_id,a,b\nr1,1,\nr2,2,\n")
    cfg = PipelineConfig(
        data_path=data, schema_path=schema_path,
        mode=DiscriminantMode.COEFFICIENTS, coefficients_path=coefficients_path,
    )
    with pytest.raises(ImputationError) as err:
        PipelineService.run_pipeline(cfg)
    assert err.value.step == "b"
    assert "'b'" in str(err.value)


def test_missing_schema_file(survey_path, coefficients_path, tmp_path):
    cfg = PipelineConfig(
        data_path=survey_path, schema_path=tmp_path / "absent.json",
        mode=DiscriminantMode.COEFFICIENTS, coefficients_path=coefficients_path,
    )
    with pytest.raises(DataFileError) as err:
        PipelineService.run_pipeline(cfg)
    assert err.value.step == "c"
    assert err.value.exit_code == 4


def test_row_permutation_keeps_model(coefficients_config, write_file, survey_path):
    header, *rows = survey_path.read_text(encoding="utf-8").splitlines()
    shuffled = write_file("shuffled.csv", "\n".join([header, *reversed(rows)]) + "\n")
    a = PipelineService.run_pipeline(coefficients_config)
    b = PipelineService.run_pipeline(coefficients_config.model_copy(update={"data_path": shuffled}))
    assert a.group_order == b.group_order
    assert abs(a.total_cost - b.total_cost) <= 1e-12
    for group in a.group_order:
        assert [e.pair for e in a.groups[group].edges] == [e.pair for e in b.groups[group].edges]


# ============== PipelineConfig ==============

@pytest.mark.parametrize(
    "overrides",
    [
        {"mode": DiscriminantMode.COEFFICIENTS},
        {"mode": DiscriminantMode.FIT},
        {"mode": DiscriminantMode.FIT, "labels_column": "population", "coefficients_path": "c.json"},
        {"mode": DiscriminantMode.COEFFICIENTS, "coefficients_path": "c.json", "priors": {"A": 1.0}},
        {"mode": DiscriminantMode.COEFFICIENTS, "coefficients_path": "c.json", "bounds": (5, 1)},
    ],
)
def test_config_rejects(overrides):
    with pytest.raises(ValidationError):
        PipelineConfig(data_path="d.csv", schema_path="s.json", **overrides)


def test_config_default_bounds():
    cfg = PipelineConfig(
        data_path="d.csv", schema_path="s.json",
        mode=DiscriminantMode.COEFFICIENTS, coefficients_path="c.json",
    )
    assert cfg.bounds == (1.0, 5.0)


# ============== ModelRepository ==============

def test_json_shape(coefficients_config):
    document = json.loads(ModelRepository.to_json(PipelineService.run_pipeline(coefficients_config)))
    assert set(document) == {"group_order", "groups", "total_cost"}
    output = document["groups"]["Output"]
    assert set(output) == {"coefficient", "attribute_order", "edges", "removed_edges", "component_count"}
    assert output["coefficient"] == 8.074


def test_dot_has_one_cluster_per_group(coefficients_config):
    dot = ModelRepository.to_dot(PipelineService.run_pipeline(coefficients_config))
    assert dot.startswith('graph "preference_model" {\n')
    assert dot.count("subgraph") == 3
    assert dot.index('"cluster_Applications"') < dot.index('"cluster_Media"') < dot.index('"cluster_Output"')
    assert 'label="Output (G3)";' in dot


def test_report_lists_groups_and_total(coefficients_config):
    model = PipelineService.run_pipeline(coefficients_config)
    report = ModelRepository.to_report(model)
    assert report.startswith("Preference model for Students\n")
    assert "1. Applications (G1)  coefficient 14.048000" in report
    assert "3. Output (G3)  coefficient 8.074000" in report
    assert f"Total cost {model.total_cost:.6f}" in report
    assert "Completeness: 8 of 720 cells missing before imputation" in report


def test_save_writes_every_requested_output(coefficients_config, tmp_path):
    model = PipelineService.run_pipeline(coefficients_config)
    ModelRepository.save(model, tmp_path / "m.json", tmp_path / "m.dot", tmp_path / "m.txt")
    assert json.loads((tmp_path / "m.json").read_text())["group_order"][0] == "Applications"
    assert (tmp_path / "m.dot").read_text().endswith("}\n")
    assert (tmp_path / "m.txt").read_text().startswith("Preference model")
