"""Pipeline repository - model serialization and renderings."""

from pathlib import Path
from typing import Optional

from src.preftree.core import DataFileError
from src.preftree.graph.repository import DotCluster, GraphRepository
from src.preftree.pipeline.core import PreferenceModel
from src.preftree.rendering import render


class ModelRepository:
    """Writes a PreferenceModel as JSON, DOT and a plain-text report."""

    @staticmethod
    def to_json(model: PreferenceModel) -> str:
        return model.model_dump_json(indent=2) + "\n"

    @staticmethod
    def to_dot(model: PreferenceModel) -> str:
        """One cluster per group in preference order; nodes in schema order."""
        clusters = [
            DotCluster(
                name=group,
                label=_display(group, model.label(group)),
                nodes=model.groups[group].forest.nodes,
                edges=model.groups[group].edges,
            )
            for group in model.group_order
        ]
        return GraphRepository.render_dot(clusters, name="preference_model", clustered=True)

    @staticmethod
    def to_report(model: PreferenceModel) -> str:
        return render("report.txt.j2", model=model, display=_display)

    @staticmethod
    def save(
        model: PreferenceModel,
        out_path: Optional[Path] = None,
        dot_path: Optional[Path] = None,
        report_path: Optional[Path] = None,
    ) -> None:
        outputs = [
            (out_path, ModelRepository.to_json),
            (dot_path, ModelRepository.to_dot),
            (report_path, ModelRepository.to_report),
        ]
        for path, renderer in outputs:
            if path is None:
                continue
            try:
                Path(path).write_text(renderer(model), encoding="utf-8")
            except OSError as e:
                raise DataFileError(f"cannot write {path}: {e}") from e


def _display(name: str, label: str) -> str:
    """'Applications (G1)' when a label differs from the name."""
    return name if label == name else f"{name} ({label})"
