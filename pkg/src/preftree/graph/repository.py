"""Graph repository - edge-list CSV and DOT export."""

import math
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd
from pydantic import BaseModel, ValidationError

from src.preftree.core import DataFileError, InputError
from src.preftree.graph.core import Edge, SpanningForest, WeightedGraph
from src.preftree.rendering import render


EDGE_COLUMNS = ["u", "v", "w"]


class DotCluster(BaseModel):
    """One block of a DOT drawing (a group, or the whole graph)."""

    name: str
    label: str
    nodes: list[str]
    edges: list[Edge]


class GraphRepository:
    """Repository for graph files."""

    @staticmethod
    def load_edge_list(path: str | Path, nodes: Optional[Sequence[str]] = None) -> WeightedGraph:
        """Read a ``u,v,w`` CSV; isolated nodes come from ``nodes``."""
        path = Path(path)
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
        except FileNotFoundError as e:
            raise DataFileError(f"edge list not found: {path}") from e
        except pd.errors.EmptyDataError as e:
            raise InputError(f"edge list is empty: {path}") from e
        except pd.errors.ParserError as e:
            raise InputError(f"malformed edge list {path}: {e}") from e
        except OSError as e:
            raise DataFileError(f"cannot read edge list {path}: {e}") from e

        if list(frame.columns) != EDGE_COLUMNS:
            raise InputError(f"edge list {path} must have header u,v,w; got {','.join(map(str, frame.columns))}")
        triples = []
        for line, (u, v, w) in enumerate(frame.itertuples(index=False), start=2):
            try:
                weight = float(w)
            except (TypeError, ValueError):
                raise InputError(f"row {line}: weight '{w}' is not a number") from None
            if not math.isfinite(weight):
                raise InputError(f"row {line}: weight '{w}' is not finite")
            triples.append((str(u).strip(), str(v).strip(), weight))

        order = list(nodes) if nodes is not None else None
        if order is not None:
            for u, v, _ in triples:
                for x in (u, v):
                    if x not in order:
                        order.append(x)
        try:
            return WeightedGraph.from_edges(triples, nodes=order)
        except ValidationError as e:
            reasons = "; ".join(err["msg"] for err in e.errors())
            raise InputError(f"invalid graph in {path}: {reasons}") from e

    @staticmethod
    def format_edge_list(edges: Sequence[Edge]) -> str:
        """``u,v,w`` CSV text at full precision."""
        lines = [",".join(EDGE_COLUMNS)]
        lines.extend(f"{_csv(e.u)},{_csv(e.v)},{e.w!r}" for e in edges)
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_dot(clusters: Sequence[DotCluster], name: str = "spanning_forest", clustered: bool = True) -> str:
        """Undirected DOT text; nodes in the given order, edge labels at fixed precision."""
        return render("forest.dot.j2", name=name, clusters=list(clusters), clustered=clustered)

    @staticmethod
    def forest_dot(forest: SpanningForest, name: str = "spanning_forest") -> str:
        cluster = DotCluster(name=name, label=name, nodes=forest.nodes, edges=forest.edges)
        return GraphRepository.render_dot([cluster], name=name, clustered=False)

    @staticmethod
    def write_text(text: str, path: str | Path) -> None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise DataFileError(f"cannot write {path}: {e}") from e


def _csv(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text
