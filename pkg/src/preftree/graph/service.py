"""Graph service - Kruskal maximum spanning forest, enumeration oracle and validation."""

from collections import deque
from itertools import combinations
from typing import Optional

from loguru import logger

from src.preftree.config import settings
from src.preftree.core import GraphTooLargeError, InputError
from src.preftree.graph.core import Edge, ForestReport, SpanningForest, WeightedGraph
from src.preftree.graph.disjoint_set import DisjointSet


CYCLE_TOLERANCE = 1e-12


class GraphService:
    """Service for spanning-forest computations."""

    @staticmethod
    def dsu_union(ds: DisjointSet, a: str, b: str) -> bool:
        """Merge a and b; True iff they were in different components."""
        return ds.union(a, b)

    @staticmethod
    def components(g: WeightedGraph) -> DisjointSet:
        """Connected components of the whole graph."""
        ds = DisjointSet(g.nodes)
        for e in g.edges:
            ds.union(e.u, e.v)
        return ds

    @staticmethod
    def kruskal_max_forest(g: WeightedGraph) -> SpanningForest:
        """Greedy maximum spanning forest.

        Edges are scanned by descending weight, ties by (min endpoint, max endpoint),
        and kept when they join two components. Scanning stops once n - c edges are held.
        """
        ds = DisjointSet(g.nodes)
        needed = len(g.nodes) - GraphService.components(g).components
        order = sorted(g.edges, key=lambda e: (-e.w, e.pair))

        selected: list[Edge] = []
        for e in order:
            if len(selected) == needed:
                break
            if GraphService.dsu_union(ds, e.u, e.v):
                selected.append(e)
                logger.debug(f"kruskal: take {e.u}-{e.v} ({e.w:.6f})")

        return GraphService._assemble(g, selected, ds)

    @staticmethod
    def _assemble(g: WeightedGraph, selected: list[Edge], ds: DisjointSet) -> SpanningForest:
        """Split the selected edges into per-component trees, components in node order."""
        roots: list[str] = []
        members: dict[str, list[str]] = {}
        for node in g.nodes:
            root = ds.find(node)
            if root not in members:
                roots.append(root)
                members[root] = []
            members[root].append(node)
        trees: dict[str, list[Edge]] = {root: [] for root in roots}
        for e in selected:
            trees[ds.find(e.u)].append(e)

        forest = SpanningForest(
            nodes=list(g.nodes),
            edges=selected,
            components=[members[r] for r in roots],
            trees=[trees[r] for r in roots],
            total_weight=sum((e.w for e in selected), 0.0),
        )
        if not forest.is_connected and g.edges:
            logger.debug(f"forest has {forest.component_count} components")
        return forest

    @staticmethod
    def brute_force_max_spanning_weight(g: WeightedGraph) -> float:
        """Best total weight over every acyclic edge subset of size n - c, by enumeration."""
        limit = settings.brute_force_max_nodes
        if len(g.nodes) > limit:
            raise GraphTooLargeError(
                f"enumeration is limited to {limit} nodes; graph has {len(g.nodes)}"
            )
        needed = len(g.nodes) - GraphService.components(g).components
        if needed == 0:
            return 0.0

        best: Optional[float] = None
        for subset in combinations(g.edges, needed):
            ds = DisjointSet(g.nodes)
            if all(ds.union(e.u, e.v) for e in subset):
                weight = sum((e.w for e in subset), 0.0)
                if best is None or weight > best:
                    best = weight
        return best if best is not None else 0.0

    @staticmethod
    def _forest_path(forest_edges: list[Edge], start: str, goal: str) -> Optional[list[Edge]]:
        """Edges on the forest path from start to goal, or None when unconnected."""
        adjacency: dict[str, list[tuple[str, Edge]]] = {}
        for e in forest_edges:
            adjacency.setdefault(e.u, []).append((e.v, e))
            adjacency.setdefault(e.v, []).append((e.u, e))
        came_from: dict[str, tuple[str, Edge]] = {}
        queue = deque([start])
        visited = {start}
        while queue:
            node = queue.popleft()
            if node == goal:
                path = []
                while node != start:
                    node, e = came_from[node]
                    path.append(e)
                return path
            for neighbour, e in adjacency.get(node, []):
                if neighbour not in visited:
                    visited.add(neighbour)
                    came_from[neighbour] = (node, e)
                    queue.append(neighbour)
        return None

    @staticmethod
    def validate_forest(g: WeightedGraph, f: SpanningForest) -> ForestReport:
        """Check edge count, acyclicity, spanning and the maximum-tree cycle property."""
        for e in f.edges:
            if g.edge(e.u, e.v) is None:
                raise InputError(f"forest edge {e.u}-{e.v} is not in the graph")

        violations: list[str] = []
        graph_components = GraphService.components(g).components
        expected = len(g.nodes) - graph_components
        edge_count = len(f.edges) == expected
        if not edge_count:
            violations.append(f"forest has {len(f.edges)} edges; expected {expected}")

        ds = DisjointSet(g.nodes)
        acyclic = True
        for e in f.edges:
            if not ds.union(e.u, e.v):
                acyclic = False
                violations.append(f"edge {e.u}-{e.v} closes a cycle")

        spanning = ds.components == graph_components
        if not spanning:
            violations.append(
                f"forest has {ds.components} components; graph has {graph_components}"
            )

        in_forest = {e.pair for e in f.edges}
        cycle_property = True
        for e in g.edges:
            if e.pair in in_forest:
                continue
            path = GraphService._forest_path(f.edges, e.u, e.v)
            if path is None:
                cycle_property = False
                violations.append(f"non-forest edge {e.u}-{e.v} joins separate trees")
                continue
            lightest = min(p.w for p in path)
            if e.w > lightest + CYCLE_TOLERANCE:
                cycle_property = False
                violations.append(
                    f"non-forest edge {e.u}-{e.v} ({e.w:g}) outweighs tree edge of weight {lightest:g} on its path"
                )

        return ForestReport(
            checks={
                "edge_count": edge_count,
                "acyclic": acyclic,
                "spanning": spanning,
                "cycle_property": cycle_property,
            },
            violations=violations,
        )
