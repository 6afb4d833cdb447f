"""Finite metric trees with weighted edges.

A point of the tree is a position on an edge, given by the edge index and the
offset from the first endpoint of the edge. Vertex distances come from
``scipy.sparse.csgraph``; the distance between two points leaves the edge of
the first point through one of its endpoints and enters the edge of the second
point through one of its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from metricat.curve import Curve
from metricat.errors import SpaceValidationError
from metricat.spaces.base import BaseSpace, metaspace

OFFSET_TOL = 1e-12


@dataclass(frozen=True)
class TreePoint():
    """Point at distance ``offset`` from the first endpoint of edge ``edge``."""

    edge: int
    offset: float


@metaspace(kind="metric_tree", midpoints=True, geodesics=True)
class MetricTreeSpace(BaseSpace):
    """Metric tree given by a weighted edge list.

    Parameters
    ----------
    edges:
        List of ``[u, v, weight]`` with vertex labels u and v and a positive
        weight. The edges should form a tree.

    Examples
    --------
    >>> tree = MetricTreeSpace.tripod()
    >>> tree.distance(tree.vertex("a"), tree.vertex("b"))
    2.0
    """

    def __init__(self, edges: Sequence[Sequence]):
        self.edges = [(str(u), str(v), float(w)) for u, v, w in edges]
        if len(self.edges) == 0:
            raise SpaceValidationError("A metric tree needs at least one edge.", axiom="tree")
        for u, v, weight in self.edges:
            if not weight > 0:
                raise SpaceValidationError(f"Edge ({u}, {v}) has non-positive weight {weight}.",
                                           axiom="positivity", witness=(u, v))
            if u == v:
                raise SpaceValidationError(f"Edge ({u}, {v}) is a loop.", axiom="tree",
                                           witness=(u, v))
        self.labels = sorted({label for u, v, _ in self.edges for label in (u, v)})
        self._index = {label: i for i, label in enumerate(self.labels)}
        if len(self.edges) != len(self.labels) - 1:
            raise SpaceValidationError(
                f"Edge list with {len(self.edges)} edges on {len(self.labels)} vertices"
                " contains a cycle or a repeated edge.", axiom="tree")
        n_nodes = len(self.labels)
        rows = [self._index[u] for u, _, _ in self.edges]
        cols = [self._index[v] for _, v, _ in self.edges]
        weights = [w for _, _, w in self.edges]
        graph = csr_matrix((weights, (rows, cols)), shape=(n_nodes, n_nodes))
        n_components, component = connected_components(graph, directed=False)
        if n_components != 1:
            stray = self.labels[int(np.argmax(component != component[0]))]
            raise SpaceValidationError(f"Edge list is not connected, vertex '{stray}' cannot be"
                                       f" reached from '{self.labels[0]}'.", axiom="tree",
                                       witness=(self.labels[0], stray))
        self._dist, self._pred = shortest_path(graph, directed=False, return_predecessors=True)
        self._edge_of = {}
        for i_edge, (u, v, _) in enumerate(self.edges):
            self._edge_of[(self._index[u], self._index[v])] = (i_edge, False)
            self._edge_of[(self._index[v], self._index[u])] = (i_edge, True)

    @classmethod
    def tripod(cls, leg: float = 1.0) -> MetricTreeSpace:
        """Three edges of length ``leg`` from the center "o" to leaves "a", "b" and "c"."""
        return cls([["o", "a", leg], ["o", "b", leg], ["o", "c", leg]])

    @classmethod
    def random_tree(cls, n_edges: int, seed: int = 0) -> MetricTreeSpace:
        """Random tree with weights uniform in [0.1, 1].

        Vertex i is attached to a uniformly chosen earlier vertex.
        """
        rng = np.random.default_rng(seed)
        edges = [[f"v{int(rng.integers(0, i))}", f"v{i}", float(rng.uniform(0.1, 1.0))]
                 for i in range(1, n_edges + 1)]
        return cls(edges)

    def vertex(self, label: str) -> TreePoint:
        """Point at the vertex with the given label."""
        for i_edge, (u, v, weight) in enumerate(self.edges):
            if u == label:
                return TreePoint(i_edge, 0.0)
            if v == label:
                return TreePoint(i_edge, weight)
        raise KeyError(f"Tree has no vertex with label '{label}'.")

    def _ends(self, point: TreePoint) -> tuple[tuple[int, float], tuple[int, float]]:
        """Both endpoints of the edge of a point, with the distance to each."""
        u, v, weight = self.edges[point.edge]
        return ((self._index[u], point.offset), (self._index[v], weight - point.offset))

    def _route(self, p: TreePoint, q: TreePoint) -> tuple[float, int, int]:
        best = (np.inf, -1, -1)
        for node_p, dist_p in self._ends(p):
            for node_q, dist_q in self._ends(q):
                total = dist_p + self._dist[node_p, node_q] + dist_q
                if total < best[0]:
                    best = (float(total), node_p, node_q)
        return best

    def distance(self, p: TreePoint, q: TreePoint) -> float:
        if p.edge == q.edge:
            return abs(p.offset - q.offset)
        return self._route(p, q)[0]

    def _vertex_path(self, start: int, end: int) -> list[int]:
        path = [end]
        while path[-1] != start:
            path.append(int(self._pred[start, path[-1]]))
        return path[::-1]

    def geodesic(self, p: TreePoint, q: TreePoint) -> Curve:
        # Pieces (edge, offset at start, offset at end), traversed at unit speed.
        if p.edge == q.edge:
            pieces = [(p.edge, p.offset, q.offset)]
        else:
            _, node_p, node_q = self._route(p, q)
            u_p = self._index[self.edges[p.edge][0]]
            u_q = self._index[self.edges[q.edge][0]]
            pieces = [(p.edge, p.offset, 0.0 if node_p == u_p else self.edges[p.edge][2])]
            path = self._vertex_path(node_p, node_q)
            for first, second in zip(path[:-1], path[1:]):
                i_edge, flipped = self._edge_of[(first, second)]
                weight = self.edges[i_edge][2]
                pieces.append((i_edge, weight, 0.0) if flipped else (i_edge, 0.0, weight))
            pieces.append((q.edge, 0.0 if node_q == u_q else self.edges[q.edge][2], q.offset))
        lengths = np.array([abs(end - begin) for _, begin, end in pieces])
        bounds = np.concatenate([[0.0], np.cumsum(lengths)])
        total = bounds[-1]

        def evaluate(t: float) -> TreePoint:
            arc = t * total
            i_piece = int(np.searchsorted(bounds, arc, side="right")) - 1
            i_piece = min(max(i_piece, 0), len(pieces) - 1)
            edge, begin, end = pieces[i_piece]
            step = min(arc - bounds[i_piece], lengths[i_piece])
            return TreePoint(edge, begin + step if end >= begin else begin - step)

        return Curve(evaluate)

    def midpoint(self, p: TreePoint, q: TreePoint, epsilon=0.0) -> TreePoint:
        return self.geodesic(p, q)(0.5)

    def sample(self, seed: int) -> Iterator[TreePoint]:
        rng = np.random.default_rng(seed)
        weights = np.array([w for _, _, w in self.edges])
        probs = weights / weights.sum()
        while True:
            i_edge = int(rng.choice(len(self.edges), p=probs))
            yield TreePoint(i_edge, float(rng.uniform(0, weights[i_edge])))

    def contains(self, point) -> bool:
        if not isinstance(point, TreePoint) or not 0 <= point.edge < len(self.edges):
            return False
        return -OFFSET_TOL <= point.offset <= self.edges[point.edge][2] + OFFSET_TOL

    def encode_point(self, point: TreePoint):
        u, v, _ = self.edges[point.edge]
        return {"edge": [u, v], "offset": float(point.offset)}

    @property
    def diameter(self):
        return float(self._dist.max())

    def _param_dict(self):
        return {"edges": [[u, v, w] for u, v, w in self.edges]}

    @classmethod
    def _param_schema(cls):
        return {
            "edges": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "array",
                    "prefixItems": [{"type": "string"}, {"type": "string"},
                                    {"type": "number", "exclusiveMinimum": 0}],
                    "minItems": 3,
                    "maxItems": 3,
                },
            },
        }

    @classmethod
    def default_space(cls):
        return cls.tripod()
