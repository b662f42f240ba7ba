"""Strongly regular graph constructions and checks.

Latin square graphs, Steiner graphs, complete multipartite graphs, and the
classical triangular / square-lattice families, with parameter extraction,
least-eigenvalue computation, and comparison of graph automorphisms against
the automorphisms induced by the underlying structure.

Complete graphs are accepted by srg_params with the degenerate convention
mu = 0 (there are no non-adjacent pairs); the feasibility identity and the
closed-form eigenvalue root stay consistent under it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InvalidStructure, KindMismatch, NotRegular, NotStronglyRegular
from .permgroup import AutReport, ColoredGraph, aut_order_latin, aut_order_sts, colored_graph_aut
from .structures import Graph, LatinSquare, Sts, graph_from_edges


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lmbda: int
    mu: int

    def __post_init__(self):
        if self.k * (self.k - self.lmbda - 1) != (self.v - self.k - 1) * self.mu:
            raise NotStronglyRegular(
                (0, 0), f"feasibility identity fails for {(self.v, self.k, self.lmbda, self.mu)}"
            )

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lmbda, self.mu)

    def least_eigenvalue_root(self) -> float:
        """Smaller root of x^2 - (lambda - mu) x - (k - mu)."""
        d = self.lmbda - self.mu
        return (d - math.sqrt(d * d + 4 * (self.k - self.mu))) / 2


def latin_square_graph(square: LatinSquare) -> Graph:
    """Vertices are the cells; adjacency is agreement in row, column, or entry."""
    if square.n < 2:
        raise InvalidStructure("Latin square graphs need order at least 2")
    n = square.n
    edges = []
    for r in range(n):
        for c in range(n):
            u = r * n + c
            for c2 in range(c + 1, n):
                edges.append((u, r * n + c2))
            for r2 in range(r + 1, n):
                edges.append((u, r2 * n + c))
    entry_cells: dict[int, list[int]] = {}
    for r in range(n):
        for c, e in enumerate(square.grid[r]):
            entry_cells.setdefault(e, []).append(r * n + c)
    for cells in entry_cells.values():
        for a, b in combinations(cells, 2):
            edges.append((a, b))
    return graph_from_edges(n * n, edges)


def steiner_graph(system: Sts) -> Graph:
    """Vertices are the blocks; adjacency is intersection in a point."""
    blocks = [set(b) for b in system.blocks]
    edges = [
        (i, j)
        for i, j in combinations(range(len(blocks)), 2)
        if len(blocks[i] & blocks[j]) == 1
    ]
    return graph_from_edges(len(blocks), edges)


def complete_multipartite(parts: int, size: int) -> Graph:
    if parts < 2 or size < 1:
        raise InvalidStructure("need at least 2 parts of size at least 1")
    v = parts * size
    edges = [(a, b) for a, b in combinations(range(v), 2) if a // size != b // size]
    return graph_from_edges(v, edges)


def classical_graph(kind: str, n: int) -> Graph:
    """The triangular graph T(n) or the square lattice (rook's) graph L2(n)."""
    if kind == "triangular":
        if n < 4:
            raise InvalidStructure("triangular graphs need n >= 4")
        verts = list(combinations(range(n), 2))
        edges = [
            (i, j)
            for i, j in combinations(range(len(verts)), 2)
            if set(verts[i]) & set(verts[j])
        ]
        return graph_from_edges(len(verts), edges)
    if kind == "square_lattice":
        if n < 2:
            raise InvalidStructure("square lattice graphs need n >= 2")
        edges = []
        for r in range(n):
            for c in range(n):
                u = r * n + c
                for c2 in range(c + 1, n):
                    edges.append((u, r * n + c2))
                for r2 in range(r + 1, n):
                    edges.append((u, r2 * n + c))
        return graph_from_edges(n * n, edges)
    raise InvalidStructure(f"unknown classical graph kind {kind!r}")


def _adjacency(graph: Graph) -> np.ndarray:
    a = np.zeros((graph.v, graph.v), dtype=np.int64)
    for u, w in graph.edges:
        a[u, w] = 1
        a[w, u] = 1
    return a


def srg_params(graph: Graph) -> SrgParams:
    """Extract (v, k, lambda, mu), verifying constancy over all pairs."""
    v = graph.v
    if v < 2 or not graph.edges:
        raise NotStronglyRegular((0, 0), "graph is empty")
    a = _adjacency(graph)
    degrees = a.sum(axis=1)
    if degrees.min() != degrees.max():
        u = int(degrees.argmin())
        w = int(degrees.argmax())
        raise NotRegular(u, w, int(degrees[u]), int(degrees[w]))
    k = int(degrees[0])
    common = a @ a
    lmbda = None
    mu = None
    for i in range(v):
        for j in range(i + 1, v):
            c = int(common[i, j])
            if a[i, j]:
                if lmbda is None:
                    lmbda = c
                elif c != lmbda:
                    raise NotStronglyRegular(
                        (i, j), f"adjacent pair has {c} common neighbors, expected {lmbda}"
                    )
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    raise NotStronglyRegular(
                        (i, j), f"non-adjacent pair has {c} common neighbors, expected {mu}"
                    )
    if mu is None:
        mu = 0  # complete graph: no non-adjacent pairs
    return SrgParams(v, k, lmbda if lmbda is not None else 0, mu)


def least_eigenvalue(graph: Graph) -> float:
    """Smallest adjacency eigenvalue via a dense symmetric solver."""
    if graph.v == 0:
        raise InvalidStructure("empty vertex set has no spectrum")
    if not graph.edges:
        return 0.0
    return float(np.linalg.eigvalsh(_adjacency(graph).astype(np.float64))[0])


@dataclass(frozen=True)
class AutComparison:
    graph_aut_order: int
    structure_aut_order: int
    induced_equal: bool


def aut_comparison(structure: LatinSquare | Sts, graph: Graph) -> AutComparison:
    """Compare |Aut(graph)| against the structure's automorphism group order.

    The graph must have been produced from the structure (this is re-derived and
    checked); equality is reported, not asserted, since small orders include the
    finitely many exceptional graphs with extra automorphisms.
    """
    if isinstance(structure, LatinSquare):
        expected = latin_square_graph(structure)
        structure_report: AutReport = aut_order_latin(structure)
    elif isinstance(structure, Sts):
        expected = steiner_graph(structure)
        structure_report = aut_order_sts(structure)
    else:
        raise KindMismatch(f"unsupported structure {type(structure).__name__}")
    if expected.v != graph.v or expected.edges != graph.edges:
        raise KindMismatch("graph does not match the one generated by the structure")
    graph_report = colored_graph_aut(ColoredGraph(graph, (0,) * graph.v))
    return AutComparison(
        graph_report.order,
        structure_report.order,
        graph_report.order == structure_report.order,
    )


# --- graph file format: {"v": N, "edges": [[a, b], ...]} ---

def graph_to_json(graph: Graph) -> str:
    return json.dumps(
        {"v": graph.v, "edges": [list(e) for e in sorted(graph.edges)]},
        separators=(",", ":"),
    )


def graph_from_json(text: str) -> Graph:
    doc = json.loads(text)
    return graph_from_edges(doc["v"], [tuple(e) for e in doc["edges"]])
