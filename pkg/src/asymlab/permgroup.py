"""Group actions on the three structure kinds and the automorphism engine.

One individualization-refinement search on vertex-colored graphs backs every
group-order computation. Structures are encoded as colored graphs:

  Latin square      3n point vertices, one shared color (so the three classes
                    may be interchanged), plus one vertex per cell adjacent to
                    its row, column, and entry points.
  STS               point vertices one color, block vertices another,
                    incidence edges.
  1-factorization   point vertices, factor vertices, and one vertex per edge
                    adjacent to its two endpoints and its factor.

Triple permutations are also viewable as permutations of the 3n points
0..n-1 (rows), n..2n-1 (columns), 2n..3n-1 (entries).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidStructure, ResourceLimit
from .structures import (
    Cell,
    Graph,
    LatinSquare,
    OneFactorization,
    PointPermutation,
    Sts,
    cells_of,
)

R, C, E = 0, 1, 2
_CLASS_LETTERS = "RCE"

DEFAULT_NODE_BUDGET = 1_000_000

Perm = tuple[int, ...]


def compose_perm(p: Sequence[int], q: Sequence[int]) -> Perm:
    """p after q: (p.q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def invert_perm(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


# --- triple permutations -------------------------------------------------------

@dataclass(frozen=True)
class TriplePermutation:
    """A permutation of the 3n row/column/entry points preserving the class partition.

    sigma gives the image class of each of R, C, E; fr maps row indices into
    class sigma[R], and likewise fc, fe.
    """

    sigma: tuple[int, int, int]
    fr: Perm
    fc: Perm
    fe: Perm

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        for name in ("fr", "fc", "fe"):
            f = tuple(getattr(self, name))
            object.__setattr__(self, name, f)
            if sorted(f) != list(range(len(f))):
                raise InvalidStructure(f"{name} is not a bijection: {f}")
        if sorted(self.sigma) != [0, 1, 2]:
            raise InvalidStructure(f"sigma is not a class permutation: {self.sigma}")
        if not len(self.fr) == len(self.fc) == len(self.fe):
            raise InvalidStructure("fr, fc, fe must share one degree")

    @property
    def n(self) -> int:
        return len(self.fr)

    @property
    def sigma_word(self) -> str:
        return "".join(_CLASS_LETTERS[s] for s in self.sigma)

    @classmethod
    def identity(cls, n: int) -> "TriplePermutation":
        ident = identity_perm(n)
        return cls((R, C, E), ident, ident, ident)

    def is_identity(self) -> bool:
        ident = identity_perm(self.n)
        return self.sigma == (R, C, E) and self.fr == ident and self.fc == ident and self.fe == ident

    def class_fixing(self) -> bool:
        return self.sigma == (R, C, E)

    def maps(self) -> tuple[Perm, Perm, Perm]:
        return (self.fr, self.fc, self.fe)

    def to_points(self) -> Perm:
        """The same map as a permutation of the 3n tagged points."""
        n = self.n
        out = [0] * (3 * n)
        for cls_idx, f in enumerate(self.maps()):
            base = cls_idx * n
            target = self.sigma[cls_idx] * n
            for i, j in enumerate(f):
                out[base + i] = target + j
        return tuple(out)

    @classmethod
    def from_points(cls, perm: Sequence[int], n: int) -> "TriplePermutation":
        sigma = []
        maps = []
        for cls_idx in range(3):
            base = cls_idx * n
            target = perm[base] // n
            f = []
            for i in range(n):
                img = perm[base + i]
                if img // n != target:
                    raise InvalidStructure("points of one class map to mixed classes")
                f.append(img % n)
            sigma.append(target)
            maps.append(tuple(f))
        return cls(tuple(sigma), *maps)

    def compose(self, other: "TriplePermutation") -> "TriplePermutation":
        """self after other."""
        n = self.n
        return TriplePermutation.from_points(
            compose_perm(self.to_points(), other.to_points()), n
        )

    def inverse(self) -> "TriplePermutation":
        return TriplePermutation.from_points(invert_perm(self.to_points()), self.n)

    def to_json_dict(self) -> dict:
        return {
            "sigma": self.sigma_word,
            "fr": list(self.fr),
            "fc": list(self.fc),
            "fe": list(self.fe),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "TriplePermutation":
        word = doc["sigma"]
        if sorted(word) != ["C", "E", "R"]:
            raise InvalidStructure(f"bad sigma word {word!r}")
        sigma = tuple(_CLASS_LETTERS.index(ch) for ch in word)
        return cls(sigma, tuple(doc["fr"]), tuple(doc["fc"]), tuple(doc["fe"]))


def apply_triple_perm(g: TriplePermutation, cell: Cell) -> Cell:
    """Image of a cell: map its three tagged points, then re-sort by class."""
    n = g.n
    coords = [0, 0, 0]
    for cls_idx, f, value in ((R, g.fr, cell.row), (C, g.fc, cell.col), (E, g.fe, cell.entry)):
        coords[g.sigma[cls_idx]] = f[value]
    return Cell(coords[0], coords[1], coords[2])


def apply_triple_perm_raw(g: TriplePermutation, r: int, c: int, e: int) -> tuple[int, int, int]:
    coords = [0, 0, 0]
    coords[g.sigma[0]] = g.fr[r]
    coords[g.sigma[1]] = g.fc[c]
    coords[g.sigma[2]] = g.fe[e]
    return coords[0], coords[1], coords[2]


def is_autoparatopism(g: TriplePermutation, square: LatinSquare) -> bool:
    """True iff the image of the square's cell set is the cell set itself."""
    if g.n != square.n:
        return False
    grid = square.grid
    for r in range(square.n):
        for c, e in enumerate(grid[r]):
            r2, c2, e2 = apply_triple_perm_raw(g, r, c, e)
            if grid[r2][c2] != e2:
                return False
    return True


def transform_latin(g: TriplePermutation, square: LatinSquare) -> LatinSquare:
    """The image square whose cell set is the g-image of the input's cell set."""
    n = square.n
    grid = [[-1] * n for _ in range(n)]
    for r in range(n):
        for c, e in enumerate(square.grid[r]):
            r2, c2, e2 = apply_triple_perm_raw(g, r, c, e)
            grid[r2][c2] = e2
    return LatinSquare(n, tuple(tuple(row) for row in grid))


def transform_sts(g: PointPermutation, system: Sts) -> Sts:
    blocks = sorted(tuple(sorted(g.image[p] for p in b)) for b in system.blocks)
    return Sts(system.n, tuple(blocks))


def transform_of(g: PointPermutation, f: OneFactorization) -> OneFactorization:
    factors = []
    for factor in f.factors:
        edges = sorted(
            (min(g.image[a], g.image[b]), max(g.image[a], g.image[b])) for a, b in factor
        )
        factors.append(tuple(edges))
    factors.sort()
    return OneFactorization(f.n, tuple(factors))


def is_sts_automorphism(g: PointPermutation, system: Sts) -> bool:
    blockset = set(system.blocks)
    for b in system.blocks:
        if tuple(sorted(g.image[p] for p in b)) not in blockset:
            return False
    return True


def is_of_automorphism(g: PointPermutation, f: OneFactorization) -> bool:
    factorset = set(f.factors)
    for factor in f.factors:
        image = tuple(
            sorted((min(g.image[a], g.image[b]), max(g.image[a], g.image[b])) for a, b in factor)
        )
        if image not in factorset:
            return False
    return True


# --- colored graphs and the search engine --------------------------------------

@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != self.graph.v:
            raise InvalidStructure("one color per vertex required")
        present = sorted(set(self.colors))
        if present and present != list(range(present[-1] + 1)):
            raise InvalidStructure("colors must form an initial segment 0..c-1")


@dataclass(frozen=True)
class AutReport:
    """Exact group order plus a generating set for the stabilizer of the input."""

    order: int
    generators: tuple
    is_trivial: bool


def group_order(generators: Iterable[Sequence[int]], degree: int) -> int:
    """Exact order of <generators> by an orbit/stabilizer (Schreier) chain."""
    ident = identity_perm(degree)
    gens = [tuple(g) for g in generators]
    gens = [g for g in gens if g != ident]
    if not gens:
        return 1
    b = min(i for g in gens for i in range(degree) if g[i] != i)
    transversal: dict[int, Perm] = {b: ident}
    queue = [b]
    while queue:
        p = queue.pop(0)
        tp = transversal[p]
        for g in gens:
            q = g[p]
            if q not in transversal:
                transversal[q] = compose_perm(g, tp)
                queue.append(q)
    stab: list[Perm] = []
    seen: set[Perm] = set()
    for p in sorted(transversal):
        tp = transversal[p]
        for g in gens:
            s = compose_perm(invert_perm(transversal[g[p]]), compose_perm(g, tp))
            if s != ident and s not in seen:
                seen.add(s)
                stab.append(s)
    return len(transversal) * group_order(stab, degree)


def group_elements(
    generators: Iterable[Sequence[int]], degree: int, *, limit: int | None = None
) -> tuple[Perm, ...]:
    """All elements of <generators> by breadth-first closure, identity first."""
    ident = identity_perm(degree)
    gens = [tuple(g) for g in generators if tuple(g) != ident]
    seen: dict[Perm, None] = {ident: None}
    queue = [ident]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = compose_perm(g, x)
            if y not in seen:
                if limit is not None and len(seen) >= limit:
                    raise ResourceLimit(len(seen))
                seen[y] = None
                queue.append(y)
    return tuple(seen)


def colored_graph_aut(
    cg: ColoredGraph, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> AutReport:
    """Full color-preserving automorphism group of the graph.

    Refinement is the standard equitable-partition pass; the target cell is the
    first smallest non-singleton class and branch vertices are taken in
    ascending index order, so runs are deterministic. Subtrees off the first
    path are abandoned after their first automorphism (the stabilizer part of
    the group is generated along the first path), and first-path branches are
    pruned by orbits of the already-found generators that fix the current
    prefix pointwise. The order is recomputed from the returned generators via
    a Schreier chain.
    """
    nv = cg.graph.v
    if nv == 0:
        return AutReport(1, (), True)
    adj = [0] * nv
    for a, b in cg.graph.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    by_color: dict[int, list[int]] = {}
    for v in range(nv):
        by_color.setdefault(cg.colors[v], []).append(v)
    partition0 = [sorted(by_color[c]) for c in sorted(by_color)]

    base_leaf: list[int] = []
    base_traces: list[tuple] = []
    base_prefix: list[int] = []
    generators: list[Perm] = []
    nodes = 0

    def refine(partition: list[list[int]]) -> tuple[list[list[int]], tuple]:
        trace: list[tuple] = []
        while True:
            split = None
            for si in range(len(partition)):
                smask = 0
                for v in partition[si]:
                    smask |= 1 << v
                for ci, cell in enumerate(partition):
                    if len(cell) == 1:
                        continue
                    groups: dict[int, list[int]] = {}
                    for v in cell:
                        groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                    if len(groups) > 1:
                        split = (si, ci, groups)
                        break
                if split:
                    break
            if not split:
                return partition, tuple(trace)
            si, ci, groups = split
            trace.append(
                (si, ci, tuple(sorted((cnt, len(vs)) for cnt, vs in groups.items())))
            )
            partition[ci : ci + 1] = [groups[cnt] for cnt in sorted(groups)]

    def target_cell(partition: list[list[int]]) -> int:
        best = -1
        best_size = 0
        for i, cell in enumerate(partition):
            size = len(cell)
            if size > 1 and (best < 0 or size < best_size):
                best, best_size = i, size
        return best

    def individualize(partition: list[list[int]], ci: int, v: int) -> list[list[int]]:
        cell = partition[ci]
        rest = [u for u in cell if u != v]
        return partition[:ci] + [[v], rest] + partition[ci + 1 :]

    def same_orbit(u: int, v: int, prefix_len: int) -> bool:
        useful = [
            g for g in generators if all(g[p] == p for p in base_prefix[:prefix_len])
        ]
        if not useful:
            return False
        parent = list(range(nv))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in useful:
            for a in range(nv):
                ra, rb = find(a), find(g[a])
                if ra != rb:
                    parent[ra] = rb
        return find(u) == find(v)

    def is_automorphism(perm: Perm) -> bool:
        for v in range(nv):
            m = adj[v]
            im = 0
            while m:
                low = m & -m
                im |= 1 << perm[low.bit_length() - 1]
                m ^= low
            if im != adj[perm[v]]:
                return False
        return True

    def search(partition: list[list[int]], depth: int, on_base: bool) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceLimit(nodes)
        partition, trace = refine(partition)
        if on_base:
            base_traces.append(trace)
        elif trace != base_traces[depth]:
            return False
        ci = target_cell(partition)
        if ci < 0:
            leaf = [cell[0] for cell in partition]
            if on_base:
                base_leaf[:] = leaf
                return False
            perm = [0] * nv
            for b, l in zip(base_leaf, leaf):
                perm[b] = l
            permt = tuple(perm)
            if is_automorphism(permt):
                generators.append(permt)
                return True
            return False
        cell = partition[ci]
        if on_base:
            prefix_len = len(base_prefix)
            base_prefix.append(cell[0])
            search(individualize(partition, ci, cell[0]), depth + 1, True)
            explored = [cell[0]]
            for v in cell[1:]:
                if any(same_orbit(u, v, prefix_len) for u in explored):
                    continue
                search(individualize(partition, ci, v), depth + 1, False)
                explored.append(v)
            return False
        for v in cell:
            if search(individualize(partition, ci, v), depth + 1, False):
                return True
        return False

    search([list(c) for c in partition0], 0, True)
    order = group_order(generators, nv)
    return AutReport(order, tuple(generators), order == 1)


# --- structure encodings --------------------------------------------------------

def latin_colored_graph(square: LatinSquare) -> ColoredGraph:
    """3n point vertices (one color) plus n^2 cell vertices; cells join their points."""
    n = square.n
    edges = []
    for r in range(n):
        for c, e in enumerate(square.grid[r]):
            cv = 3 * n + r * n + c
            edges.append((cv, r))
            edges.append((cv, n + c))
            edges.append((cv, 2 * n + e))
    graph = Graph(3 * n + n * n, frozenset((min(a, b), max(a, b)) for a, b in edges))
    colors = (0,) * (3 * n) + (1,) * (n * n)
    return ColoredGraph(graph, colors)


def sts_colored_graph(system: Sts) -> ColoredGraph:
    n = system.n
    edges = []
    for i, block in enumerate(system.blocks):
        bv = n + i
        for p in block:
            edges.append((p, bv))
    graph = Graph(n + len(system.blocks), frozenset(edges))
    colors = (0,) * n + (1,) * len(system.blocks)
    return ColoredGraph(graph, colors)


def of_colored_graph(f: OneFactorization) -> ColoredGraph:
    n = f.n
    nf = len(f.factors)
    edges = []
    ev = n + nf
    for fi, factor in enumerate(f.factors):
        for a, b in factor:
            edges.append((ev, a))
            edges.append((ev, b))
            edges.append((ev, n + fi))
            ev += 1
    graph = Graph(ev, frozenset((min(a, b), max(a, b)) for a, b in edges))
    colors = (0,) * n + (1,) * nf + (2,) * (ev - n - nf)
    return ColoredGraph(graph, colors)


def _point_perm_restrict(perm: Perm, n: int) -> PointPermutation:
    return PointPermutation(n, tuple(perm[:n]))


def aut_order_latin(
    square: LatinSquare, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> AutReport:
    """Full autoparatopism group order; generators come back as TriplePermutations."""
    report = colored_graph_aut(latin_colored_graph(square), node_budget=node_budget)
    gens = tuple(
        TriplePermutation.from_points(g[: 3 * square.n], square.n)
        for g in report.generators
    )
    return AutReport(report.order, gens, report.is_trivial)


def aut_order_sts(system: Sts, *, node_budget: int = DEFAULT_NODE_BUDGET) -> AutReport:
    """Order of the group of point permutations mapping blocks to blocks."""
    report = colored_graph_aut(sts_colored_graph(system), node_budget=node_budget)
    gens = tuple(_point_perm_restrict(g, system.n) for g in report.generators)
    return AutReport(report.order, gens, report.is_trivial)


def aut_order_of(
    f: OneFactorization, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> AutReport:
    """Order of the group of point permutations permuting the parallel classes."""
    report = colored_graph_aut(of_colored_graph(f), node_budget=node_budget)
    gens = tuple(_point_perm_restrict(g, f.n) for g in report.generators)
    return AutReport(report.order, gens, report.is_trivial)
