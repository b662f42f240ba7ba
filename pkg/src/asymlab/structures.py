"""Core domain types, validation, and bit-exact serialization.

All types are immutable after construction and safe to share between
concurrent tasks. Validation is pure: validators either return a canonical
instance or raise a subclass of InvalidStructure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    EdgeMissing,
    EdgeRepeated,
    FactorNotPerfectMatching,
    InadmissibleOrder,
    InvalidStructure,
    MalformedBlock,
    OddOrder,
    OutOfRange,
    PairCoveredTwice,
    PairUncovered,
    RepeatInColumn,
    RepeatInRow,
)

Grid = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Cell:
    """One grid position of a Latin square, recorded as the triple (row, column, entry)."""

    row: int
    col: int
    entry: int


@dataclass(frozen=True)
class LatinSquare:
    n: int
    grid: Grid

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(tuple(r) for r in self.grid))


@dataclass(frozen=True)
class LatinRectangle:
    """k completed rows of an order-n square; extension appends a row."""

    n: int
    rows: Grid

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def k(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Sts:
    """Steiner triple system: blocks sorted internally and lexicographically."""

    n: int
    blocks: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))


@dataclass(frozen=True)
class OneFactorization:
    """Partition of the edges of K_n into n-1 perfect matchings, canonically ordered."""

    n: int
    factors: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple(tuple(tuple(e) for e in f) for f in self.factors)
        )


@dataclass(frozen=True)
class ZeroOneMatrix:
    n: int
    entries: Grid

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(r) for r in self.entries))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[j] for r in self.entries) for j in range(self.n))

    def common_line_sum(self) -> int | None:
        """The shared row/column sum when the matrix is regular, else None."""
        sums = set(self.row_sums()) | set(self.col_sums())
        return sums.pop() if len(sums) == 1 else None


@dataclass(frozen=True)
class PointPermutation:
    n: int
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(self.n)):
            raise InvalidStructure(f"not a permutation of 0..{self.n - 1}: {image}")

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse(self) -> "PointPermutation":
        inv = [0] * self.n
        for i, j in enumerate(self.image):
            inv[j] = i
        return PointPermutation(self.n, tuple(inv))

    def compose(self, other: "PointPermutation") -> "PointPermutation":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return PointPermutation(self.n, tuple(self.image[x] for x in other.image))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.image) if i == j)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..v-1."""

    v: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for a, b in self.edges:
            if a == b:
                raise InvalidStructure(f"loop at vertex {a}")
            if not (0 <= a < self.v and 0 <= b < self.v):
                raise InvalidStructure(f"edge ({a},{b}) outside 0..{self.v - 1}")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.v)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    def degree(self, u: int) -> int:
        return len(self.neighbors[u])

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def valency(self) -> int | None:
        """Common degree if regular, else None."""
        degs = {len(s) for s in self.neighbors}
        return degs.pop() if len(degs) == 1 else None


def graph_from_edges(v: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph(v, frozenset((min(a, b), max(a, b)) for a, b in edges))


# --- validators ---------------------------------------------------------------

def validate_latin(n: int, grid: Sequence[Sequence[int]]) -> LatinSquare:
    """Check the Latin property and return the square; the grid is kept verbatim."""
    if n < 1:
        raise InadmissibleOrder(n, "order must be positive")
    if len(grid) != n or any(len(row) != n for row in grid):
        raise InvalidStructure(f"grid is not {n}x{n}")
    for i, row in enumerate(grid):
        seen: set[int] = set()
        for s in row:
            if not 0 <= s < n:
                raise OutOfRange("symbol", s, n)
            if s in seen:
                raise RepeatInRow(i, s)
            seen.add(s)
    for j in range(n):
        seen = set()
        for i in range(n):
            s = grid[i][j]
            if s in seen:
                raise RepeatInColumn(j, s)
            seen.add(s)
    return LatinSquare(n, tuple(tuple(row) for row in grid))


def validate_rectangle(n: int, rows: Sequence[Sequence[int]]) -> LatinRectangle:
    """A k x n Latin rectangle: rows are permutations, no column repeats."""
    k = len(rows)
    if k > n:
        raise InvalidStructure(f"{k} rows exceed order {n}")
    if any(len(row) != n for row in rows):
        raise InvalidStructure(f"rows are not length {n}")
    for i, row in enumerate(rows):
        seen: set[int] = set()
        for s in row:
            if not 0 <= s < n:
                raise OutOfRange("symbol", s, n)
            if s in seen:
                raise RepeatInRow(i, s)
            seen.add(s)
    for j in range(n):
        seen = set()
        for i in range(k):
            s = rows[i][j]
            if s in seen:
                raise RepeatInColumn(j, s)
            seen.add(s)
    return LatinRectangle(n, tuple(tuple(row) for row in rows))


def validate_sts(n: int, blocks: Iterable[Sequence[int]]) -> Sts:
    """Check admissibility and exact pair coverage; return blocks in canonical order."""
    if n < 3 or n % 6 not in (1, 3):
        raise InadmissibleOrder(n, "n must be 1 or 3 (mod 6) and at least 3")
    canon = []
    for b in blocks:
        bt = tuple(sorted(b))
        if len(bt) != 3 or len(set(bt)) != 3:
            raise MalformedBlock(tuple(b))
        for p in bt:
            if not 0 <= p < n:
                raise OutOfRange("point", p, n)
        canon.append(bt)
    canon.sort()
    covered: dict[tuple[int, int], tuple[int, ...]] = {}
    for bt in canon:
        for pair in combinations(bt, 2):
            if pair in covered:
                raise PairCoveredTwice(pair)
            covered[pair] = bt
    for pair in combinations(range(n), 2):
        if pair not in covered:
            raise PairUncovered(pair)
    return Sts(n, tuple(canon))


def validate_one_factorization(
    n: int, factors: Iterable[Iterable[Sequence[int]]]
) -> OneFactorization:
    """Check the parallel-class partition of K_n's edges; canonical order returned."""
    if n % 2 != 0 or n < 2:
        raise OddOrder(n)
    canon_factors = []
    for idx, f in enumerate(factors):
        edges = []
        touched: set[int] = set()
        for e in f:
            a, b = e
            if a == b:
                raise FactorNotPerfectMatching(idx, f"degenerate edge ({a},{b})")
            for p in (a, b):
                if not 0 <= p < n:
                    raise OutOfRange("point", p, n)
                if p in touched:
                    raise FactorNotPerfectMatching(idx, f"point {p} matched twice")
                touched.add(p)
            edges.append((min(a, b), max(a, b)))
        if len(touched) != n:
            missing = min(set(range(n)) - touched)
            raise FactorNotPerfectMatching(idx, f"point {missing} unmatched")
        canon_factors.append(tuple(sorted(edges)))
    canon_factors.sort()
    seen_edges: set[tuple[int, int]] = set()
    for f in canon_factors:
        for e in f:
            if e in seen_edges:
                raise EdgeRepeated(e)
            seen_edges.add(e)
    for pair in combinations(range(n), 2):
        if pair not in seen_edges:
            raise EdgeMissing(pair)
    return OneFactorization(n, tuple(canon_factors))


def validate_matrix(n: int, entries: Sequence[Sequence[int]]) -> ZeroOneMatrix:
    if len(entries) != n or any(len(row) != n for row in entries):
        raise InvalidStructure(f"matrix is not {n}x{n}")
    for row in entries:
        for x in row:
            if x not in (0, 1):
                raise OutOfRange("entry", x, 2)
    return ZeroOneMatrix(n, tuple(tuple(row) for row in entries))


def cells_of(square: LatinSquare) -> frozenset[Cell]:
    """The n^2 triples (row, column, entry) read off the grid."""
    return frozenset(
        Cell(r, c, square.grid[r][c]) for r in range(square.n) for c in range(square.n)
    )


# --- serialization ------------------------------------------------------------
#
# File formats:
#   Latin square   {"kind":"latin","n":N,"grid":[[...],...]}  or  plain text,
#                  n lines of n space-separated integers
#   STS            {"kind":"sts","n":N,"blocks":[[a,b,c],...]}   canonical order
#   1-factorization{"kind":"of","n":N,"factors":[[[a,b],...],...]} canonical order
#   matrix         plain text, n lines of n characters '0'/'1'
#   permutation    one line of space-separated images

Structure = LatinSquare | Sts | OneFactorization


def to_json(x: Structure) -> str:
    if isinstance(x, LatinSquare):
        doc = {"kind": "latin", "n": x.n, "grid": [list(r) for r in x.grid]}
    elif isinstance(x, Sts):
        doc = {"kind": "sts", "n": x.n, "blocks": [list(b) for b in x.blocks]}
    elif isinstance(x, OneFactorization):
        doc = {
            "kind": "of",
            "n": x.n,
            "factors": [[list(e) for e in f] for f in x.factors],
        }
    else:
        raise TypeError(f"unsupported structure {type(x).__name__}")
    return json.dumps(doc, separators=(",", ":"))


def from_json(text: str) -> Structure:
    doc = json.loads(text)
    kind = doc.get("kind")
    if kind == "latin":
        return validate_latin(doc["n"], doc["grid"])
    if kind == "sts":
        return validate_sts(doc["n"], doc["blocks"])
    if kind == "of":
        return validate_one_factorization(doc["n"], doc["factors"])
    raise InvalidStructure(f"unknown structure kind {kind!r}")


def latin_to_text(x: LatinSquare) -> str:
    return "\n".join(" ".join(str(s) for s in row) for row in x.grid) + "\n"


def latin_from_text(text: str) -> LatinSquare:
    rows = [[int(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
    return validate_latin(len(rows), rows)


def matrix_to_text(m: ZeroOneMatrix) -> str:
    return "\n".join("".join(str(x) for x in row) for row in m.entries) + "\n"


def matrix_from_text(text: str) -> ZeroOneMatrix:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    try:
        entries = [[int(ch) for ch in line] for line in lines]
    except ValueError as exc:
        raise InvalidStructure(f"matrix lines must be '0'/'1' characters: {exc}") from exc
    return validate_matrix(len(entries), entries)


def point_permutation_to_text(p: PointPermutation) -> str:
    return " ".join(str(i) for i in p.image) + "\n"


def point_permutation_from_text(text: str) -> PointPermutation:
    image = tuple(int(tok) for tok in text.split())
    return PointPermutation(len(image), image)
