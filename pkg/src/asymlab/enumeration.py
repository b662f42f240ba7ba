"""Exhaustive labeled enumeration of the three structure kinds at desk scale.

Enumeration order is fully pinned: Latin squares grow row by row with candidate
rows in ascending lexicographic order; STS construction always covers the
lexicographically least uncovered pair, candidate blocks ascending; parallel
classes of a 1-factorization always match the least unmatched vertex, candidate
partners ascending, classes keyed by the partner of point 0 in ascending order.
Runs are therefore reproducible, and the search tree can be cut at a fixed
depth into frames that form a deterministic parallel work queue.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Callable, Iterable, Sequence, TypeVar

from .errors import CapExceeded, InadmissibleOrder, OddOrder
from .structures import (
    Graph,
    LatinRectangle,
    LatinSquare,
    OneFactorization,
    Sts,
)

LATIN_FULL_CAP = 6
LATIN_REDUCED_CAP = 7
STS_CAP = 9
STS_BUDGET_CAP = 13
OF_CAP = 8
SPLIT_DEPTH = 2

T = TypeVar("T")


def _pooled(frames: Sequence[T], fn: Callable[[T], object], jobs: int) -> list:
    """Apply fn to every frame; results come back in frame order for any job count."""
    if jobs <= 1 or len(frames) <= 1:
        return [fn(f) for f in frames]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, frames))


# --- Latin squares -------------------------------------------------------------

def extension_rows(rect: LatinRectangle) -> tuple[tuple[int, ...], ...]:
    """All rows that can be appended to the rectangle, ascending lexicographically."""
    n = rect.n
    col_masks = [0] * n
    for row in rect.rows:
        for c, s in enumerate(row):
            col_masks[c] |= 1 << s
    return tuple(_row_candidates(n, col_masks, None))


def _row_candidates(n: int, col_masks: Sequence[int], first_symbol: int | None):
    full = (1 << n) - 1
    row = [0] * n
    out: list[tuple[int, ...]] = []

    def place(c: int, used: int):
        if c == n:
            out.append(tuple(row))
            return
        avail = full & ~used & ~col_masks[c]
        while avail:
            low = avail & -avail
            row[c] = low.bit_length() - 1
            place(c + 1, used | low)
            avail ^= low

    if first_symbol is None:
        place(0, 0)
    else:
        bit = 1 << first_symbol
        if not (col_masks[0] & bit):
            row[0] = first_symbol
            place(1, bit)
    return out


def _latin_frames(n: int, reduced: bool, depth: int):
    """All (rows, col_masks) states with min(depth, n) completed rows."""
    frames: list[tuple[tuple, tuple[int, ...]]] = [((), (0,) * n)]
    for k in range(min(depth, n)):
        new = []
        for rows, masks in frames:
            if reduced and k == 0:
                cands: Iterable[tuple[int, ...]] = [tuple(range(n))]
            else:
                cands = _row_candidates(n, masks, k if reduced else None)
            for cand in cands:
                new_masks = tuple(m | (1 << s) for m, s in zip(masks, cand))
                new.append((rows + (cand,), new_masks))
        frames = new
    return frames


def enumerate_latin(
    n: int,
    visitor: Callable[[LatinSquare], None] | None = None,
    *,
    count_only: bool = False,
    reduced_only: bool = False,
    jobs: int = 1,
    cap: int | None = None,
    split_depth: int = SPLIT_DEPTH,
) -> int:
    """Visit every labeled (or reduced) order-n Latin square once; return the count."""
    if n < 1:
        raise InadmissibleOrder(n, "order must be positive")
    limit = cap if cap is not None else (LATIN_REDUCED_CAP if reduced_only else LATIN_FULL_CAP)
    if n > limit:
        raise CapExceeded("Latin enumeration", n, limit)
    emit = None if count_only else visitor

    def complete(rows: tuple, masks: tuple[int, ...]) -> int:
        k = len(rows)
        if k == n:
            if emit is not None:
                emit(LatinSquare(n, rows))
            return 1
        if reduced_only and k == 0:
            cands: Iterable[tuple[int, ...]] = [tuple(range(n))]
        else:
            cands = _row_candidates(n, masks, k if reduced_only else None)
        total = 0
        for cand in cands:
            new_masks = tuple(m | (1 << s) for m, s in zip(masks, cand))
            total += complete(rows + (cand,), new_masks)
        return total

    frames = _latin_frames(n, reduced_only, split_depth)
    return sum(_pooled(frames, lambda f: complete(*f), jobs))


# --- Steiner triple systems -----------------------------------------------------

def _sts_tables(n: int):
    pair_index = {}
    for idx, pair in enumerate(combinations(range(n), 2)):
        pair_index[pair] = idx
    pairs = list(pair_index)
    blocks = []
    for block in combinations(range(n), 3):
        mask = 0
        for pair in combinations(block, 2):
            mask |= 1 << pair_index[pair]
        blocks.append((block, mask))
    by_pair: list[list[tuple[tuple, int]]] = [[] for _ in pairs]
    for block, mask in blocks:
        for pair in combinations(block, 2):
            by_pair[pair_index[pair]].append((block, mask))
    return pairs, by_pair


def enumerate_sts(
    n: int,
    visitor: Callable[[Sts], None] | None = None,
    *,
    count_only: bool = False,
    jobs: int = 1,
    cap: int | None = None,
    budget: bool = False,
    split_depth: int = SPLIT_DEPTH,
) -> int:
    """Visit every labeled STS(n) once via exact cover of the pair set."""
    if n < 3 or n % 6 not in (1, 3):
        raise InadmissibleOrder(n, "n must be 1 or 3 (mod 6) and at least 3")
    limit = cap if cap is not None else (STS_BUDGET_CAP if budget and count_only else STS_CAP)
    if n > limit:
        raise CapExceeded("STS enumeration", n, limit)
    pairs, by_pair = _sts_tables(n)
    all_covered = (1 << len(pairs)) - 1
    emit = None if count_only else visitor

    def descend(covered: int, chosen: tuple, stop_depth: int, sink: list | None) -> int:
        if covered == all_covered:
            if emit is not None:
                emit(Sts(n, tuple(sorted(chosen))))
            return 1
        if sink is not None and len(chosen) == stop_depth:
            sink.append((covered, chosen))
            return 0
        p = ~covered & all_covered
        p = (p & -p).bit_length() - 1
        total = 0
        for block, mask in by_pair[p]:
            if not (mask & covered):
                total += descend(covered | mask, chosen + (block,), stop_depth, sink)
        return total

    frames: list[tuple[int, tuple]] = []
    head = descend(0, (), split_depth, frames)
    counts = _pooled(frames, lambda f: descend(f[0], f[1], -1, None), jobs)
    return head + sum(counts)


# --- one-factorizations -----------------------------------------------------------

def _of_tables(n: int):
    pair_index = {}
    for idx, pair in enumerate(combinations(range(n), 2)):
        pair_index[pair] = idx
    return pair_index


def _matchings_containing(
    n: int, avail: int, pair_index: dict, forced: tuple[int, int]
) -> list[tuple[tuple[tuple[int, int], ...], int]]:
    """Perfect matchings from available edges containing the forced edge.

    Matching construction always pairs the least unmatched vertex with its
    candidates in ascending order, so the output order is deterministic.
    """
    out: list[tuple[tuple[tuple[int, int], ...], int]] = []
    edges: list[tuple[int, int]] = []

    def rec(unmatched: int, mask: int):
        if not unmatched:
            out.append((tuple(edges), mask))
            return
        v = (unmatched & -unmatched).bit_length() - 1
        rest = unmatched & ~(1 << v)
        m = rest
        while m:
            low = m & -m
            u = low.bit_length() - 1
            idx = pair_index[(v, u)]
            if avail >> idx & 1:
                edges.append((v, u))
                rec(rest & ~low, mask | (1 << idx))
                edges.pop()
            m ^= low
    a, b = forced
    idx = pair_index[(a, b)]
    if not (avail >> idx & 1):
        return out
    edges.append((a, b))
    rec(((1 << n) - 1) & ~(1 << a) & ~(1 << b), 1 << idx)
    edges.pop()
    return out


def enumerate_one_factorizations(
    n: int,
    visitor: Callable[[OneFactorization], None] | None = None,
    *,
    count_only: bool = False,
    jobs: int = 1,
    cap: int | None = None,
    split_depth: int = 1,
) -> int:
    """Visit every labeled 1-factorization of K_n once.

    The factor containing edge (0, j) is built j-th, which enumerates each
    unordered factor set exactly once and in canonical order.
    """
    if n < 2 or n % 2:
        raise OddOrder(n)
    limit = cap if cap is not None else OF_CAP
    if n > limit:
        raise CapExceeded("1-factorization enumeration", n, limit)
    pair_index = _of_tables(n)
    all_edges = (1 << len(pair_index)) - 1
    emit = None if count_only else visitor

    def descend(avail: int, factors: tuple, stop_depth: int, sink: list | None) -> int:
        j = len(factors) + 1
        if j == n:
            if emit is not None:
                emit(OneFactorization(n, tuple(sorted(factors))))
            return 1
        if sink is not None and len(factors) == stop_depth:
            sink.append((avail, factors))
            return 0
        total = 0
        for edges, mask in _matchings_containing(n, avail, pair_index, (0, j)):
            total += descend(avail & ~mask, factors + (tuple(sorted(edges)),), stop_depth, sink)
        return total

    frames: list = []
    head = descend(all_edges, (), split_depth, frames)
    counts = _pooled(frames, lambda f: descend(f[0], f[1], -1, None), jobs)
    return head + sum(counts)


def count_one_factors(graph: Graph) -> int:
    """Exact number of perfect matchings; 0 when none exists."""
    n = graph.v
    if n % 2:
        return 0
    if n == 0:
        return 1
    adj = [0] * n
    for a, b in graph.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    def rec(unmatched: int) -> int:
        if not unmatched:
            return 1
        v = (unmatched & -unmatched).bit_length() - 1
        rest = unmatched & ~(1 << v)
        total = 0
        m = adj[v] & rest
        while m:
            low = m & -m
            total += rec(rest & ~low)
            m ^= low
        return total

    return rec((1 << n) - 1)
