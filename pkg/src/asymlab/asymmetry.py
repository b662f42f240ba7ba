"""Quantitative machinery: fixed-structure statistics under a permutation,
verification of the proof inequalities on real data, log-domain evaluation of
the displayed bounds, and empirical asymmetric-proportion reports.

Every inequality checked here is a theorem, so a violation is surfaced as the
hard error BoundViolated rather than a report entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .enumeration import (
    count_one_factors,
    enumerate_latin,
    enumerate_one_factorizations,
    enumerate_sts,
)
from .errors import (
    BoundViolated,
    CapExceeded,
    HasFixedVertex,
    InvalidStructure,
    MissingEpsilon,
    NotAnAutomorphism,
    NotFound,
    NotRegular,
)
from .logscalar import LogScalar, ln_factorial, ln_int
from .permgroup import (
    AutReport,
    PointPermutation,
    TriplePermutation,
    apply_triple_perm_raw,
    aut_order_latin,
    aut_order_of,
    aut_order_sts,
    compose_perm,
    group_elements,
    identity_perm,
    invert_perm,
    is_autoparatopism,
    transform_latin,
)
from .structures import (
    Graph,
    LatinSquare,
    OneFactorization,
    Sts,
    validate_latin,
    validate_sts,
)

COUNT_FIXED_LATIN_CAP = 5


@dataclass(frozen=True)
class FixStats:
    """What a single permutation fixes: points, objects, and object orbits."""

    kind: str
    fixed_points: int | None
    fixed_objects: int
    orbit_count: int
    bound_values: dict[str, LogScalar]


@dataclass(frozen=True)
class AsymmetryReport:
    kind: str
    n: int
    total: int
    with_nontrivial_aut: int
    proportion: Fraction
    aut_order_histogram: dict[int, int]


# --- fixed cells of Latin squares ------------------------------------------------

def fixed_cells(g: TriplePermutation, square: LatinSquare) -> int:
    """Number of cells the autoparatopism g fixes; g must stabilize the square."""
    if not is_autoparatopism(g, square):
        raise NotAnAutomorphism("the triple permutation does not fix the cell set")
    return _fixed_cells_unchecked(g, square)


def _fixed_cells_unchecked(g: TriplePermutation, square: LatinSquare) -> int:
    count = 0
    for r in range(square.n):
        row = square.grid[r]
        for c, e in enumerate(row):
            if apply_triple_perm_raw(g, r, c, e) == (r, c, e):
                count += 1
    return count


def forced_fixed_positions(g: TriplePermutation) -> int:
    """Upper bound, from g's cycle structure alone, on cells any g-fixed square fixes.

    With sigma the identity this counts fixed (row, column) position pairs; when
    g moves the classes a fixed cell is pinned down by one coordinate cycle, so
    the count of fixed points of the forced composition is the cap.
    """
    fr, fc, fe = g.fr, g.fc, g.fe
    n = g.n

    def nfix(p: Sequence[int]) -> int:
        return sum(1 for i, x in enumerate(p) if i == x)

    sigma = g.sigma
    if sigma == (0, 1, 2):
        return nfix(fr) * nfix(fc)
    if sigma == (1, 0, 2):
        return nfix(compose_perm(fc, fr))
    if sigma == (0, 2, 1):
        return nfix(compose_perm(fe, fc))
    if sigma == (2, 1, 0):
        return nfix(compose_perm(fe, fr))
    if sigma == (1, 2, 0):
        return nfix(compose_perm(fe, compose_perm(fc, fr)))
    return nfix(compose_perm(fc, compose_perm(fe, fr)))  # sigma == (2, 0, 1)


def latin_fix_stats(g: TriplePermutation, square: LatinSquare) -> FixStats:
    """FixStats for a Latin square: fixed cells and cell orbits under g."""
    fixed = fixed_cells(g, square)
    n = square.n
    perm3 = g.to_points()
    cell_of = {}
    for r in range(n):
        for c, e in enumerate(square.grid[r]):
            cell_of[(r, n + c, 2 * n + e)] = False
    orbit_count = 0
    for key in cell_of:
        if cell_of[key]:
            continue
        orbit_count += 1
        cur = key
        while not cell_of[cur]:
            cell_of[cur] = True
            cur = tuple(sorted(perm3[p] for p in cur))
    bounds = {
        "fixed_cells_max": LogScalar.from_int(
            n * n if g.is_identity() else (n if not g.class_fixing() else n * n // 4)
        ),
        "fixed_squares_max": LogScalar.from_ln(
            Fraction(n * n + forced_fixed_positions(g), 2) * ln_int(n)
        ),
    }
    return FixStats("latin", None, fixed, orbit_count, bounds)


# --- STS statistics ---------------------------------------------------------------

def sts_fixed_block_cap(n: int) -> Fraction:
    """Largest possible number of setwise-fixed blocks for a non-identity automorphism.

    A fixed block count is at most m(m-1)/6 + (n-m)/2 when m points are fixed:
    the fixed points carry a subsystem, and every further fixed block holds at
    least two non-fixed points, each lying in at most one fixed block. The
    expression is convex in m, so the maximum over 0 <= m <= (n-1)/2 sits at an
    endpoint: max((n^2+2n+9)/24, n/2).
    """
    return max(Fraction(n * n + 2 * n + 9, 24), Fraction(n, 2))


def sts_fix_stats(g: PointPermutation, system: Sts) -> FixStats:
    """Fixed points, fixed blocks, and block orbits of an STS automorphism.

    For non-identity g this verifies m <= (n-1)/2, the fixed-block cap of
    sts_fixed_block_cap, r < 5n^2/48 (for n >= 7; a single transposition on the
    one-block system already refutes the strict form at n = 3), and that the
    fixed points carry a subsystem whenever m >= 3.
    """
    n = system.n
    blocks = system.blocks
    index = {b: i for i, b in enumerate(blocks)}
    img = []
    for b in blocks:
        ib = tuple(sorted(g.image[p] for p in b))
        if ib not in index:
            raise NotAnAutomorphism(f"block {b} maps to non-block {ib}")
        img.append(index[ib])
    m = len(g.fixed_points())
    fixed_blocks = sum(1 for i, j in enumerate(img) if i == j)
    orbit_count = _cycle_count(img)
    block_cap = sts_fixed_block_cap(n)
    if not g.is_identity():
        if 2 * m > n - 1:
            raise BoundViolated(f"m={m} exceeds (n-1)/2 at n={n}")
        if fixed_blocks > block_cap:
            raise BoundViolated(f"{fixed_blocks} fixed blocks exceed {block_cap}")
        if n >= 7 and 48 * orbit_count >= 5 * n * n:
            raise BoundViolated(f"r={orbit_count} not below 5n^2/48 at n={n}")
        if m >= 3:
            _check_sub_sts(g, system, m)
    bounds = {
        "fixed_points_max": LogScalar.from_fraction(Fraction(n - 1, 2)),
        "fixed_blocks_max": LogScalar.from_fraction(block_cap),
        "block_orbits_max": LogScalar.from_fraction(Fraction(5 * n * n, 48)),
    }
    return FixStats("sts", m, fixed_blocks, orbit_count, bounds)


def _cycle_count(img: Sequence[int]) -> int:
    seen = [False] * len(img)
    count = 0
    for start in range(len(img)):
        if seen[start]:
            continue
        count += 1
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = img[cur]
    return count


def _check_sub_sts(g: PointPermutation, system: Sts, m: int):
    fixed = g.fixed_points()
    relabel = {p: i for i, p in enumerate(fixed)}
    fixed_set = set(fixed)
    sub_blocks = [
        tuple(relabel[p] for p in b) for b in system.blocks if set(b) <= fixed_set
    ]
    try:
        validate_sts(m, sub_blocks)
    except InvalidStructure as exc:
        raise BoundViolated(f"fixed points do not carry a subsystem: {exc}") from exc


# --- one-factorization statistics ---------------------------------------------------

def ep_fix_stats(g: PointPermutation, f: OneFactorization) -> FixStats:
    """Fixed points r, setwise-fixed classes s, and class orbits m for g.

    For non-identity g with r > 0 this verifies r <= n/2, s <= r-1, and
    m <= r + (n-r)/2 <= 3n/4; with r = 0 it verifies s against the fixed
    1-factor lemma bound (8e(n-1))^(n/4).
    """
    n = f.n
    index = {fac: i for i, fac in enumerate(f.factors)}
    img = []
    for fac in f.factors:
        ifac = tuple(
            sorted((min(g.image[a], g.image[b]), max(g.image[a], g.image[b])) for a, b in fac)
        )
        if ifac not in index:
            raise NotAnAutomorphism(f"factor {fac} maps to non-factor")
        img.append(index[ifac])
    r = len(g.fixed_points())
    s = sum(1 for i, j in enumerate(img) if i == j)
    m = _cycle_count(img)
    lemma_bound = LogScalar.from_ln(
        Fraction(n, 4) * (ln_int(8 * (n - 1)) + 1)
    )
    if not g.is_identity():
        if r > 0:
            if 2 * r > n:
                raise BoundViolated(f"r={r} exceeds n/2 at n={n}")
            if s > r - 1:
                raise BoundViolated(f"s={s} exceeds r-1={r - 1}")
            if 2 * m > 2 * r + (n - r):
                raise BoundViolated(f"m={m} exceeds r+(n-r)/2")
            if 4 * m > 3 * n:
                raise BoundViolated(f"m={m} exceeds 3n/4 at n={n}")
        else:
            if m > n - 1:
                raise BoundViolated(f"m={m} exceeds the class count {n - 1}")
            if s > 0 and LogScalar.from_int(s) > lemma_bound:
                raise BoundViolated(f"s={s} violates the fixed 1-factor lemma bound")
    bounds = {
        "fixed_points_max": LogScalar.from_fraction(Fraction(n, 2)),
        "class_orbits_max": LogScalar.from_fraction(Fraction(3 * n, 4)),
        "lemma_fixed_classes_max": lemma_bound,
    }
    return FixStats("of", r, s, m, bounds)


# --- fixed 1-factors of a graph -------------------------------------------------------

def count_fixed_one_factors(graph: Graph, g: PointPermutation) -> int:
    """Perfect matchings M with g(M) = M, for a fixed-point-free automorphism g.

    The count is verified against the lemma bound (8ek)^(n/4).
    """
    n = graph.v
    k = graph.valency()
    if k is None:
        degs = sorted(range(n), key=graph.degree)
        raise NotRegular(degs[0], degs[-1], graph.degree(degs[0]), graph.degree(degs[-1]))
    for a, b in graph.edges:
        if not graph.adjacent(g.image[a], g.image[b]):
            raise NotAnAutomorphism(f"edge ({a},{b}) maps to a non-edge")
    for p in range(n):
        if g.image[p] == p:
            raise HasFixedVertex(p)
    count = 0
    for matching in _perfect_matchings(graph):
        image = frozenset(
            (min(g.image[a], g.image[b]), max(g.image[a], g.image[b])) for a, b in matching
        )
        if image == matching:
            count += 1
    if count:
        bound = LogScalar.from_ln(Fraction(n, 4) * (ln_int(8 * k) + 1))
        if LogScalar.from_int(count) > bound:
            raise BoundViolated(f"{count} fixed 1-factors exceed (8ek)^(n/4)")
    return count


def _perfect_matchings(graph: Graph):
    n = graph.v
    if n % 2:
        return
    adj = [0] * n
    for a, b in graph.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    edges: list[tuple[int, int]] = []

    def rec(unmatched: int):
        if not unmatched:
            yield frozenset(edges)
            return
        v = (unmatched & -unmatched).bit_length() - 1
        rest = unmatched & ~(1 << v)
        m = adj[v] & rest
        while m:
            low = m & -m
            u = low.bit_length() - 1
            edges.append((v, u))
            yield from rec(rest & ~low)
            edges.pop()
            m ^= low

    yield from rec((1 << n) - 1)


# --- counting Latin squares fixed by a given paratopism ---------------------------------

def count_fixed_latin(g: TriplePermutation, n: int, *, cap: int = COUNT_FIXED_LATIN_CAP) -> int:
    """Labeled order-n squares admitting g, by filtering the full enumeration."""
    if n > cap:
        raise CapExceeded("fixed-square counting", n, cap)
    if g.n != n:
        raise InvalidStructure(f"permutation degree {g.n} does not match n={n}")
    count = 0

    def visit(square: LatinSquare):
        nonlocal count
        if is_autoparatopism(g, square):
            count += 1

    enumerate_latin(n, visit)
    r = forced_fixed_positions(g)
    if count:
        bound = LogScalar.from_ln(Fraction(n * n + r, 2) * ln_int(n))
        if LogScalar.from_int(count) > bound:
            raise BoundViolated(
                f"{count} fixed squares exceed n^((n^2+r)/2) with r={r}"
            )
    return count


# --- displayed bound formulas -------------------------------------------------------------

BOUND_KINDS = (
    "latin_lower",
    "latin_aut_upper",
    "sts_lower",
    "sts_aut_upper",
    "ep_lower",
    "ep_aut_upper",
)


def bound_eval(kind: str, n: int, eps: float | Fraction | None = None) -> LogScalar:
    """Natural log of one of the displayed bounds, at 128-bit working precision."""
    if n < 1:
        raise InvalidStructure(f"order must be positive, got {n}")
    if kind == "latin_lower":
        return LogScalar.from_ln(n * ln_factorial(n) - n * n)
    if kind == "latin_aut_upper":
        return LogScalar.from_ln(
            ln_int(6) + 3 * ln_factorial(n) + Fraction(5 * n * n, 8) * ln_int(n)
        )
    if kind == "sts_lower":
        return LogScalar.from_ln(_one_minus_eps(eps) * Fraction(n * n, 6) * ln_int(n))
    if kind == "sts_aut_upper":
        return LogScalar.from_ln(
            ln_factorial(n) + Fraction(5 * n * n, 48) * (ln_int(8 * n) - ln_int(5) + 1)
        )
    if kind == "ep_lower":
        return LogScalar.from_ln(_one_minus_eps(eps) * Fraction(n * n, 2) * ln_int(n))
    if kind == "ep_aut_upper":
        return LogScalar.from_ln(ln_factorial(n) + Fraction(3 * n * n, 8) * ln_int(n))
    raise InvalidStructure(f"unknown bound kind {kind!r}")


def _one_minus_eps(eps):
    if eps is None:
        raise MissingEpsilon("this lower bound carries an epsilon parameter")
    frac = Fraction(eps)
    if not 0 < frac < 1:
        raise MissingEpsilon(f"epsilon must lie in (0,1), got {eps}")
    return 1 - frac


CROSSOVER_SEARCH_CAP = 1_000_000
CROSSOVER_WINDOW = 50


def _admissible_iter(kind: str, start: int, stop: int):
    if kind == "latin":
        return range(max(start, 1), stop)
    if kind == "sts":
        return (n for n in range(max(start, 3), stop) if n % 6 in (1, 3))
    if kind == "ep":
        first = max(start, 2)
        first += first % 2
        return range(first, stop, 2)
    raise InvalidStructure(f"unknown crossover kind {kind!r}")


def crossover_order(kind: str, eps: float | Fraction | None = None) -> int:
    """Least admissible n0 with aut_upper < lower throughout [n0, n0+50].

    The window guards against non-monotone small-n noise; for the latin kind
    the lower bound carries no epsilon and eps is ignored.
    """
    lower_kind, upper_kind = {
        "latin": ("latin_lower", "latin_aut_upper"),
        "sts": ("sts_lower", "sts_aut_upper"),
        "ep": ("ep_lower", "ep_aut_upper"),
    }[kind]
    use_eps = None if kind == "latin" else eps
    if kind != "latin" and eps is None:
        raise MissingEpsilon(f"crossover for {kind} needs an epsilon")
    cache: dict[int, bool] = {}

    def holds(n: int) -> bool:
        if n not in cache:
            cache[n] = bound_eval(upper_kind, n, use_eps) < bound_eval(lower_kind, n, use_eps)
        return cache[n]

    for n0 in _admissible_iter(kind, 1, CROSSOVER_SEARCH_CAP):
        if not holds(n0):
            continue
        if all(holds(m) for m in _admissible_iter(kind, n0, n0 + CROSSOVER_WINDOW + 1)):
            return n0
    raise NotFound(f"no crossover below {CROSSOVER_SEARCH_CAP} for kind {kind}")


# --- isomorphism-class decompositions ---------------------------------------------------
#
# Classes are orbits under the full group (all paratopisms for Latin squares,
# all point permutations otherwise). Orbit sizes give every member's
# automorphism group order by orbit-stabilizer; the engine computes the order
# on one representative per class and the two are required to agree.

@dataclass
class StructureClassData:
    """One isomorphism class: representative, labeled size, group data, members."""

    rep: object
    size: int
    aut_order: int
    aut_generators: tuple
    members: object        # latin: ndarray of flat grids; sts/of: list of structures
    conjugators: object    # maps rep -> member; latin: ndarray of 3n-point perms


_LATIN_CLASSES: dict[int, tuple[StructureClassData, ...]] = {}
_STS_CLASSES: dict[int, tuple[StructureClassData, ...]] = {}
_OF_CLASSES: dict[int, tuple[StructureClassData, ...]] = {}


def _paratopism_generators(n: int) -> list[TriplePermutation]:
    ident = identity_perm(n)
    gens = []
    if n >= 2:
        swap = list(ident)
        swap[0], swap[1] = 1, 0
        swap = tuple(swap)
        cyc = tuple((i + 1) % n for i in range(n))
        for which in range(3):
            maps = [ident, ident, ident]
            maps[which] = swap
            gens.append(TriplePermutation((0, 1, 2), *maps))
            maps = [ident, ident, ident]
            maps[which] = cyc
            gens.append(TriplePermutation((0, 1, 2), *maps))
    gens.append(TriplePermutation((1, 0, 2), ident, ident, ident))
    gens.append(TriplePermutation((1, 2, 0), ident, ident, ident))
    return gens


def latin_paratopy_classes(n: int) -> tuple[StructureClassData, ...]:
    """Paratopy classes of all labeled order-n squares, with members and conjugators."""
    if n in _LATIN_CLASSES:
        return _LATIN_CLASSES[n]
    seeds: list[tuple[int, ...]] = []
    enumerate_latin(
        n, lambda sq: seeds.append(tuple(s for row in sq.grid for s in row)), reduced_only=True
    )
    gens = _paratopism_generators(n)
    tables = []
    for g in gens:
        tr = np.empty((n * n, n), dtype=np.int16)
        tc = np.empty((n * n, n), dtype=np.int16)
        te = np.empty((n * n, n), dtype=np.int16)
        for r in range(n):
            for c in range(n):
                idx = r * n + c
                for e in range(n):
                    r2, c2, e2 = apply_triple_perm_raw(g, r, c, e)
                    tr[idx, e] = r2
                    tc[idx, e] = c2
                    te[idx, e] = e2
        tables.append((tr, tc, te, np.array(g.to_points(), dtype=np.int16)))
    positions = np.arange(n * n)[None, :]
    ident3 = np.arange(3 * n, dtype=np.int16)

    seen: set[bytes] = set()
    classes = []
    full_order = 6 * math.factorial(n) ** 3
    for seed in seeds:
        seed_row = np.array([seed], dtype=np.int16)
        key = seed_row[0].tobytes()
        if key in seen:
            continue
        seen.add(key)
        member_chunks = [seed_row]
        conj_chunks = [ident3[None, :].copy()]
        frontier = member_chunks[0]
        frontier_conj = conj_chunks[0]
        while len(frontier):
            new_rows = []
            new_conjs = []
            for tr, tc, te, p3 in tables:
                r2 = tr[positions, frontier]
                c2 = tc[positions, frontier]
                e2 = te[positions, frontier]
                img = np.empty_like(frontier)
                np.put_along_axis(img, r2 * n + c2, e2, axis=1)
                himg = p3[frontier_conj]
                for row, hrow in zip(img, himg):
                    rkey = row.tobytes()
                    if rkey not in seen:
                        seen.add(rkey)
                        new_rows.append(row)
                        new_conjs.append(hrow)
            if not new_rows:
                break
            frontier = np.array(new_rows)
            frontier_conj = np.array(new_conjs)
            member_chunks.append(frontier)
            conj_chunks.append(frontier_conj)
        members = np.concatenate(member_chunks)
        conjugators = np.concatenate(conj_chunks)
        rep = LatinSquare(n, tuple(tuple(seed[r * n : (r + 1) * n]) for r in range(n)))
        report = aut_order_latin(rep)
        if report.order * len(members) != full_order:
            raise BoundViolated(
                f"orbit-stabilizer mismatch: |Aut|={report.order}, class size {len(members)}"
            )
        classes.append(
            StructureClassData(
                rep, len(members), report.order, report.generators, members, conjugators
            )
        )
    _LATIN_CLASSES[n] = tuple(classes)
    return _LATIN_CLASSES[n]


def _point_orbit_classes(
    structures: list, n: int, transform, build_rep, aut_fn
) -> tuple[StructureClassData, ...]:
    if n >= 2:
        swap = list(range(n))
        swap[0], swap[1] = 1, 0
        gens = [tuple(swap), tuple((i + 1) % n for i in range(n))]
    else:
        gens = []
    ident = identity_perm(n)
    seen: set = set()
    classes = []
    full_order = math.factorial(n)
    for s in structures:
        if s in seen:
            continue
        seen.add(s)
        members = [s]
        conjugators = [ident]
        frontier = [(s, ident)]
        while frontier:
            new = []
            for cur, h in frontier:
                for g in gens:
                    img = transform(g, cur)
                    if img not in seen:
                        seen.add(img)
                        nh = compose_perm(g, h)
                        members.append(img)
                        conjugators.append(nh)
                        new.append((img, nh))
            frontier = new
        rep = build_rep(s)
        report = aut_fn(rep)
        if report.order * len(members) != full_order:
            raise BoundViolated(
                f"orbit-stabilizer mismatch: |Aut|={report.order}, class size {len(members)}"
            )
        classes.append(
            StructureClassData(
                rep, len(members), report.order, report.generators, members, conjugators
            )
        )
    return tuple(classes)


def sts_isomorphism_classes(n: int) -> tuple[StructureClassData, ...]:
    if n in _STS_CLASSES:
        return _STS_CLASSES[n]
    systems: list[tuple] = []
    enumerate_sts(n, lambda s: systems.append(s.blocks))

    def transform(g: tuple, blocks: tuple) -> tuple:
        return tuple(sorted(tuple(sorted(g[p] for p in b)) for b in blocks))

    _STS_CLASSES[n] = _point_orbit_classes(
        systems, n, transform, lambda b: Sts(n, b), aut_order_sts
    )
    return _STS_CLASSES[n]


def of_isomorphism_classes(n: int) -> tuple[StructureClassData, ...]:
    if n in _OF_CLASSES:
        return _OF_CLASSES[n]
    factorizations: list[tuple] = []
    enumerate_one_factorizations(n, lambda f: factorizations.append(f.factors))

    def transform(g: tuple, factors: tuple) -> tuple:
        return tuple(
            sorted(
                tuple(sorted((min(g[a], g[b]), max(g[a], g[b])) for a, b in fac))
                for fac in factors
            )
        )

    _OF_CLASSES[n] = _point_orbit_classes(
        factorizations, n, transform, lambda f: OneFactorization(n, f), aut_order_of
    )
    return _OF_CLASSES[n]


# --- asymmetry reports ----------------------------------------------------------------

def asymmetry_report(kind: str, n: int, *, jobs: int = 1) -> AsymmetryReport:
    """Aggregate automorphism group orders over every labeled structure of the kind.

    The class decomposition supplies each member's group order by
    orbit-stabilizer; the engine's per-representative order and the labeled
    total from the enumerators are consistency-checked against it.
    """
    if kind == "latin":
        classes = latin_paratopy_classes(n)
        total_check = enumerate_latin(n, count_only=True, jobs=jobs)
    elif kind == "sts":
        classes = sts_isomorphism_classes(n)
        total_check = enumerate_sts(n, count_only=True, jobs=jobs)
    elif kind == "of":
        classes = of_isomorphism_classes(n)
        total_check = enumerate_one_factorizations(n, count_only=True, jobs=jobs)
    else:
        raise InvalidStructure(f"unknown report kind {kind!r}")
    total = sum(c.size for c in classes)
    if total != total_check:
        raise BoundViolated(
            f"class decomposition covers {total} structures, enumeration found {total_check}"
        )
    histogram: dict[int, int] = {}
    for c in classes:
        histogram[c.aut_order] = histogram.get(c.aut_order, 0) + c.size
    nontrivial = sum(size for order, size in histogram.items() if order > 1)
    return AsymmetryReport(
        kind, n, total, nontrivial, Fraction(nontrivial, total) if total else Fraction(0),
        dict(sorted(histogram.items())),
    )


# --- exhaustive inequality suites --------------------------------------------------------

@dataclass(frozen=True)
class SuiteResult:
    """Summary of one exhaustive verification run (raises before returning on violation)."""

    kind: str
    n: int
    pairs_checked: int
    details: dict


def _latin_aut_elements(cls_data: StructureClassData, n: int) -> np.ndarray:
    gens = [g.to_points() for g in cls_data.aut_generators]
    elements = group_elements(gens, 3 * n)
    if len(elements) != cls_data.aut_order:
        raise BoundViolated("generator closure does not match the group order")
    return np.array(elements, dtype=np.int16)


def verify_latin_fixed_cell_bounds(n: int) -> SuiteResult:
    """Check the fixed-cell bounds for every autoparatopism of every labeled square.

    Class-moving elements must fix at most n cells; class-fixing non-identity
    elements at most n^2/4 (n >= 4); the identity exactly n^2. Each member's
    automorphism group is materialized by conjugating the representative's
    group, and every (square, automorphism) pair is checked directly.
    """
    classes = latin_paratopy_classes(n)
    three = np.arange(3 * n, dtype=np.int16)
    rvec = np.repeat(np.arange(n, dtype=np.int16), n)
    cvec = np.tile(np.arange(n, dtype=np.int16), n) + n
    pairs = 0
    max_moving = 0
    max_fixing = 0
    for cls_data in classes:
        elements = _latin_aut_elements(cls_data, n)
        m = len(elements)
        members = cls_data.members
        conjugators = cls_data.conjugators
        inv_conj = np.argsort(conjugators, axis=1).astype(np.int16)
        is_id_template = three[None, :]
        for j in range(len(members)):
            h = conjugators[j]
            hinv = inv_conj[j]
            conj = h[elements[:, hinv]]
            grid = members[j]
            evec = grid + 2 * n
            q1 = conj[:, rvec]
            q2 = conj[:, cvec]
            q3 = conj[:, evec]
            rowq = np.where(q1 < n, q1, np.where(q2 < n, q2, q3))
            colq = np.where(
                (q1 >= n) & (q1 < 2 * n),
                q1,
                np.where((q2 >= n) & (q2 < 2 * n), q2, q3),
            )
            entq = q1 + q2 + q3 - rowq - colq
            counts = ((rowq == rvec) & (colq == cvec) & (entq == evec)).sum(axis=1)
            class_fixing = (conj[:, 0] < n) & (conj[:, n] >= n) & (conj[:, n] < 2 * n)
            is_id = (conj == is_id_template).all(axis=1)
            moving = ~class_fixing
            if np.any(counts[moving] > n):
                raise BoundViolated(f"class-moving element fixes more than {n} cells")
            fixing = class_fixing & ~is_id
            if n >= 4 and np.any(4 * counts[fixing] > n * n):
                raise BoundViolated("class-fixing element fixes more than n^2/4 cells")
            if np.any(counts[is_id] != n * n):
                raise BoundViolated("identity does not fix all cells")
            pairs += m
            if np.any(moving):
                max_moving = max(max_moving, int(counts[moving].max()))
            if np.any(fixing):
                max_fixing = max(max_fixing, int(counts[fixing].max()))
    return SuiteResult(
        "latin",
        n,
        pairs,
        {"max_fixed_class_moving": max_moving, "max_fixed_class_fixing": max_fixing},
    )


def fixed_subsquare(g: TriplePermutation, square: LatinSquare) -> LatinSquare | None:
    """The subsquare carried by the fixed rows/columns of a class-fixing automorphism.

    Returns None when g fixes no row or no column. Raises BoundViolated when the
    fixed cells fail to form a Latin subsquare of order at most n/2.
    """
    if not g.class_fixing():
        raise InvalidStructure("subsquares arise only for class-fixing automorphisms")
    rows = [i for i, x in enumerate(g.fr) if i == x]
    cols = [i for i, x in enumerate(g.fc) if i == x]
    if not rows or not cols:
        return None
    if len(rows) != len(cols):
        raise BoundViolated("fixed rows and columns differ in number")
    entries = sorted({square.grid[r][c] for r in rows for c in cols})
    if len(entries) != len(rows):
        raise BoundViolated("fixed cells carry the wrong number of entries")
    if any(g.fe[e] != e for e in entries):
        raise BoundViolated("fixed-position entries are not fixed symbols")
    relabel = {e: i for i, e in enumerate(entries)}
    sub = [[relabel[square.grid[r][c]] for c in cols] for r in rows]
    order = len(rows)
    if not g.is_identity() and 2 * order > square.n:
        raise BoundViolated(f"subsquare of order {order} exceeds n/2")
    try:
        return validate_latin(order, sub)
    except InvalidStructure as exc:
        raise BoundViolated(f"fixed cells are not a Latin subsquare: {exc}") from exc


def verify_sts_bounds(n: int) -> SuiteResult:
    """Run sts_fix_stats checks for every automorphism of every labeled STS(n)."""
    classes = sts_isomorphism_classes(n)
    pairs = 0
    max_m = 0
    max_fixed_blocks = 0
    max_orbits = 0
    for cls_data in classes:
        elements = group_elements(
            [g.image for g in cls_data.aut_generators], n
        )
        if len(elements) != cls_data.aut_order:
            raise BoundViolated("generator closure does not match the group order")
        for blocks, h in zip(cls_data.members, cls_data.conjugators):
            system = Sts(n, blocks)
            hinv = invert_perm(h)
            for p in elements:
                gp = compose_perm(h, compose_perm(p, hinv))
                stats = sts_fix_stats(PointPermutation(n, gp), system)
                pairs += 1
                if gp != identity_perm(n):
                    max_m = max(max_m, stats.fixed_points)
                    max_fixed_blocks = max(max_fixed_blocks, stats.fixed_objects)
                    max_orbits = max(max_orbits, stats.orbit_count)
    return SuiteResult(
        "sts",
        n,
        pairs,
        {
            "max_fixed_points": max_m,
            "max_fixed_blocks": max_fixed_blocks,
            "max_block_orbits": max_orbits,
        },
    )


def verify_ep_bounds(n: int) -> SuiteResult:
    """Run ep_fix_stats checks for every automorphism of every labeled 1-factorization."""
    classes = of_isomorphism_classes(n)
    pairs = 0
    max_r = 0
    max_s = 0
    max_m = 0
    for cls_data in classes:
        elements = group_elements(
            [g.image for g in cls_data.aut_generators], n
        )
        if len(elements) != cls_data.aut_order:
            raise BoundViolated("generator closure does not match the group order")
        for factors, h in zip(cls_data.members, cls_data.conjugators):
            f = OneFactorization(n, factors)
            hinv = invert_perm(h)
            for p in elements:
                gp = compose_perm(h, compose_perm(p, hinv))
                stats = ep_fix_stats(PointPermutation(n, gp), f)
                pairs += 1
                if gp != identity_perm(n):
                    max_r = max(max_r, stats.fixed_points)
                    max_s = max(max_s, stats.fixed_objects)
                    max_m = max(max_m, stats.orbit_count)
    return SuiteResult(
        "of",
        n,
        pairs,
        {"max_fixed_points": max_r, "max_fixed_classes": max_s, "max_class_orbits": max_m},
    )
