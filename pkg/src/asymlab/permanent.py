"""Exact permanents and the permanent-based Latin machinery.

The production algorithm is Ryser's inclusion-exclusion with a Gray-code
subset walk: one column enters or leaves the active set per step, so each of
the 2^n - 1 subsets costs O(n) integer work. All arithmetic is exact.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .errors import DimensionTooLarge, RectangleFull
from .logscalar import LogScalar, ln_factorial, ln_int
from .structures import LatinRectangle, ZeroOneMatrix

DEFAULT_DIMENSION_CAP = 30


def _ryser_chunk(cols: list[tuple[int, ...]], n: int, start: int, stop: int) -> int:
    """Signed Ryser contribution of Gray-coded subset indices in [start, stop)."""
    row_sums = [0] * n
    subset = start ^ (start >> 1)
    bits = subset
    parity = 0
    while bits:
        j = (bits & -bits).bit_length() - 1
        col = cols[j]
        for i in range(n):
            row_sums[i] += col[i]
        parity ^= 1
        bits &= bits - 1

    total = 0
    rng = range(n)
    for t in range(start, stop):
        if t != start:
            changed = ((t ^ (t >> 1)) ^ subset).bit_length() - 1
            subset = t ^ (t >> 1)
            col = cols[changed]
            if subset >> changed & 1:
                for i in rng:
                    row_sums[i] += col[i]
            else:
                for i in rng:
                    row_sums[i] -= col[i]
            parity ^= 1
        prod = 1
        for s in row_sums:
            if s == 0:
                prod = 0
                break
            prod *= s
        if prod:
            total += prod if parity == 0 else -prod
    return total


def permanent_exact(
    m: ZeroOneMatrix, *, cap: int = DEFAULT_DIMENSION_CAP, jobs: int = 1
) -> int:
    """per(M) as an exact integer.

    jobs > 1 splits the subset range into independent chunks; the result is
    identical for any worker count because chunk sums are plain integers.
    """
    n = m.n
    if n > cap:
        raise DimensionTooLarge(n, cap)
    if n == 0:
        return 1
    cols = [tuple(m.entries[i][j] for i in range(n)) for j in range(n)]
    end = 1 << n
    sign = -1 if n % 2 else 1
    if jobs <= 1 or end < 1 << 12:
        return sign * _ryser_chunk(cols, n, 1, end)
    bounds = [1 + (end - 1) * w // jobs for w in range(jobs + 1)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(
            lambda se: _ryser_chunk(cols, n, se[0], se[1]),
            [(bounds[w], bounds[w + 1]) for w in range(jobs)],
        )
        return sign * sum(parts)


def extension_matrix(r: LatinRectangle) -> ZeroOneMatrix:
    """0/1 matrix whose (i, j) entry marks that symbol j is absent from column i.

    Rows and columns all sum to n - k, and its permanent counts the rows that
    can be appended to the rectangle.
    """
    if r.k >= r.n:
        raise RectangleFull(f"rectangle already has all {r.n} rows")
    n = r.n
    used = [set() for _ in range(n)]
    for row in r.rows:
        for c, s in enumerate(row):
            used[c].add(s)
    entries = tuple(
        tuple(0 if j in used[i] else 1 for j in range(n)) for i in range(n)
    )
    return ZeroOneMatrix(n, entries)


def count_row_extensions(r: LatinRectangle, *, cap: int = DEFAULT_DIMENSION_CAP) -> int:
    """How many permutations can be appended to the rectangle as its next row."""
    return permanent_exact(extension_matrix(r), cap=cap)


def bang_friedland_lower(n: int, k: int) -> LogScalar:
    """(k/e)^n, the permanent lower bound for 0/1 matrices with line sums k."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return LogScalar.from_ln(n * (ln_int(k) - 1))


def latin_lower_bound(n: int) -> LogScalar:
    """prod_{k=1}^{n} (k/e)^n = (n!)^n e^(-n^2), the Latin square count lower bound."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    return LogScalar.from_ln(n * ln_factorial(n) - n * n)
