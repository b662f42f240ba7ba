import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from asymlab.structures import (
    validate_latin,
    validate_one_factorization,
    validate_sts,
)


def cyclic_square(n: int):
    return validate_latin(n, [[(r + c) % n for c in range(n)] for r in range(n)])


def fano_plane():
    return validate_sts(7, [[i, (i + 1) % 7, (i + 3) % 7] for i in range(7)])


def ag23():
    lines = set()
    for x in range(3):
        for y in range(3):
            for d in ((0, 1), (1, 0), (1, 1), (1, 2)):
                lines.add(
                    tuple(
                        sorted(
                            ((x + t * d[0]) % 3) * 3 + (y + t * d[1]) % 3 for t in range(3)
                        )
                    )
                )
    return validate_sts(9, sorted(lines))


def k4_factorization():
    return validate_one_factorization(
        4, [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]]
    )


@pytest.fixture(scope="session")
def z3():
    return cyclic_square(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic_square(4)


@pytest.fixture(scope="session")
def fano():
    return fano_plane()


@pytest.fixture(scope="session")
def ag():
    return ag23()


@pytest.fixture(scope="session")
def of4():
    return k4_factorization()
