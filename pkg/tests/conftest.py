import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from erasure_lab.agcode import hermitian_code, hermitian_curve, rs_code  # noqa: E402
from erasure_lab.code import LinearCode, code_from_generator  # noqa: E402
from erasure_lab.gf import field_make  # noqa: E402
from erasure_lab.matgf import MatGF, rank  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"

HAMMING_G = [
    [1, 0, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 1, 1],
]


def random_code(rng: np.random.Generator, q: int, n: int, k: int) -> LinearCode:
    F = field_make(q)
    while True:
        G = MatGF(F, rng.integers(0, q, size=(k, n)))
        if rank(G) == k:
            return code_from_generator(F, G)


@pytest.fixture(scope="session")
def hamming() -> LinearCode:
    F = field_make(2)
    return code_from_generator(F, MatGF.from_rows(F, HAMMING_G))


@pytest.fixture(scope="session")
def rs_5_4_2() -> LinearCode:
    return rs_code(5, 4, 2)


@pytest.fixture(scope="session")
def herm_curve():
    return hermitian_curve(2)


@pytest.fixture(scope="session")
def herm_8_4(herm_curve):
    return hermitian_code(herm_curve, 4)
