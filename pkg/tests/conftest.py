import pytest

from tropmat.matrix import TropMatrix
from tropmat.presentation import Presentation


@pytest.fixture
def triv_u23():
    """Minimal presentation of the trivial rank-2 valuated matroid on 3 elements."""
    return Presentation(TropMatrix.from_strings([["0", "0", "inf"], ["0", "inf", "0"]]))


@pytest.fixture
def zeros_u23():
    """All-zero (maximal) presentation of the same valuated matroid."""
    return Presentation(TropMatrix.from_strings([["0", "0", "0"], ["0", "0", "0"]]))


@pytest.fixture
def mu11():
    """Presentation of the 4-element rank-2 valuated matroid with value 1 on {1,4}."""
    return Presentation(TropMatrix.from_strings([["1", "0", "0", "inf"], ["0", "0", "0", "0"]]))
