from fractions import Fraction

import pytest

from tilewave.geometry import Lattice2, Region, rectangle
from tilewave.groups import ShearletParams, SimilitudeParams
from tilewave.tiles import shearlet_tile, similitude_tile


@pytest.fixture(scope="session")
def w21():
    return shearlet_tile(ShearletParams(2, 1))


@pytest.fixture(scope="session")
def v26():
    return similitude_tile(SimilitudeParams(2, 6))


@pytest.fixture(scope="session")
def gamma_w():
    """The area-forced 2-tiling lattice of W^{2,1}."""
    return Lattice2.rectangular(1, Fraction(3, 2))


@pytest.fixture(scope="session")
def unit_square():
    return Region((rectangle(0, 0, 1, 1),))


@pytest.fixture
def announce(capsys):
    """Print one line to the real terminal, bypassing capture."""

    def _say(line: str):
        with capsys.disabled():
            print(line)

    return _say
