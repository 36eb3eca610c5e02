"""Shared fixtures: the rings, spaces and tables used across the suite."""
import pytest

from app.services.link_model import arcs_and_relations, parse_gauss
from app.services.ring_algebra import make_ring
from app.services.symplectic import build_symplectic, space_from_text
from app.utils.matrix_io import load_golden

GRAM_V = "0,1,0,0;1,0,0,0;0,0,0,1;0,0,1,0"
TREFOIL = "O1+U2+O3+U1+O2+U3+"
HOPF = "O1+U2+,O2+U1+"


@pytest.fixture(scope="session")
def z4():
    return make_ring("Z4")


@pytest.fixture(scope="session")
def gf4():
    return make_ring("GF(2^2)/t^2+t+1")


@pytest.fixture(scope="session")
def space_v():
    return space_from_text("Z2", 4, GRAM_V)


@pytest.fixture(scope="session")
def space_v_prime():
    return space_from_text("GF(2^2)", 2, "0,1;1,0")


@pytest.fixture(scope="session")
def space_v_double_prime():
    return space_from_text("Z4", 2, "0,2;2,0")


@pytest.fixture(scope="session")
def m_v(space_v):
    return build_symplectic(space_v)


@pytest.fixture(scope="session")
def m_v_prime(space_v_prime):
    return build_symplectic(space_v_prime)


@pytest.fixture(scope="session")
def m_v_double_prime(space_v_double_prime):
    return build_symplectic(space_v_double_prime)


@pytest.fixture(scope="session")
def golden():
    """The printed tables with recorded errata applied."""
    return {
        "m_v": load_golden("m_v.txt"),
        "m_v_prime": load_golden("m_v_prime.txt"),
        "m_v_double_prime": load_golden("m_v_double_prime.txt"),
    }


@pytest.fixture
def trefoil():
    return arcs_and_relations(parse_gauss(TREFOIL))


@pytest.fixture
def hopf():
    return arcs_and_relations(parse_gauss(HOPF))


@pytest.fixture
def unknot():
    return arcs_and_relations(parse_gauss(""))
