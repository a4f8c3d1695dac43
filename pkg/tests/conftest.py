import pytest

from effbasis.hamiltonian.io import load_fcidump
from effbasis.hamiltonian.jordan_wigner import jordan_wigner
from tests.helpers import H2_FIXTURE, hubbard_ring


@pytest.fixture(scope="session")
def h2_fermion():
    return load_fcidump(H2_FIXTURE)


@pytest.fixture(scope="session")
def h2_qubit(h2_fermion):
    return jordan_wigner(h2_fermion)


@pytest.fixture(scope="session")
def hubbard_qubit():
    return jordan_wigner(hubbard_ring())
