import numpy as np
import pytest
from hypothesis import settings

from rotns.littlewood_paley import build_partition
from rotns.spectral import FlowParams, make_grid

settings.register_profile("suite", deadline=None, max_examples=25,
                          derandomize=True)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def grid8():
    return make_grid(8)


@pytest.fixture(scope="session")
def grid16():
    return make_grid(16)


@pytest.fixture(scope="session")
def grid32():
    return make_grid(32)


@pytest.fixture(scope="session")
def part16(grid16):
    return build_partition(grid16)


@pytest.fixture(scope="session")
def part32(grid32):
    return build_partition(grid32)


@pytest.fixture(scope="session")
def params():
    return FlowParams(nu=1.0, omega=1.0)


def single_mode_field(grid, k, amplitudes, ncomp=3):
    """Real field with one Hermitian mode pair: coeff(k) = amplitudes."""
    c = np.zeros((ncomp,) + grid.shape, dtype=np.complex128)
    idx = tuple(int(i) % grid.n for i in k)
    ridx = tuple((-int(i)) % grid.n for i in k)
    for comp, a in enumerate(np.atleast_1d(amplitudes)):
        c[(comp,) + idx] = a
        c[(comp,) + ridx] = np.conj(a)
    from rotns.spectral import field_from_coeffs
    return field_from_coeffs(grid, c)
