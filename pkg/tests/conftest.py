import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def random_ket_array(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_hermitian_array(rng: np.random.Generator, size: int) -> np.ndarray:
    m = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    return m + m.conj().T


def random_density_array(rng: np.random.Generator, size: int) -> np.ndarray:
    m = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def random_unitary_array(rng: np.random.Generator, size: int) -> np.ndarray:
    m = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    q, upper = np.linalg.qr(m)
    return q * (np.diag(upper) / np.abs(np.diag(upper)))
