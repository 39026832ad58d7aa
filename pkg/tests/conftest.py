import numpy as np
import pytest

from orbitkit import OrthProjection


def rank1(vec) -> OrthProjection:
    v = np.asarray(vec, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return OrthProjection(np.outer(v, v.conj()))


def angled_pair(theta: float, dim: int = 2):
    """Rank-1 pair (P_x, P_y) with Tr(P_x P_y) = cos(theta)^2."""
    x = np.zeros(dim, dtype=np.complex128)
    y = np.zeros(dim, dtype=np.complex128)
    x[0] = 1.0
    y[0] = np.cos(theta)
    y[1] = np.sin(theta)
    return rank1(x), rank1(y)


@pytest.fixture
def tol():
    from orbitkit import DEFAULT

    return DEFAULT
