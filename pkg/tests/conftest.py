import numpy as np
import pytest

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

OMEGA = np.exp(2j * np.pi / 3)

# the four qutrit MUB matrices (columns are basis vectors): the eigenvector
# bases of Z, X, XZ and XZ^2 in that order
QUTRIT_MUB_DISPLAY = [
    np.eye(3, dtype=complex),
    np.array([[1, 1, 1],
              [1, OMEGA, OMEGA.conjugate()],
              [1, OMEGA.conjugate(), OMEGA]]) / np.sqrt(3),
    np.array([[1, 1, 1],
              [OMEGA, OMEGA.conjugate(), 1],
              [OMEGA, 1, OMEGA.conjugate()]]) / np.sqrt(3),
    np.array([[1, 1, 1],
              [OMEGA.conjugate(), 1, OMEGA],
              [OMEGA.conjugate(), OMEGA, 1]]) / np.sqrt(3),
]


def frob(a) -> float:
    return float(np.linalg.norm(a))


def rays_match(column: np.ndarray, candidates: np.ndarray, tol: float) -> bool:
    """True when some candidate column equals ``column`` up to a global phase."""
    for j in range(candidates.shape[1]):
        cand = candidates[:, j]
        inner = np.vdot(cand, column)
        if abs(inner) < 1e-12:
            continue
        phase = inner / abs(inner)
        if frob(cand * phase - column) <= tol:
            return True
    return False


@pytest.fixture(scope="session")
def pauli():
    return SIGMA_X, SIGMA_Y, SIGMA_Z
