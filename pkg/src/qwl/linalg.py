"""Dense complex linear algebra substrate.

Operators live as two-dimensional ``numpy`` arrays of ``complex128``. Everything
here is a pure function; the only stateful object is :class:`RandomSource`,
which wraps a seeded PCG64 stream.

The eigensolvers normalize their output so that repeated runs (and runs on
equal inputs) give identical matrices: eigenvalues are sorted (ascending for
Hermitian input, by phase in [0, 2pi) for unitary input), degenerate subspaces
are re-spanned by projecting the standard basis vectors in fixed order, and
every eigenvector's first significant component is made real positive.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

from .exceptions import ContractError, DomainError, MatrixFormatError, ShapeError

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10

_PHASE_PIVOT_TOL = 1e-8
_CLUSTER_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D array, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ContractError("matrix contains non-finite entries")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def matmul(a, b) -> np.ndarray:
    """Matrix product a @ b with an explicit shape check."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def tensor(a, b) -> np.ndarray:
    """Kronecker product, row-major block convention: out[i*rb+k, j*cb+l] = a[i,j] b[k,l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dag b)."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.sum(a.conj() * b))


def _first_significant(v: np.ndarray) -> int:
    idx = np.flatnonzero(np.abs(v) > _PHASE_PIVOT_TOL)
    return int(idx[0]) if idx.size else int(np.argmax(np.abs(v)))


def _fix_column_phases(w: np.ndarray) -> np.ndarray:
    out = w.copy()
    for j in range(out.shape[1]):
        pivot = out[_first_significant(out[:, j]), j]
        if abs(pivot) > 0:
            out[:, j] *= pivot.conjugate() / abs(pivot)
    return out


def _canonical_cluster_basis(block: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of span(block), block having orthonormal columns.

    Projects the standard basis vectors e_0, e_1, ... onto the subspace in fixed
    order and Gram-Schmidts them, so the result does not depend on which basis
    the eigensolver happened to return.
    """
    dim, size = block.shape
    proj = block @ block.conj().T
    for threshold in (1e-6, 1e-12):
        cols: list[np.ndarray] = []
        for j in range(dim):
            v = proj[:, j].copy()
            for u in cols:
                v -= u * np.vdot(u, v)
            norm = np.linalg.norm(v)
            if norm > threshold:
                cols.append(v / norm)
            if len(cols) == size:
                return np.column_stack(cols)
    raise ContractError("failed to span a degenerate eigenspace deterministically")


def _canonicalize_eigenvectors(w: np.ndarray, values: np.ndarray, cluster_tol: float) -> np.ndarray:
    """Re-span degenerate clusters in fixed pivot order, then fix column phases."""
    out = w.copy()
    n = len(values)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and abs(values[stop] - values[stop - 1]) <= cluster_tol:
            stop += 1
        if stop - start > 1:
            out[:, start:stop] = _canonical_cluster_basis(out[:, start:stop])
        start = stop
    return _fix_column_phases(out)


def hermitian_eig(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition a = W diag(lam) W^dag of a Hermitian matrix.

    Eigenvalues ascending; output deterministic (see module docstring).
    Raises ContractError when ||a - a^dag||_F > 1e-10.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"matrix must be square, got {a.shape}")
    dev = frobenius(a - a.conj().T)
    if dev > HERMITIAN_TOL:
        raise ContractError(f"matrix is not Hermitian: deviation {dev:.3e} > {HERMITIAN_TOL}")
    sym = (a + a.conj().T) / 2
    values, vectors = np.linalg.eigh(sym)
    scale = max(1.0, float(np.max(np.abs(values))))
    vectors = _canonicalize_eigenvectors(vectors, values, _CLUSTER_TOL * scale)
    return values, vectors


def unitary_eig(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a unitary (normal) matrix via a complex Schur form.

    Eigenvalues ordered by phase in [0, 2pi); eigenvectors orthonormal with the
    same determinism guarantees as :func:`hermitian_eig`.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"matrix must be square, got {a.shape}")
    dev = frobenius(a.conj().T @ a - np.eye(a.shape[0]))
    if dev > UNITARY_TOL:
        raise ContractError(f"matrix is not unitary: deviation {dev:.3e} > {UNITARY_TOL}")
    t, z = scipy.linalg.schur(a, output="complex")
    values = np.diag(t).copy()
    phases = np.angle(values)
    # wrap so an eigenvalue of 1 perturbed below the real axis sorts first, not last
    phases = np.where(phases < -1e-9, phases + 2 * np.pi, phases)
    order = np.argsort(phases, kind="stable")
    values, vectors, phases = values[order], z[:, order], phases[order]
    vectors = _canonicalize_eigenvectors(vectors, values, _CLUSTER_TOL)
    return values, vectors


def expm_hermitian(h, tau: float) -> np.ndarray:
    """Unitary exp(-i h tau) for Hermitian h, computed through the eigenbasis."""
    h = as_matrix(h)
    dev = frobenius(h - h.conj().T)
    if dev > HERMITIAN_TOL:
        raise ContractError(f"matrix is not Hermitian: deviation {dev:.3e} > {HERMITIAN_TOL}")
    sym = (h + h.conj().T) / 2
    values, vectors = np.linalg.eigh(sym)
    return (vectors * np.exp(-1j * values * tau)) @ vectors.conj().T


def matrix_to_json(a) -> dict:
    """Serialize to ``{"rows": R, "cols": C, "entries": [[re, im], ...]}`` (row-major)."""
    a = as_matrix(a)
    entries = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": entries}


def matrix_from_json(obj) -> np.ndarray:
    """Parse the JSON matrix format, rejecting malformed or non-finite payloads."""
    if not isinstance(obj, dict):
        raise MatrixFormatError(f"expected an object with rows/cols/entries, got {type(obj).__name__}")
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except KeyError as missing:
        raise MatrixFormatError(f"missing matrix field {missing}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise MatrixFormatError(f"rows/cols must be positive integers, got {rows!r}/{cols!r}")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        actual = len(entries) if isinstance(entries, list) else "non-list"
        raise MatrixFormatError(f"expected {rows * cols} entries, got {actual}")
    data = np.empty(rows * cols, dtype=complex)
    for pos, entry in enumerate(entries):
        if not (isinstance(entry, list) and len(entry) == 2):
            raise MatrixFormatError(f"entry {pos}: expected a [re, im] pair, got {entry!r}", position=pos)
        re, im = entry
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
            raise MatrixFormatError(f"entry {pos}: components must be numbers, got {entry!r}", position=pos)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MatrixFormatError(f"entry {pos}: non-finite component in {entry!r}", position=pos)
        data[pos] = complex(re, im)
    return data.reshape(rows, cols)


class RandomSource:
    """Deterministic random stream: a 64-bit seed feeding a PCG64 generator.

    Same seed, same stream, on every run and platform. Instances are
    single-consumer; use :meth:`subsource` to derive independent streams
    for per-basis or per-restart work.
    """

    algorithm = "pcg64"

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise DomainError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.seed = seed
        self.rng = np.random.Generator(np.random.PCG64(seed))

    def subsource(self, index: int) -> "RandomSource":
        """Derived stream with seed ``seed XOR index``."""
        if index < 0:
            raise DomainError(f"subsource index must be non-negative, got {index}")
        return RandomSource(self.seed ^ int(index))

    def __repr__(self) -> str:  # pragma: no cover
        return f"RandomSource(seed={self.seed}, algorithm={self.algorithm!r})"
