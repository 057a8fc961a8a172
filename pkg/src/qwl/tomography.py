"""Mutually unbiased bases for prime d, measurement simulation, state reconstruction.

For prime d the d+1 bases are the computational basis (eigenvectors of the
clock Z) together with the eigenvector bases of X Z^m for m = 0..d-1; any two
vectors from different bases overlap with squared modulus exactly 1/d, which
makes the (d+1)d projectors a complete measurement frame: a density matrix has
d^2 - 1 real parameters and the frame determines all of them.

Reconstruction is plain linear inversion (least squares on the Born
probabilities), followed by a positivity repair that clips negative
eigenvalues and renormalizes the trace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ContractError, DomainError, UnderdeterminedError
from .linalg import RandomSource, as_matrix, frobenius, unitary_eig
from .weyl import build_weyl

__all__ = ["DensityMatrix", "MUBSet", "MeasurementRecord", "mub_prime", "verify_mub",
           "born_probability", "simulate_measurements", "reconstruct",
           "reconstruct_from_frequencies", "random_density", "is_prime", "MUB_DIM_CAP"]

MUB_DIM_CAP = 31

_NON_PRIME_MESSAGE = "d must be prime (Galois-field construction out of scope)"


def is_prime(d: int) -> bool:
    if d < 2:
        return False
    for p in range(2, int(d**0.5) + 1):
        if d % p == 0:
            return False
    return True


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite d x d matrix."""

    d: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (self.d, self.d):
            raise ContractError(f"expected a {self.d}x{self.d} matrix, got {m.shape}")
        herm = frobenius(m - m.conj().T)
        if herm > 1e-10:
            raise ContractError(f"density matrix not Hermitian: deviation {herm:.3e}")
        tr = complex(np.trace(m))
        if abs(tr - 1) > 1e-10:
            raise ContractError(f"density matrix trace {tr} differs from 1")
        floor = float(np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)))
        if floor < -1e-10:
            raise ContractError(f"density matrix has negative eigenvalue {floor:.3e}")


@dataclass(frozen=True)
class MUBSet:
    """d+1 orthonormal bases (columns of each d x d matrix) with 1/d cross overlaps."""

    d: int
    bases: list[np.ndarray]
    labels: list[str]


@dataclass(frozen=True)
class MeasurementRecord:
    basis_index: int
    counts: np.ndarray
    shots: int

    def __post_init__(self):
        if int(np.sum(self.counts)) != self.shots:
            raise ContractError(
                f"counts sum {int(np.sum(self.counts))} differs from shots {self.shots}")

    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.shots


def mub_prime(d: int) -> MUBSet:
    """Construct the d+1 mutually unbiased bases for prime d <= 31.

    Basis 0 is the computational basis; basis m (m = 1..d) collects the
    eigenvectors of X Z^{m-1}, ordered by eigenvalue phase with each column's
    first significant component made real positive.
    """
    if d > MUB_DIM_CAP:
        raise DomainError(f"d = {d} exceeds the cap of {MUB_DIM_CAP}")
    if not is_prime(d):
        raise DomainError(_NON_PRIME_MESSAGE)
    w = build_weyl(d)
    bases = [np.eye(d, dtype=complex)]
    labels = ["Z"]
    for m in range(d):
        op = w.X @ np.linalg.matrix_power(w.Z, m)
        _, vectors = unitary_eig(op)
        bases.append(vectors)
        labels.append("X" if m == 0 else ("XZ" if m == 1 else f"XZ^{m}"))
    return MUBSet(d=d, bases=bases, labels=labels)


def verify_mub(mubs: MUBSet) -> float:
    """Max of within-basis orthonormality error and cross-basis | |<phi|psi>|^2 - 1/d |."""
    d = mubs.d
    eye = np.eye(d)
    dev = max(float(np.max(np.abs(b.conj().T @ b - eye))) for b in mubs.bases)
    for i in range(len(mubs.bases)):
        for j in range(i + 1, len(mubs.bases)):
            overlaps = np.abs(mubs.bases[i].conj().T @ mubs.bases[j]) ** 2
            dev = max(dev, float(np.max(np.abs(overlaps - 1.0 / d))))
    return dev


def born_probability(rho: DensityMatrix, phi: np.ndarray) -> float:
    """Click probability <phi| rho |phi> of the projector onto unit vector phi."""
    phi = np.asarray(phi, dtype=complex).ravel()
    norm = np.linalg.norm(phi)
    if abs(norm - 1.0) > 1e-10:
        raise ContractError(f"measurement vector norm {norm} differs from 1")
    p = float(np.real(phi.conj() @ rho.matrix @ phi))
    if not -1e-10 <= p <= 1 + 1e-10:
        raise ContractError(f"probability {p} outside [0, 1] beyond tolerance")
    return min(max(p, 0.0), 1.0)


def simulate_measurements(rho: DensityMatrix, mubs: MUBSet, shots: int,
                          rng: RandomSource) -> list[MeasurementRecord]:
    """Multinomial counts for every basis; basis b draws from rng.subsource(b)."""
    if shots < 1:
        raise DomainError(f"shots must be >= 1, got {shots}")
    records = []
    for b, basis in enumerate(mubs.bases):
        probs = np.array([born_probability(rho, basis[:, k]) for k in range(mubs.d)])
        probs = probs / probs.sum()
        counts = rng.subsource(b).rng.multinomial(shots, probs)
        records.append(MeasurementRecord(basis_index=b, counts=counts, shots=shots))
    return records


def _frame_rows(mubs: MUBSet) -> np.ndarray:
    # row r = vec(P^T) so that row @ vec(rho) = Tr(P rho)
    rows = []
    for basis in mubs.bases:
        for k in range(mubs.d):
            v = basis[:, k]
            rows.append(np.outer(v, v.conj()).T.ravel())
    return np.array(rows)


def reconstruct_from_frequencies(frequencies, mubs: MUBSet) -> tuple[DensityMatrix, dict]:
    """Least-squares inversion of Tr(P_bk rho) = f_bk over all d+1 bases,
    followed by positivity repair (eigenvalue clipping + trace renormalization).

    Diagnostics report the residual of the Hermitian pre-projection estimate
    and its smallest eigenvalue, so inversion error and projection effect can
    be told apart.
    """
    d = mubs.d
    freqs = [np.asarray(f, dtype=float) for f in frequencies]
    if len(freqs) != d + 1 or any(f.shape != (d,) for f in freqs):
        raise UnderdeterminedError(f"need {d + 1} frequency vectors of length {d}")
    rows = _frame_rows(mubs)
    target = np.concatenate(freqs)
    solution, *_ = np.linalg.lstsq(rows, target.astype(complex), rcond=None)
    estimate = solution.reshape(d, d)
    estimate = (estimate + estimate.conj().T) / 2
    residual = float(np.linalg.norm(rows @ estimate.ravel() - target))
    values, vectors = np.linalg.eigh(estimate)
    floor = float(values[0])
    clipped = np.clip(values, 0.0, None)
    total = clipped.sum()
    if total <= 0:
        raise ContractError("positivity repair collapsed the estimate to zero")
    repaired = (vectors * (clipped / total)) @ vectors.conj().T
    repaired = (repaired + repaired.conj().T) / 2
    diagnostics = {"residual": residual, "eigenvalue_floor": floor}
    return DensityMatrix(d=d, matrix=repaired), diagnostics


def reconstruct(records: list[MeasurementRecord], mubs: MUBSet) -> tuple[DensityMatrix, dict]:
    """Reconstruction from measured counts; records must cover all d+1 bases."""
    by_basis = {r.basis_index: r for r in records}
    missing = [b for b in range(mubs.d + 1) if b not in by_basis]
    if missing:
        raise UnderdeterminedError(f"missing measurement records for bases {missing}")
    freqs = [by_basis[b].frequencies() for b in range(mubs.d + 1)]
    return reconstruct_from_frequencies(freqs, mubs)


def random_density(d: int, rng: RandomSource) -> DensityMatrix:
    """Gram-matrix random state: rho = A A^dag / Tr(A A^dag), A complex Gaussian."""
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    a = (rng.rng.standard_normal((d, d)) + 1j * rng.rng.standard_normal((d, d))) / np.sqrt(2)
    gram = a @ a.conj().T
    return DensityMatrix(d=d, matrix=gram / np.trace(gram).real)
