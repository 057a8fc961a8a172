"""Search for symmetric informationally complete (SIC) fiducial vectors.

A SIC-POVM in dimension d is a set of d^2 unit vectors whose pairwise squared
overlaps all equal 1/(d+1); conjecturally one exists in every dimension as the
orbit of a single fiducial |phi> under the d^2 displacements X^a Z^b. The
search minimizes the frame error

    sum_{(a,b) != (0,0)} ( |<phi| X^a Z^b |phi>|^2 - 1/(d+1) )^2

over the unit sphere with a restarted Nelder-Mead simplex; the error vanishes
exactly at a fiducial. A failed search says nothing about existence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.optimize

from .exceptions import ContractError, DomainError
from .linalg import RandomSource
from .weyl import build_weyl, weyl_monomial

__all__ = ["SICCandidate", "SICSearchResult", "weyl_orbit", "frame_error",
           "search_fiducial", "verify_sic", "SIC_DIM_CAP"]

SIC_DIM_CAP = 8


@dataclass(frozen=True)
class SICCandidate:
    d: int
    fiducial: np.ndarray
    orbit: np.ndarray  # shape (d^2, d); row a*d+b is X^a Z^b |phi>
    frame_error: float


@dataclass(frozen=True)
class SICSearchResult:
    """Search outcome; ``candidate`` carries the best vector found even on failure."""

    found: bool
    candidate: SICCandidate
    best_error: float
    restarts_used: int


@lru_cache(maxsize=None)
def _displacements(d: int) -> np.ndarray:
    w = build_weyl(d)
    return np.stack([weyl_monomial(w, a, b) for a in range(d) for b in range(d)])


def _check_unit(phi: np.ndarray) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex).ravel()
    norm = np.linalg.norm(phi)
    if abs(norm - 1.0) > 1e-10:
        raise ContractError(f"fiducial norm {norm} differs from 1")
    return phi


def weyl_orbit(phi: np.ndarray, d: int) -> np.ndarray:
    """The d^2 displaced vectors X^a Z^b |phi>, (a, b) in lexicographic order."""
    phi = _check_unit(phi)
    if phi.shape != (d,):
        raise DomainError(f"fiducial has length {phi.shape[0]}, expected {d}")
    return _displacements(d) @ phi


def _overlap_deviations(phi: np.ndarray, d: int) -> np.ndarray:
    # |<phi| X^a Z^b |phi>|^2 - 1/(d+1) over all (a, b) != (0, 0)
    overlaps = np.abs(np.einsum("i,aij,j->a", phi.conj(), _displacements(d), phi)) ** 2
    return overlaps[1:] - 1.0 / (d + 1)


def frame_error(phi: np.ndarray, d: int) -> float:
    """Sum of squared overlap deviations; zero exactly at a fiducial."""
    phi = _check_unit(phi)
    return float(np.sum(_overlap_deviations(phi, d) ** 2))


def _params_to_vector(params: np.ndarray, d: int) -> np.ndarray | None:
    # amplitudes |params[:d]|, explicit phases for components 1..d-1, then normalize
    v = np.abs(params[:d]) * np.exp(1j * np.concatenate(([0.0], params[d:])))
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        return None
    return v / norm


def _gauge_fixed(phi: np.ndarray) -> np.ndarray:
    # first significant component real positive, matching the eigenvector convention
    significant = np.flatnonzero(np.abs(phi) > 1e-8)
    idx = int(significant[0]) if significant.size else int(np.argmax(np.abs(phi)))
    phase = phi[idx] / abs(phi[idx])
    phi = phi * phase.conjugate()
    return phi / np.linalg.norm(phi)


def make_candidate(phi: np.ndarray, d: int) -> SICCandidate:
    phi = _gauge_fixed(_check_unit(phi))
    return SICCandidate(d=d, fiducial=phi, orbit=weyl_orbit(phi, d),
                        frame_error=frame_error(phi, d))


def verify_sic(candidate: SICCandidate) -> float:
    """Max over distinct orbit pairs of | |<phi_i|phi_j>|^2 - 1/(d+1) |."""
    gram = np.abs(candidate.orbit.conj() @ candidate.orbit.T) ** 2
    target = 1.0 / (candidate.d + 1)
    dev = np.abs(gram - target)
    np.fill_diagonal(dev, 0.0)
    return float(np.max(dev))


def _minimize(objective, start: np.ndarray) -> tuple[np.ndarray, float]:
    n = len(start)
    stage1 = scipy.optimize.minimize(
        objective, start, method="Nelder-Mead",
        options={"maxiter": 400 * n, "xatol": 1e-7, "fatol": 1e-11, "adaptive": True})
    best_x, best_f = stage1.x, float(stage1.fun)
    if best_f < 1e-3:  # polish promising minima with a fresh simplex
        stage2 = scipy.optimize.minimize(
            objective, best_x, method="Nelder-Mead",
            options={"maxiter": 600 * n, "xatol": 1e-13, "fatol": 1e-17, "adaptive": True})
        if stage2.fun < best_f:
            best_x, best_f = stage2.x, float(stage2.fun)
    return best_x, best_f


def search_fiducial(d: int, restarts: int = 20, rng: RandomSource | None = None,
                    tol: float = 1e-10, pair_tol: float = 1e-6) -> SICSearchResult:
    """Multi-start minimization of the frame error over the unit sphere.

    Restart r draws its Haar-random start from ``rng.subsource(r)``; the search
    stops at the first restart whose polished minimum reaches ``tol`` (frame
    error) and ``pair_tol`` (per-pair overlap deviation). When every restart
    fails, the result reports the best error seen; that outcome is a search
    failure, never evidence that no fiducial exists.
    """
    if not 2 <= d <= SIC_DIM_CAP:
        raise DomainError(f"search supports 2 <= d <= {SIC_DIM_CAP}, got {d}")
    if restarts < 1:
        raise DomainError(f"restarts must be >= 1, got {restarts}")
    if rng is None:
        rng = RandomSource(0)

    def objective(params: np.ndarray) -> float:
        v = _params_to_vector(params, d)
        if v is None:
            return float(d)  # worse than any normalized vector
        return float(np.sum(_overlap_deviations(v, d) ** 2))

    best_phi, best_err, used = None, np.inf, 0
    for r in range(restarts):
        used = r + 1
        sub = rng.subsource(r).rng
        start_vec = sub.standard_normal(d) + 1j * sub.standard_normal(d)
        start_vec /= np.linalg.norm(start_vec)
        start = np.concatenate([np.abs(start_vec), np.angle(start_vec[1:]) - np.angle(start_vec[0])])
        x, err = _minimize(objective, start)
        if err < best_err:
            vec = _params_to_vector(x, d)
            if vec is not None:
                best_phi, best_err = vec, err
        if best_err <= tol and verify_sic(make_candidate(best_phi, d)) <= pair_tol:
            break

    candidate = make_candidate(best_phi, d)
    found = candidate.frame_error <= tol and verify_sic(candidate) <= pair_tol
    return SICSearchResult(found=found, candidate=candidate,
                           best_error=candidate.frame_error, restarts_used=used)
