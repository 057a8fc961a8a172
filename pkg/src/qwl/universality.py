"""Hamiltonian gate sets and Lie-closure certification of (non-)universality.

A set of Hermitian generators is universal for SU(d^n) exactly when the real
Lie algebra generated by {iH} contains the full traceless algebra su(d^n),
i.e. has dimension d^{2n} - 1 after projecting out the identity direction.
The closure is computed by repeatedly commuting basis elements and keeping
orthogonal residuals, in a fixed deterministic order.

The shipped sets:

* ``quadratic_qubit_set(n)``  - single-site X plus neighbouring ZZ couplings.
  Closes on a quadratic-dimension subalgebra, dim n(2n-1): the canonical
  non-universal family.
* ``universal_qubit_set(n)``  - the quadratic set plus Z_1 and Z_2; universal.
* ``universal_qudit_set(d, n)`` - Hermitian/anti-Hermitian parts of Z_1, of
  every X_k, and of every neighbouring Z_k Z_{k+1}^dag; universal for d >= 2.
* ``universal_qutrit_set(n)`` - a concrete qutrit collection: four fixed
  single-site Hamiltonians, the Hermitian parts of X, and one diagonal
  agreement projector sum_j |jj><jj| per neighbouring pair.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .exceptions import CapacityError, ContractError, DomainError
from .linalg import expm_hermitian, frobenius
from .registers import _chain, site_operator
from .weyl import build_weyl

__all__ = ["HamiltonianSet", "LieClosureResult", "quadratic_qubit_set", "universal_qubit_set",
           "universal_qudit_set", "universal_qutrit_set", "lie_closure", "is_universal", "gate",
           "CLOSURE_DIM_CAP"]

logger = logging.getLogger(__name__)

CLOSURE_DIM_CAP = 81  # largest register dimension d^n the closure builders accept
_ZERO_GENERATOR_TOL = 1e-12


@dataclass(frozen=True)
class HamiltonianSet:
    """Named list of Hermitian generators acting on an n-qudit register."""

    d: int
    n: int
    name: str
    generators: list[tuple[str, np.ndarray]]

    def __post_init__(self):
        dim = self.d**self.n
        for label, h in self.generators:
            if h.shape != (dim, dim):
                raise ContractError(f"generator {label} has shape {h.shape}, expected {(dim, dim)}")
            dev = frobenius(h - h.conj().T)
            if dev > 1e-10:
                raise ContractError(f"generator {label} is not Hermitian: deviation {dev:.3e}")

    def matrices(self) -> list[np.ndarray]:
        return [h for _, h in self.generators]


@dataclass
class LieClosureResult:
    """Outcome of a commutator closure run.

    ``basis`` is orthonormal under the real Hilbert-Schmidt inner product and
    consists of anti-Hermitian matrices; it retains the identity direction when
    the generators produce one. ``dimension`` counts only the traceless part,
    which is the figure relevant to SU(d^n) universality.
    """

    dimension: int
    basis: list[np.ndarray] = field(repr=False)
    iterations: int
    converged: bool
    contains_identity: bool


def _pair_embedding(op_pair: np.ndarray, d: int, n: int, k: int) -> np.ndarray:
    """Embed a d^2 x d^2 operator on neighbouring sites (k, k+1), 1-based."""
    eye = np.eye(d, dtype=complex)
    return _chain([eye] * (k - 1) + [op_pair] + [eye] * (n - k - 1))


def _check_closure_size(d: int, n: int) -> None:
    if n < 2:
        raise DomainError(f"gate sets are defined for n >= 2, got n={n}")
    if d**n > CLOSURE_DIM_CAP:
        raise CapacityError(f"d^n = {d**n} exceeds the closure cap of {CLOSURE_DIM_CAP}")


def quadratic_qubit_set(n: int) -> HamiltonianSet:
    """X_k for every site plus Z_k Z_{k+1} for every neighbouring pair (d = 2)."""
    _check_closure_size(2, n)
    gens = [(f"X_{k}", site_operator(2, n, k, "X").matrix) for k in range(1, n + 1)]
    w = build_weyl(2)
    zz = np.kron(w.Z, w.Z)  # Z^dag = Z at d = 2
    gens += [(f"Z_{k}Z_{k + 1}", _pair_embedding(zz, 2, n, k)) for k in range(1, n)]
    return HamiltonianSet(d=2, n=n, name="quadratic_qubit", generators=gens)


def universal_qubit_set(n: int) -> HamiltonianSet:
    """The quadratic qubit set extended by Z_1 and Z_2, which makes it universal."""
    base = quadratic_qubit_set(n)
    gens = list(base.generators)
    gens += [(f"Z_{k}", site_operator(2, n, k, "Z").matrix) for k in (1, 2)]
    return HamiltonianSet(d=2, n=n, name="universal_qubit", generators=gens)


def _hermitian_parts(label: str, m: np.ndarray) -> list[tuple[str, np.ndarray]]:
    return [(f"{label}+{label}^dag", m + m.conj().T),
            (f"i({label}-{label}^dag)", 1j * (m - m.conj().T))]


def _drop_zero_generators(gens: list[tuple[str, np.ndarray]]) -> list[tuple[str, np.ndarray]]:
    kept = []
    for label, h in gens:
        if frobenius(h) < _ZERO_GENERATOR_TOL:
            logger.info("dropping zero generator %s", label)
            continue
        kept.append((label, h))
    return kept


def universal_qudit_set(d: int, n: int) -> HamiltonianSet:
    """Hermitian splittings of Z_1, all X_k, and all neighbouring Z_k Z_{k+1}^dag.

    At d = 2 the anti-Hermitian halves vanish and are dropped, leaving scalar
    multiples of generators from :func:`universal_qubit_set`.
    """
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    _check_closure_size(d, n)
    w = build_weyl(d)
    gens = _hermitian_parts("Z_1", site_operator(d, n, 1, "Z").matrix)
    for k in range(1, n + 1):
        gens += _hermitian_parts(f"X_{k}", site_operator(d, n, k, "X").matrix)
    zzd = np.kron(w.Z, w.Z.conj().T)
    for k in range(1, n):
        gens += _hermitian_parts(f"Z_{k}Z_{k + 1}^dag", _pair_embedding(zzd, d, n, k))
    return HamiltonianSet(d=d, n=n, name="universal_qudit", generators=_drop_zero_generators(gens))


def qutrit_site_hamiltonians() -> list[tuple[str, np.ndarray]]:
    """The four fixed single-qutrit gate Hamiltonians (two diagonal, two off-diagonal)."""
    return [
        ("diag(1,-1,0)", np.diag([1.0, -1.0, 0.0]).astype(complex)),
        ("diag(1,0,-1)", np.diag([1.0, 0.0, -1.0]).astype(complex)),
        ("sym_offdiag", np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=complex)),
        ("asym_offdiag", np.array([[0, 1j, -1j], [-1j, 0, 1j], [1j, -1j, 0]], dtype=complex)),
    ]


def agreement_projector(d: int = 3) -> np.ndarray:
    """Diagonal two-site projector sum_j |jj><jj| on a d x d pair."""
    p = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        p[j * d + j, j * d + j] = 1.0
    return p


def universal_qutrit_set(n: int) -> HamiltonianSet:
    """Concrete universal qutrit set: the four fixed site Hamiltonians and the
    Hermitian parts of X at every site, plus one diagonal agreement projector
    per neighbouring pair."""
    _check_closure_size(3, n)
    gens: list[tuple[str, np.ndarray]] = []
    eye = np.eye(3, dtype=complex)
    for k in range(1, n + 1):
        for label, h in qutrit_site_hamiltonians():
            gens.append((f"{label}_{k}", _chain([eye] * (k - 1) + [h] + [eye] * (n - k))))
    for k in range(1, n + 1):
        gens += _hermitian_parts(f"X_{k}", site_operator(3, n, k, "X").matrix)
    proj = agreement_projector(3)
    for k in range(1, n):
        gens.append((f"agree_{k}{k + 1}", _pair_embedding(proj, 3, n, k)))
    return HamiltonianSet(d=3, n=n, name="universal_qutrit", generators=gens)


def _real_project(basis: np.ndarray, vec: np.ndarray) -> np.ndarray:
    # real-linear projection: coefficients Re Tr(B_i^dag C) on flattened matrices
    if len(basis):
        coefs = np.real(basis.conj() @ vec)
        vec = vec - coefs @ basis
    return vec


def lie_closure(hset: HamiltonianSet, tol: float = 1e-8, max_dim: int | None = None) -> LieClosureResult:
    """Dimension and orthonormal basis of the real Lie algebra generated by {iH}.

    Commutators are evaluated over a deterministic pair queue: when element m
    joins the basis, the pairs (0, m), (1, m), ..., (m-1, m) are scheduled in
    that order and processed first-in first-out, so each unordered pair is
    visited exactly once and the run is reproducible. A commutator is appended
    when its component orthogonal to the current span exceeds ``tol`` times its
    own norm (candidates below 1e-12 in norm are discarded as round-off).

    ``iterations`` counts evaluated commutators. The run converges when the
    queue drains, or trivially when the basis saturates the full algebra
    u(d^n); hitting a smaller ``max_dim`` reports ``converged=False``.
    """
    dim = hset.d**hset.n
    full = dim * dim  # real dimension of u(dim)
    if max_dim is None:
        max_dim = full
    if max_dim < 1:
        raise DomainError(f"max_dim must be positive, got {max_dim}")

    basis = np.zeros((0, dim * dim), dtype=complex)
    pending: list[tuple[int, int]] = []
    next_pair = 0

    def try_append(mat: np.ndarray) -> None:
        nonlocal basis
        vec = mat.ravel()
        norm = np.linalg.norm(vec)
        if norm < 1e-12:
            return
        residual = _real_project(basis, vec)
        residual = _real_project(basis, residual)  # second pass for orthogonality hygiene
        res_norm = np.linalg.norm(residual)
        if res_norm > tol * norm:
            m = len(basis)
            basis = np.vstack([basis, residual / res_norm])
            pending.extend((i, m) for i in range(m))

    for label, h in hset.generators:
        dev = frobenius(h - h.conj().T)
        if dev > 1e-10:
            raise ContractError(f"generator {label} is not Hermitian: deviation {dev:.3e}")
        try_append(1j * (h + h.conj().T) / 2)

    iterations = 0
    converged = True
    while next_pair < len(pending):
        if len(basis) >= max_dim:
            converged = len(basis) >= full  # the whole of u(dim) is trivially closed
            break
        i, j = pending[next_pair]
        next_pair += 1
        a = basis[i].reshape(dim, dim)
        b = basis[j].reshape(dim, dim)
        comm = a @ b - b @ a
        comm = (comm - comm.conj().T) / 2  # kill anti-Hermiticity drift
        try_append(comm)
        iterations += 1

    id_vec = (1j * np.eye(dim) / np.sqrt(dim)).ravel()
    id_residual = np.linalg.norm(_real_project(basis, id_vec))
    contains_identity = bool(id_residual < 1e-6)
    dimension = len(basis) - (1 if contains_identity else 0)
    return LieClosureResult(
        dimension=dimension,
        basis=[row.reshape(dim, dim) for row in basis],
        iterations=iterations,
        converged=converged,
        contains_identity=contains_identity,
    )


def is_universal(hset: HamiltonianSet, tol: float = 1e-8) -> tuple[bool, dict]:
    """Certify universality: the traceless closure must reach dim su(d^n) = d^{2n} - 1."""
    result = lie_closure(hset, tol=tol)
    expected = hset.d ** (2 * hset.n) - 1
    universal = result.converged and result.dimension >= expected
    report = {
        "set": hset.name,
        "num_generators": len(hset.generators),
        "dimension": result.dimension,
        "expected": expected,
        "universal": universal,
        "converged": result.converged,
        "iterations": result.iterations,
        "contains_identity": result.contains_identity,
    }
    return universal, report


def gate(hamiltonian: np.ndarray, tau: float) -> np.ndarray:
    """One-parameter gate exp(-i H tau) of a Hermitian generator."""
    return expm_hermitian(hamiltonian, tau)
