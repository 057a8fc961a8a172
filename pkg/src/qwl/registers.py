"""Operator families on an n-qudit register.

Two families of 2n unitaries are built from Z-strings (x-family) or X-strings
(z-family, returned daggered):

    x_{2k-1} = Z x ... x Z x X x 1 x ... x 1      (k-1 clocks, head at site k)
    x_{2k}   = Z x ... x Z x Y x 1 x ... x 1

    z_{2k-1}^dag = X x ... x X x Z x 1 x ... x 1
    z_{2k}^dag   = X x ... x X x Y x 1 x ... x 1

The x-family braids as x_j x_k = zeta x_k x_j for j < k; daggering reverses
the braiding, so the z-family satisfies the same relation with zeta replaced
by its conjugate. Both are quantum-plane families on a primitive d-th root,
hence both obey the power identity (sum a_j x_j)^d = sum a_j^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .exceptions import CapacityError, ContractError, DomainError
from .linalg import frobenius
from .weyl import WeylOperators, build_weyl, root_of_unity

__all__ = ["RegisterOperator", "SiteOperator", "build_x_family", "build_z_family",
           "verify_quantum_plane", "verify_power_identity", "verify_pairing",
           "site_operator", "pairing_phase", "REGISTER_DIM_CAP"]

REGISTER_DIM_CAP = 1024


@dataclass(frozen=True)
class RegisterOperator:
    d: int
    n: int
    index: int  # 1..2n
    kind: str  # "x" or "z"
    matrix: np.ndarray


@dataclass(frozen=True)
class SiteOperator:
    d: int
    n: int
    site: int  # 1..n
    label: str  # "X", "Y" or "Z"
    matrix: np.ndarray


def _check_register(d: int, n: int) -> None:
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if n < 1:
        raise DomainError(f"register length must be >= 1, got {n}")
    if d**n > REGISTER_DIM_CAP:
        raise CapacityError(f"d^n = {d**n} exceeds the cap of {REGISTER_DIM_CAP}")


def _chain(factors) -> np.ndarray:
    return reduce(np.kron, factors)


def _family(w: WeylOperators, n: int, string: np.ndarray, heads: tuple[np.ndarray, np.ndarray],
            kind: str, dag: bool) -> list[RegisterOperator]:
    eye = np.eye(w.d, dtype=complex)
    ops = []
    for k in range(1, n + 1):
        for offset, head in enumerate(heads):
            m = _chain([string] * (k - 1) + [head] + [eye] * (n - k))
            if dag:
                m = m.conj().T
            ops.append(RegisterOperator(d=w.d, n=n, index=2 * k - 1 + offset, kind=kind, matrix=m))
    return ops


def build_x_family(d: int, n: int) -> list[RegisterOperator]:
    """The 2n Z-string operators with X/Y heads, ordered by index."""
    _check_register(d, n)
    w = build_weyl(d)
    return _family(w, n, w.Z, (w.X, w.Y), "x", dag=False)


def build_z_family(d: int, n: int) -> list[RegisterOperator]:
    """The 2n daggered X-string operators with Z/Y heads, ordered by index."""
    _check_register(d, n)
    w = build_weyl(d)
    return _family(w, n, w.X, (w.Z, w.Y), "z", dag=True)


def verify_quantum_plane(ops: list[RegisterOperator], d: int) -> float:
    """Max deviation of the braiding o_j o_k = q o_k o_j (j < k) and of o_j^d = 1.

    q is zeta for the x-family and conj(zeta) for the z-family (daggering
    reverses the braiding direction). ``ops`` must be one family in index order.
    """
    if not ops:
        raise DomainError("empty operator family")
    q = root_of_unity(1, d)
    if ops[0].kind == "z":
        q = q.conjugate()
    eye = np.eye(ops[0].matrix.shape[0])
    dev = max(frobenius(np.linalg.matrix_power(o.matrix, d) - eye) for o in ops)
    for j in range(len(ops)):
        for k in range(j + 1, len(ops)):
            a, b = ops[j].matrix, ops[k].matrix
            dev = max(dev, frobenius(a @ b - q * (b @ a)))
    return dev


def verify_power_identity(ops: list[RegisterOperator], coeffs, d: int) -> float:
    """Deviation of (sum_j a_j o_j)^d from (sum_j a_j^d) 1."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (len(ops),):
        raise DomainError(f"need {len(ops)} coefficients, got shape {coeffs.shape}")
    total = sum(c * o.matrix for c, o in zip(coeffs, ops))
    power = np.linalg.matrix_power(total, d)
    target = np.sum(coeffs**d) * np.eye(power.shape[0])
    return frobenius(power - target)


def pairing_phase(d: int) -> complex:
    """The constant e^{i pi (d+1)/d} by which both pairing products differ
    from their site-operator targets under the Y = e^{i pi (d-1)/d} U V
    convention (it reduces to -i at d = 2)."""
    return root_of_unity(d + 1, 2 * d)


def verify_pairing(d: int, n: int) -> float:
    """Max deviation of the pairing identities over all admissible sites.

    The z-family products reproduce single-site and neighbouring two-site
    operators up to the fixed phase c = pairing_phase(d):

        z_{2k-1} z_{2k}^dag   = c X_k                 (k = 1..n)
        z_{2k}   z_{2k+1}^dag = c Z_k^dag Z_{k+1}     (k = 1..n-1)

    The constant is divided out before measuring the deviation.
    """
    if n < 2:
        raise DomainError(f"pairing identities need n >= 2, got {n}")
    zf = build_z_family(d, n)
    w = build_weyl(d)
    c = pairing_phase(d)
    dev = 0.0
    for k in range(1, n + 1):
        lhs = zf[2 * k - 2].matrix @ zf[2 * k - 1].matrix.conj().T
        rhs = site_operator(d, n, k, "X").matrix
        dev = max(dev, frobenius(lhs / c - rhs))
    eye = np.eye(d, dtype=complex)
    for k in range(1, n):
        lhs = zf[2 * k - 1].matrix @ zf[2 * k].matrix.conj().T
        rhs = _chain([eye] * (k - 1) + [w.Z.conj().T, w.Z] + [eye] * (n - k - 1))
        dev = max(dev, frobenius(lhs / c - rhs))
    return dev


def site_operator(d: int, n: int, k: int, label: str) -> SiteOperator:
    """Single-site embedding 1 x ... x op x ... x 1 with op at site k (1-based)."""
    _check_register(d, n)
    if not 1 <= k <= n:
        raise DomainError(f"site must lie in 1..{n}, got {k}")
    w = build_weyl(d)
    try:
        op = {"X": w.X, "Y": w.Y, "Z": w.Z}[label]
    except KeyError:
        raise ContractError(f"unknown site label {label!r}; expected X, Y or Z") from None
    eye = np.eye(d, dtype=complex)
    m = _chain([eye] * (k - 1) + [op] + [eye] * (n - k))
    return SiteOperator(d=d, n=n, site=k, label=label, matrix=m)
