"""Discrete Weyl pair and the generalized Pauli triple for qudits.

For dimension d the shift U maps basis vector e_k to e_{k-1 mod d} and the
clock V is diag(1, zeta, ..., zeta^{d-1}) with zeta = e^{2 pi i / d}, so that
U V = zeta V U. The triple is X = U, Z = V, Y = e^{i pi (d-1)/d} U V; the phase
makes Y^d = 1 for every d and reduces Y to sigma_y at d = 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .linalg import frobenius

__all__ = ["WeylOperators", "build_weyl", "check_weyl_relation", "weyl_relation_report",
           "weyl_monomial", "root_of_unity"]


def root_of_unity(k: int, d: int) -> complex:
    """e^{2 pi i k / d}, exact (no rounding) at multiples of a quarter turn."""
    if d < 1:
        raise DomainError(f"root order must be positive, got {d}")
    k %= d
    if (4 * k) % d == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(4 * k) // d % 4]
    angle = 2.0 * np.pi * k / d
    return complex(np.cos(angle), np.sin(angle))


@dataclass(frozen=True)
class WeylOperators:
    """The tuple (U, V, X, Y, Z, zeta) for one dimension d; immutable once built."""

    d: int
    zeta: complex
    U: np.ndarray
    V: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray


def build_weyl(d: int) -> WeylOperators:
    """Construct the Weyl operators for dimension d >= 2.

    At d = 2 the triple is exactly (sigma_x, sigma_y, sigma_z), bit for bit.
    """
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    roots = np.array([root_of_unity(k, d) for k in range(d)])
    u = np.zeros((d, d), dtype=complex)
    for j in range(d):
        u[j, (j + 1) % d] = 1.0
    v = np.diag(roots)
    y = root_of_unity(d - 1, 2 * d) * (u @ v)
    ops = WeylOperators(d=d, zeta=roots[1], U=u, V=v, X=u.copy(), Y=y, Z=v.copy())
    for m in (ops.U, ops.V, ops.X, ops.Y, ops.Z):
        m.setflags(write=False)
    return ops


def weyl_relation_report(w: WeylOperators) -> dict[str, float]:
    """Frobenius deviations of the defining relations, by name.

    Covers the braiding identities (including the reversed-order form, which
    picks up zeta^{-1}), and the d-th powers X^d = Y^d = Z^d = 1.
    """
    z = w.zeta
    eye = np.eye(w.d)
    report = {
        "UV-zVU": frobenius(w.U @ w.V - z * (w.V @ w.U)),
        "XY-zYX": frobenius(w.X @ w.Y - z * (w.Y @ w.X)),
        "YZ-zZY": frobenius(w.Y @ w.Z - z * (w.Z @ w.Y)),
        "XZ-zZX": frobenius(w.X @ w.Z - z * (w.Z @ w.X)),
        "ZX-(1/z)XZ": frobenius(w.Z @ w.X - (w.X @ w.Z) / z),
        "X^d-1": frobenius(np.linalg.matrix_power(w.X, w.d) - eye),
        "Y^d-1": frobenius(np.linalg.matrix_power(w.Y, w.d) - eye),
        "Z^d-1": frobenius(np.linalg.matrix_power(w.Z, w.d) - eye),
    }
    return report


def check_weyl_relation(w: WeylOperators) -> float:
    """Max deviation over the braiding relations XY = zYX, YZ = zZY, XZ = zZX
    and the order-sensitivity check ZX = z^{-1} XZ."""
    report = weyl_relation_report(w)
    return max(report[k] for k in ("XY-zYX", "YZ-zZY", "XZ-zZX", "ZX-(1/z)XZ"))


def weyl_monomial(w: WeylOperators, a: int, b: int) -> np.ndarray:
    """Displacement X^a Z^b; the d^2 monomials are Hilbert-Schmidt orthogonal."""
    if not (0 <= a < w.d and 0 <= b < w.d):
        raise DomainError(f"exponents must lie in 0..{w.d - 1}, got ({a}, {b})")
    return np.linalg.matrix_power(w.X, a) @ np.linalg.matrix_power(w.Z, b)
