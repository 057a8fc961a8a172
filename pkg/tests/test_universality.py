import numpy as np
import pytest

from qwl.exceptions import CapacityError, ContractError, DomainError
from qwl.universality import (HamiltonianSet, agreement_projector, gate, is_universal,
                              lie_closure, quadratic_qubit_set, qutrit_site_hamiltonians,
                              universal_qubit_set, universal_qudit_set, universal_qutrit_set)

from conftest import SIGMA_X, SIGMA_Z, frob


def assert_two_site_support(m: np.ndarray, d: int, n: int, k: int):
    """Check that m acts as identity everywhere outside neighbouring sites (k, k+1)."""
    pre, post = d ** (k - 1), d ** (n - k - 1)
    block = m.reshape(pre, d * d, post, pre, d * d, post)[0, :, 0, 0, :, 0]
    rebuilt = np.kron(np.kron(np.eye(pre), block), np.eye(post))
    assert frob(rebuilt - m) <= 1e-12


class TestSetConstruction:
    def test_quadratic_two_qubits(self):
        hset = quadratic_qubit_set(2)
        assert [label for label, _ in hset.generators] == ["X_1", "X_2", "Z_1Z_2"]
        mats = hset.matrices()
        assert np.array_equal(mats[0], np.kron(SIGMA_X, np.eye(2)))
        assert np.array_equal(mats[1], np.kron(np.eye(2), SIGMA_X))
        assert np.array_equal(mats[2], np.kron(SIGMA_Z, SIGMA_Z))

    def test_quadratic_counts(self):
        assert len(quadratic_qubit_set(3).generators) == 5

    def test_universal_qubit_counts(self):
        assert len(universal_qubit_set(2).generators) == 5
        assert len(universal_qubit_set(3).generators) == 7

    def test_universal_qudit_d3(self):
        hset = universal_qudit_set(3, 2)
        assert len(hset.generators) == 8  # 2 clock + 4 shift + 2 pair generators
        for label, m in hset.generators:
            assert frob(m - m.conj().T) <= 1e-10
            if "Z_1Z_2" in label:
                assert frob(m - np.diag(np.diag(m))) <= 1e-14  # pair couplings stay diagonal
                assert_two_site_support(m, 3, 2, 1)

    def test_universal_qudit_d2_reduces_to_qubit_rays(self):
        # anti-Hermitian halves vanish at d=2; what survives is a rescaled subset
        # of the universal qubit generators
        reduced = universal_qudit_set(2, 2)
        assert len(reduced.generators) == 4
        reference = universal_qubit_set(2).matrices()
        for _, m in reduced.generators:
            assert any(frob(m - 2 * r) <= 1e-12 for r in reference)

    def test_universal_qudit_d2_logs_dropped_generators(self, caplog):
        with caplog.at_level("INFO", logger="qwl.universality"):
            universal_qudit_set(2, 2)
        assert any("dropping zero generator" in message for message in caplog.messages)

    def test_qutrit_site_matrices(self):
        mats = dict(qutrit_site_hamiltonians())
        assert np.array_equal(mats["diag(1,-1,0)"], np.diag([1, -1, 0]).astype(complex))
        assert np.array_equal(mats["sym_offdiag"],
                              np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=complex))

    def test_agreement_projector_diagonal(self):
        expected = np.diag([1, 0, 0, 0, 1, 0, 0, 0, 1]).astype(complex)
        assert np.array_equal(agreement_projector(3), expected)

    def test_qutrit_set_layout(self):
        hset = universal_qutrit_set(2)
        assert len(hset.generators) == 13  # 4 site Hamiltonians x2 + X parts x4 + 1 pair
        pair = dict(hset.generators)["agree_12"]
        assert_two_site_support(pair, 3, 2, 1)
        assert frob(pair - np.diag(np.diag(pair))) == 0

    def test_rejects_non_hermitian_generator(self):
        with pytest.raises(ContractError):
            HamiltonianSet(d=2, n=1, name="bad",
                           generators=[("H", np.array([[0, 1], [0, 0]], dtype=complex))])

    def test_single_site_register_rejected(self):
        with pytest.raises(DomainError):
            quadratic_qubit_set(1)

    def test_capacity_cap(self):
        with pytest.raises(CapacityError):
            universal_qudit_set(3, 5)  # 3^5 = 243 > 81


class TestLieClosure:
    def test_abelian_single_generator(self):
        hset = HamiltonianSet(d=2, n=1, name="z", generators=[("Z", SIGMA_Z)])
        assert lie_closure(hset).dimension == 1

    def test_su2_from_two_generators(self):
        hset = HamiltonianSet(d=2, n=1, name="xz",
                              generators=[("X", SIGMA_X), ("Z", SIGMA_Z)])
        result = lie_closure(hset)
        assert result.dimension == 3
        assert result.converged

    @pytest.mark.parametrize("n,expected", [(2, 6), (3, 15)])
    def test_quadratic_sets_close_below_full(self, n, expected):
        result = lie_closure(quadratic_qubit_set(n))
        assert result.dimension == expected == n * (2 * n - 1)
        assert result.converged
        assert not result.contains_identity

    @pytest.mark.parametrize("n,expected", [(2, 15), (3, 63)])
    def test_universal_qubit_sets(self, n, expected):
        assert lie_closure(universal_qubit_set(n)).dimension == expected

    def test_universal_qudit_closure(self):
        result = lie_closure(universal_qudit_set(3, 2))
        assert result.dimension == 80
        assert result.converged

    def test_qutrit_set_closure(self):
        result = lie_closure(universal_qutrit_set(2))
        assert result.dimension == 80
        assert result.contains_identity  # the agreement projector carries trace

    def test_basis_properties(self):
        result = lie_closure(quadratic_qubit_set(2))
        basis = result.basis
        for i, a in enumerate(basis):
            assert frob(a + a.conj().T) <= 1e-8  # anti-Hermitian
            for j, b in enumerate(basis):
                inner = np.sum(a.conj() * b).real
                assert abs(inner - (1.0 if i == j else 0.0)) <= 1e-8

    def test_commutators_stay_in_span(self):
        result = lie_closure(quadratic_qubit_set(2))
        flat = np.array([b.ravel() for b in result.basis])
        for a in result.basis:
            for b in result.basis:
                comm = (a @ b - b @ a).ravel()
                coefs = np.real(flat.conj() @ comm)
                assert np.linalg.norm(comm - coefs @ flat) <= 1e-6

    def test_dimension_invariances(self):
        base = universal_qubit_set(2)
        expected = lie_closure(base).dimension
        gens = list(base.generators)

        permuted = HamiltonianSet(d=2, n=2, name="perm", generators=gens[::-1])
        assert lie_closure(permuted).dimension == expected

        rescaled = HamiltonianSet(d=2, n=2, name="scale",
                                  generators=[(l, 0.37 * m) for l, m in gens])
        assert lie_closure(rescaled).dimension == expected

        mixed_gens = list(gens)
        mixed_gens[0] = ("mix", gens[0][1] + 0.5 * gens[1][1] - 2.0 * gens[2][1])
        mixed = HamiltonianSet(d=2, n=2, name="mix", generators=mixed_gens)
        assert lie_closure(mixed).dimension == expected

    def test_max_dim_cap_reports_unconverged(self):
        result = lie_closure(universal_qubit_set(2), max_dim=5)
        assert not result.converged
        assert len(result.basis) == 5


class TestIsUniversal:
    def test_quadratic_not_universal(self):
        universal, report = is_universal(quadratic_qubit_set(2))
        assert not universal
        assert report["dimension"] == 6
        assert report["expected"] == 15

    def test_universal_qubit(self):
        universal, report = is_universal(universal_qubit_set(2))
        assert universal
        assert report["dimension"] == 15

    def test_universal_qudit(self):
        universal, report = is_universal(universal_qudit_set(3, 2))
        assert universal
        assert report["dimension"] == 80


class TestGate:
    def test_zero_hamiltonian(self):
        assert np.allclose(gate(np.zeros((2, 2), dtype=complex), 1.0), np.eye(2), atol=1e-14)

    def test_agreement_projector_half_turn(self):
        out = gate(agreement_projector(3), np.pi)
        expected = np.diag([-1, 1, 1, 1, -1, 1, 1, 1, -1]).astype(complex)
        np.testing.assert_allclose(out, expected, atol=1e-12)

    def test_sigma_x_quarter_turn(self):
        out = gate(SIGMA_X, np.pi / 2)
        np.testing.assert_allclose(out, -1j * SIGMA_X, atol=1e-12)
        assert frob(out.conj().T @ out - np.eye(2)) <= 1e-10
