"""Qudit Weyl lab: discrete Weyl operators, register families, gate-set
universality certificates, MUB tomography and SIC fiducial search."""

from .exceptions import (CapacityError, ContractError, DomainError, MatrixFormatError,
                         QwlError, ShapeError, UnderdeterminedError)
from .linalg import (RandomSource, dagger, expm_hermitian, hermitian_eig, hs_inner,
                     matmul, matrix_from_json, matrix_to_json, tensor, unitary_eig)
from .registers import (RegisterOperator, SiteOperator, build_x_family, build_z_family,
                        pairing_phase, site_operator, verify_pairing, verify_power_identity,
                        verify_quantum_plane)
from .sic import (SICCandidate, SICSearchResult, frame_error, search_fiducial, verify_sic,
                  weyl_orbit)
from .tomography import (DensityMatrix, MeasurementRecord, MUBSet, born_probability,
                         mub_prime, random_density, reconstruct, reconstruct_from_frequencies,
                         simulate_measurements, verify_mub)
from .universality import (HamiltonianSet, LieClosureResult, gate, is_universal, lie_closure,
                           quadratic_qubit_set, universal_qubit_set, universal_qudit_set,
                           universal_qutrit_set)
from .weyl import WeylOperators, build_weyl, check_weyl_relation, weyl_monomial, weyl_relation_report

__version__ = "0.1.0"
