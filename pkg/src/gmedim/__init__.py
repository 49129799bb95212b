"""Certification of the entanglement dimensionality of noisy qudit states.

Three criterion families are provided: closed-form fidelity bounds,
two-basis witnesses with their critical visibilities, and
convex-programming relaxations (LP and SDP) that bound the visibility at
which a noisy target state stops being explainable by bounded
Schmidt-rank mixtures.
"""

from .config import DEFAULTS, Settings
from .oracles import (
    intro_tau,
    projector_residual,
    qubit_ghz_mixture,
    result1_bruteforce,
    tight_dephased_mixture,
)
from .reference import TABLE_IDS, load_reference, reference_table, reference_version
from .registers import (
    Bipartition,
    DensityMatrix,
    HermitianOperator,
    PureState,
    RegisterShape,
    bipartitions,
    partial_trace,
)
from .relax import (
    MeasurementSet,
    ReductionMapSpec,
    RelaxationResult,
    SchmidtVectorHypothesis,
    build_lp_program,
    build_measurement_set,
    ghz_symmetry_reduce,
    lp_gme_dimension,
    lp_map_action,
    lp_schmidt_vector,
    sdp_feasibility_probe,
    sdp_gme_dimension,
    sdp_statistics,
    solve_lp_program,
)
from .states import (
    BasisFamily,
    NoiseModel,
    classical_diagonal,
    cluster,
    computational_basis,
    dephase_diag,
    depolarize,
    fourier_basis,
    ghz,
    mub_basis,
    pauli_x,
    pauli_z,
    state_diagonal_family,
    weyl_eigenbasis,
)
from .witness import (
    GmeHypothesis,
    WitnessReport,
    certify,
    cluster_witness_operator,
    cluster_witness_value,
    fidelity,
    fidelity_bound_closed,
    fidelity_bound_general,
    ghz_witness_operator,
    ghz_witness_value,
    impact_delta,
    minimal_witness_bound,
    tenbasis_extreme_eigenvalues,
    tenbasis_linear_operator,
    tenbasis_tuples,
    tenbasis_vcrit,
    tenbasis_vcrit_exact,
    tenbasis_witness_operator,
    vcrit_cluster,
    vcrit_fidelity_depolarizing,
    vcrit_ghz_dephasing,
    vcrit_ghz_depolarizing,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULTS",
    "Settings",
    "RegisterShape",
    "PureState",
    "DensityMatrix",
    "HermitianOperator",
    "Bipartition",
    "bipartitions",
    "partial_trace",
    "BasisFamily",
    "NoiseModel",
    "ghz",
    "cluster",
    "pauli_x",
    "pauli_z",
    "computational_basis",
    "fourier_basis",
    "mub_basis",
    "weyl_eigenbasis",
    "classical_diagonal",
    "depolarize",
    "dephase_diag",
    "state_diagonal_family",
    "GmeHypothesis",
    "WitnessReport",
    "fidelity",
    "fidelity_bound_general",
    "fidelity_bound_closed",
    "ghz_witness_operator",
    "cluster_witness_operator",
    "ghz_witness_value",
    "cluster_witness_value",
    "minimal_witness_bound",
    "certify",
    "vcrit_ghz_depolarizing",
    "vcrit_ghz_dephasing",
    "vcrit_cluster",
    "vcrit_fidelity_depolarizing",
    "tenbasis_tuples",
    "tenbasis_witness_operator",
    "tenbasis_linear_operator",
    "tenbasis_extreme_eigenvalues",
    "tenbasis_vcrit",
    "tenbasis_vcrit_exact",
    "impact_delta",
    "ReductionMapSpec",
    "SchmidtVectorHypothesis",
    "MeasurementSet",
    "RelaxationResult",
    "build_lp_program",
    "ghz_symmetry_reduce",
    "solve_lp_program",
    "lp_map_action",
    "lp_gme_dimension",
    "lp_schmidt_vector",
    "sdp_feasibility_probe",
    "sdp_gme_dimension",
    "build_measurement_set",
    "sdp_statistics",
    "intro_tau",
    "qubit_ghz_mixture",
    "tight_dephased_mixture",
    "projector_residual",
    "result1_bruteforce",
    "TABLE_IDS",
    "load_reference",
    "reference_table",
    "reference_version",
    "__version__",
]
