"""Numerical and combinatorial certification of quantum no-go arguments.

Layers: :mod:`qnogo.tensor_core` (dense complex linear algebra),
:mod:`qnogo.observables` (the concrete states and operators),
:mod:`qnogo.proofs` (the runnable arguments), :mod:`qnogo.ks_search`
(generic context systems and the exhaustive assignment search), and
:mod:`qnogo.cli` (the ``qnogo`` command).
"""

from .observables import (
    BellLabel,
    GHZ_PRODUCT_PATTERNS,
    PairKind,
    basis_state,
    bell_state,
    build_pair_A,
    build_pair_B,
    build_product,
    embed_pair,
    hardy_state,
    singlet,
)
from .proofs import conditional_probability, swap_demo, verify_ghz, verify_hardy
from .report import CheckResult, VerificationReport
from .tensor_core import (
    EigenDecomposition,
    SpectrumMultiset,
    apply,
    commutator_norm,
    hermitian_eig,
    is_hermitian,
    is_projector,
    joint_eigenspace,
    kron,
    kron_all,
    matmul,
    measure_project,
    normalize,
    projector,
    schmidt_entropy,
    spectrum,
)
from .ks_search import (
    Context,
    ContextSystem,
    SearchReport,
    SymbolicObservable,
    builtin_matrix_bindings,
    search,
    state_dependent_system,
    state_independent_system,
    system_from_document,
    system_to_document,
    validate_against_matrices,
)

__version__ = "0.1.0"
