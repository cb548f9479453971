"""Executable no-go arguments, each returning a pass/fail report.

Three runners are provided:

* :func:`verify_ghz`: the operator-algebra argument on three pairs.  The
  four commuting triple products have spectra in {±2^k}, their matrix
  product is a negative operator, a common eigenvector with eigenvalues
  (1, 1, 1, -1) exists, and no assignment of pair values can reproduce
  those four products at once (exhaustive search over 4096 assignments).
* :func:`verify_hardy`: the probability argument on two pairs.  On the
  Hardy state, two conditional certainties plus one strictly positive
  joint probability would force both pairs into singlets with probability
  at least 1/12, yet the actual joint-singlet probability is 0.
* :func:`swap_demo`: entanglement swapping on singlet x singlet.  A Bell
  measurement on the middle particles leaves the outer pair maximally
  entangled for every outcome; the product-basis measurement leaves it
  factorized, with uniform outcome probabilities either way.

All runners are pure and deterministic: projector algebra throughout, no
sampling.
"""

from __future__ import annotations

import numpy as np

from . import ks_search
from . import observables as obs
from .report import CheckResult, VerificationReport, make_check, make_report
from .tensor_core import (
    apply,
    commutator_norm,
    is_projector,
    joint_eigenspace,
    kron,
    matmul,
    max_abs,
    measure_project,
    normalize,
    projector,
    schmidt_entropy,
    spectrum,
)

__all__ = [
    "CheckResult",
    "VerificationReport",
    "verify_ghz",
    "verify_hardy",
    "conditional_probability",
    "swap_demo",
    "GHZ_JOINT_TARGETS",
]

#: Joint eigenvalues defining the preferred common eigenvector of the four
#: triple products; their product is negative, as it must be.
GHZ_JOINT_TARGETS = (1.0, 1.0, 1.0, -1.0)

_PRODUCT_ALLOWED = tuple(float(s * 2**k) for k in range(4) for s in (1, -1))
_NEGATIVE_ALLOWED = tuple(float(-(16**m)) for m in range(4))


def _nearest(value: float, allowed: tuple[float, ...]) -> float:
    return min(allowed, key=lambda a: abs(value - a))


def _spectrum_check(name: str, mat: np.ndarray, allowed: tuple[float, ...], cluster_tol: float) -> CheckResult:
    clusters = spectrum(mat, cluster_tol=cluster_tol).distinct()
    expected = tuple(_nearest(v, allowed) for v in clusters)
    return make_check(name, clusters, expected, cluster_tol)


def verify_ghz(tol: float = 1e-10, cluster_tol: float = 1e-8) -> VerificationReport:
    """Run every step of the three-pair operator-algebra argument.

    Checks, in order: mutual commutation of the four triple products,
    their spectra, the negativity of their ordered matrix product, the
    existence (and recorded dimension) of the joint eigenvector for
    eigenvalues (1, 1, 1, -1) together with its four eigenvalue-equation
    residuals, and the unsatisfiability of the induced value constraints
    over all 4096 pair-value assignments.
    """
    patterns = obs.GHZ_PRODUCT_PATTERNS
    labels = [obs.pattern_label(p) for p in patterns]
    ops = [obs.build_product(p) for p in patterns]
    checks: list[CheckResult] = []

    for i in range(4):
        for j in range(i + 1, 4):
            checks.append(
                make_check(f"commutator [{labels[i]}, {labels[j]}]", commutator_norm(ops[i], ops[j]), 0.0, tol)
            )

    for label, op in zip(labels, ops):
        checks.append(_spectrum_check(f"spectrum of {label} within {{±2^k}}", op, _PRODUCT_ALLOWED, cluster_tol))

    prod = matmul(matmul(ops[0], ops[1]), matmul(ops[2], ops[3]))
    checks.append(make_check("ordered product of the four observables is Hermitian", max_abs(prod - prod.conj().T), 0.0, tol))
    checks.append(_spectrum_check("spectrum of the product within {-16^m}", prod, _NEGATIVE_ALLOWED, cluster_tol))

    basis = joint_eigenspace(ops, GHZ_JOINT_TARGETS, tol=cluster_tol, commute_tol=tol)
    checks.append(make_check("common eigenvector with eigenvalues (1,1,1,-1) exists", 1.0 if basis else 0.0, 1.0, 0.0))
    checks.append(make_check("joint eigenspace dimension (computed)", float(len(basis)), 1.0, 0.0))
    if basis:
        witness = basis[0]
        for label, op, target in zip(labels, ops, GHZ_JOINT_TARGETS):
            residual = float(np.linalg.norm(apply(op, witness) - target * witness))
            checks.append(make_check(f"eigenvalue equation residual for {label} (target {target:+g})", residual, 0.0, tol))

    found = ks_search.search(ks_search.state_dependent_system())
    checks.append(make_check("pair-value constraints unsatisfiable", 1.0 if found.satisfiable else 0.0, 0.0, 0.0))
    checks.append(make_check("assignments exhausted", float(found.assignments_checked), 4096.0, 0.0))

    return make_report("ghz", checks)


def conditional_probability(s, target, condition, tol: float = 1e-10) -> float:
    """Probability of ``target`` given ``condition`` on state ``s``.

    Both arguments must be projectors and commute within ``tol`` (so the
    joint outcome is well defined); the conditional is undefined, and a
    ValueError, when the condition probability does not exceed ``tol``.
    """
    t = np.asarray(target, dtype=complex)
    c = np.asarray(condition, dtype=complex)
    if not is_projector(t, tol=max(tol, 1e-12)) or not is_projector(c, tol=max(tol, 1e-12)):
        raise ValueError("conditional_probability requires projectors")
    if commutator_norm(t, c) > tol:
        raise ValueError("target and condition projectors must commute")
    v = normalize(s)
    p_cond = float(np.real(np.vdot(v, c @ v)))
    if p_cond <= tol:
        raise ValueError(f"condition probability {p_cond:g} too small for conditioning")
    p_joint = float(np.real(np.vdot(v, t @ (c @ v))))
    return p_joint / p_cond


def verify_hardy(tol: float = 1e-10) -> VerificationReport:
    """Run the four probability properties of the Hardy state plus summary.

    Outcomes on pair (1,2) tensor pair (3,4): the +- product outcome on
    either pair certifies the other pair's singlet; the joint +- outcome
    has probability 1/12; the joint singlet probability is 0.  The final
    check juxtaposes the preexistence lower bound (1/12) with the actual
    joint singlet probability (0).
    """
    eta = obs.hardy_state()
    eye4 = np.eye(4, dtype=complex)
    p_singlet = projector(obs.singlet())
    p_plus_minus = projector(obs.basis_state("+-"))

    singlet_12 = kron(p_singlet, eye4)
    singlet_34 = kron(eye4, p_singlet)
    alpha_12 = kron(p_plus_minus, eye4)
    alpha_34 = kron(eye4, p_plus_minus)

    checks = [
        make_check(
            "P(singlet on 1,2 | +- outcome on 3,4) = 1",
            conditional_probability(eta, singlet_12, alpha_34, tol=tol),
            1.0,
            tol,
        ),
        make_check(
            "P(singlet on 3,4 | +- outcome on 1,2) = 1",
            conditional_probability(eta, singlet_34, alpha_12, tol=tol),
            1.0,
            tol,
        ),
        make_check(
            "P(+- on 1,2 and +- on 3,4) = 1/12",
            measure_project(eta, matmul(alpha_12, alpha_34), tol=tol)[0],
            1.0 / 12.0,
            tol,
        ),
        make_check(
            "P(singlet on 1,2 and singlet on 3,4) = 0",
            measure_project(eta, matmul(singlet_12, singlet_34), tol=tol)[0],
            0.0,
            tol,
        ),
    ]

    # Interpretation-level summary: were the certified singlets present all
    # along, the joint singlet probability could not fall below the joint
    # +- probability.  The two numbers disagree maximally.
    bound = checks[2].measured
    actual = checks[3].measured
    checks.append(
        make_check(
            "preexistence bound (1/12) vs actual joint singlet probability (0)",
            (bound, actual),
            (1.0 / 12.0, 0.0),
            tol,
        )
    )
    return make_report("hardy", checks)


def _swap_outcomes(measurement: obs.PairKind) -> list[tuple[str, np.ndarray]]:
    if measurement is obs.PairKind.B:
        return [
            ("phi+", obs.bell_state(obs.BellLabel.PHI_PLUS)),
            ("psi+", obs.bell_state(obs.BellLabel.PSI_PLUS)),
            ("psi-", obs.bell_state(obs.BellLabel.PSI_MINUS)),
            ("phi-", obs.bell_state(obs.BellLabel.PHI_MINUS)),
        ]
    return [
        ("++", obs.basis_state("++")),
        ("+-", obs.basis_state("+-")),
        ("-+", obs.basis_state("-+")),
        ("--", obs.basis_state("--")),
    ]


def swap_demo(
    measurement: obs.PairKind = obs.PairKind.B,
    tol: float = 1e-10,
    entropy_tol: float = 1e-9,
) -> VerificationReport:
    """Post-select each outcome of a middle-pair measurement on two singlets.

    Particles are numbered 1..4 with pairs (1,2) and (3,4) each in a
    singlet; the chosen observable acts on particles (2,3).  For every
    outcome the conditional pure state of particles (1,4) is computed
    and its entanglement entropy across the 1|4 cut reported: 1 bit per
    outcome for the Bell measurement, 0 for the product-basis measurement.
    """
    state = np.kron(obs.singlet(), obs.singlet())
    eye2 = np.eye(2, dtype=complex)
    expected_entropy = 1.0 if measurement is obs.PairKind.B else 0.0
    checks: list[CheckResult] = []
    probabilities: list[float] = []

    for name, chi in _swap_outcomes(measurement):
        # Particles (2,3) occupy the middle two binary digits of the basis
        # index (particle 1 is most significant): index = 8*s1+4*s2+2*s3+s4.
        # The outcome projector therefore embeds as I_2 (x) |chi><chi| (x) I_2.
        full = kron(eye2, kron(projector(chi), eye2))
        prob, post = measure_project(state, full, tol=tol)
        probabilities.append(prob)
        checks.append(make_check(f"outcome {name}: probability", prob, 0.25, tol))
        if post is None:
            checks.append(make_check(f"outcome {name}: conditional state exists", 0.0, 1.0, 0.0))
            continue
        # Conditional (1,4) state: reshape the post-selected vector to axes
        # (s1, s2, s3, s4) and contract out the pure (2,3) outcome state.
        amplitudes = post.reshape(2, 2, 2, 2)
        outer_pair = np.einsum("abcd,bc->ad", amplitudes, chi.reshape(2, 2).conj())
        outer_state = normalize(outer_pair.reshape(4))
        entropy = schmidt_entropy(outer_state, 2)
        checks.append(
            make_check(f"outcome {name}: entanglement entropy of particles (1,4) in bits", entropy, expected_entropy, entropy_tol)
        )

    checks.append(make_check("outcome probabilities sum to 1", float(sum(probabilities)), 1.0, tol))
    return make_report("swap", checks)
