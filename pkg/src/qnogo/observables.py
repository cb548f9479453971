"""States and operators for spin-1/2 pairs: product projectors, the two
non-degenerate pair observables, Bell states, triple products on the
64-dimensional three-pair space, and the Hardy state on two pairs.

Basis ordering convention, used everywhere in this package: the
computational product basis is enumerated lexicographically with
|+> mapped to digit 0 and |-> to digit 1, particle 1 being the most
significant digit.  So for two particles the order is
|++>, |+->, |-+>, |-->.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .tensor_core import kron_all, projector


class PairKind(str, Enum):
    """Which of the two alternative pair observables is measured."""

    A = "A"  # diagonal in the product basis, eigenvalues 2, 1, -1, -2
    B = "B"  # diagonal in the Bell basis, eigenvalues 2, 1, -1, -2


class BellLabel(Enum):
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"


#: Triple-product pattern: one PairKind per pair (1,2), (3,4), (5,6).
ProductPattern = tuple[PairKind, PairKind, PairKind]

#: The four commuting triple products whose joint eigenvalues cannot all
#: be reproduced by predetermined pair values (their matrix product is a
#: negative operator, so the product of the four eigenvalues is negative).
GHZ_PRODUCT_PATTERNS: tuple[ProductPattern, ...] = (
    (PairKind.A, PairKind.A, PairKind.B),
    (PairKind.A, PairKind.B, PairKind.A),
    (PairKind.B, PairKind.A, PairKind.A),
    (PairKind.B, PairKind.B, PairKind.B),
)

_PAIR_SLOTS = ("12", "34", "56")


def pattern_label(pattern: Sequence[PairKind]) -> str:
    """Readable name like ``A12A34B56`` for a triple-product pattern."""
    return "".join(f"{kind.value}{slot}" for kind, slot in zip(pattern, _PAIR_SLOTS))


def _parse_signs(signs: Iterable) -> list[int]:
    parsed = []
    for s in signs:
        if s in (1, +1, "+"):
            parsed.append(0)
        elif s in (-1, "-"):
            parsed.append(1)
        else:
            raise ValueError(f"sign must be +1/-1 or '+'/'-', got {s!r}")
    if not parsed:
        raise ValueError("need at least one sign")
    return parsed


def basis_state(signs) -> np.ndarray:
    """Computational product basis vector for a sign pattern.

    Accepts a string like ``"+-+-"`` or a sequence of +1/-1 values.
    """
    bits = _parse_signs(signs)
    dim = 2 ** len(bits)
    index = 0
    for b in bits:
        index = 2 * index + b
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def bell_state(label: BellLabel) -> np.ndarray:
    """One of the four maximally entangled two-particle states."""
    amp = 1.0 / np.sqrt(2.0)
    if label is BellLabel.PHI_PLUS:
        return amp * (basis_state("++") + basis_state("--"))
    if label is BellLabel.PHI_MINUS:
        return amp * (basis_state("++") - basis_state("--"))
    if label is BellLabel.PSI_PLUS:
        return amp * (basis_state("+-") + basis_state("-+"))
    if label is BellLabel.PSI_MINUS:
        return amp * (basis_state("+-") - basis_state("-+"))
    raise ValueError(f"unknown Bell label {label!r}")


def singlet() -> np.ndarray:
    """The antisymmetric Bell state (opposite outcomes in every direction)."""
    return bell_state(BellLabel.PSI_MINUS)


def build_pair_A() -> np.ndarray:
    """Pair observable diagonal in the product basis.

    Weighted sum of the four product projectors with coefficients
    2, 1, -1, -2, hence diag(2, 1, -1, -2) under the module ordering.
    """
    return (
        2.0 * projector(basis_state("++"))
        + 1.0 * projector(basis_state("+-"))
        - 1.0 * projector(basis_state("-+"))
        - 2.0 * projector(basis_state("--"))
    )


def build_pair_B() -> np.ndarray:
    """Pair observable diagonal in the Bell basis (the Bell operator).

    Weighted sum of the four Bell projectors with coefficients 2, 1, -1, -2
    on phi+, psi+, psi-, phi-.  In the computational basis this comes out
    antidiagonal: entries (0,3) = (3,0) = 2 and (1,2) = (2,1) = 1.
    """
    return (
        2.0 * projector(bell_state(BellLabel.PHI_PLUS))
        + 1.0 * projector(bell_state(BellLabel.PSI_PLUS))
        - 1.0 * projector(bell_state(BellLabel.PSI_MINUS))
        - 2.0 * projector(bell_state(BellLabel.PHI_MINUS))
    )


def pair_operator(kind: PairKind) -> np.ndarray:
    return build_pair_A() if kind is PairKind.A else build_pair_B()


def build_product(pattern: Sequence[PairKind]) -> np.ndarray:
    """64-dim observable: tensor product of one pair observable per slot."""
    kinds = tuple(pattern)
    if len(kinds) != 3 or not all(isinstance(k, PairKind) for k in kinds):
        raise ValueError("pattern must be three PairKind values")
    return kron_all([pair_operator(k) for k in kinds])


def embed_pair(op: np.ndarray, pair_index: int) -> np.ndarray:
    """Lift a 4-dim pair operator to the 64-dim three-pair space.

    ``pair_index`` 0, 1, 2 selects pairs (1,2), (3,4), (5,6); identity acts
    on the other two pairs, so the embedded operator measures one pair
    without disturbing the rest.
    """
    a = np.asarray(op, dtype=complex)
    if a.shape != (4, 4):
        raise ValueError(f"pair operator must be 4x4, got {a.shape}")
    if pair_index not in (0, 1, 2):
        raise ValueError(f"pair_index must be 0, 1 or 2, got {pair_index}")
    eye = np.eye(4, dtype=complex)
    factors = [eye, eye, eye]
    factors[pair_index] = a
    return kron_all(factors)


def hardy_state() -> np.ndarray:
    """Two-pair state exhibiting the probability-free-bound contradiction.

    Support on four product basis states of particles (1,2,3,4) with
    amplitudes (1, -1, -1, -3) / (2*sqrt(3)); unit norm since
    (1 + 1 + 1 + 9) / 12 = 1.
    """
    c = 1.0 / (2.0 * np.sqrt(3.0))
    return c * (
        basis_state("+-+-")
        - basis_state("+--+")
        - basis_state("-++-")
        - 3.0 * basis_state("-+-+")
    )
