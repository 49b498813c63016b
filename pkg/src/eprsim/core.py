"""Core two-photon state and probability types.

A tunable source emits photon pairs in a superposition that interpolates
between a maximally entangled singlet-like state and a product state as a
mixing angle alpha runs from 0 to pi/4.  Written in an abstract two-level
basis per photon, the joint state is

    psi(alpha) = (|11> + |22>) (cos b + sin b) / 2
               + i (|12> - |21>) (cos b - sin b) / 2,    b = alpha - pi/4,

where |jk> means photon A in mode j and photon B in mode k.  The modes are
horizontal/vertical polarization for the polarimeter bench and the two
source paths for the interferometer benches; the coefficients are the same
either way.

Everything downstream consumes the four complex coefficients, so this
module also carries the small probability containers shared by the benches.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

NORM_TOL = 1e-12
AMP_INPUT_TOL = 1e-9


class UnitarityError(ValueError):
    """Amplitudes fail to square-sum to one beyond tolerance."""

    def __init__(self, deficit: float):
        self.deficit = deficit
        super().__init__(
            f"amplitudes square-sum to 1 {deficit:+.3e}; "
            f"exceeds tolerance {AMP_INPUT_TOL:g}"
        )


class Basis(enum.Enum):
    """Which physical pair of modes the state coefficients refer to."""

    POLARIZATION = "polarization"  # (H, V) per photon
    PATH = "path"                  # (path 1, path 2) per photon


def _require_angle(value: float, name: str) -> float:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return float(value)


def canonical_angle(value: float, name: str = "angle") -> float:
    """Map a finite angle into [0, 2*pi)."""
    return _require_angle(value, name) % (2.0 * math.pi)


@dataclass(frozen=True)
class TwoPhotonState:
    """Joint state coefficients in the (photon A, photon B) mode basis.

    Ordering is c11, c12, c21, c22 with photon A's index first.
    """

    c11: complex
    c12: complex
    c21: complex
    c22: complex
    basis: Basis = Basis.POLARIZATION

    def __post_init__(self) -> None:
        if abs(self.norm_sq() - 1.0) > NORM_TOL:
            raise UnitarityError(self.norm_sq() - 1.0)

    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        return (self.c11, self.c12, self.c21, self.c22)

    def norm_sq(self) -> float:
        return sum(abs(c) ** 2 for c in self.coefficients())


def make_source_state(alpha: float, basis: Basis = Basis.POLARIZATION) -> TwoPhotonState:
    """Source state at mixing angle alpha.

    alpha = 0 gives the singlet-like state i(|12> - |21>)/sqrt(2); alpha =
    pi/4 gives a product state; intermediate angles give partial
    entanglement.  Any finite alpha is accepted.
    """
    alpha = _require_angle(alpha, "alpha")
    b = alpha - math.pi / 4.0
    corr = (math.cos(b) + math.sin(b)) / 2.0
    anti = (math.cos(b) - math.sin(b)) / 2.0
    return TwoPhotonState(
        c11=complex(corr, 0.0),
        c12=complex(0.0, anti),
        c21=complex(0.0, -anti),
        c22=complex(corr, 0.0),
        basis=basis,
    )


def entanglement_degree(alpha: float) -> float:
    """Concurrence of the source state, analytically |cos 2*alpha|."""
    state = make_source_state(alpha)
    c11, c12, c21, c22 = state.coefficients()
    # concurrence of a pure two-qubit state: 2 |c11 c22 - c12 c21|
    return 2.0 * abs(c11 * c22 - c12 * c21)


@dataclass(frozen=True)
class JointDistribution:
    """Probabilities of the four coincidence outcomes of a bench.

    Index convention matches TwoPhotonState: first digit is Alice's
    detector, second is Bob's, with 1 the "upper" outcome of each.
    """

    p11: float
    p10: float
    p01: float
    p00: float

    def __post_init__(self) -> None:
        for name, p in zip(("p11", "p10", "p01", "p00"), self.as_tuple()):
            if not (-NORM_TOL <= p <= 1.0 + NORM_TOL):
                raise ValueError(f"{name} = {p!r} outside [0, 1]")
        total = sum(self.as_tuple())
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"joint probabilities sum to {total!r}, not 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p11, self.p10, self.p01, self.p00)

    def bob_marginal(self) -> "MarginalDistribution":
        return MarginalDistribution(p_b1=self.p11 + self.p01, p_b0=self.p10 + self.p00)

    def alice_marginal(self) -> "MarginalDistribution":
        return MarginalDistribution(p_b1=self.p11 + self.p10, p_b0=self.p01 + self.p00)


@dataclass(frozen=True)
class MarginalDistribution:
    """Single-detector (non-coincident) outcome probabilities."""

    p_b1: float
    p_b0: float

    def __post_init__(self) -> None:
        total = self.p_b1 + self.p_b0
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"marginal probabilities sum to {total!r}, not 1")

    def as_tuple(self) -> tuple[float, float]:
        return (self.p_b1, self.p_b0)


def distribution_from_amplitudes(
    amplitudes: tuple[complex, complex, complex, complex],
) -> JointDistribution:
    """Modulus-squared probabilities of four joint amplitudes.

    The amplitudes must square-sum to 1 within 1e-9 (raises UnitarityError
    otherwise); the output is renormalized so downstream consumers see an
    exactly normalized distribution.
    """
    if len(amplitudes) != 4:
        raise ValueError(f"expected 4 amplitudes, got {len(amplitudes)}")
    weights = [abs(a) ** 2 for a in amplitudes]
    total = sum(weights)
    if abs(total - 1.0) > AMP_INPUT_TOL:
        raise UnitarityError(total - 1.0)
    p11, p10, p01, p00 = (w / total for w in weights)
    return JointDistribution(p11=p11, p10=p10, p01=p01, p00=p00)
