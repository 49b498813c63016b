"""Path bench: each photon enters a two-path interferometer.

The source emits one photon toward Alice and one toward Bob, each in a
superposition of two paths (coefficients from ``make_source_state`` in the
path basis).  Each arm carries a phase shifter on path 1 (phi_a on Alice's
side, phi_b on Bob's) followed by a 50/50 recombining splitter feeding two
detectors.  The splitter convention puts the i on reflection; with the
detector-1 row listed first, the single-photon transfer of one arm is

    U(phi) = 1/sqrt(2) * [[ e^{i phi},  1 ],
                          [-i e^{i phi}, i ]]

Alice's arm can be reconfigured without telling Bob:

* SPLITTER_IN   - recombiner in place, interference visible on her side;
* SPLITTER_OUT  - recombiner removed, her detectors watch the raw paths
                  (detector A1 sees path 2, detector A0 sees path 1);
* BEAM_STOP     - her photon is intercepted before the interferometer.

Whatever she does, Bob's non-coincident singles stay

    P_B1 = [1 + sin(2 alpha) sin(phi_b)] / 2
    P_B0 = [1 - sin(2 alpha) sin(phi_b)] / 2

which is the no-signaling statement this package exists to check.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .core import (
    Basis,
    JointDistribution,
    MarginalDistribution,
    canonical_angle,
    distribution_from_amplitudes,
    make_source_state,
)

SQRT2 = math.sqrt(2.0)

#: Coincidence outcome labels, Alice's detector first.
PATH_OUTCOMES = ("A1B1", "A1B0", "A0B1", "A0B0")

#: Bob-only outcome labels used when Alice's photon is stopped.
BOB_OUTCOMES = ("B1", "B0")


class AliceMode(enum.Enum):
    """Configuration of Alice's side of the bench."""

    SPLITTER_IN = "in"
    SPLITTER_OUT = "out"
    BEAM_STOP = "stop"


@dataclass(frozen=True)
class PathConfig:
    """Bench settings; angles are canonicalized into [0, 2*pi)."""

    alpha: float
    phi_a: float
    phi_b: float
    mode: AliceMode = AliceMode.SPLITTER_IN

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", canonical_angle(self.alpha, "alpha"))
        object.__setattr__(self, "phi_a", canonical_angle(self.phi_a, "phi_a"))
        object.__setattr__(self, "phi_b", canonical_angle(self.phi_b, "phi_b"))
        if not isinstance(self.mode, AliceMode):
            raise TypeError(f"mode must be an AliceMode, got {self.mode!r}")


def _splitter_rows(phi: float) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
    """Phase shifter on path 1 followed by the 50/50 splitter; rows (det1, det0)."""
    ph = cmath.exp(1j * phi)
    return (
        (ph / SQRT2, 1.0 / SQRT2),
        (-1j * ph / SQRT2, 1j / SQRT2),
    )


def _alice_rows(
    phi_a: float, mode: AliceMode
) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
    if mode is AliceMode.SPLITTER_IN:
        return _splitter_rows(phi_a)
    if mode is AliceMode.SPLITTER_OUT:
        # Detectors moved onto the bare paths: A1 <- path 2 directly,
        # A0 <- path 1 through the phase shifter (mirror phase -i).
        ph = cmath.exp(1j * phi_a)
        return ((0.0, 1.0), (-1j * ph, 0.0))
    raise ValueError("Alice has no detectors in BEAM_STOP mode; no joint amplitudes")


def bob_outcome_amplitudes(
    alpha: float, phi_b: float
) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
    """Amplitude for each (Alice path, Bob detector) pair.

    Element [k][j] is the joint amplitude for the photon pair taking
    Alice's path k+1 while Bob's interferometer fires detector (B1, B0)[j].
    Sums of |amplitude|^2 over k give Bob's singles; the same table feeds
    the wedge bench where Alice's paths stay spatially resolved.
    """
    state = make_source_state(alpha, Basis.PATH)
    (c11, c12), (c21, c22) = (state.c11, state.c12), (state.c21, state.c22)
    u_b = _splitter_rows(canonical_angle(phi_b, "phi_b"))
    return (
        (c11 * u_b[0][0] + c12 * u_b[0][1], c11 * u_b[1][0] + c12 * u_b[1][1]),
        (c21 * u_b[0][0] + c22 * u_b[0][1], c21 * u_b[1][0] + c22 * u_b[1][1]),
    )


def mz_joint_amplitudes(
    alpha: float, phi_a: float, phi_b: float, mode: AliceMode = AliceMode.SPLITTER_IN
) -> tuple[complex, complex, complex, complex]:
    """Coincidence amplitudes (A1B1, A1B0, A0B1, A0B0).

    Raises for BEAM_STOP, which has no Alice detectors.
    """
    cfg = PathConfig(alpha=alpha, phi_a=phi_a, phi_b=phi_b, mode=mode)
    g = bob_outcome_amplitudes(cfg.alpha, cfg.phi_b)
    u_a = _alice_rows(cfg.phi_a, cfg.mode)
    amps = []
    for i in (0, 1):  # Alice detector A1, A0
        for j in (0, 1):  # Bob detector B1, B0
            amps.append(u_a[i][0] * g[0][j] + u_a[i][1] * g[1][j])
    return tuple(amps)


def mz_joint_probabilities(
    alpha: float, phi_a: float, phi_b: float, mode: AliceMode = AliceMode.SPLITTER_IN
) -> JointDistribution:
    """Coincidence distribution from the modulus-squared amplitudes.

    The amplitudes are the single source of truth here; see
    ``uncorrected_mz_joint_probabilities`` for the closed forms they
    replace and why.
    """
    return distribution_from_amplitudes(mz_joint_amplitudes(alpha, phi_a, phi_b, mode))


def uncorrected_mz_joint_probabilities(
    alpha: float, phi_a: float, phi_b: float
) -> tuple[float, float, float, float]:
    """Earlier SPLITTER_IN closed forms, kept for regression only.

    For generic phases these four expressions do not sum to one (the
    deficit is [sin(phi_a) - sin(2 alpha)] sin(phi_b) / 2), so they are
    returned as a bare tuple rather than a JointDistribution.  The A1B1
    and A0B0 entries agree with the amplitude route; A1B0 and A0B1 do not.
    """
    s2a = math.sin(2.0 * alpha)
    c2a = math.cos(2.0 * alpha)
    sa, ca = math.sin(phi_a), math.cos(phi_a)
    sb, cb = math.sin(phi_b), math.cos(phi_b)
    x = c2a * ca * cb
    p11 = (1.0 - sa * (s2a + sb) - x + s2a * sb) / 4.0
    p10 = (1.0 - s2a * (sa + sb) + x + s2a * sb) / 4.0
    p01 = (1.0 + s2a * (sa + sb) + x + s2a * sb) / 4.0
    p00 = (1.0 - sb * (s2a + sa) - x + s2a * sa) / 4.0
    return (p11, p10, p01, p00)


def mz_bob_marginals(
    alpha: float, phi_a: float, phi_b: float, mode: AliceMode = AliceMode.SPLITTER_IN
) -> MarginalDistribution:
    """Bob's singles (P_B1, P_B0) for any of Alice's three configurations.

    BEAM_STOP traces Alice out: Bob's outcome probabilities are the sums
    of |amplitude|^2 over her (which-path resolvable) alternatives.
    """
    cfg = PathConfig(alpha=alpha, phi_a=phi_a, phi_b=phi_b, mode=mode)
    if cfg.mode is AliceMode.BEAM_STOP:
        g = bob_outcome_amplitudes(cfg.alpha, cfg.phi_b)
        p_b1 = abs(g[0][0]) ** 2 + abs(g[1][0]) ** 2
        p_b0 = abs(g[0][1]) ** 2 + abs(g[1][1]) ** 2
        total = p_b1 + p_b0
        return MarginalDistribution(p_b1=p_b1 / total, p_b0=p_b0 / total)
    return mz_joint_probabilities(cfg.alpha, cfg.phi_a, cfg.phi_b, cfg.mode).bob_marginal()


def expected_bob_marginals(alpha: float, phi_b: float) -> MarginalDistribution:
    """Closed-form Bob singles [1 +/- sin(2 alpha) sin(phi_b)] / 2."""
    x = math.sin(2.0 * alpha) * math.sin(phi_b)
    return MarginalDistribution(p_b1=(1.0 + x) / 2.0, p_b0=(1.0 - x) / 2.0)


def mz_sweep(
    alpha_list: list[float],
    phi_a_grid: list[float],
    phi_b_grid: list[float],
    modes: list[AliceMode] | None = None,
) -> "Table":
    """Joint + marginal probabilities per configuration.

    BEAM_STOP rows carry NaN in the coincidence columns since those
    detectors do not exist in that configuration.
    """
    from .output import Table

    if modes is None:
        modes = [AliceMode.SPLITTER_IN]
    if not alpha_list or not phi_a_grid or not phi_b_grid or not modes:
        raise ValueError("sweep grids must be non-empty")
    rows = []
    for alpha in alpha_list:
        for phi_a in phi_a_grid:
            for phi_b in phi_b_grid:
                for mode in modes:
                    if mode is AliceMode.BEAM_STOP:
                        joint = (math.nan,) * 4
                    else:
                        joint = mz_joint_probabilities(alpha, phi_a, phi_b, mode).as_tuple()
                    marg = mz_bob_marginals(alpha, phi_a, phi_b, mode)
                    rows.append(
                        (alpha, phi_a, phi_b, mode.value) + joint + marg.as_tuple()
                    )
    return Table(
        columns=(
            "alpha", "phi_a", "phi_b", "mode",
            "p_a1b1", "p_a1b0", "p_a0b1", "p_a0b0",
            "p_b1", "p_b0",
        ),
        rows=rows,
    )


def mz_marginal_sweep(alpha_list: list[float], phi_b_grid: list[float]) -> "Table":
    """Bob-singles table (alpha, phi_b, p_b1, p_b0).

    Computed through the full coincidence pipeline (phi_a and Alice's mode
    drop out of the sums, which is the point of the bench).
    """
    from .output import Table

    if not alpha_list or not phi_b_grid:
        raise ValueError("sweep grids must be non-empty")
    rows = []
    for alpha in alpha_list:
        for phi_b in phi_b_grid:
            marg = mz_bob_marginals(alpha, 0.0, phi_b, AliceMode.SPLITTER_IN)
            rows.append((alpha, phi_b) + marg.as_tuple())
    return Table(columns=("alpha", "phi_b", "p_b1", "p_b0"), rows=rows)
