"""Polarimeter bench: rotatable analyzer on Alice, fixed analyzer on Bob.

Both photons hit two-channel polarizing analyzers.  Bob's is fixed in the
(H, V) basis; Alice's is rotated by theta.  The four coincidence amplitudes
for the source state at mixing angle alpha are

    psi_HH = [-sin(a) cos(t) + i cos(a) sin(t)] / sqrt(2)
    psi_HV = [-cos(a) cos(t) + i sin(a) sin(t)] / sqrt(2)
    psi_VH = [ cos(a) cos(t) - i sin(a) sin(t)] / sqrt(2)
    psi_VV = [ sin(a) cos(t) - i cos(a) sin(t)] / sqrt(2)

giving coincidence rates

    P_HH = P_VV = [1 - cos(2a) cos(2t)] / 4
    P_HV = P_VH = [1 + cos(2a) cos(2t)] / 4

and exactly flat singles at Bob regardless of (alpha, theta): rotating
Alice's analyzer modulates the coincidence pattern but never the
non-coincident rate on Bob's side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    JointDistribution,
    MarginalDistribution,
    canonical_angle,
    distribution_from_amplitudes,
)

SQRT2 = math.sqrt(2.0)

#: Coincidence outcome labels, Alice's channel first.
POLAR_OUTCOMES = ("HH", "HV", "VH", "VV")


@dataclass(frozen=True)
class PolarizationConfig:
    """Bench settings; angles are canonicalized into [0, 2*pi)."""

    alpha: float
    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", canonical_angle(self.alpha, "alpha"))
        object.__setattr__(self, "theta", canonical_angle(self.theta, "theta"))


def polar_joint_amplitudes(
    alpha: float, theta: float
) -> tuple[complex, complex, complex, complex]:
    """Coincidence amplitudes (HH, HV, VH, VV) at analyzer angle theta.

    The VH amplitude uses sin(alpha) in its second term; the cos(alpha)
    variant kept in ``uncorrected_vh_amplitude`` breaks normalization.
    """
    cfg = PolarizationConfig(alpha=alpha, theta=theta)
    ca, sa = math.cos(cfg.alpha), math.sin(cfg.alpha)
    ct, st = math.cos(cfg.theta), math.sin(cfg.theta)
    psi_hh = complex(-sa * ct, ca * st) / SQRT2
    psi_hv = complex(-ca * ct, sa * st) / SQRT2
    psi_vh = complex(ca * ct, -sa * st) / SQRT2
    psi_vv = complex(sa * ct, -ca * st) / SQRT2
    return (psi_hh, psi_hv, psi_vh, psi_vv)


def uncorrected_vh_amplitude(alpha: float, theta: float) -> complex:
    """Earlier closed form of the VH amplitude, kept for regression only.

    Its modulus square is cos(alpha)^2 / 2 for every theta, which
    contradicts the VH coincidence rate and breaks the square-sum of the
    four amplitudes.  Do not use outside the regression suite.
    """
    cfg = PolarizationConfig(alpha=alpha, theta=theta)
    ca = math.cos(cfg.alpha)
    ct, st = math.cos(cfg.theta), math.sin(cfg.theta)
    return complex(ca * ct, -ca * st) / SQRT2


def polar_joint_probabilities(alpha: float, theta: float) -> JointDistribution:
    """Coincidence distribution over (HH, HV, VH, VV)."""
    return distribution_from_amplitudes(polar_joint_amplitudes(alpha, theta))


def polar_bob_marginals(alpha: float, theta: float) -> MarginalDistribution:
    """Bob's singles (P_H, P_V): flat 1/2 each for every setting."""
    return polar_joint_probabilities(alpha, theta).bob_marginal()


def polar_sweep(alpha_list: list[float], theta_grid: list[float]) -> "Table":
    """Row-per-(alpha, theta) coincidence table."""
    from .output import Table

    if not alpha_list or not theta_grid:
        raise ValueError("sweep grids must be non-empty")
    rows = []
    for alpha in alpha_list:
        for theta in theta_grid:
            dist = polar_joint_probabilities(alpha, theta)
            rows.append((alpha, theta) + dist.as_tuple())
    return Table(
        columns=("alpha", "theta", "p_hh", "p_hv", "p_vh", "p_vv"),
        rows=rows,
    )
