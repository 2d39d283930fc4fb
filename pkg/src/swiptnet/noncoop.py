"""Closed-form metrics for the non-cooperative (direct link only) protocol.

Covers the Laplace transform of the normalized path-loss interference seen
by a typical receiver in a planar Poisson field, the outage probability of
a power-splitting receiver, its interference-limited floor, and the average
harvested energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import SystemParams
from .specfun import lower_incomplete_gamma

__all__ = [
    "NearFieldMode",
    "NoncoopReport",
    "laplace_interference",
    "threshold_laplace",
    "mean_interference",
    "outage",
    "outage_floor",
    "harvested_energy",
    "direct_energy_fraction",
    "report",
]


class NearFieldMode(Enum):
    """How interferers inside the minimum path-loss distance are averaged.

    MEAN_COUNT raises the per-point factor to the expected point count in
    the inner disk; EXACT_POISSON applies the exact Poisson generating
    functional. MEAN_COUNT is the reporting default; EXACT_POISSON is the
    variant a point-process simulation converges to. The two agree to first
    order in s * r0^(-alpha) and always satisfy MEAN_COUNT <= EXACT_POISSON.
    """

    MEAN_COUNT = "mean"
    EXACT_POISSON = "exact"


def _incgamma_vec(n: float, u: np.ndarray) -> np.ndarray:
    flat = np.atleast_1d(u).astype(float)
    out = np.array([lower_incomplete_gamma(n, v) for v in flat.ravel()])
    return out.reshape(flat.shape)


def _log_laplace(s, density: float, min_dist: float, alpha: float,
                 mode: NearFieldMode) -> np.ndarray:
    """Log of the interference Laplace transform, vectorized over s."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    u = s * min_dist ** -alpha
    expm = np.expm1(-u)  # exp(-u) - 1
    shape = 1.0 - 2.0 / alpha
    far = -math.pi * density * (
        expm * min_dist**2 + s ** (2.0 / alpha) * _incgamma_vec(shape, u)
    )
    if mode is NearFieldMode.MEAN_COUNT:
        near = -s * math.pi * density * min_dist ** (2.0 - alpha)
    else:
        near = math.pi * density * min_dist**2 * expm
    return far + near


def laplace_interference(
    s,
    density: float,
    params: SystemParams,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
):
    """E[exp(-s * I0)] for the normalized bounded-path-loss interference I0.

    Value in (0, 1], nonincreasing in s and in density. Accepts scalar or
    array s >= 0.
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0):
        raise ValueError("s must be >= 0")
    if density < 0:
        raise ValueError(f"density must be >= 0, got {density}")
    out = np.exp(_log_laplace(s_arr, density, params.r0, params.alpha, mode))
    if s_arr.ndim == 0:
        return float(out[0])
    return out


def threshold_laplace(
    density: float,
    dist,
    min_dist: float,
    params: SystemParams,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
):
    """Interference Laplace transform at the detection threshold of a link.

    Evaluates laplace_interference at s = omega * dist^alpha with the
    path-loss floor taken at min_dist. This is the interference-only
    success probability of a Rayleigh link of length dist. Vectorized
    over dist.
    """
    dist_arr = np.asarray(dist, dtype=float)
    if np.any(dist_arr <= 0):
        raise ValueError("link distance must be > 0")
    if min_dist < 1:
        raise ValueError(f"min_dist must be >= 1, got {min_dist}")
    s = params.omega * dist_arr**params.alpha
    out = np.exp(_log_laplace(s, density, min_dist, params.alpha, mode))
    if dist_arr.ndim == 0:
        return float(out[0])
    return out


def mean_interference(density: float, params: SystemParams) -> float:
    """Mean normalized interference: pi * density * r0^(2-alpha) * alpha/(alpha-2)."""
    if density < 0:
        raise ValueError(f"density must be >= 0, got {density}")
    a = params.alpha
    return math.pi * density * params.r0 ** (2.0 - a) * a / (a - 2.0)


def outage(
    params: SystemParams,
    nu_d: float,
    p_t: float,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
) -> float:
    """Outage probability of the direct link at split nu_d and power p_t.

    Strictly decreasing in p_t and in nu_d (for sigma_c2 > 0); bounded
    below by outage_floor.
    """
    if p_t <= 0:
        raise ValueError(f"p_t must be > 0, got {p_t}")
    if not 0 < nu_d < 1:
        raise ValueError(f"nu_d must be in (0, 1), got {nu_d}")
    g = params.omega * params.d0**params.alpha
    noise = g * params.sigma2 / p_t + g * params.sigma_c2 / (nu_d * p_t)
    xi = threshold_laplace(params.lam, params.d0, params.r0, params, mode)
    return 1.0 - math.exp(-noise) * xi


def outage_floor(
    params: SystemParams, mode: NearFieldMode = NearFieldMode.MEAN_COUNT
) -> float:
    """Interference-limited outage floor, the p_t -> infinity limit of outage."""
    return 1.0 - threshold_laplace(params.lam, params.d0, params.r0, params, mode)


def harvested_energy(params: SystemParams, nu_d: float, p_t: float) -> float:
    """Average harvested energy in Watts for the non-cooperative protocol.

    zeta * (1 - nu_d) * p_t * [d0^(-alpha) + mean interference]; linear in
    p_t and zero at nu_d = 1.
    """
    if p_t < 0:
        raise ValueError(f"p_t must be >= 0, got {p_t}")
    if not 0 <= nu_d <= 1:
        raise ValueError(f"nu_d must be in [0, 1], got {nu_d}")
    direct = params.d0 ** -params.alpha
    return params.zeta * (1.0 - nu_d) * p_t * (direct + mean_interference(params.lam, params))


def direct_energy_fraction(params: SystemParams) -> float:
    """Fraction of the average harvested energy contributed by the direct link."""
    direct = params.d0 ** -params.alpha
    return direct / (direct + mean_interference(params.lam, params))


@dataclass(frozen=True)
class NoncoopReport:
    """Summary of the non-cooperative analytics at one operating point."""

    outage: float
    floor: float
    energy: float
    laplace_at_threshold: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.outage <= 1.0:
            raise ValueError(f"outage out of [0, 1]: {self.outage}")
        if self.outage < self.floor - 1e-12:
            raise ValueError(
                f"outage {self.outage} below its floor {self.floor}"
            )
        if self.energy < 0:
            raise ValueError(f"energy must be >= 0, got {self.energy}")
        if not 0.0 < self.laplace_at_threshold <= 1.0:
            raise ValueError(
                f"laplace factor out of (0, 1]: {self.laplace_at_threshold}"
            )


def report(
    params: SystemParams,
    nu_d: float,
    p_t: float,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
) -> NoncoopReport:
    """Evaluate all non-cooperative metrics at one operating point."""
    return NoncoopReport(
        outage=outage(params, nu_d, p_t, mode),
        floor=outage_floor(params, mode),
        energy=harvested_energy(params, nu_d, p_t),
        laplace_at_threshold=threshold_laplace(
            params.lam, params.d0, params.r0, params, mode
        ),
    )
