"""Closed-form metrics for the relay-assisted (cooperative) protocol.

A typical transmitter is helped by decode-and-forward relays falling in a
circular sector oriented toward its receiver. The analysis composes the
probability that no relay decodes (a thinned-process empty-set probability)
with the relay-hop outage, and adds the relay slot to the harvested-energy
budget. Quadrature-backed integrals run over the selection sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import CoopParams, SystemParams, bounded_pathloss
from .noncoop import NearFieldMode, mean_interference, threshold_laplace
from . import noncoop
from .specfun import DEFAULT_SPEC_2D, QuadratureSpec, integrate_sector

__all__ = [
    "SectorGeometry",
    "CoopReport",
    "max_sector_half_angle",
    "relay_decode_intensity",
    "empty_decode_probability",
    "relay_hop_outage",
    "outage",
    "outage_floor",
    "mean_relay_attenuation",
    "harvested_energy",
    "report",
]


def max_sector_half_angle(eta: float, d0: float) -> float:
    """Largest sector half-angle keeping every relay closer to the receiver than d0.

    By the cosine rule, a point at range r <= eta and angle theta from the
    transmitter-receiver axis is within d0 of the receiver iff
    theta <= arccos(r / (2 d0)); applying this at the sector border r = eta
    gives the bound. Undefined for eta > 2 d0 (no angle suffices).
    """
    if not 0 < eta <= 2.0 * d0:
        raise ValueError(f"need 0 < eta <= 2*d0 = {2 * d0}, got {eta}")
    return math.acos(eta / (2.0 * d0))


@dataclass(frozen=True)
class SectorGeometry:
    """Selection-sector geometry with its derived distance-safe angle bound."""

    eta: float
    theta0: float
    theta_max: float

    @classmethod
    def for_link(cls, eta: float, theta0: float, d0: float) -> "SectorGeometry":
        if not 0 < theta0 <= math.pi:
            raise ValueError(f"theta0 must be in (0, pi], got {theta0}")
        return cls(eta=eta, theta0=theta0, theta_max=max_sector_half_angle(eta, d0))


def relay_decode_intensity(
    r,
    coop: CoopParams,
    p_t: float,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
):
    """Intensity of relays at range r that decode the typical transmitter.

    Thinned relay density: the relay density times the decode probability of
    a Rayleigh link of length max(r, r0). Relays decode on the full received
    signal (no power splitting), so only AWGN enters the noise term.
    Vectorized over r.
    """
    base = coop.base
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("range must be >= 0")
    r_eff = np.maximum(r_arr, base.r0)
    noise = np.exp(-base.sigma2 * base.omega * r_eff**base.alpha / p_t)
    out = coop.lambda_r * noise * threshold_laplace(base.lam, r_eff, base.r0, base, mode)
    if r_arr.ndim == 0:
        return float(out)
    return out


def empty_decode_probability(
    coop: CoopParams,
    p_t: float,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
    quad: QuadratureSpec = DEFAULT_SPEC_2D,
) -> float:
    """Probability that no relay in the selection sector decodes (exp(-mean count)).

    The mean decoder count integrates the thinned intensity over the sector
    annulus plus the closed-form inner-disk term where path loss is floored.
    Passing p_t = inf drops the noise factors and yields the power limit.
    """
    if coop.lambda_r == 0.0:
        return 1.0
    base = coop.base

    def integrand(r: np.ndarray, theta: float) -> np.ndarray:
        return relay_decode_intensity(r, coop, p_t, mode)

    mu = integrate_sector(integrand, base.r0, coop.eta, coop.theta0, quad)
    mu += coop.theta0 * base.r0**2 * relay_decode_intensity(base.r0, coop, p_t, mode)
    return math.exp(-mu)


def relay_hop_outage(
    coop: CoopParams,
    nu_r: float,
    p_r: float,
    empty_decode_prob: float,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
    quad: QuadratureSpec = DEFAULT_SPEC_2D,
) -> float:
    """Outage of the relay-to-receiver hop, averaged over the selection sector.

    The selected relay is taken uniform over the sector annulus; each
    position decodes at the receiver against noise plus interference from
    the field of active relays, a thinned process of density
    lam * (1 - empty_decode_prob). empty_decode_prob must be evaluated
    first, at the caller's first-slot power. Passing p_r = inf yields the
    power limit.
    """
    if not 0 < nu_r < 1:
        raise ValueError(f"nu_r must be in (0, 1), got {nu_r}")
    if p_r <= 0:
        raise ValueError(f"p_r must be > 0, got {p_r}")
    base = coop.base
    thinned = base.lam * (1.0 - empty_decode_prob)
    d0 = base.d0

    def integrand(r: np.ndarray, theta: float) -> np.ndarray:
        c = np.sqrt(r**2 + d0**2 - 2.0 * r * d0 * math.cos(theta))
        c_eff = np.maximum(c, base.r0)
        g = base.omega * c_eff**base.alpha
        noise = np.exp(-base.sigma2 * g / p_r - base.sigma_c2 * g / (nu_r * p_r))
        return noise * threshold_laplace(thinned, c_eff, base.r0, base, mode)

    area = coop.theta0 * (coop.eta**2 - base.r0**2)
    avg = integrate_sector(integrand, base.r0, coop.eta, coop.theta0, quad) / area
    return 1.0 - avg


def outage(
    coop: CoopParams,
    nu_d: float,
    nu_r: float,
    p_t: float,
    p_r: float,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
    quad: QuadratureSpec = DEFAULT_SPEC_2D,
) -> float:
    """End-to-end outage with selection combining over direct and relayed copies.

    Outage requires the direct link to fail and either no relay decoded or
    the relay hop failed as well; never exceeds the non-cooperative outage
    at the same first-slot settings.
    """
    pi_nc = noncoop.outage(coop.base, nu_d, p_t, mode)
    pc = empty_decode_probability(coop, p_t, mode, quad)
    pr = relay_hop_outage(coop, nu_r, p_r, pc, mode, quad)
    return pi_nc * (pc + (1.0 - pc) * pr)


def outage_floor(
    coop: CoopParams,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
    quad: QuadratureSpec = DEFAULT_SPEC_2D,
) -> float:
    """Interference-limited end-to-end outage floor (both powers to infinity).

    The relay-hop term reuses the infinite-power empty-set probability,
    keeping the limit self-consistent.
    """
    pi_nc_inf = noncoop.outage_floor(coop.base, mode)
    pc_inf = empty_decode_probability(coop, math.inf, mode, quad)
    pr_inf = relay_hop_outage(coop, coop.nu_r, math.inf, pc_inf, mode, quad)
    return pi_nc_inf * (pc_inf + (1.0 - pc_inf) * pr_inf)


def mean_relay_attenuation(
    coop: CoopParams,
    method: str = "jensen",
    quad: QuadratureSpec = DEFAULT_SPEC_2D,
) -> float:
    """Average path-loss attenuation from the selected relay to the receiver.

    "exact" integrates the bounded path loss of the relay-receiver distance
    over the sector annulus; "jensen" evaluates the convexity lower bound in
    closed form (always <= exact).
    """
    base = coop.base
    d0 = base.d0
    if method == "jensen":
        mean_r = 0.5 * (base.r0 + coop.eta)
        mean_cos = math.sin(coop.theta0) / coop.theta0
        sq = mean_r**2 + d0**2 - 2.0 * d0 * mean_r * mean_cos
        return sq ** -base.alpha_half
    if method == "exact":

        def integrand(r: np.ndarray, theta: float) -> np.ndarray:
            c = np.sqrt(r**2 + d0**2 - 2.0 * r * d0 * math.cos(theta))
            return bounded_pathloss(c, base)

        area = coop.theta0 * (coop.eta**2 - base.r0**2)
        return integrate_sector(integrand, base.r0, coop.eta, coop.theta0, quad) / area
    raise ValueError(f"unknown method {method!r}")


def harvested_energy(
    coop: CoopParams,
    nu_d: float,
    nu_r: float,
    p_t: float,
    p_r: float,
    z_method: str = "jensen",
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
    quad: QuadratureSpec = DEFAULT_SPEC_2D,
) -> float:
    """Two-slot average harvested energy in Watts for the cooperative protocol.

    Adds to the first-slot harvest: when no relay decoded, the receiver
    skips power splitting and rectifies the entire second-slot interference
    field; when a relay transmits, the receiver splits and harvests the
    relayed signal plus interference.
    """
    if p_t < 0 or p_r < 0:
        raise ValueError("powers must be >= 0")
    base = coop.base
    slot1 = noncoop.harvested_energy(base, nu_d, p_t)
    pc = empty_decode_probability(coop, p_t, mode, quad)
    psi_thinned = mean_interference(base.lam * (1.0 - pc), base)
    z = mean_relay_attenuation(coop, z_method, quad)
    slot2 = pc * p_r * psi_thinned + (1.0 - pc) * (1.0 - nu_r) * p_r * (z + psi_thinned)
    return slot1 + base.zeta * slot2


@dataclass(frozen=True)
class CoopReport:
    """Summary of the cooperative analytics at one operating point."""

    empty_decode_prob: float
    relay_outage: float
    outage: float
    floor: float
    energy: float
    atten_exact: float
    atten_jensen: float

    def __post_init__(self) -> None:
        for name in ("empty_decode_prob", "relay_outage", "outage", "floor"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {v}")
        if self.atten_exact < self.atten_jensen - 1e-12 * self.atten_jensen:
            raise ValueError(
                f"exact attenuation {self.atten_exact} below its lower bound "
                f"{self.atten_jensen}"
            )


def report(
    coop: CoopParams,
    nu_d: float,
    nu_r: float,
    p_t: float,
    p_r: float,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
    quad: QuadratureSpec = DEFAULT_SPEC_2D,
) -> CoopReport:
    """Evaluate all cooperative metrics at one operating point."""
    pi_nc = noncoop.outage(coop.base, nu_d, p_t, mode)
    pc = empty_decode_probability(coop, p_t, mode, quad)
    pr = relay_hop_outage(coop, nu_r, p_r, pc, mode, quad)
    return CoopReport(
        empty_decode_prob=pc,
        relay_outage=pr,
        outage=pi_nc * (pc + (1.0 - pc) * pr),
        floor=outage_floor(coop, mode, quad),
        energy=harvested_energy(coop, nu_d, nu_r, p_t, p_r, z_method="jensen",
                                mode=mode, quad=quad),
        atten_exact=mean_relay_attenuation(coop, "exact", quad),
        atten_jensen=mean_relay_attenuation(coop, "jensen", quad),
    )
