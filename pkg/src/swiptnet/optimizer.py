"""Closed-form minimization of transmit power under outage and harvest constraints.

Feasibility is decided by the interference-limited outage floor: no finite
power can beat the floor, so the problem is declared infeasible when the
floor reaches the outage ceiling. For feasible instances the solution is
the larger of the harvest-binding and outage-binding powers (fixed split),
or the root of a quadratic in the split ratio (joint optimization, where
both constraints bind).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ConstraintSpec, SystemParams
from .noncoop import (
    NearFieldMode,
    harvested_energy,
    mean_interference,
    outage,
    outage_floor,
    threshold_laplace,
)

__all__ = ["OptimizationResult", "min_power_fixed_split", "min_power_joint"]

# Strict feasibility guard at the boundary c_i == floor, where the required
# power diverges.
_FEASIBILITY_GUARD = 1e-12


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of a power-minimization run.

    binding names the constraints active at the optimum ("outage",
    "harvest"). nu_attained is False when the reported split ratio is an
    infimum rather than an attained optimum (sigma_c2 = 0 joint case).
    """

    feasible: bool
    p_t_star: float | None = None
    nu_d_star: float | None = None
    binding: frozenset[str] = frozenset()
    achieved_outage: float | None = None
    achieved_energy: float | None = None
    nu_attained: bool = True

    def __post_init__(self) -> None:
        if self.feasible:
            if self.p_t_star is None or self.nu_d_star is None:
                raise ValueError("feasible result must carry p_t_star and nu_d_star")
            if not self.binding:
                raise ValueError("feasible result must name a binding constraint")
        if not self.binding <= {"outage", "harvest"}:
            raise ValueError(f"unknown binding constraint in {self.binding}")


def _constants(params: SystemParams, spec: ConstraintSpec, mode: NearFieldMode):
    """The four constants of the closed-form solution."""
    xi = threshold_laplace(params.lam, params.d0, params.r0, params, mode)
    g0 = math.log(xi / (1.0 - spec.c_i))
    g1 = spec.c_h / (params.d0 ** -params.alpha + mean_interference(params.lam, params))
    g = params.omega * params.d0**params.alpha
    g2 = g * params.sigma2
    g3 = g * params.sigma_c2
    return g0, g1, g2, g3


def _achieved(
    params: SystemParams, nu_d: float, p_t: float, mode: NearFieldMode
) -> tuple[float, float]:
    # outage is independent of nu_d when sigma_c2 = 0; evaluate at a valid
    # interior split in that case.
    nu_eval = nu_d if 0 < nu_d < 1 else 0.5
    return (
        outage(params, nu_eval, p_t, mode),
        harvested_energy(params, nu_d, p_t),
    )


def _binding_of_max(p_harvest: float, p_outage: float) -> frozenset[str]:
    if math.isclose(p_harvest, p_outage, rel_tol=1e-12):
        return frozenset({"outage", "harvest"})
    if p_harvest > p_outage:
        return frozenset({"harvest"})
    return frozenset({"outage"})


def min_power_fixed_split(
    params: SystemParams,
    spec: ConstraintSpec,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
) -> OptimizationResult:
    """Minimum transmit power with the split ratio pinned at spec.nu0."""
    if spec.mode != "fixed":
        raise ValueError(f"spec mode must be 'fixed', got {spec.mode!r}")
    if outage_floor(params, mode) > spec.c_i - _FEASIBILITY_GUARD:
        return OptimizationResult(feasible=False)

    g0, g1, g2, g3 = _constants(params, spec, mode)
    nu0 = spec.nu0
    p_harvest = g1 / (1.0 - nu0)
    p_outage = (g2 + g3 / nu0) / g0
    p_star = max(p_harvest, p_outage)
    ach_out, ach_en = _achieved(params, nu0, p_star, mode)
    return OptimizationResult(
        feasible=True,
        p_t_star=p_star,
        nu_d_star=nu0,
        binding=_binding_of_max(p_harvest, p_outage),
        achieved_outage=ach_out,
        achieved_energy=ach_en,
    )


def min_power_joint(
    params: SystemParams,
    spec: ConstraintSpec,
    mode: NearFieldMode = NearFieldMode.MEAN_COUNT,
) -> OptimizationResult:
    """Minimum transmit power with the split ratio jointly optimized.

    Both constraints bind at the optimum; the split ratio is the positive
    root of a quadratic. With sigma_c2 = 0 the outage constraint no longer
    depends on the split, the optimal split degenerates to an infimum at 0,
    and the power reduces to max of the two single-constraint powers.
    """
    if spec.mode != "joint":
        raise ValueError(f"spec mode must be 'joint', got {spec.mode!r}")
    if outage_floor(params, mode) > spec.c_i - _FEASIBILITY_GUARD:
        return OptimizationResult(feasible=False)

    g0, g1, g2, g3 = _constants(params, spec, mode)
    if g3 == 0.0:
        p_harvest = g1
        p_outage = g2 / g0
        p_star = max(p_harvest, p_outage)
        ach_out, ach_en = _achieved(params, 0.0, p_star, mode)
        return OptimizationResult(
            feasible=True,
            p_t_star=p_star,
            nu_d_star=0.0,
            binding=_binding_of_max(p_harvest, p_outage),
            achieved_outage=ach_out,
            achieved_energy=ach_en,
            nu_attained=False,
        )

    b = g0 * g1 + g2 - g3
    nu_star = (-b + math.sqrt(b * b + 4.0 * g2 * g3)) / (2.0 * g2)
    p_star = g1 / (1.0 - nu_star)
    ach_out, ach_en = _achieved(params, nu_star, p_star, mode)
    return OptimizationResult(
        feasible=True,
        p_t_star=p_star,
        nu_d_star=nu_star,
        binding=frozenset({"outage", "harvest"}),
        achieved_outage=ach_out,
        achieved_energy=ach_en,
    )
