"""Parameter containers, unit conversions, and the bounded path-loss law.

All powers and energies are carried in linear Watts internally; dB values
appear only at the CLI boundary. Distance units are abstract. Parameter
containers are immutable and validate their invariants on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "SystemParams",
    "CoopParams",
    "ConstraintSpec",
    "bounded_pathloss",
    "db_to_linear",
    "linear_to_db",
]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


@dataclass(frozen=True)
class SystemParams:
    """Physical-layer and geometry constants for the transmitter field.

    Attributes:
        lam: transmitter density (nodes per squared distance unit).
        d0: transmitter-receiver separation.
        r0: minimum path-loss distance (attenuation floors below it).
        alpha: path-loss exponent, > 2.
        sigma2: AWGN variance in Watts.
        sigma_c2: baseband conversion-noise variance in Watts.
        omega: SINR detection threshold, linear.
        zeta: RF-to-DC conversion efficiency in (0, 1].
    """

    lam: float
    d0: float = 20.0
    r0: float = 4.0
    alpha: float = 4.0
    sigma2: float = 1.0
    sigma_c2: float = 1.0
    omega: float = 1e-3
    zeta: float = 1.0

    def __post_init__(self) -> None:
        _require(self.lam >= 0, f"lam must be >= 0, got {self.lam}")
        _require(self.r0 > 1, f"r0 must be > 1, got {self.r0}")
        _require(self.d0 > self.r0, f"d0 must be > r0={self.r0}, got {self.d0}")
        _require(self.alpha > 2, f"alpha must be > 2, got {self.alpha}")
        _require(self.sigma2 >= 0, f"sigma2 must be >= 0, got {self.sigma2}")
        _require(self.sigma_c2 >= 0, f"sigma_c2 must be >= 0, got {self.sigma_c2}")
        _require(self.omega > 0, f"omega must be > 0, got {self.omega}")
        _require(0 < self.zeta <= 1, f"zeta must be in (0, 1], got {self.zeta}")

    @property
    def alpha_half(self) -> float:
        """Half the path-loss exponent; appears in mean-attenuation closed forms."""
        return self.alpha / 2.0

    def with_density(self, lam: float) -> "SystemParams":
        return replace(self, lam=lam)


@dataclass(frozen=True)
class CoopParams:
    """Relay-layer constants layered on the base system parameters.

    Attributes:
        base: shared physical-layer parameters.
        lambda_r: relay density.
        eta: selection-sector radius, > r0.
        theta0: sector half-angle in radians, in (0, pi].
        p_r: relay transmit power in Watts.
        nu_r: relay-slot power-splitting ratio in (0, 1).
    """

    base: SystemParams
    lambda_r: float = 1e-2
    eta: float = 8.0
    theta0: float = math.pi / 3
    p_r: float = 1.0
    nu_r: float = 0.3

    def __post_init__(self) -> None:
        _require(self.lambda_r >= 0, f"lambda_r must be >= 0, got {self.lambda_r}")
        _require(
            self.eta > self.base.r0,
            f"eta must be > r0={self.base.r0}, got {self.eta}",
        )
        _require(
            0 < self.theta0 <= math.pi,
            f"theta0 must be in (0, pi], got {self.theta0}",
        )
        _require(self.p_r >= 0, f"p_r must be >= 0, got {self.p_r}")
        _require(0 < self.nu_r < 1, f"nu_r must be in (0, 1), got {self.nu_r}")


@dataclass(frozen=True)
class ConstraintSpec:
    """Constraints for the transmit-power minimization.

    mode is "fixed" (power split pinned at nu0) or "joint" (both the power
    and the split are optimized).
    """

    c_i: float
    c_h: float
    mode: str = "joint"
    nu0: float | None = None

    def __post_init__(self) -> None:
        _require(0 < self.c_i < 1, f"c_i must be in (0, 1), got {self.c_i}")
        _require(self.c_h > 0, f"c_h must be > 0, got {self.c_h}")
        _require(self.mode in ("fixed", "joint"), f"unknown mode {self.mode!r}")
        if self.mode == "fixed":
            _require(
                self.nu0 is not None and 0 < self.nu0 < 1,
                f"fixed mode needs nu0 in (0, 1), got {self.nu0}",
            )


def bounded_pathloss(dist, params: SystemParams):
    """Attenuation dist^(-alpha), floored at r0^(-alpha) for dist <= r0.

    Accepts scalars or numpy arrays; nonincreasing in dist and continuous
    at dist = r0.
    """
    import numpy as np

    d = np.maximum(dist, params.r0)
    out = d ** -params.alpha
    if np.ndim(dist) == 0:
        return float(out)
    return out


def db_to_linear(x_db: float) -> float:
    """10^(x/10)."""
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Inverse of db_to_linear; requires x > 0."""
    if x <= 0:
        raise ValueError(f"dB conversion needs a positive value, got {x}")
    return 10.0 * math.log10(x)
