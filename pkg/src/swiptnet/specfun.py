"""Special functions and adaptive quadrature used by the closed-form metrics.

Provides the lower incomplete gamma function and deterministic adaptive
Gauss-Legendre integration in one dimension and over circular sectors.
All routines are pure and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "lower_incomplete_gamma",
    "integrate_1d",
    "integrate_sector",
    "DEFAULT_SPEC_1D",
    "DEFAULT_SPEC_2D",
]

# Fixed-order Gauss-Legendre rule applied per panel; panels are bisected
# adaptively until the two-half refinement agrees with the parent panel.
_GAUSS_ORDER = 15
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GAUSS_ORDER)

# Series/continued-fraction split point and iteration caps for the
# incomplete gamma evaluation.
_GAMMA_MAX_ITER = 500
_GAMMA_EPS = 1e-16
_TINY = 1e-300


class QuadratureError(RuntimeError):
    """Raised when adaptive subdivision exhausts its budget before converging."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and budget settings for adaptive integration.

    rel_tol and abs_tol bound the acceptable error of the final estimate;
    max_subdivisions caps the total number of panel bisections.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 4000

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.abs_tol < 0:
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}"
            )


DEFAULT_SPEC_1D = QuadratureSpec(rel_tol=1e-8, abs_tol=1e-12, max_subdivisions=4000)
# 2-D integrands embed the interference kernel, which is smooth but costly;
# a looser relative tolerance keeps evaluation counts down.
DEFAULT_SPEC_2D = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-12, max_subdivisions=2000)


def _gamma_series(n: float, beta: float) -> float:
    """Power series for gamma(n, beta), accurate for beta < n + 1."""
    term = 1.0 / n
    total = term
    for k in range(1, _GAMMA_MAX_ITER):
        term *= beta / (n + k)
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    else:
        raise ArithmeticError(f"series for gamma({n}, {beta}) did not converge")
    return total * math.exp(n * math.log(beta) - beta)


def _upper_gamma_cf(n: float, beta: float) -> float:
    """Modified Lentz continued fraction for the upper tail Gamma(n, beta)."""
    b = beta + 1.0 - n
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    h = d
    for i in range(1, _GAMMA_MAX_ITER):
        an = -i * (i - n)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    else:
        raise ArithmeticError(f"continued fraction for Gamma({n}, {beta}) stalled")
    return math.exp(n * math.log(beta) - beta) * h


def lower_incomplete_gamma(n: float, beta: float) -> float:
    """Unnormalized lower incomplete gamma: integral of y^(n-1) e^(-y) over [0, beta].

    Uses the series expansion for beta < n + 1 and the continued fraction of
    the complement otherwise. Monotone nondecreasing in beta, bounded above
    by Gamma(n).

    Args:
        n: shape, must be > 0.
        beta: upper integration limit, must be >= 0.
    """
    if n <= 0:
        raise ValueError(f"shape must be > 0, got {n}")
    if beta < 0:
        raise ValueError(f"upper limit must be >= 0, got {beta}")
    if beta == 0.0:
        return 0.0
    if beta < n + 1.0:
        return _gamma_series(n, beta)
    complete = math.gamma(n)
    if beta > 700.0:
        # e^(-beta) underflows; the upper tail is numerically zero.
        return complete
    return complete - _upper_gamma_cf(n, beta)


def _gauss_panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    """One fixed-order Gauss-Legendre estimate over [a, b] (vectorized f)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid + half * _GL_NODES
    return half * float(np.dot(_GL_WEIGHTS, f(x)))


def _adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    whole: float,
    tol: float,
    budget: list[int],
) -> float:
    if budget[0] <= 0:
        raise QuadratureError(
            f"subdivision budget exhausted on [{a}, {b}] (tol={tol:g})"
        )
    budget[0] -= 1
    mid = 0.5 * (a + b)
    left = _gauss_panel(f, a, mid)
    right = _gauss_panel(f, mid, b)
    if abs(left + right - whole) <= tol or (b - a) < 1e-14 * max(abs(a), abs(b), 1.0):
        return left + right
    half_tol = 0.5 * tol
    return _adaptive(f, a, mid, left, half_tol, budget) + _adaptive(
        f, mid, b, right, half_tol, budget
    )


def integrate_1d(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC_1D,
) -> float:
    """Adaptive integral of f over [a, b]; f must accept numpy arrays.

    Deterministic for fixed inputs. Raises QuadratureError if the
    subdivision budget runs out before the tolerances are met.
    """
    if a > b:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0
    whole = _gauss_panel(f, a, b)
    tol = max(spec.abs_tol, spec.rel_tol * abs(whole))
    budget = [spec.max_subdivisions]
    return _adaptive(f, a, b, whole, tol, budget)


def integrate_sector(
    f: Callable[[np.ndarray, float], np.ndarray],
    r_lo: float,
    r_hi: float,
    theta0: float,
    spec: QuadratureSpec = DEFAULT_SPEC_2D,
) -> float:
    """Integral of f(r, theta) * r over [r_lo, r_hi] x [-theta0, theta0].

    f must be even in theta (every integrand in this package is); the
    half-range integral over [0, theta0] is computed and doubled. f is
    called with (array of r values, scalar theta).
    """
    if r_lo < 0:
        raise ValueError(f"r_lo must be >= 0, got {r_lo}")
    if r_hi < r_lo:
        raise ValueError(f"need r_hi >= r_lo, got [{r_lo}, {r_hi}]")
    if not 0 < theta0 <= math.pi:
        raise ValueError(f"theta0 must be in (0, pi], got {theta0}")
    if r_hi == r_lo:
        return 0.0

    inner_spec = QuadratureSpec(
        rel_tol=spec.rel_tol * 0.1,
        abs_tol=spec.abs_tol,
        max_subdivisions=spec.max_subdivisions,
    )

    def radial(theta: float) -> float:
        return integrate_1d(lambda r: f(r, theta) * r, r_lo, r_hi, inner_spec)

    def outer(thetas: np.ndarray) -> np.ndarray:
        return np.array([radial(t) for t in np.atleast_1d(thetas)])

    return 2.0 * integrate_1d(outer, 0.0, theta0, spec)
