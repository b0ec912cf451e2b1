"""Adaptive Simpson quadrature with Richardson error estimates.

A fixed-order Gauss-Legendre rule is provided as an independent cross-check
for tests and oracles; the adaptive rule is what the library uses.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NumericsError

_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_depth: int = 40

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("quadrature tolerances must be > 0")
        if self.max_depth < 1:
            raise DomainError("quadrature max_depth must be >= 1")


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    config: QuadratureConfig | None = None,
) -> tuple[float, float]:
    """Integrate f over [a, b] by adaptive Simpson with Richardson correction.

    Returns (value, error_estimate).  The error estimate is the sum of the
    per-panel Richardson terms, floored at the roundoff level of the panel
    sum.  Raises NumericsError (carrying the achieved estimate and error
    bound) when panels that hit max_depth still exceed the tolerance, or
    when the integrand returns a non-finite value.
    """
    cfg = config or QuadratureConfig()
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integration bounds must be finite")
    if b < a:
        value, err = adaptive_simpson(f, b, a, cfg)
        return -value, err
    if a == b:
        return 0.0, 0.0

    def ev(t: float) -> float:
        y = f(t)
        if not math.isfinite(y):
            raise NumericsError(f"integrand is not finite at t={t!r}")
        return y

    fa, fm, fb = ev(a), ev(0.5 * (a + b)), ev(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol0 = max(cfg.abs_tol, cfg.rel_tol * abs(whole))

    total = 0.0
    err = 0.0
    unconverged = 0.0
    panels = 0
    stack = [(a, b, fa, fm, fb, whole, tol0, 0)]
    while stack:
        a1, b1, f1, f2, f3, s, tol, depth = stack.pop()
        m = 0.5 * (a1 + b1)
        flm, frm = ev(0.5 * (a1 + m)), ev(0.5 * (m + b1))
        h = b1 - a1
        s_left = h / 12.0 * (f1 + 4.0 * flm + f2)
        s_right = h / 12.0 * (f2 + 4.0 * frm + f3)
        s2 = s_left + s_right
        delta = (s2 - s) / 15.0
        if abs(delta) <= tol or depth >= cfg.max_depth:
            total += s2 + delta
            err += abs(delta)
            panels += 1
            if abs(delta) > tol:
                unconverged += abs(delta)
        else:
            half = 0.5 * tol
            stack.append((a1, m, f1, flm, f2, s_left, half, depth + 1))
            stack.append((m, b1, f2, frm, f3, s_right, half, depth + 1))

    # roundoff floor so downstream "within N x error estimate" checks stay honest
    err = max(err, 4.0 * _EPS * panels * (abs(total) + 1.0))
    if unconverged > max(cfg.abs_tol, cfg.rel_tol * abs(total)):
        raise NumericsError(
            f"quadrature did not converge within depth {cfg.max_depth}",
            estimate=total,
            error_bound=err,
        )
    return total, err


def gauss_legendre(
    f: Callable[[float], float],
    a: float,
    b: float,
    order: int = 40,
    panels: int = 1,
) -> float:
    """Composite fixed-order Gauss-Legendre rule; independent of the adaptive rule."""
    if order < 1 or panels < 1:
        raise DomainError("gauss_legendre needs order >= 1 and panels >= 1")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    total = 0.0
    width = (b - a) / panels
    for k in range(panels):
        lo = a + k * width
        mid = lo + 0.5 * width
        half = 0.5 * width
        total += half * sum(w * f(mid + half * x) for x, w in zip(nodes, weights))
    return total
