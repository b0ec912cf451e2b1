"""Euler-Lagrange residual, normalized Euler-Lagrange vector, deviation
integral, geodesic verdicts, and the free-particle closed forms.

For 1-homogeneous Lagrangians the residual R(t) = dL/dx - d/dt dL/dv is
metric-orthogonal to the (timelike) velocity, hence spacelike, so its norm
vanishes exactly where the equation of motion holds.  Integrating ||R|| over
the parameter gives a number that is invariant under reparametrization and
frame changes: zero exactly on geodesics, positive otherwise, in units of
momentum.

The time derivative of the momentum map is taken by second-order finite
differences along the path (central where the stencil fits inside the
containing segment, one-sided at its ends).  A Lagrangian consisting of a
single free-particle term instead uses the exact closed form
R = m*c * (S*a - (v.a)*v) / S^(3/2) with S = v.v, which doubles as the
accuracy anchor for the generic route.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .errors import CausalityError, DomainError, NumericsError
from .lagrangian import LagrangianSpec, gradients
from .minkowski import FourVector, dot, norm, rapidity_between
from .quadrature import QuadratureConfig, adaptive_simpson
from .worldline import Worldline

__all__ = [
    "DeviationReport",
    "el_residual",
    "el_vector",
    "deviation",
    "curvature",
    "deviation_lower_bound",
    "DEFAULT_GEO_TOL",
]

DEFAULT_GEO_TOL = 1e-8

#: fraction of the segment's velocity scale below which the integrand is
#: treated as a genuine lightlike blowup rather than a numerics bug
_LIGHTLIKE_GUARD = 1e-9

_CBRT_EPS = sys.float_info.epsilon ** (1.0 / 3.0)


@dataclass(frozen=True)
class DeviationReport:
    """Total deviation with per-segment breakdown and a geodesic verdict."""

    total: float
    per_segment: tuple[float, ...]
    error_estimate: float
    geodesic: bool
    geo_tol: float

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "per_segment": list(self.per_segment),
            "error_estimate": self.error_estimate,
            "geodesic": self.geodesic,
            "geo_tol": self.geo_tol,
        }


def _analytic_free_residual(spec: LagrangianSpec, probe) -> FourVector:
    m = spec.terms[0].m
    v, a = probe.velocity, probe.acceleration
    s = dot(v, v)
    coef = m * spec.c / s**1.5
    return (a * s - v * dot(v, a)) * coef


def _momentum(spec: LagrangianSpec, w: Worldline, index: int, t: float) -> FourVector:
    p = w.probe_in_segment(index, t)
    return gradients(spec, p.position, p.velocity).d_v


def _generic_residual(spec: LagrangianSpec, w: Worldline, index: int, t: float) -> FourVector:
    a, b = w.segments[index].domain
    h = _CBRT_EPS * (b - a)
    mom = lambda u: _momentum(spec, w, index, u)
    if t - h >= a and t + h <= b:
        dp = (mom(t + h) - mom(t - h)) / (2.0 * h)
    elif t + 2.0 * h <= b:
        dp = (mom(t) * -3.0 + mom(t + h) * 4.0 - mom(t + 2.0 * h)) / (2.0 * h)
    else:
        dp = (mom(t) * 3.0 - mom(t - h) * 4.0 + mom(t - 2.0 * h)) / (2.0 * h)
    p = w.probe_in_segment(index, t)
    return gradients(spec, p.position, p.velocity).d_x - dp


def _residual_in_segment(
    spec: LagrangianSpec, w: Worldline, index: int, t: float, method: str
) -> FourVector:
    if method == "auto":
        method = "analytic" if spec.pure_free_particle else "generic"
    if method == "analytic":
        if not spec.pure_free_particle:
            raise DomainError(
                "the analytic residual is only available for a single free-particle term"
            )
        return _analytic_free_residual(spec, w.probe_in_segment(index, t))
    if method == "generic":
        return _generic_residual(spec, w, index, t)
    raise DomainError(f"unknown residual method {method!r}")


def el_residual(
    spec: LagrangianSpec, w: Worldline, t: float, *, method: str = "auto"
) -> FourVector:
    """Euler-Lagrange residual R(t) = dL/dx - d/dt dL/dv along the worldline."""
    return _residual_in_segment(spec, w, w.segment_index(t), t, method)


def el_vector(
    spec: LagrangianSpec, w: Worldline, t: float, *, method: str = "auto"
) -> FourVector:
    """R(t) / ||velocity(t)||: the parametrization-invariant residual vector."""
    index = w.segment_index(t)
    r = _residual_in_segment(spec, w, index, t, method)
    return r / norm(w.probe_in_segment(index, t).velocity)


def deviation(
    spec: LagrangianSpec,
    w: Worldline,
    config: QuadratureConfig | None = None,
    geo_tol: float = DEFAULT_GEO_TOL,
    *,
    method: str = "auto",
) -> DeviationReport:
    """Integral of ||R(t)|| over the worldline, segment by segment.

    The parameter-form and arc-length-form integrands are evaluated
    independently at every quadrature node and must agree; the integrand
    aborts with NumericsError once the velocity degenerates toward lightlike,
    where the blowup is genuine physics.  On quadrature non-convergence the
    raised NumericsError carries the partial report.
    """
    if geo_tol <= 0:
        raise DomainError("geo_tol must be > 0")
    cfg = config or QuadratureConfig()
    per_segment = []
    errors = []
    for i, seg in enumerate(w.segments):
        a, b = seg.domain
        vscale = max(
            norm(w.probe_in_segment(i, a + (b - a) * k / 16.0).velocity) for k in range(17)
        )
        guard = _LIGHTLIKE_GUARD * vscale

        def integrand(t: float, index: int = i, floor: float = guard) -> float:
            r = _residual_in_segment(spec, w, index, t, method)
            speed = norm(w.probe_in_segment(index, t).velocity)
            if speed < floor:
                raise NumericsError(
                    f"velocity norm {speed!r} at t={t!r} degenerates toward lightlike; "
                    "the integrand blowup is genuine"
                )
            value = norm(r)
            ds_form = norm(r / speed) * speed
            if abs(ds_form - value) > 1e-9 * (1.0 + value):
                raise NumericsError(
                    "parameter-form and arc-length-form integrands disagree"
                )
            return value

        try:
            value, err = adaptive_simpson(integrand, a, b, cfg)
        except NumericsError as exc:
            partial = DeviationReport(
                total=sum(per_segment) + (exc.estimate or 0.0),
                per_segment=tuple(per_segment),
                error_estimate=sum(errors) + (exc.error_bound or 0.0),
                geodesic=False,
                geo_tol=geo_tol,
            )
            raise NumericsError(
                f"deviation quadrature failed on segment {i}: {exc}",
                estimate=partial.total,
                error_bound=partial.error_estimate,
                report=partial,
            ) from exc
        per_segment.append(value)
        errors.append(err)
    total = sum(per_segment)
    return DeviationReport(
        total=total,
        per_segment=tuple(per_segment),
        error_estimate=sum(errors),
        geodesic=total <= geo_tol,
        geo_tol=geo_tol,
    )


def curvature(w: Worldline, t: float) -> float:
    """Worldline curvature gamma(t) = sqrt(((v.a)^2 - (v.v)(a.a)) / (v.v)^3).

    With signature (+,-,...,-) and timelike v the radicand is nonnegative
    (reversed Cauchy-Schwarz); tiny negative rounding is clamped to zero.
    The free-particle deviation is m*c times the integral of gamma ds.
    """
    p = w.probe(t)
    v, a = p.velocity, p.acceleration
    s = dot(v, v)
    if s <= 0.0:
        raise CausalityError(f"velocity must be timelike at t={t!r}")
    rad = (dot(v, a) ** 2 - s * dot(a, a)) / s**3
    return math.sqrt(max(rad, 0.0))


def deviation_lower_bound(w: Worldline, m: float, c: float = 1.0) -> float:
    """m*c times the rapidity between the endpoint velocity directions.

    Attained by paths whose velocity direction sweeps monotonically; slack
    whenever the rapidity backtracks (e.g. an out-and-back trip).
    """
    if m <= 0 or c <= 0:
        raise DomainError("mass and speed of light must be > 0")
    a, b = w.domain
    va = w.probe(a).velocity
    vb = w.probe(b).velocity
    return m * c * rapidity_between(va, vb)
