"""Parametrized timelike paths: analytic and sampled segments, piecewise
composition, reparametrization, and proper length / proper time.

Velocities must be timelike and future-pointing everywhere; junctions must be
continuous in position and in velocity *direction* (the parametrization speed
may jump, which is harmless because every geometric quantity downstream is
invariant under velocity rescaling).  A direction kink is refused outright:
it carries a finite rapidity jump that the deviation integral cannot see.
"""

from __future__ import annotations

import math
import sys
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.interpolate import BPoly, CubicSpline
from scipy.optimize import brentq

from .errors import CausalityError, DimensionError, DomainError, JoinError
from .minkowski import FourVector, dot, norm
from .quadrature import QuadratureConfig, adaptive_simpson

DEFAULT_TOL_JOIN = 1e-9

#: probe count per segment for construction-time validity sampling
_VALIDATION_SAMPLES = 33

_CBRT_EPS = sys.float_info.epsilon ** (1.0 / 3.0)


class Probe(NamedTuple):
    position: FourVector
    velocity: FourVector
    acceleration: FourVector


@dataclass(frozen=True)
class AnalyticSegment:
    """A segment given by closed-form position/velocity/acceleration maps."""

    position: Callable[[float], FourVector]
    velocity: Callable[[float], FourVector]
    acceleration: Callable[[float], FourVector]
    domain: tuple[float, float]

    def __post_init__(self):
        a, b = self.domain
        if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
            raise DomainError(f"segment domain must be a finite interval, got {self.domain}")
        object.__setattr__(self, "domain", (float(a), float(b)))


class SampledSegment:
    """A segment interpolated through knots.

    With positions only, a cubic spline (not-a-knot ends) supplies velocity
    and acceleration from its derivatives.  When exact velocity (and
    optionally acceleration) knot data is available, a Hermite piecewise
    polynomial is used instead, which carries that accuracy through to the
    probed derivatives.
    """

    def __init__(
        self,
        times: Sequence[float],
        points: Sequence[FourVector],
        velocities: Sequence[FourVector] | None = None,
        accelerations: Sequence[FourVector] | None = None,
    ):
        ts = np.asarray([float(t) for t in times], dtype=float)
        if ts.ndim != 1 or len(ts) != len(points):
            raise DomainError("knot times and points must have equal length")
        if np.any(np.diff(ts) <= 0):
            raise DomainError("knot times must be strictly increasing")
        pts = [FourVector(p) if not isinstance(p, FourVector) else p for p in points]
        dim = pts[0].dim
        if any(p.dim != dim for p in pts):
            raise DimensionError("all knots must share one dimension")
        ys = np.asarray([p.components for p in pts], dtype=float)

        if velocities is None:
            if accelerations is not None:
                raise DomainError("acceleration knots require velocity knots")
            if len(ts) < 4:
                raise DomainError("cubic spline interpolation needs at least 4 knots")
            poly = CubicSpline(ts, ys, axis=0)
        else:
            if len(velocities) != len(ts):
                raise DomainError("velocity knots must match knot times")
            stacks = [ys, np.asarray([tuple(v) for v in velocities], dtype=float)]
            if accelerations is not None:
                if len(accelerations) != len(ts):
                    raise DomainError("acceleration knots must match knot times")
                stacks.append(np.asarray([tuple(a) for a in accelerations], dtype=float))
            data = np.stack(stacks, axis=1)  # (n, orders, dim)
            poly = BPoly.from_derivatives(ts, data)

        self._dim = dim
        self._pos = poly
        self._vel = poly.derivative()
        self._acc = self._vel.derivative()
        self.domain = (float(ts[0]), float(ts[-1]))

    def position(self, t: float) -> FourVector:
        return FourVector(np.asarray(self._pos(t), dtype=float))

    def velocity(self, t: float) -> FourVector:
        return FourVector(np.asarray(self._vel(t), dtype=float))

    def acceleration(self, t: float) -> FourVector:
        return FourVector(np.asarray(self._acc(t), dtype=float))


@dataclass(frozen=True)
class _MappedSegment:
    """base composed with a parameter map phi; chain rule on the derivatives."""

    base: object
    phi: Callable[[float], float]
    dphi: Callable[[float], float]
    d2phi: Callable[[float], float]
    domain: tuple[float, float]

    def _t(self, u: float) -> float:
        a, b = self.base.domain
        return min(max(self.phi(u), a), b)

    def position(self, u: float) -> FourVector:
        return self.base.position(self._t(u))

    def velocity(self, u: float) -> FourVector:
        return self.base.velocity(self._t(u)) * self.dphi(u)

    def acceleration(self, u: float) -> FourVector:
        t = self._t(u)
        dp = self.dphi(u)
        return self.base.acceleration(t) * (dp * dp) + self.base.velocity(t) * self.d2phi(u)


def _shifted(segment, offset: float):
    if offset == 0.0:
        return segment
    a, b = segment.domain
    return _MappedSegment(
        base=segment,
        phi=lambda u, d=offset: u - d,
        dphi=lambda u: 1.0,
        d2phi=lambda u: 0.0,
        domain=(a + offset, b + offset),
    )


@dataclass(frozen=True)
class ReparamFn:
    """Strictly increasing smooth parameter map phi: [alpha, beta] -> [a, b].

    d2phi may be omitted; it is then approximated by central differences of
    dphi, which is accurate enough for probing but analytic derivatives are
    preferred where tight tolerances matter.
    """

    phi: Callable[[float], float]
    dphi: Callable[[float], float]
    domain: tuple[float, float]
    d2phi: Callable[[float], float] | None = None

    def second_derivative(self) -> Callable[[float], float]:
        if self.d2phi is not None:
            return self.d2phi
        alpha, beta = self.domain
        h = _CBRT_EPS * (beta - alpha)

        def fd(u: float) -> float:
            lo = max(u - h, alpha)
            hi = min(u + h, beta)
            return (self.dphi(hi) - self.dphi(lo)) / (hi - lo)

        return fd


class Worldline:
    """A piecewise path with contiguous, strictly increasing segment domains."""

    def __init__(self, segments: Sequence, *, tol_join: float = DEFAULT_TOL_JOIN):
        segs = tuple(segments)
        if not segs:
            raise DomainError("a worldline needs at least one segment")
        if tol_join <= 0:
            raise DomainError("tol_join must be > 0")
        for prev, nxt in zip(segs, segs[1:]):
            gap = nxt.domain[0] - prev.domain[1]
            if abs(gap) > 1e-12 * max(1.0, abs(prev.domain[1])):
                raise DomainError(
                    f"segment domains must be contiguous; gap {gap!r} after t={prev.domain[1]!r}"
                )
        self.segments = segs
        self.tol_join = tol_join
        self._starts = [s.domain[0] for s in segs]
        self.domain = (segs[0].domain[0], segs[-1].domain[1])
        self.dim = segs[0].position(segs[0].domain[0]).dim
        self._validate()

    def _validate(self) -> None:
        for i, seg in enumerate(self.segments):
            a, b = seg.domain
            for t in np.linspace(a, b, _VALIDATION_SAMPLES):
                v = seg.velocity(float(t))
                if v.dim != self.dim:
                    raise DimensionError("segments must share one dimension")
                if dot(v, v) <= 0.0:
                    raise CausalityError(
                        f"velocity is not timelike at t={float(t)!r} (segment {i})"
                    )
                if v[0] <= 0.0:
                    raise CausalityError(
                        f"velocity is not future-pointing at t={float(t)!r} (segment {i})"
                    )
        for i, (prev, nxt) in enumerate(zip(self.segments, self.segments[1:])):
            t_end = prev.domain[1]
            t_begin = nxt.domain[0]
            p0, p1 = prev.position(t_end), nxt.position(t_begin)
            if any(abs(a - b) > self.tol_join for a, b in zip(p0, p1)):
                raise JoinError(
                    "position",
                    f"position jump at junction {i}: {p0!r} vs {p1!r}",
                )
            u0 = prev.velocity(t_end)
            u1 = nxt.velocity(t_begin)
            u0 = u0 / norm(u0)
            u1 = u1 / norm(u1)
            if any(abs(a - b) > self.tol_join for a, b in zip(u0, u1)):
                raise JoinError(
                    "kink",
                    f"velocity-direction kink at junction {i}: {u0!r} vs {u1!r}",
                )

    def segment_index(self, t: float) -> int:
        a, b = self.domain
        if t < a or t > b:
            raise DomainError(f"parameter {t!r} outside worldline domain [{a!r}, {b!r}]")
        return min(max(bisect_right(self._starts, t) - 1, 0), len(self.segments) - 1)

    def probe_in_segment(self, index: int, t: float) -> Probe:
        seg = self.segments[index]
        a, b = seg.domain
        t = min(max(t, a), b)
        x = seg.position(t)
        v = seg.velocity(t)
        if dot(v, v) <= 0.0:
            raise CausalityError(f"velocity is not timelike at t={t!r}")
        if v[0] <= 0.0:
            raise CausalityError(f"velocity is not future-pointing at t={t!r}")
        return Probe(x, v, seg.acceleration(t))

    def probe(self, t: float) -> Probe:
        """Position, velocity and acceleration at parameter t."""
        return self.probe_in_segment(self.segment_index(t), t)


def line_segment(
    start: FourVector, velocity: FourVector, domain: tuple[float, float]
) -> AnalyticSegment:
    """Straight segment with `start` at the domain's left endpoint."""
    start = FourVector(start) if not isinstance(start, FourVector) else start
    velocity = FourVector(velocity) if not isinstance(velocity, FourVector) else velocity
    t0 = float(domain[0])
    zero = velocity * 0.0
    return AnalyticSegment(
        position=lambda t: start + velocity * (t - t0),
        velocity=lambda t: velocity,
        acceleration=lambda t: zero,
        domain=(float(domain[0]), float(domain[1])),
    )


def polynomial_segment(
    component_coeffs: Sequence[Sequence[float]], domain: tuple[float, float]
) -> AnalyticSegment:
    """Segment whose components are polynomials in the path parameter."""
    from .lagrangian import poly_derivative, poly_eval

    rows = tuple(tuple(float(c) for c in row) for row in component_coeffs)
    vel_rows = tuple(poly_derivative(r) for r in rows)
    acc_rows = tuple(poly_derivative(r) for r in vel_rows)
    return AnalyticSegment(
        position=lambda t: FourVector(poly_eval(r, t) for r in rows),
        velocity=lambda t: FourVector(poly_eval(r, t) for r in vel_rows),
        acceleration=lambda t: FourVector(poly_eval(r, t) for r in acc_rows),
        domain=(float(domain[0]), float(domain[1])),
    )


def concat(parts: Sequence[Worldline], *, tol_join: float | None = None) -> Worldline:
    """Join worldlines end to end, shifting parameters to stay contiguous.

    A pure parameter shift changes no geometric quantity; junction position
    and velocity-direction continuity are re-validated and a JoinError is
    raised on a gap ("position") or a kink ("kink").
    """
    parts = list(parts)
    if not parts:
        raise DomainError("concat needs at least one worldline")
    tol = tol_join if tol_join is not None else parts[0].tol_join
    segments = list(parts[0].segments)
    end = parts[0].domain[1]
    for part in parts[1:]:
        offset = end - part.domain[0]
        for seg in part.segments:
            segments.append(_shifted(seg, offset))
        end = part.domain[1] + offset
    return Worldline(segments, tol_join=tol)


def reparametrize(w: Worldline, fn: ReparamFn) -> Worldline:
    """Same point set under a new parameter; velocity and acceleration follow
    the first- and second-order chain rules."""
    alpha, beta = fn.domain
    if not alpha < beta:
        raise DomainError("reparametrization domain must be a proper interval")
    a, b = w.domain
    scale = max(1.0, abs(a), abs(b))
    if abs(fn.phi(alpha) - a) > 1e-9 * scale or abs(fn.phi(beta) - b) > 1e-9 * scale:
        raise DomainError(
            "reparametrization endpoints do not map onto the worldline domain"
        )
    for u in np.linspace(alpha, beta, 65):
        if fn.dphi(float(u)) <= 0.0:
            raise DomainError(f"reparametrization is not strictly increasing at u={float(u)!r}")

    d2 = fn.second_derivative()
    # split the new parameter at the images of the original segment boundaries
    cuts = [alpha]
    for seg in w.segments[:-1]:
        t_cut = seg.domain[1]
        cuts.append(float(brentq(lambda u: fn.phi(u) - t_cut, alpha, beta, xtol=1e-14)))
    cuts.append(beta)
    new_segments = []
    for seg, lo, hi in zip(w.segments, cuts, cuts[1:]):
        new_segments.append(
            _MappedSegment(base=seg, phi=fn.phi, dphi=fn.dphi, d2phi=d2, domain=(lo, hi))
        )
    return Worldline(new_segments, tol_join=w.tol_join)


def proper_length(w: Worldline, config: QuadratureConfig | None = None) -> float:
    """Arc length of the worldline: the integral of ||velocity|| over the
    parameter domain.  Dividing by c gives the proper time."""
    total = 0.0
    for i, seg in enumerate(w.segments):
        a, b = seg.domain
        value, _ = adaptive_simpson(
            lambda t, k=i: norm(w.probe_in_segment(k, t).velocity), a, b, config
        )
        total += value
    return total
