"""Composable 1-homogeneous Lagrangians L(x, v) with exact partial gradients.

A Lagrangian is a sum of terms, each 1-homogeneous in the velocity argument,
so the action integral is independent of how the path is parametrized and
the associated Hamiltonian vanishes identically.

Index convention: both gradient vectors are stored with the index raised
through the flat metric (the spatial components of the raw partial-derivative
lists are sign-flipped).  Every contraction in this package then goes through
`minkowski.dot`; with this convention d_v dotted with v reproduces L exactly
for 1-homogeneous terms, and the Euler-Lagrange residual built from these
gradients is metric-orthogonal to the velocity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import autodiff
from .errors import CausalityError, DimensionError, DomainError
from .minkowski import FourVector

__all__ = [
    "FreeParticle",
    "StaticPotential1p1",
    "VectorPotential",
    "QuadraticVelocity",
    "LagrangianSpec",
    "Gradients",
    "evaluate",
    "gradients",
    "homogeneity_residual",
    "hamiltonian_residual",
    "polynomial_potential",
    "polynomial_field",
]


def _contract(a: Sequence, b: Sequence) -> object:
    """Metric contraction on raw component sequences (floats or duals)."""
    s = a[0] * b[0]
    for i in range(1, len(a)):
        s = s - a[i] * b[i]
    return s


def _raise_index(cov: Sequence[float]) -> tuple[float, ...]:
    """Flip spatial signs: covariant gradient components -> contravariant."""
    return (cov[0],) + tuple(-c for c in cov[1:])


def poly_eval(coeffs: Sequence[float], x) -> object:
    """Horner evaluation; works on floats and on dual numbers."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence[float]) -> tuple[float, ...]:
    return tuple(k * c for k, c in enumerate(coeffs))[1:] or (0.0,)


def polynomial_potential(coeffs: Sequence[float]):
    """Build (V, dV) callables from polynomial coefficients (constant first)."""
    cs = tuple(float(c) for c in coeffs)
    ds = poly_derivative(cs)
    return (lambda x: poly_eval(cs, x)), (lambda x: poly_eval(ds, x))


def polynomial_field(component_coeffs: Sequence[Sequence[float]]):
    """Build (A, jacobian) for a field whose components are polynomials in x^1.

    Returns callables usable by VectorPotential: A maps a component sequence
    to a component sequence, and jacobian returns rows d A^mu / d x^nu.
    """
    rows = tuple(tuple(float(c) for c in row) for row in component_coeffs)
    dim = len(rows)
    drows = tuple(poly_derivative(r) for r in rows)

    def a_field(x: Sequence) -> tuple:
        return tuple(poly_eval(r, x[1]) for r in rows)

    def jacobian(x: Sequence[float]) -> tuple[tuple[float, ...], ...]:
        return tuple(
            tuple(poly_eval(dr, x[1]) if nu == 1 else 0.0 for nu in range(dim))
            for dr in drows
        )

    return a_field, jacobian


@dataclass(frozen=True)
class Gradients:
    """Partial gradients of L, stored as raised-index four-vectors."""

    d_x: FourVector
    d_v: FourVector


@dataclass(frozen=True)
class FreeParticle:
    """Kinetic term -m*c*sqrt(v.v); the 1-homogeneous free-particle choice."""

    m: float

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError("mass must be > 0")

    def value(self, x: FourVector, v: FourVector, c: float) -> float:
        return -self.m * c * math.sqrt(_contract(v.components, v.components))

    def gradients(self, x: FourVector, v: FourVector, c: float):
        s = math.sqrt(_contract(v.components, v.components))
        k = -self.m * c / s
        return (0.0,) * v.dim, tuple(k * vi for vi in v.components)


@dataclass(frozen=True)
class StaticPotential1p1:
    """Static 1+1 potential term -V(x^1) * v^0 / c.

    With the convention x = (c*t, x^1) this is -V(x^1) * t' along a path.
    `derivative` may be omitted, in which case V is differentiated by
    forward-mode dual numbers and must be written with autodiff-aware ops.
    """

    potential: Callable
    derivative: Callable | None = None

    def value(self, x: FourVector, v: FourVector, c: float) -> float:
        if x.dim != 2:
            raise DimensionError("StaticPotential1p1 requires 1+1 dimensions")
        return -float(self.potential(x[1])) * v[0] / c

    def gradients(self, x: FourVector, v: FourVector, c: float):
        if x.dim != 2:
            raise DimensionError("StaticPotential1p1 requires 1+1 dimensions")
        vp = (
            float(self.derivative(x[1]))
            if self.derivative is not None
            else autodiff.derivative(self.potential, x[1])
        )
        d_x_cov = (0.0, -vp * v[0] / c)
        d_v_cov = (-float(self.potential(x[1])) / c, 0.0)
        return _raise_index(d_x_cov), _raise_index(d_v_cov)


@dataclass(frozen=True)
class VectorPotential:
    """Background-field term -A(x).v (metric contraction), linear in v.

    `field` maps a component sequence to a length-D component sequence;
    `jacobian`, when given, returns rows dA^mu/dx^nu.  Without a jacobian the
    field is differentiated by dual numbers, so it must accept dual inputs.
    """

    field: Callable[[Sequence], Sequence]
    jacobian: Callable[[Sequence[float]], Sequence[Sequence[float]]] | None = None

    def _field_at(self, xs: Sequence, dim: int) -> tuple:
        a = tuple(self.field(xs))
        if len(a) != dim:
            raise DimensionError(
                f"field map returned {len(a)} components for a {dim}-dimensional point"
            )
        return a

    def value(self, x: FourVector, v: FourVector, c: float) -> float:
        a = self._field_at(x.components, x.dim)
        return -float(_contract(a, v.components))

    def gradients(self, x: FourVector, v: FourVector, c: float):
        dim = x.dim
        a = self._field_at(x.components, dim)
        d_v_cov_raised = tuple(-float(ai) for ai in a)  # raising -A_mu gives -A^mu
        if self.jacobian is not None:
            jac = [tuple(float(j) for j in row) for row in self.jacobian(x.components)]
            if len(jac) != dim or any(len(row) != dim for row in jac):
                raise DimensionError("jacobian must be a DxD matrix of dA^mu/dx^nu")
            d_x_cov = tuple(
                -_contract(tuple(jac[mu][nu] for mu in range(dim)), v.components)
                for nu in range(dim)
            )
        else:
            d_x_cov = tuple(
                -d
                for d in autodiff.partials(
                    lambda xs: _contract(self._field_at(xs, dim), v.components),
                    x.components,
                )
            )
        return _raise_index(d_x_cov), d_v_cov_raised


@dataclass(frozen=True)
class QuadraticVelocity:
    """Textbook quadratic kinetic term scale * v.v.

    Not 1-homogeneous; kept only as the rejection fixture for the
    homogeneity checker.
    """

    scale: float = 1.0

    def value(self, x: FourVector, v: FourVector, c: float) -> float:
        return self.scale * _contract(v.components, v.components)

    def gradients(self, x: FourVector, v: FourVector, c: float):
        return (0.0,) * v.dim, tuple(2.0 * self.scale * vi for vi in v.components)


@dataclass(frozen=True)
class LagrangianSpec:
    """An ordered sum of terms plus the speed of light."""

    terms: tuple = ()
    c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise DomainError("a Lagrangian needs at least one term")
        if self.c <= 0:
            raise DomainError("speed of light must be > 0")

    @property
    def pure_free_particle(self) -> bool:
        return len(self.terms) == 1 and isinstance(self.terms[0], FreeParticle)


def _require_timelike_pair(x: FourVector, v: FourVector) -> None:
    if x.dim != v.dim:
        raise DimensionError(f"position and velocity dimensions differ: {x.dim} vs {v.dim}")
    if _contract(v.components, v.components) <= 0.0:
        raise CausalityError(f"velocity must be timelike, got {v!r}")


def evaluate(spec: LagrangianSpec, x: FourVector, v: FourVector) -> float:
    """L(x, v): sum of the term values.  Velocity must be timelike."""
    _require_timelike_pair(x, v)
    return sum(term.value(x, v, spec.c) for term in spec.terms)


def gradients(spec: LagrangianSpec, x: FourVector, v: FourVector) -> Gradients:
    """Raised-index partial gradients dL/dx and dL/dv (the conjugate momentum)."""
    _require_timelike_pair(x, v)
    dim = v.dim
    gx = [0.0] * dim
    gv = [0.0] * dim
    for term in spec.terms:
        tx, tv = term.gradients(x, v, spec.c)
        for i in range(dim):
            gx[i] += tx[i]
            gv[i] += tv[i]
    return Gradients(FourVector(gx), FourVector(gv))


def homogeneity_residual(
    spec: LagrangianSpec, x: FourVector, v: FourVector, lam: float
) -> float:
    """|L(x, lam*v) - lam*L(x, v)|; zero (to rounding) for 1-homogeneous L."""
    if lam <= 0:
        raise DomainError("homogeneity scale must be > 0")
    return abs(evaluate(spec, x, v * lam) - lam * evaluate(spec, x, v))


def hamiltonian_residual(spec: LagrangianSpec, x: FourVector, v: FourVector) -> float:
    """dot(dL/dv, v) - L(x, v); vanishes exactly when L is 1-homogeneous in v."""
    from .minkowski import dot

    g = gradients(spec, x, v)
    return dot(g.d_v, v) - evaluate(spec, x, v)
