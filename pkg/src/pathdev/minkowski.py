"""Flat-spacetime linear algebra with metric signature (+, -, ..., -).

Index 0 is the time component (it carries a factor c where applicable).
With this signature a timelike vector v has v.v > 0, so square roots of
timelike norms need no sign juggling.  Raising or lowering an index on a
flat metric is a spatial sign flip and is handled once, inside `dot`;
everything else works on plain component tuples.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Iterable, Iterator

from .errors import CausalityError, DimensionError, DomainError

SUPPORTED_DIMENSIONS = (2, 4)

#: classification tolerance used when callers do not supply one
DEFAULT_CAUSAL_TOL = 1e-12

#: how far below 1 an acosh argument may round before it is an error
ACOSH_CLAMP = 1e-9


class CausalClass(Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


class FourVector:
    """A spacetime event or tangent vector with 2 or 4 real components.

    Immutable; supports +, -, scalar * and /, unary -, indexing and
    iteration.  Components must be finite.
    """

    __slots__ = ("_components",)

    def __init__(self, *components: float | Iterable[float]):
        if len(components) == 1 and not isinstance(components[0], (int, float)):
            components = tuple(components[0])  # type: ignore[assignment]
        comps = tuple(float(c) for c in components)
        if len(comps) not in SUPPORTED_DIMENSIONS:
            raise DimensionError(
                f"four-vectors must have 2 or 4 components, got {len(comps)}"
            )
        for c in comps:
            if not math.isfinite(c):
                raise DomainError(f"four-vector components must be finite, got {c!r}")
        self._components = comps

    @property
    def components(self) -> tuple[float, ...]:
        return self._components

    @property
    def dim(self) -> int:
        return len(self._components)

    def __len__(self) -> int:
        return len(self._components)

    def __getitem__(self, i: int) -> float:
        return self._components[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self._components)

    def __add__(self, other: "FourVector") -> "FourVector":
        _require_same_dim(self, other)
        return FourVector(a + b for a, b in zip(self._components, other._components))

    def __sub__(self, other: "FourVector") -> "FourVector":
        _require_same_dim(self, other)
        return FourVector(a - b for a, b in zip(self._components, other._components))

    def __mul__(self, k: float) -> "FourVector":
        return FourVector(k * a for a in self._components)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> "FourVector":
        return FourVector(a / k for a in self._components)

    def __neg__(self) -> "FourVector":
        return FourVector(-a for a in self._components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FourVector):
            return NotImplemented
        return self._components == other._components

    def __hash__(self) -> int:
        return hash(self._components)

    def __repr__(self) -> str:
        return f"FourVector{self._components!r}"


def _require_same_dim(u: FourVector, v: FourVector) -> None:
    if u.dim != v.dim:
        raise DimensionError(f"dimension mismatch: {u.dim} vs {v.dim}")


def metric_diagonal(dim: int) -> tuple[float, ...]:
    """Diagonal of the flat metric: (+1, -1, ..., -1)."""
    if dim not in SUPPORTED_DIMENSIONS:
        raise DimensionError(f"unsupported dimension {dim}")
    return (1.0,) + (-1.0,) * (dim - 1)


def basis(dim: int) -> tuple[FourVector, ...]:
    """Canonical orthonormal basis vectors e_0 .. e_{dim-1}."""
    if dim not in SUPPORTED_DIMENSIONS:
        raise DimensionError(f"unsupported dimension {dim}")
    return tuple(
        FourVector(1.0 if i == j else 0.0 for j in range(dim)) for i in range(dim)
    )


def dot(u: FourVector, v: FourVector) -> float:
    """Metric contraction u.v = u0*v0 - sum_i ui*vi.  Symmetric, bilinear."""
    _require_same_dim(u, v)
    uc, vc = u.components, v.components
    s = uc[0] * vc[0]
    for i in range(1, len(uc)):
        s -= uc[i] * vc[i]
    return s


def norm(v: FourVector) -> float:
    """sqrt(|v.v|).  Zero exactly when v.v = 0, so lightlike vectors have norm 0."""
    return math.sqrt(abs(dot(v, v)))


def classify(v: FourVector, causal_tol: float = DEFAULT_CAUSAL_TOL) -> CausalClass:
    """Causal class of v: timelike if v.v > tol, spacelike if v.v < -tol, else lightlike."""
    if causal_tol < 0:
        raise DomainError("classification tolerance must be >= 0")
    s = dot(v, v)
    if s > causal_tol:
        return CausalClass.TIMELIKE
    if s < -causal_tol:
        return CausalClass.SPACELIKE
    return CausalClass.LIGHTLIKE


def require_future_timelike(v: FourVector, what: str = "vector") -> None:
    """Raise CausalityError unless v is strictly timelike with v0 > 0."""
    if dot(v, v) <= 0.0:
        raise CausalityError(f"{what} must be timelike, got {v!r}")
    if v[0] <= 0.0:
        raise CausalityError(f"{what} must be future-pointing (positive time component)")


def rapidity_between(u: FourVector, w: FourVector) -> float:
    """Hyperbolic angle between two future-pointing timelike directions.

    Computed as acosh of the normalized contraction; it is symmetric,
    invariant under positive rescaling of either argument, additive along
    collinear boosts, and zero exactly for parallel directions.  Arguments
    that round slightly below 1 (within ACOSH_CLAMP) are snapped back to 1.
    """
    require_future_timelike(u, "first argument")
    require_future_timelike(w, "second argument")
    q = dot(u, w) / (norm(u) * norm(w))
    if q < 1.0:
        if q < 1.0 - ACOSH_CLAMP:
            raise DomainError(
                f"normalized contraction {q!r} is below 1 by more than the rounding margin"
            )
        q = 1.0
    return math.acosh(q)
