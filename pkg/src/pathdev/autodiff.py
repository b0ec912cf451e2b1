"""Forward-mode automatic differentiation with first-order dual numbers.

Used to differentiate user-supplied potentials and field maps that do not
come with analytic derivatives.  User functions must be written in terms of
arithmetic operators and the math functions exported here, all of which
accept either floats or Dual values.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence


class Dual:
    """value + deriv * epsilon, with epsilon^2 = 0."""

    __slots__ = ("value", "deriv")

    def __init__(self, value: float, deriv: float = 0.0):
        self.value = float(value)
        self.deriv = float(deriv)

    def __add__(self, other):
        o = _as_dual(other)
        return Dual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_dual(other)
        return Dual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other):
        o = _as_dual(other)
        return Dual(o.value - self.value, o.deriv - self.deriv)

    def __mul__(self, other):
        o = _as_dual(other)
        return Dual(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_dual(other)
        return Dual(
            self.value / o.value,
            (self.deriv * o.value - self.value * o.deriv) / (o.value * o.value),
        )

    def __rtruediv__(self, other):
        return _as_dual(other).__truediv__(self)

    def __pow__(self, p):
        if isinstance(p, Dual):
            raise TypeError("dual exponents are not supported")
        if p == 0:
            return Dual(1.0, 0.0)
        return Dual(self.value**p, p * self.value ** (p - 1) * self.deriv)

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.deriv!r})"


def _as_dual(x) -> Dual:
    return x if isinstance(x, Dual) else Dual(float(x))


def _unary(f: Callable[[float], float], df: Callable[[float], float]):
    def wrapped(x):
        if isinstance(x, Dual):
            return Dual(f(x.value), df(x.value) * x.deriv)
        return f(x)

    return wrapped


sqrt = _unary(math.sqrt, lambda v: 0.5 / math.sqrt(v))
exp = _unary(math.exp, math.exp)
log = _unary(math.log, lambda v: 1.0 / v)
sin = _unary(math.sin, math.cos)
cos = _unary(math.cos, lambda v: -math.sin(v))
tan = _unary(math.tan, lambda v: 1.0 / math.cos(v) ** 2)
sinh = _unary(math.sinh, math.cosh)
cosh = _unary(math.cosh, math.sinh)
tanh = _unary(math.tanh, lambda v: 1.0 / math.cosh(v) ** 2)


def derivative(f: Callable, x: float) -> float:
    """d/dx f(x) by seeding a unit dual part."""
    y = f(Dual(x, 1.0))
    return y.deriv if isinstance(y, Dual) else 0.0


def partials(f: Callable[[Sequence], object], xs: Sequence[float]) -> tuple[float, ...]:
    """Partial derivatives of f at xs, one dual seed per coordinate."""
    out = []
    for i in range(len(xs)):
        seeded = [Dual(x, 1.0 if j == i else 0.0) for j, x in enumerate(xs)]
        y = f(seeded)
        out.append(y.deriv if isinstance(y, Dual) else 0.0)
    return tuple(out)
