"""Truncated power series in y whose coefficients are polynomials in x.

A ``SeriesYX`` of order m keeps the coefficients of y^0 .. y^m.  Ring
operations truncate consistently: coefficient k of a product depends only
on coefficients 0..k of the factors, so all results are exact through the
stated order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly
from .rat import rat


class SeriesYX:
    """Immutable truncated element of Q[x][[y]]."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = [_as_poly(c) for c in coeffs][: order + 1]
        cs += [Poly.zero()] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("SeriesYX is immutable")

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(order: int) -> "SeriesYX":
        return SeriesYX(order)

    @staticmethod
    def one(order: int) -> "SeriesYX":
        return SeriesYX(order, [Poly.one()])

    @staticmethod
    def y(order: int) -> "SeriesYX":
        return SeriesYX(order, [Poly.zero(), Poly.one()])

    @staticmethod
    def from_rats(order: int, values: Sequence) -> "SeriesYX":
        return SeriesYX(order, [Poly.const(rat(v)) for v in values])

    # -- structure -----------------------------------------------------

    def coefficient(self, k: int) -> Poly:
        if 0 <= k <= self.order:
            return self.coeffs[k]
        raise IndexError(f"coefficient {k} beyond truncation order {self.order}")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def truncate(self, order: int) -> "SeriesYX":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return SeriesYX(order, self.coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesYX):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    # -- ring operations -------------------------------------------------

    def __add__(self, other) -> "SeriesYX":
        other = self._align(other)
        return SeriesYX(
            self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "SeriesYX":
        return SeriesYX(self.order, [-c for c in self.coeffs])

    def __sub__(self, other) -> "SeriesYX":
        return self + (-self._align(other))

    def __mul__(self, other) -> "SeriesYX":
        if isinstance(other, (int, Fraction, Poly)):
            p = _as_poly(other)
            return SeriesYX(self.order, [c * p for c in self.coeffs])
        other = self._align(other)
        out = [Poly.zero()] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return SeriesYX(self.order, out)

    __rmul__ = __mul__

    def shift_y(self, k: int) -> "SeriesYX":
        """Multiply by y^k (coefficients past the order fall off)."""
        if k < 0:
            raise ValueError("negative y-shift")
        return SeriesYX(self.order, [Poly.zero()] * k + list(self.coeffs))

    def inverse(self) -> "SeriesYX":
        """Multiplicative inverse; requires a unit (nonzero constant) y^0 term."""
        c0 = self.coeffs[0]
        if c0.degree != 0:
            raise ValueError(
                "series inverse needs a nonzero constant y^0 coefficient, "
                f"got {c0}"
            )
        inv0 = Poly.const(1 / c0.coefficient(0))
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = Poly.zero()
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc * inv0)
        return SeriesYX(self.order, out)

    def divide_exact(self, den: "SeriesYX") -> "SeriesYX":
        """Divide by a series whose y^0 term is a nonzero Poly.

        Each step divides in Q[x] and must be remainder-free; this is how
        closed generating forms with non-unit constant terms are expanded.
        """
        den = self._align(den)
        d0 = den.coeffs[0]
        if d0.is_zero():
            raise ZeroDivisionError("series division by y-multiple")
        out: list[Poly] = []
        for k in range(self.order + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                acc = acc - den.coeffs[j] * out[k - j]
            out.append(acc.exact_div(d0))
        return SeriesYX(self.order, out)

    def map_x(self, fn) -> "SeriesYX":
        """Apply ``fn`` to every Poly coefficient (e.g. an x-substitution)."""
        return SeriesYX(self.order, [fn(c) for c in self.coeffs])

    def _align(self, other) -> "SeriesYX":
        if isinstance(other, (int, Fraction, Poly)):
            return SeriesYX(self.order, [_as_poly(other)])
        if not isinstance(other, SeriesYX):
            raise TypeError(f"cannot combine SeriesYX with {other!r}")
        if other.order != self.order:
            raise ValueError(
                f"order mismatch: {self.order} vs {other.order}"
            )
        return other

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(data: dict) -> "SeriesYX":
        return SeriesYX(data["order"], [Poly.from_json(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        terms = ", ".join(f"[{c}]" for c in self.coeffs)
        return f"SeriesYX(order={self.order}: {terms})"


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    raise TypeError(f"cannot coerce {value!r} to Poly")
