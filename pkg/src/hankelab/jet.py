"""Truncated Taylor jets: cheap exact derivatives of determinants at a point.

A Jet of length L holds (p(x0), p'(x0), p''(x0)/2!, ...) and multiplies by
truncated convolution.  Running fraction-free elimination over jets yields
the value and first L-1 derivatives of a determinant at x0 without ever
forming the symbolic determinant.  Interior divisions require the divisor
to be a unit (nonzero value at x0); callers resample the point otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Poly
from .rat import Rat, rat


class JetNotInvertible(ArithmeticError):
    """Jet division hit a divisor vanishing at the expansion point."""


class Jet:
    __slots__ = ("vals",)

    def __init__(self, vals: Sequence[Fraction]):
        object.__setattr__(self, "vals", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    @property
    def length(self) -> int:
        return len(self.vals)

    def __bool__(self) -> bool:
        return any(self.vals)

    def __add__(self, other: "Jet") -> "Jet":
        return Jet([a + b for a, b in zip(self.vals, other.vals)])

    def __sub__(self, other: "Jet") -> "Jet":
        return Jet([a - b for a, b in zip(self.vals, other.vals)])

    def __neg__(self) -> "Jet":
        return Jet([-a for a in self.vals])

    def __mul__(self, other: "Jet") -> "Jet":
        n = len(self.vals)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.vals):
            if a:
                for j in range(n - i):
                    b = other.vals[j]
                    if b:
                        out[i + j] += a * b
        return Jet(out)

    def divide(self, other: "Jet") -> "Jet":
        if not other.vals[0]:
            raise JetNotInvertible("divisor jet vanishes at the base point")
        inv0 = 1 / other.vals[0]
        n = len(self.vals)
        out = []
        for k in range(n):
            acc = self.vals[k]
            for j in range(1, k + 1):
                acc -= other.vals[j] * out[k - j]
            out.append(acc * inv0)
        return Jet(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        return self.vals == other.vals

    def __repr__(self) -> str:
        return f"Jet{self.vals}"

    def derivative_value(self, order: int) -> Rat:
        """The order-th derivative at the base point (Taylor coeff * order!)."""
        if order >= len(self.vals):
            raise IndexError("jet too short for requested derivative")
        fact = 1
        for i in range(2, order + 1):
            fact *= i
        return self.vals[order] * fact


def jet_of_poly(p: Poly, x0, length: int) -> Jet:
    """Taylor coefficients of p around x0, exactly, via synthetic division."""
    x0 = rat(x0)
    coeffs = list(p.coeffs)
    out = []
    for _ in range(length):
        if not coeffs:
            out.append(Fraction(0))
            continue
        # Divide by (x - x0): remainder is the next Taylor coefficient.
        rem = Fraction(0)
        for i in range(len(coeffs) - 1, -1, -1):
            rem = coeffs[i] + rem * x0
        new = []
        carry = Fraction(0)
        for i in range(len(coeffs) - 1, 0, -1):
            carry = coeffs[i] + carry * x0
            new.append(carry)
        coeffs = list(reversed(new))
        out.append(rem)
    return Jet(out)


def jet_const(value, length: int) -> Jet:
    vals = [rat(value)] + [Fraction(0)] * (length - 1)
    return Jet(vals)


# -- integer jets -----------------------------------------------------------
#
# For screening determinant relations at a rational point p/q it is far
# cheaper to clear denominators once (every jet scales by the same q-power,
# and the relations are linear homogeneous in the determinant values) and
# run Bareiss over plain int 3-tuples: no gcd normalization at all, and the
# interior divisions stay exact because the intermediates are minors of an
# integer matrix.

IntJet = tuple  # length-3 tuples of int


def int_jet_mul(a: IntJet, b: IntJet) -> IntJet:
    return (
        a[0] * b[0],
        a[0] * b[1] + a[1] * b[0],
        a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
    )


def int_jet_div(a: IntJet, b: IntJet) -> IntJet:
    if b[0] == 0:
        raise JetNotInvertible("integer jet division by non-unit")
    q0, r = divmod(a[0], b[0])
    if r:
        raise ArithmeticError("inexact integer jet division")
    q1, r = divmod(a[1] - q0 * b[1], b[0])
    if r:
        raise ArithmeticError("inexact integer jet division")
    q2, r = divmod(a[2] - q0 * b[2] - q1 * b[1], b[0])
    if r:
        raise ArithmeticError("inexact integer jet division")
    return (q0, q1, q2)


def int_jet_det(rows: list[list[IntJet]]) -> IntJet:
    """Bareiss over integer jets; pivots must be units (resample otherwise)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    m = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k][0] == 0:
            for i in range(k + 1, n):
                if m[i][k][0] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                raise JetNotInvertible("pivot vanishes at the base point")
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a = int_jet_mul(pivot, m[i][j])
                b = int_jet_mul(m[i][k], m[k][j])
                elt = (a[0] - b[0], a[1] - b[1], a[2] - b[2])
                if prev is not None:
                    elt = int_jet_div(elt, prev)
                m[i][j] = elt
        prev = pivot
    out = m[n - 1][n - 1]
    return out if sign == 1 else (-out[0], -out[1], -out[2])


def int_jet_of_poly(p: Poly, x0, scale: int) -> IntJet:
    """Length-3 jet of p at x0, multiplied by scale; must come out integral.

    Callers choose one scale (a power of the denominator of x0 covering the
    largest degree in play) for every entry of a matrix so that all the
    derived determinant values share a single harmless factor.
    """
    jet = jet_of_poly(p, x0, 3)
    out = []
    for v in jet.vals:
        scaled = v * scale
        if scaled.denominator != 1:
            raise ArithmeticError(f"scale {scale} does not clear {v}")
        out.append(scaled.numerator)
    return tuple(out)

