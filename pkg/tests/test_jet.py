import random
from fractions import Fraction

import pytest

from hankelab.jet import Jet, JetNotInvertible, jet_const, jet_of_poly
from hankelab.poly import Poly


def test_jet_of_poly_matches_derivatives():
    rng = random.Random(59)
    for _ in range(50):
        coeffs = [Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(1, 9))]
        p = Poly(coeffs)
        x0 = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        jet = jet_of_poly(p, x0, 4)
        assert jet.vals[0] == p(x0)
        assert jet.derivative_value(1) == p.derivative()(x0)
        assert jet.derivative_value(2) == p.derivative(2)(x0)
        assert jet.derivative_value(3) == p.derivative(3)(x0)


def test_jet_ring_ops():
    a = Jet((Fraction(2), Fraction(1), Fraction(0)))
    b = Jet((Fraction(3), Fraction(0), Fraction(1)))
    assert (a * b).vals == (Fraction(6), Fraction(3), Fraction(2))
    assert (a + b).vals == (Fraction(5), Fraction(1), Fraction(1))
    assert (a - b).vals == (Fraction(-1), Fraction(1), Fraction(-1))


def test_jet_division_roundtrip():
    a = Jet((Fraction(5), Fraction(-2), Fraction(7)))
    b = Jet((Fraction(3), Fraction(1), Fraction(2)))
    q = a.divide(b)
    assert (q * b).vals == a.vals


def test_jet_division_requires_unit():
    a = jet_const(1, 3)
    b = Jet((Fraction(0), Fraction(1), Fraction(0)))
    with pytest.raises(JetNotInvertible):
        a.divide(b)
