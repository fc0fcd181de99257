"""Product formulas, almost-product evaluations, ODE residuals, recursions,
and the orthogonal-polynomial connections of the determinant families.

Every formula here was hand-transcribed once from its source display; the
transcription gate is residual-zero (or exact equality) against brute-force
determinants, exercised in the test suite, so a typo surfaces as a specific
failing (id, n) pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

from .poly import Poly
from .rat import Rat, double_factorial, factorial, rat
from .sequences import (
    F21,
    F30,
    F31,
    F32,
    F3K2M,
    FAEX,
    FSHIFT22,
    FSHIFT31,
    FamilyId,
)
from .hankel import hankel_det, hankel_det_at
from .sturm import isolate_disjoint_from, sturm_count


# ---------------------------------------------------------------------------
# Product formulas at special points
# ---------------------------------------------------------------------------


class ProductFormulaId(Enum):
    P32 = "p32"                       # (3,2) determinant, pure product
    P30 = "p30"                       # (3,0) determinant, pure product
    P31AT3 = "p31at3"                 # H^{(3,1)}(3)
    P31AT3HALF = "p31at3half"         # H^{(3,1)}(3/2)
    P31AT3QUARTER = "p31at3quarter"   # H^{(3,1)}(3/4)
    P30AT3 = "p30at3"                 # H^{(3,0)}(3)
    P30AT3HALF = "p30at3half"         # H^{(3,0)}(3/2)
    PAEXAT3SEVENTHS = "paexat3sevenths"  # aex determinant at 3/7
    P21AT0 = "p21at0"                 # H^{(2,1)}(0) = 1
    P21AT2 = "p21at2"                 # H^{(2,1)}(2) = (-1)^n (2n+1)


# (family, x) pair whose brute-force determinant each product evaluates.
PRODUCT_POINTS: dict[ProductFormulaId, tuple[FamilyId, Rat]] = {
    ProductFormulaId.P32: (F32, Rat(0)),
    ProductFormulaId.P30: (F30, Rat(0)),
    ProductFormulaId.P31AT3: (F31, Rat(3)),
    ProductFormulaId.P31AT3HALF: (F31, Rat(3, 2)),
    ProductFormulaId.P31AT3QUARTER: (F31, Rat(3, 4)),
    ProductFormulaId.P30AT3: (F30, Rat(3)),
    ProductFormulaId.P30AT3HALF: (F30, Rat(3, 2)),
    ProductFormulaId.PAEXAT3SEVENTHS: (FAEX, Rat(3, 7)),
    ProductFormulaId.P21AT0: (F21, Rat(0)),
    ProductFormulaId.P21AT2: (F21, Rat(2)),
}


def product_eval(pid: ProductFormulaId, n: int) -> Rat:
    """Exact value of the named finite product at index n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    f = factorial
    P = ProductFormulaId
    if pid is P.P32:
        return _prod(
            n, lambda i: Rat(f(6 * i + 4) * f(2 * i + 1), 2 * f(4 * i + 2) * f(4 * i + 3))
        )
    if pid is P.P30:
        return _prod(
            n,
            lambda i: Rat(3 * (3 * i + 1) * f(6 * i) * f(2 * i), f(4 * i) * f(4 * i + 1)),
        )
    if pid is P.P31AT3:
        sign = -1 if n % 2 else 1
        return sign * _prod(
            n,
            lambda i: Rat(
                f(6 * i - 3) * f(3 * i + 2) * f(2 * i - 1),
                f(4 * i - 1) * f(4 * i + 1) * f(3 * i - 2),
            ),
        )
    if pid is P.P31AT3HALF:
        return _prod(
            n,
            lambda i: Rat(
                f(2 * i - 1) * f(6 * i) * (3 * i + 1), 2 * f(4 * i - 1) * f(4 * i + 1)
            ),
        )
    if pid is P.P31AT3QUARTER:
        return _prod(
            n, lambda i: Rat(f(2 * i - 1) * f(6 * i + 1), 2 * f(4 * i - 1) * f(4 * i + 1))
        )
    if pid is P.P30AT3:
        pre = Rat(f(3 * n) * f(3 * n + 2), 2 * f(n) ** 2)
        return pre * _prod(
            n,
            lambda i: Rat(
                3 * f(6 * i - 5) * f(2 * i) * (2 * i - 1), f(4 * i + 1) * f(4 * i - 1)
            ),
        )
    if pid is P.P30AT3HALF:
        return _prod(
            n,
            lambda i: Rat(
                27 * f(6 * i - 5) * (3 * i - 1) * (3 * i - 2) * f(2 * i - 1),
                2 * f(4 * i - 1) * (4 * i - 3) * f(4 * i - 4),
            ),
        )
    if pid is P.PAEXAT3SEVENTHS:
        # This product starts at i = 0.
        acc = Rat(1)
        for i in range(0, n + 1):
            acc *= Rat(
                2 * f(6 * i + 7) * f(2 * i + 1), 7 * f(4 * i + 5) * f(4 * i + 3)
            )
        return acc
    if pid is P.P21AT0:
        return Rat(1)
    if pid is P.P21AT2:
        return Rat((-1 if n % 2 else 1) * (2 * n + 1))
    raise ValueError(f"unknown product formula {pid!r}")


def _prod(n: int, term: Callable[[int], Rat]) -> Rat:
    acc = Rat(1)
    for i in range(1, n + 1):
        acc *= term(i)
    return acc


def product_matches_determinant(pid: ProductFormulaId, n: int) -> bool:
    family, x0 = PRODUCT_POINTS[pid]
    return product_eval(pid, n) == hankel_det_at(family, n, x0)


# ---------------------------------------------------------------------------
# Almost products
# ---------------------------------------------------------------------------


class AlmostProductId(Enum):
    AP31 = "ap31"         # (3,1): prefactor * sum in powers of (x-3)
    AP31ALT = "ap31alt"   # (3,1): alternate form in powers of (x-1)
    AP21 = "ap21"         # (2,1): prefactor * sum in powers of (x-2)
    AP31AT0 = "ap31at0"   # AP31 specialized with (-6)^i
    AP31AT1 = "ap31at1"   # AP31 specialized with (-4)^i
    AP21AT0 = "ap21at0"   # AP21 specialized with (-4)^i; equals 1
    AP21AT1 = "ap21at1"   # AP21 specialized with (-2)^i; equals (-1)^{n(n+1)/2}


AP_FAMILY: dict[AlmostProductId, FamilyId] = {
    AlmostProductId.AP31: F31,
    AlmostProductId.AP31ALT: F31,
    AlmostProductId.AP21: F21,
}


def _ap31_sum(n: int, base: Poly) -> Poly:
    f = factorial
    acc = Poly.zero()
    for i in range(n + 1):
        coeff = Rat(
            f(n) * f(3 * n + i + 2) * 2**i,
            f(3 * n + 2) * f(n - i) * f(2 * i + 1),
        )
        acc = acc + base**i * coeff
    return acc


def _ap31alt_sum(n: int, base: Poly) -> Poly:
    f = factorial
    acc = Poly.zero()
    for i in range(n + 1):
        coeff = Rat(
            (-1) ** i * f(n) * double_factorial(4 * n + 3) * f(3 * n + i + 2),
            f(3 * n + 2) * f(i) * f(n - i) * double_factorial(4 * n + 2 * i + 3),
        )
        acc = acc + base**i * coeff
    return acc


def _ap21_sum(n: int, base: Poly) -> Poly:
    f = factorial
    acc = Poly.zero()
    for i in range(n + 1):
        coeff = Rat(f(n + i) * 2**i, f(n - i) * f(2 * i + 1))
        acc = acc + base**i * coeff
    return acc


def almost_product_eval(
    aid: AlmostProductId, n: int, x=None
) -> Union[Poly, Rat]:
    """Evaluate an almost-product formula.

    ``x=None`` returns the symbolic Poly for the three parametric forms;
    a rational ``x`` substitutes first.  The four specialized forms take
    no ``x`` and return a Rat.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    A = AlmostProductId
    f = factorial
    if aid is A.AP31:
        pre = product_eval(ProductFormulaId.P31AT3, n)
        base = Poly([-3, 1]) if x is None else Poly.const(rat(x) - 3)
        result = _ap31_sum(n, base) * pre
    elif aid is A.AP31ALT:
        pre = product_eval(ProductFormulaId.P32, n)
        base = Poly([-1, 1]) if x is None else Poly.const(rat(x) - 1)
        result = _ap31alt_sum(n, base) * pre
    elif aid is A.AP21:
        pre = product_eval(ProductFormulaId.P21AT2, n)
        base = Poly([-2, 1]) if x is None else Poly.const(rat(x) - 2)
        result = _ap21_sum(n, base) * pre
    elif aid in (A.AP31AT0, A.AP31AT1):
        if x is not None:
            raise ValueError(f"{aid.value} takes no x")
        pre = product_eval(ProductFormulaId.P31AT3, n)
        b = -6 if aid is A.AP31AT0 else -4
        acc = Rat(0)
        for i in range(n + 1):
            acc += Rat(
                f(n) * f(3 * n + i + 2) * b**i,
                f(3 * n + 2) * f(n - i) * f(2 * i + 1),
            )
        return pre * acc
    elif aid in (A.AP21AT0, A.AP21AT1):
        if x is not None:
            raise ValueError(f"{aid.value} takes no x")
        pre = product_eval(ProductFormulaId.P21AT2, n)
        b = -4 if aid is A.AP21AT0 else -2
        acc = Rat(0)
        for i in range(n + 1):
            acc += Rat(f(n + i) * b**i, f(n - i) * f(2 * i + 1))
        return pre * acc
    else:
        raise ValueError(f"unknown almost product {aid!r}")
    if x is None:
        return result
    return result.coefficient(0)


# ---------------------------------------------------------------------------
# ODE specifications and residuals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OdeSpec:
    """coeffs(n)[k] multiplies d_x^k y in the residual."""

    name: str
    family: FamilyId
    order: int
    coeffs: Callable[[int], list[Poly]]
    proven: bool = True


def _p(*cs) -> Poly:
    return Poly(cs)


def _de1_coeffs(n: int) -> list[Poly]:
    return [
        _p(-3 * n * (n + 1)),
        _p(2 * (n + 2) * -3 + 3, 2 * (n + 2)),
        _p(3, -4, 1),
    ]


def _de2np1_coeffs(n: int) -> list[Poly]:
    return [_p(-n * (n + 1)), _p(-1, 2), _p(0, -2, 1)]


def _de2np2ak_coeffs(n: int) -> list[Poly]:
    return [_p(-n * (n + 1)), _p(1, 2), _p(-1, 0, 1)]


def _thme1_coeffs(n: int) -> list[Poly]:
    c2 = _p(-3, 1) * _p(-3, 2) * _p(-3, 5)
    c1 = -2 * _p(-9 * (n + 5), -9 * (3 * n - 4), 10 * (n - 1))
    c0 = _p(-3 * n * (n - 7), 10 * n * (n - 1))
    return [c0, c1, c2]


def _thme2_coeffs(n: int) -> list[Poly]:
    c2 = _p(3, 2) * _p(-9, 2)
    c1 = 4 * _p(-9 * (n + 1), 2 * (n + 2))
    c0 = _p(-12 * n * (n + 1))
    return [c0, c1, c2]


def _thme3_coeffs(n: int) -> list[Poly]:
    c2 = _p(-1, 3) * _p(-1, 1) * _p(-3, 1)
    c1 = -2 * _p(-3 * (n + 4), -8 * n, 3 * n)
    c0 = 3 * n * (n + 1) * _p(-1, 1)
    return [c0, c1, c2]


def _thme4_coeffs(n: int) -> list[Poly]:
    c2 = _p(-2, 1) * _p(-1, 2) * _p(2, 5)
    c1 = -2 * _p(-26 * n - 19, -(7 * n - 16), 10 * (n - 1))
    c0 = n * _p(7 * n + 11, 10 * (n - 1))
    return [c0, c1, c2]


def _fig4_coeffs(n: int) -> list[Poly]:
    # Fourth-order equation for the (3,2) determinant; stated without proof
    # in its source and checked there numerically to large n.
    x3 = _p(-3, 1)
    threexm1 = _p(-1, 3)
    c4 = (
        2
        * threexm1**2
        * x3**3
        * _p(0, 1)
        * _p(-1, 8 * n * n + 20 * n + 11, 4 * (n + 2) * (2 * n + 1))
    )
    c3 = (
        x3**2
        * threexm1
        * _p(
            -15,
            72 * n**2 + 252 * n + 319,
            -(576 * n**3 + 3016 * n**2 + 4756 * n + 2269),
            -3 * (128 * n**3 + 568 * n**2 + 724 * n + 161),
            12 * (n + 2) * (2 * n + 1) * (8 * n + 27),
        )
    )
    c2 = (
        3
        * x3
        * _p(
            15 * (9 * n + 20),
            -6 * (108 * n**3 + 540 * n**2 + 972 * n + 679),
            2 * (816 * n**4 + 6744 * n**3 + 19358 * n**2 + 23069 * n + 9809),
            800 * n**4 + 2944 * n**3 + 564 * n**2 - 7580 * n - 7078,
            -(736 * n**4 + 6704 * n**3 + 19628 * n**2 + 21289 * n + 5814),
            12 * (8 * n**4 + 118 * n**3 + 427 * n**2 + 533 * n + 174),
        )
    )
    c1 = -3 * _p(
        -(783 * n**2 + 3105 * n + 3102),
        12 * (318 * n**4 + 1995 * n**3 + 4670 * n**2 + 4928 * n + 2058),
        1728 * n**5 + 6624 * n**4 - 5832 * n**3 - 55690 * n**2 - 80626 * n - 36004,
        4 * (144 * n**5 - 4 * n**4 - 2300 * n**3 - 4657 * n**2 - 2040 * n + 838),
        -(960 * n**5 + 3104 * n**4 - 3080 * n**3 - 20993 * n**2 - 23419 * n - 6450),
        12 * (16 * n**5 + 62 * n**4 - 7 * n**3 - 293 * n**2 - 378 * n - 120),
    )
    c0 = (
        -3
        * n
        * (n + 1)
        * _p(
            -3 * (120 * n**2 + 507 * n + 538),
            3 * (576 * n**4 + 3816 * n**3 + 9182 * n**2 + 9533 * n + 3666),
            720 * n**4 + 2304 * n**3 + 280 * n**2 - 4547 * n - 3338,
            -(864 * n**4 + 4488 * n**3 + 8158 * n**2 + 5887 * n + 1222),
            12 * (12 * n**4 + 68 * n**3 + 137 * n**2 + 113 * n + 30),
        )
    )
    return [c0, c1, c2, c3, c4]


ODES: dict[str, OdeSpec] = {
    "de1": OdeSpec("de1", F31, 2, _de1_coeffs),
    "de2np1": OdeSpec("de2np1", F21, 2, _de2np1_coeffs),
    "de2np2ak": OdeSpec("de2np2ak", FSHIFT22, 2, _de2np2ak_coeffs),
    "thme1": OdeSpec("thme1", F30, 2, _thme1_coeffs),
    "thme2": OdeSpec("thme2", F3K2M, 2, _thme2_coeffs),
    "thme3": OdeSpec("thme3", FAEX, 2, _thme3_coeffs),
    "thme4": OdeSpec("thme4", FSHIFT31, 2, _thme4_coeffs),
    "fig4": OdeSpec("fig4", F32, 4, _fig4_coeffs, proven=False),
}


def ode_residual(spec: OdeSpec, n: int, y: Poly) -> Poly:
    """sum_k coeff_k(n) * d_x^k y; the zero Poly iff y solves the instance."""
    coeffs = spec.coeffs(n)
    acc = Poly.zero()
    d = y
    for k, c in enumerate(coeffs):
        acc = acc + c * d
        d = d.derivative()
    return acc


def ode_residual_for_det(name: str, n: int) -> Poly:
    spec = ODES[name]
    return ode_residual(spec, n, hankel_det(spec.family, n))


# ---------------------------------------------------------------------------
# Recursions and structure results
# ---------------------------------------------------------------------------


def three_term_31_pq(n: int) -> tuple[Poly, Poly]:
    """The rational-coefficient p_n, q_n of the (3,1) three-term recursion."""
    f = factorial
    pc = Rat(
        4 * f(4 * n - 3) ** 2 * f(4 * n - 1) ** 2,
        9
        * (3 * n - 2) ** 2
        * (3 * n - 1) ** 2
        * f(2 * n - 1) ** 2
        * f(6 * n - 5) ** 2,
    )
    p = Poly([1, -2, 1]) * pc
    qc = Rat(
        4 * (n - 1) * f(4 * n - 5) * f(4 * n - 1),
        3 * (3 * n - 2) * (3 * n - 1) * (4 * n + 1) * f(2 * n - 1) * f(6 * n - 5),
    )
    q = (
        Poly(
            [
                -3 * (108 * n**2 - 54 * n - 19),
                6 * (126 * n**2 - 63 * n - 23),
                -36 * (4 * n - 3) * (4 * n + 1),
                8 * (4 * n - 3) * (4 * n + 1),
            ]
        )
        * qc
    )
    return p, q


def three_term_check(case: str, n: int) -> bool:
    """Three-term recursions: "c31" needs n >= 2, "c21" needs n >= 2."""
    if n < 2:
        raise ValueError("three-term recursions start at n = 2")
    if case == "c31":
        p, q = three_term_31_pq(n)
        lhs = (
            p * hankel_det(F31, n)
            + q * hankel_det(F31, n - 1)
            + hankel_det(F31, n - 2)
        )
        return lhs.is_zero()
    if case == "c21":
        lhs = hankel_det(F21, n) - (
            Poly([2, -2]) * hankel_det(F21, n - 1) - hankel_det(F21, n - 2)
        )
        return lhs.is_zero()
    raise ValueError(f"unknown three-term case {case!r}")


def recursion_31at1(n: int) -> Rat:
    """Iterate the one-term recursion for the (3,2) determinant.

    Specializing the (3,1) three-term recursion at x = 1 kills the H_n term
    and leaves H_n^{(3,2)} = -H_{n-1}^{(3,2)} / q_{n+1}(1).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    f = factorial
    acc = Rat(1)
    for i in range(1, n + 1):
        acc *= Rat(
            3 * (3 * i + 1) * (3 * i + 2) * f(2 * i + 1) * f(6 * i + 1),
            4 * i * (4 * i + 1) * f(4 * i - 1) * f(4 * i + 3),
        )
    return acc


def chebyshev_u(n: int) -> Poly:
    """Chebyshev U_n by its three-term recurrence; U_{-1} = 0."""
    if n < 0:
        return Poly.zero()
    prev, cur = Poly.one(), Poly([0, 2])
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, Poly([0, 2]) * cur - prev
    return cur


def jacobi_half(n: int) -> Poly:
    """Jacobi P_n^{(1/2, -1/2)} by its rational three-term recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    p0 = Poly.one()
    if n == 0:
        return p0
    p1 = Poly([Rat(1, 2), 1])
    if n == 1:
        return p1
    prev, cur = p0, p1
    for k in range(2, n + 1):
        # k(k-1) P_k = (2k-1)(k-1) x P_{k-1} - (k-1/2)(k-3/2) P_{k-2}
        a = Rat((2 * k - 1) * (k - 1))
        c = (Rat(2 * k - 1, 2)) * Rat(2 * k - 3, 2)
        nxt = (Poly([0, a]) * cur - c * prev) * Rat(1, k * (k - 1))
        prev, cur = cur, nxt
    return cur


def chebyshev_jacobi_check(n: int) -> bool:
    """The (2,1) determinant vs Chebyshev/Jacobi forms, plus the shifted ODE."""
    h = hankel_det(F21, n)
    u_part = chebyshev_u(n).compose_affine(-1, 1) - chebyshev_u(n - 1).compose_affine(
        -1, 1
    )
    if h != u_part:
        return False
    f = factorial
    scale = Rat((-4) ** n * f(n) ** 2, f(2 * n))
    if h != jacobi_half(n).compose_affine(1, -1) * scale:
        return False
    h_shift = hankel_det(FSHIFT22, n)
    if h_shift != jacobi_half(n) * scale:
        return False
    return ode_residual(ODES["de2np2ak"], n, h_shift).is_zero()


def interlace_check(n: int) -> bool:
    """H_n^{(3,1)} has n distinct real roots interlacing those of H_{n+1}."""
    if n < 1:
        raise ValueError("interlacing starts at n = 1")
    hn = hankel_det(F31, n)
    hn1 = hankel_det(F31, n + 1)
    bound = _common_bound(hn, hn1)
    if sturm_count(hn, -bound, bound) != n:
        return False
    if sturm_count(hn1, -bound, bound) != n + 1:
        return False
    iv_n, iv_n1 = isolate_disjoint_from(hn, hn1)
    if len(iv_n) != n or len(iv_n1) != n + 1:
        return False
    merged = [(iv, "n") for iv in iv_n] + [(iv, "n1") for iv in iv_n1]
    merged.sort()
    pattern = [tag for _, tag in merged]
    expected = ["n1" if i % 2 == 0 else "n" for i in range(2 * n + 1)]
    return pattern == expected


def _common_bound(p: Poly, q: Poly) -> Rat:
    from .sturm import root_bound

    return max(root_bound(p), root_bound(q))
