"""Hankel matrices over Poly and their exact determinant machinery.

The workhorse is fraction-free (Bareiss) elimination: interior divisions
are exact in the polynomial ring, and any nonzero remainder aborts loudly,
which doubles as a correctness tripwire.  A cofactor-expansion oracle is
kept for small sizes and cross-checked in the tests.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .poly import Poly
from .rat import Rat, binom, rat
from .sequences import FamilyId, a_poly


# ---------------------------------------------------------------------------
# Generic exact determinants
# ---------------------------------------------------------------------------


def det_bareiss(rows: Sequence[Sequence], divide: Callable) -> object:
    """Fraction-free two-term elimination over any integral domain.

    ``divide(a, b)`` must perform the (guaranteed exact) interior division.
    A zero pivot swaps in the first lower row with a nonzero entry and flips
    the sign; if none exists the determinant is zero.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 1:
        return rows[0][0]
    m = [list(row) for row in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                zero = m[k][k]
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = pivot * m[i][j] - m[i][k] * m[k][j]
                if prev is not None:
                    elt = divide(elt, prev)
                m[i][j] = elt
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def det_fraction_free(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant of a square Poly matrix."""
    return det_bareiss(rows, lambda a, b: a.exact_div(b))


def det_rational(rows: Sequence[Sequence[Fraction]]) -> Rat:
    """Exact determinant of a square matrix of rationals."""
    return det_bareiss(rows, lambda a, b: a / b)


def det_cofactor(rows: Sequence[Sequence]) -> object:
    """Cofactor-expansion oracle; exponential, for cross-checks only."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        entry = rows[0][j]
        if not entry:
            continue
        minor = [
            [rows[i][jj] for jj in range(n) if jj != j] for i in range(1, n)
        ]
        term = entry * det_cofactor(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        acc = rows[0][0] - rows[0][0]
    return acc


def det_with_replaced_column(
    rows: Sequence[Sequence[Poly]], col: int, column: Sequence[Poly]
) -> Poly:
    replaced = [list(row) for row in rows]
    for i, v in enumerate(column):
        replaced[i][col] = v
    return det_fraction_free(replaced)


def trace_adjugate_product(
    a: Sequence[Sequence[Poly]], x: Sequence[Sequence[Poly]]
) -> Poly:
    """Tr(A^{-1} X) * det(A), computed without leaving the polynomial ring.

    By Cramer's rule the i-th diagonal entry of A^{-1} X times det(A) is the
    determinant of A with column i replaced by the i-th column of X.
    """
    n = len(a)
    acc = Poly.zero()
    for i in range(n):
        acc = acc + det_with_replaced_column(a, i, [x[r][i] for r in range(n)])
    return acc


# ---------------------------------------------------------------------------
# Hankel matrices and the determinant quartet
# ---------------------------------------------------------------------------


def hankel_matrix(family: FamilyId, n: int) -> list[list[Poly]]:
    """The (n+1) x (n+1) matrix [a_{i+j}(x)]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return [[a_poly(family, i + j) for j in range(n + 1)] for i in range(n + 1)]


def hankel_columns(family: FamilyId, n: int, cols: Sequence[int]) -> list[list[Poly]]:
    """Matrix whose j-th column is (a_{c_j}, a_{c_j+1}, ..., a_{c_j+n})."""
    return [[a_poly(family, c + i) for c in cols] for i in range(n + 1)]


def _quartet_columns(n: int) -> dict[str, list[int]]:
    base = list(range(n))
    return {
        "H": base + [n],
        "K": base + [n + 1],
        "M": base[:-1] + [n + 1, n] if n >= 1 else None,
        "N": base + [n + 2],
    }


@dataclass(frozen=True)
class HankelQuartet:
    """H_n and its shifted-column companions K_n, M_n, N_n."""

    family: FamilyId
    n: int
    H: Poly
    K: Poly
    M: Optional[Poly]
    N: Optional[Poly]


_quartet_memo: dict[tuple[FamilyId, int], HankelQuartet] = {}
_h_memo: dict[tuple[FamilyId, int], Poly] = {}
_memo_lock = threading.Lock()


def hankel_det(family: FamilyId, n: int) -> Poly:
    """H_n(x) alone, memoized."""
    key = (family, n)
    hit = _h_memo.get(key)
    if hit is not None:
        return hit
    h = det_fraction_free(hankel_matrix(family, n))
    with _memo_lock:
        _h_memo.setdefault(key, h)
    return h


def quartet(family: FamilyId, n: int) -> HankelQuartet:
    """All four determinants; M and N are None at n = 0.

    K_0 degenerates to det[[a_1]] = a_1 per the defining column layout.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    key = (family, n)
    hit = _quartet_memo.get(key)
    if hit is not None:
        return hit
    layout = _quartet_columns(n)
    h = hankel_det(family, n)
    k = det_fraction_free(hankel_columns(family, n, layout["K"]))
    m = nn = None
    if n >= 1:
        m = det_fraction_free(hankel_columns(family, n, layout["M"]))
        nn = det_fraction_free(hankel_columns(family, n, layout["N"]))
    q = HankelQuartet(family, n, h, k, m, nn)
    with _memo_lock:
        _quartet_memo.setdefault(key, q)
    return q


def hankel_det_at(family: FamilyId, n: int, x0) -> Rat:
    """H_n evaluated at a rational point, substituting before elimination."""
    x0 = rat(x0)
    rows = [
        [a_poly(family, i + j)(x0) for j in range(n + 1)] for i in range(n + 1)
    ]
    return det_rational(rows)


def quartet_at(family: FamilyId, n: int, x0) -> dict[str, Optional[Rat]]:
    """Point-evaluated quartet {H, K, M, N}; M, N are None at n = 0."""
    x0 = rat(x0)
    layout = _quartet_columns(n)
    out: dict[str, Optional[Rat]] = {"M": None, "N": None}
    for name in ("H", "K") + (("M", "N") if n >= 1 else ()):
        cols = layout[name]
        rows = [[a_poly(family, c + i)(x0) for c in cols] for i in range(n + 1)]
        out[name] = det_rational(rows)
    return out


def dodgson_check(family: FamilyId, n: int) -> bool:
    """H_{n-1} H_{n+1} = H_n N_n - H_n M_n - K_n^2 as a Poly identity."""
    if n < 1:
        raise ValueError("the Dodgson-like identity needs n >= 1")
    q = quartet(family, n)
    lhs = hankel_det(family, n - 1) * hankel_det(family, n + 1)
    rhs = q.H * q.N - q.H * q.M - q.K * q.K
    return lhs == rhs


# ---------------------------------------------------------------------------
# Generalized degree-bound determinants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeInstance:
    """An instance of the generalized Hankel-like determinant.

    Entry (i, j) is sum_{0 <= m <= p_i + q_j} C(alpha_i + beta_j + gamma*m,
    p_i + q_j - m) x^m, the binomial taken in falling-factorial form; an
    empty sum (p_i + q_j < 0) gives a zero entry.
    """

    p: tuple[int, ...]
    q: tuple[int, ...]
    alphas: tuple[Fraction, ...]
    betas: tuple[Fraction, ...]
    gamma: Fraction

    def __post_init__(self):
        if not (
            len(self.p) == len(self.q) == len(self.alphas) == len(self.betas)
        ):
            raise ValueError("p, q, alphas, betas must have equal length")
        if len(self.p) == 0:
            raise ValueError("instance must be nonempty")

    @property
    def n(self) -> int:
        return len(self.p) - 1

    def entry(self, i: int, j: int) -> Poly:
        top_base = self.alphas[i] + self.betas[j]
        bound = self.p[i] + self.q[j]
        if bound < 0:
            return Poly.zero()
        return Poly(
            [binom(top_base + self.gamma * m, bound - m) for m in range(bound + 1)]
        )

    def matrix(self) -> list[list[Poly]]:
        size = self.n + 1
        return [[self.entry(i, j) for j in range(size)] for i in range(size)]


def degree_bound(inst: DegreeInstance) -> int:
    """max(max p_i + max q_j - n, 0), the proven bound on the degree."""
    return max(max(inst.p) + max(inst.q) - inst.n, 0)


def general_degree_det(inst: DegreeInstance) -> Poly:
    return det_fraction_free(inst.matrix())


def matrix_to_json(rows: Sequence[Sequence[Poly]]) -> list[list[list[str]]]:
    """Debug dump: JSON array of rows of Poly (each an array of rationals)."""
    return [[entry.to_json() for entry in row] for row in rows]


def matrix_from_json(data) -> list[list[Poly]]:
    return [[Poly.from_json(entry) for entry in row] for row in data]


def make_degree_instance(p, q, alphas, betas, gamma) -> DegreeInstance:
    return DegreeInstance(
        tuple(int(v) for v in p),
        tuple(int(v) for v in q),
        tuple(rat(v) for v in alphas),
        tuple(rat(v) for v in betas),
        rat(gamma),
    )
