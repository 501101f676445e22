"""Slope criterion for width < 1 triangles and its witness curves.

The construction works in normalized coordinates (see
:func:`toricinterp.lattice.gk_normalize`): the leftmost lattice point is
L = (-1, beta + n + 1), column x = 0 holds P_i = (0, beta + i) for
0 <= i < n, and column x = alpha + i holds (alpha + i, 0..n-1-i).

A curve of degree <= n through all P_i and all points of the right-hand
columns is sought in the basis

    G_i(x, y) = binom(x - alpha, i) * binom(y, n - i),    0 <= i <= n,

whose members already vanish on the right-hand columns. Multiplying that
curve by the vertical lines x = 1, ..., alpha - 1 gives a polynomial of degree
(alpha - 1) + n = d*w - 1 that vanishes at every lattice point except
possibly L; it misses L exactly when n*beta != (n + 1)*alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

from .errors import DomainError, InvariantViolation, PreconditionError, VerticalEdgeError
from .exact import binom
from .lattice import (
    Triangle,
    count_integers,
    gk_normalize,
    gk_setup_check,
    triangle_data,
)
from .linalg import right_kernel_exact

__all__ = [
    "GkReport",
    "WitnessCurve",
    "admissible_d",
    "build_gk_matrix",
    "expand_monomials",
    "gk_criterion",
    "gk_det_predicate",
    "gk_interpolation_curve",
    "gk_witness",
    "reduced_gk_matrix",
    "search_gk_triangles",
    "slope_equals_one_plus_inverse_n",
]


@dataclass(frozen=True)
class GkReport:
    setup_ok: bool
    w: Fraction
    slopes: tuple
    n: int
    right_count: int
    ns2_integral: bool
    criterion_holds: bool

    def to_dict(self) -> dict:
        return {
            "setup_ok": self.setup_ok,
            "w": str(self.w),
            "slopes": [str(s) for s in self.slopes],
            "n": self.n,
            "right_count": self.right_count,
            "ns2_integral": self.ns2_integral,
            "minus_s2_is_1_plus_1_over_n": bool(self.slopes)
            and slope_equals_one_plus_inverse_n(self.slopes[1], self.n),
            "criterion_holds": self.criterion_holds,
        }


def slope_equals_one_plus_inverse_n(s2: Fraction, n: int) -> bool:
    """-s2 == 1 + 1/n after shifting s2 into (-2, -1).

    Kept as an independent predicate; no equivalence with ``ns2 not in Z``
    is assumed anywhere.
    """
    if n < 1 or s2.denominator == 1:
        return False
    shifted = s2 - math.floor(s2) - 2
    return -shifted == 1 + Fraction(1, n)


def gk_criterion(t: Triangle) -> GkReport:
    """Evaluate the setup, width and slope-count hypotheses for ``t``.

    A triangle with a vertical edge cannot satisfy the setup (both other
    vertices of a valid setup lie strictly left and right of x = 0), so it is
    reported as failing with empty slopes instead of raising.
    """
    try:
        data = triangle_data(t)
    except VerticalEdgeError:
        xs = [v[0] for v in t.vertices]
        return GkReport(gk_setup_check(t), max(xs) - min(xs), (), 0, 0, False, False)
    s1, s2, s3 = data.slopes
    n = count_integers(s1, s2)
    right_count = count_integers(*sorted(((n - 1) * s2, (n - 1) * s3)))
    ns2_integral = (n * s2).denominator == 1
    setup_ok = gk_setup_check(t)
    holds = setup_ok and data.width < 1 and right_count == n and not ns2_integral
    return GkReport(setup_ok, data.width, data.slopes, n, right_count, ns2_integral, holds)


def _check_params(n, alpha, beta):
    if n < 1 or alpha < 1 or beta < 0:
        raise DomainError(f"need n >= 1, alpha >= 1, beta >= 0; got {(n, alpha, beta)}")


def build_gk_matrix(n: int, alpha: int, beta: int) -> list[list[int]]:
    """Rows P_0..P_{n-1}, L; columns G_0..G_n; entry G_j evaluated at the row point."""
    _check_params(n, alpha, beta)
    rows = [[binom(-alpha, j) * binom(beta + i, n - j) for j in range(n + 1)] for i in range(n)]
    rows.append([binom(-1 - alpha, j) * binom(beta + n + 1, n - j) for j in range(n + 1)])
    return rows


def reduced_gk_matrix(n: int, alpha: int, beta: int) -> list[list[int]]:
    """Replay the successive row differences on the first n rows.

    Round r replaces row i by row i - row (i-1) for i = n-1 down to r; the
    result is upper anti-triangular.
    """
    rows = build_gk_matrix(n, alpha, beta)[:n]
    for r in range(1, n):
        for i in range(n - 1, r - 1, -1):
            rows[i] = [a - b for a, b in zip(rows[i], rows[i - 1])]
    return rows


def gk_det_predicate(n: int, alpha: int, beta: int) -> bool:
    """True iff the interpolation curve passes through L (det M == 0)."""
    _check_params(n, alpha, beta)
    return n * beta == (n + 1) * alpha


def gk_interpolation_curve(n: int, alpha: int, beta: int) -> tuple:
    """Coefficients c_0..c_n of the unique curve sum c_i G_i through all P_i.

    Normalized so the first nonzero coefficient is 1.
    """
    rows = build_gk_matrix(n, alpha, beta)[:n]
    kernel = right_kernel_exact(rows)
    if len(kernel) != 1:
        raise InvariantViolation(f"interpolation kernel has dimension {len(kernel)} for {(n, alpha, beta)}")
    vec = kernel[0]
    lead = next(v for v in vec if v)
    return tuple(Fraction(v, lead) for v in vec)


# ---------------------------------------------------------------------------
# polynomials as {(a, b): coefficient} dicts


def _poly_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _binom_poly(var: int, shift: int, k: int) -> dict:
    """binom(t - shift, k) as a polynomial in t (var 0 = x, 1 = y)."""
    poly = {(0, 0): Fraction(1)}
    for r in range(k):
        lin = {(1, 0) if var == 0 else (0, 1): Fraction(1, r + 1),
               (0, 0): Fraction(-shift - r, r + 1)}
        poly = _poly_mul(poly, {k_: v for k_, v in lin.items() if v})
    return poly


def expand_monomials(curve: WitnessCurve) -> dict:
    """Monomial coefficients {(a, b): Fraction} of the full witness polynomial."""
    n, alpha = curve.n, curve.alpha
    f: dict = {}
    for i, c in enumerate(curve.curve_coeffs):
        if not c:
            continue
        term = _poly_mul(_binom_poly(0, alpha, i), _binom_poly(1, 0, n - i))
        for k, v in term.items():
            f[k] = f.get(k, 0) + c * v
    f = {k: v for k, v in f.items() if v}
    for k in curve.vertical_range:
        f = _poly_mul(f, {(1, 0): Fraction(1), (0, 0): Fraction(-k)})
    return f


class _Evaluator:
    """Exact evaluation of a rational polynomial via integer Horner rows."""

    def __init__(self, poly: dict):
        den = 1
        for c in poly.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        self.den = den
        deg_y = max(b for _, b in poly)
        deg_x = max(a for a, _ in poly)
        self.rows = [[0] * (deg_x + 1) for _ in range(deg_y + 1)]
        for (a, b), c in poly.items():
            self.rows[b][a] = int(c * den)

    def __call__(self, x: int, y: int) -> Fraction:
        total = 0
        for coeffs in reversed(self.rows):
            acc = 0
            for c in reversed(coeffs):
                acc = acc * x + c
            total = total * y + acc
        return Fraction(total, self.den)


@dataclass(frozen=True)
class WitnessCurve:
    n: int
    alpha: int
    beta: int
    d: int
    curve_coeffs: tuple
    vertical_range: range
    total_degree: int
    verification: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "alpha": self.alpha,
            "beta": self.beta,
            "curve_coeffs": [str(c) for c in self.curve_coeffs],
            "vertical_lines": [self.vertical_range.start, self.vertical_range.stop - 1]
            if len(self.vertical_range) else [],
            "total_degree": self.total_degree,
            "verification": self.verification,
        }


def gk_witness(t: Triangle, d: int) -> WitnessCurve:
    """Build and verify the degree d*w - 1 curve missing only the leftmost point.

    Verification evaluates the expanded polynomial exactly on every lattice
    point of the normalized dilation d*t.
    """
    report = gk_criterion(t)
    if not report.criterion_holds:
        raise PreconditionError("criterion", "the slope criterion does not hold for this triangle")
    norm = gk_normalize(t, d)
    n, alpha, beta = norm.n, norm.alpha, norm.beta
    coeffs = gk_interpolation_curve(n, alpha, beta)
    curve = WitnessCurve(n, alpha, beta, d, coeffs, range(1, alpha), (alpha - 1) + n)
    if curve.total_degree != norm.width - 1:
        raise InvariantViolation("witness degree differs from d*w - 1")

    poly = expand_monomials(curve)
    degree = max(a + b for a, b in poly)
    evaluate = _Evaluator(poly)
    left = norm.leftmost
    violations = []
    for p in norm.support:
        val = evaluate(*p)
        if (p == left) != (val != 0):
            violations.append(list(p))
    verification = {
        "points": len(norm.support),
        "degree": degree,
        "value_at_leftmost": str(evaluate(*left)),
        "violations": violations,
        "passed": not violations and degree == curve.total_degree,
    }
    if not verification["passed"]:
        raise InvariantViolation(f"witness verification failed: {verification}")
    return WitnessCurve(n, alpha, beta, d, coeffs, curve.vertical_range, curve.total_degree, verification)


def admissible_d(t: Triangle, how_many: int = 2) -> list[int]:
    """The smallest d for which d*t is integral and normalization succeeds."""
    base = math.lcm(*(v.denominator for xy in t.vertices for v in xy))
    out = []
    for k in count(1):
        d = base * k
        try:
            gk_normalize(t, d)
        except PreconditionError as exc:
            if exc.name != "alpha-positive":
                raise
            continue
        out.append(d)
        if len(out) == how_many:
            return out


def search_gk_triangles(max_den: int = 6, limit: int | None = None):
    """Enumerate criterion-true triangles with small denominators.

    Triangles are parametrized as (0,0), (x1, 1 + s2*x1), (x2, 1 + s2*x2)
    with -1 < x1 < 0 < x2, x2 - x1 < 1 and 0 < s2 < 1 (integer shears leave
    every hypothesis unchanged). All denominators are <= ``max_den``.
    Results come in a fixed order: by largest denominator, then by value.
    """
    fracs = sorted(
        {Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q)},
        key=lambda f: (f.denominator, f),
    )
    found = 0
    for s2 in fracs:
        for a in fracs:
            for b in fracs:
                x1, x2 = -a, b
                if x2 - x1 >= 1:
                    continue
                t = Triangle([(0, 0), (x1, 1 + s2 * x1), (x2, 1 + s2 * x2)])
                if gk_criterion(t).criterion_holds:
                    yield t
                    found += 1
                    if limit is not None and found >= limit:
                        return
