"""Rational triangles, lattice-point supports and integral affine maps.

Points are ordered lexicographically (x first, then y) everywhere; the first
point of a :class:`SupportSet` is therefore its leftmost-lowest point, and the
rows of every interpolation matrix follow this order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DomainError,
    NormalizationIntegralityError,
    PreconditionError,
    ValidationError,
    VerticalEdgeError,
)

__all__ = [
    "AffineUnimodularMap",
    "GkNormalization",
    "SupportSet",
    "Triangle",
    "TriangleData",
    "apply_map",
    "boundary_count",
    "count_integers",
    "enumerate_points",
    "format_triangle",
    "gk_normalize",
    "gk_setup_check",
    "parse_triangle",
    "support_from_wpp",
    "triangle_data",
]

Point = tuple  # (x, y); ints for lattice points, Fractions for vertices


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise DomainError(f"not an exact rational: {v!r}")


def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


@dataclass(frozen=True)
class Triangle:
    """A non-degenerate triangle with rational vertices, stored sorted."""

    vertices: tuple

    def __init__(self, vertices: Iterable[Sequence]):
        verts = tuple(sorted((_frac(x), _frac(y)) for x, y in vertices))
        if len(verts) != 3:
            raise DomainError("a triangle needs exactly three vertices")
        if len(set(verts)) != 3 or _cross(*verts) == 0:
            raise DomainError(f"degenerate triangle {verts}")
        object.__setattr__(self, "vertices", verts)

    def scale(self, q) -> Triangle:
        q = _frac(q)
        return Triangle([(q * x, q * y) for x, y in self.vertices])

    def is_integral(self) -> bool:
        return all(x.denominator == 1 and y.denominator == 1 for x, y in self.vertices)

    def edges(self):
        a, b, c = self.vertices
        return ((a, b), (a, c), (b, c))

    def __str__(self):
        return format_triangle(self)


def parse_triangle(text: str) -> Triangle:
    """Parse ``"x,y;x,y;x,y"`` where each coordinate is ``num`` or ``num/den``."""
    parts = [p.strip() for p in text.strip().split(";") if p.strip()]
    if len(parts) != 3:
        raise ValidationError(f"expected three ';'-separated vertices in {text!r}")
    verts = []
    for part in parts:
        coords = part.split(",")
        if len(coords) != 2:
            raise ValidationError(f"bad vertex {part!r}")
        try:
            verts.append(tuple(Fraction(c.strip()) for c in coords))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad coordinate in {part!r}") from exc
    return Triangle(verts)


def format_triangle(t: Triangle) -> str:
    return ";".join(f"{x},{y}" for x, y in t.vertices)


@dataclass(frozen=True)
class TriangleData:
    slopes: tuple  # ascending
    width: Fraction
    doubled_area: Fraction


def _slope(p, q) -> Fraction:
    if p[0] == q[0]:
        raise VerticalEdgeError(f"edge {p} -- {q} is vertical")
    return (q[1] - p[1]) / (q[0] - p[0])


def triangle_data(t: Triangle) -> TriangleData:
    slopes = tuple(sorted(_slope(p, q) for p, q in t.edges()))
    xs = [v[0] for v in t.vertices]
    return TriangleData(slopes, max(xs) - min(xs), abs(_cross(*t.vertices)))


def count_integers(lo, hi) -> int:
    """Number of integers in the closed interval [lo, hi]."""
    lo, hi = _frac(lo), _frac(hi)
    if lo > hi:
        raise DomainError(f"empty interval [{lo}, {hi}]")
    return max(0, math.floor(hi) - math.ceil(lo) + 1)


def boundary_count(t: Triangle) -> int:
    """Lattice points on the boundary of an integral triangle (gcd of edges)."""
    if not t.is_integral():
        raise DomainError("boundary count needs integer vertices")
    return sum(
        math.gcd(int(q[0] - p[0]), int(q[1] - p[1])) for p, q in t.edges()
    )


@dataclass(frozen=True)
class SupportSet:
    """Lexicographically sorted, duplicate-free lattice points.

    The leftmost point always sits at index 0.
    """

    points: tuple

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = tuple(sorted({(int(x), int(y)) for x, y in points}))
        object.__setattr__(self, "points", pts)

    @property
    def leftmost_index(self) -> int:
        return 0

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def index(self, point) -> int:
        try:
            return self.points.index((int(point[0]), int(point[1])))
        except ValueError:
            raise DomainError(f"{point} is not in the support") from None

    def column(self, x: int) -> list[int]:
        return [q for p, q in self.points if p == x]


def _half_planes(t: Triangle):
    """(a, b, c) with a*x + b*y <= c for the three edges."""
    out = []
    verts = t.vertices
    for i in range(3):
        p, q, r = verts[i], verts[(i + 1) % 3], verts[(i + 2) % 3]
        a = q[1] - p[1]
        b = p[0] - q[0]
        c = a * p[0] + b * p[1]
        if a * r[0] + b * r[1] > c:
            a, b, c = -a, -b, -c
        out.append((a, b, c))
    return out


def enumerate_points(t: Triangle, q: int = 1) -> SupportSet:
    """All lattice points in (or on) the dilation q*t."""
    if q < 1:
        raise DomainError(f"dilation factor must be >= 1, got {q}")
    tq = t.scale(q) if q != 1 else t
    planes = _half_planes(tq)
    xs = [v[0] for v in tq.vertices]
    pts = []
    for x in range(math.ceil(min(xs)), math.floor(max(xs)) + 1):
        lo, hi = None, None
        feasible = True
        for a, b, c in planes:
            rest = c - a * x
            if b == 0:
                if rest < 0:
                    feasible = False
                continue
            bound = rest / b
            if b > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if not feasible or lo is None or hi is None or lo > hi:
            continue
        pts.extend((x, y) for y in range(math.ceil(lo), math.floor(hi) + 1))
    return SupportSet(pts)


def _pairwise_coprime(*ws) -> bool:
    return all(math.gcd(u, v) == 1 for i, u in enumerate(ws) for v in ws[i + 1 :])


def support_from_wpp(a: int, b: int, c: int, d: int) -> SupportSet:
    """Exponents (u, v) of the degree-d monomials x^u y^v z^w of P(a, b, c).

    The monomials are dehomogenized on the chart z = 1, so (u, v) runs over
    u, v >= 0 with a*u + b*v <= d and c | d - a*u - b*v.
    """
    if min(a, b, c) < 1 or not _pairwise_coprime(a, b, c):
        raise DomainError(f"weights {(a, b, c)} must be positive and pairwise coprime")
    if d < 0:
        raise DomainError(f"degree must be >= 0, got {d}")
    pts = []
    binv = pow(b, -1, c) if c > 1 else 0
    for u in range(d // a + 1):
        r = d - a * u
        # b*v == r (mod c)  <=>  v == r * b^{-1} (mod c)
        for v in range(r * binv % c if c > 1 else 0, r // b + 1, c):
            pts.append((u, v))
    return SupportSet(pts)


@dataclass(frozen=True)
class AffineUnimodularMap:
    """p -> matrix @ p + translation with an integral matrix of det +-1."""

    matrix: tuple = ((1, 0), (0, 1))
    translation: tuple = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        mat = ((int(a), int(b)), (int(c), int(d)))
        if abs(mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]) != 1:
            raise DomainError(f"matrix {mat} is not unimodular")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "translation", tuple(int(v) for v in self.translation))

    @classmethod
    def shear(cls, a: int) -> AffineUnimodularMap:
        """(i, j) -> (i, j + a*i)."""
        return cls(((1, 0), (a, 1)))

    @classmethod
    def translate(cls, dx: int, dy: int) -> AffineUnimodularMap:
        return cls(translation=(dx, dy))

    def __call__(self, p):
        (a, b), (c, d) = self.matrix
        x, y = p
        return (a * x + b * y + self.translation[0], c * x + d * y + self.translation[1])

    def then(self, other: AffineUnimodularMap) -> AffineUnimodularMap:
        """The map ``other(self(p))``."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        mat = ((e * a + f * c, e * b + f * d), (g * a + h * c, g * b + h * d))
        return AffineUnimodularMap(mat, other(self.translation))

    def inverse(self) -> AffineUnimodularMap:
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        inv = ((d * det, -b * det), (-c * det, a * det))
        tx, ty = self.translation
        return AffineUnimodularMap(
            inv, (-(inv[0][0] * tx + inv[0][1] * ty), -(inv[1][0] * tx + inv[1][1] * ty))
        )


def apply_map(m: AffineUnimodularMap, obj):
    """Image of a SupportSet (re-sorted) or a Triangle under ``m``."""
    if isinstance(obj, SupportSet):
        return SupportSet(m(p) for p in obj)
    if isinstance(obj, Triangle):
        return Triangle(m(v) for v in obj.vertices)
    raise TypeError(f"cannot map {type(obj).__name__}")


def _on_open_segment(p, a, b) -> bool:
    if _cross(a, b, p) != 0:
        return False
    dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])
    return 0 < dot < (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2


def gk_setup_check(t: Triangle) -> bool:
    """(0,0) is a vertex and (0,1) is interior to the opposite edge."""
    origin = (Fraction(0), Fraction(0))
    if origin not in t.vertices:
        return False
    a, b = (v for v in t.vertices if v != origin)
    return _on_open_segment((Fraction(0), Fraction(1)), a, b)


@dataclass(frozen=True)
class GkNormalization:
    map: AffineUnimodularMap
    n: int
    alpha: int
    beta: int
    d: int
    support: SupportSet = field(repr=False, compare=False, default=None)

    @property
    def width(self) -> int:
        return self.alpha + self.n

    @property
    def leftmost(self):
        return (-1, self.beta + self.n + 1)


def _check_column_profile(sup: SupportSet, n: int, alpha: int, beta: int):
    left = sup[0]
    if left != (-1, beta + n + 1) or sup.column(-1) != [beta + n + 1]:
        raise PreconditionError("column-profile", f"leftmost point is {left}")
    if sup.column(0) != list(range(beta, beta + n)):
        raise PreconditionError("column-profile", f"column x=0 is {sup.column(0)}")
    for i in range(n):
        col = sup.column(alpha + i)
        if col != list(range(n - i)):
            raise PreconditionError("column-profile", f"column x={alpha + i} is {col}")
    if sup[len(sup) - 1][0] != alpha + n - 1:
        raise PreconditionError("column-profile", "points to the right of x = alpha + n - 1")


def gk_normalize(t: Triangle, d: int, check_setup: bool = True) -> GkNormalization:
    """Shear and translate d*t into the position used by the GK interpolation.

    Afterwards the long edge has slope in (-2, -1), the leftmost vertex is
    (-1, beta + n + 1) and the rightmost vertex lies on the x-axis at
    x = alpha + n - 1. The resulting column structure is verified on the
    actual lattice points; any mismatch raises ``PreconditionError``.

    ``check_setup=False`` skips the (0,0)/(0,1) placement test, which is
    useful for triangles built directly in normalized position.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if check_setup and not gk_setup_check(t):
        raise PreconditionError("setup", "(0,0) must be a vertex with (0,1) inside the opposite edge")
    data = triangle_data(t)
    s1, s2, s3 = data.slopes
    if s2.denominator == 1:
        raise PreconditionError("s2-integral", f"middle slope {s2} is an integer")
    dw = d * data.width
    if dw.denominator != 1:
        raise NormalizationIntegralityError(f"d*width = {dw} is not an integer")
    dt = t.scale(d)
    if not dt.is_integral():
        raise PreconditionError("integral-dilation", f"{d}*t has non-integral vertices")
    left, mid, right = dt.vertices
    if _slope(left, right) != s2 or _cross(left, right, mid) > 0:
        raise PreconditionError("middle-vertex-below", "the third vertex must lie below the long edge")

    shear = AffineUnimodularMap.shear(-2 - math.floor(s2))
    left_s, right_s = shear(left), shear(right)
    move = AffineUnimodularMap.translate(int(-1 - left_s[0]), int(-right_s[1]))
    full = shear.then(move)

    n = count_integers(s1, s2)
    dw = int(dw)
    alpha = dw - n
    beta = -(s2 + shear.matrix[1][0]) * dw - n - 1
    if beta.denominator != 1:
        raise NormalizationIntegralityError(f"beta = {beta} is not an integer")
    beta = int(beta)
    if alpha < 1:
        raise PreconditionError("alpha-positive", f"alpha = {alpha} (needs >= 1)")
    if beta < 0:
        raise PreconditionError("beta-nonnegative", f"beta = {beta}")

    sup = apply_map(full, enumerate_points(dt))
    _check_column_profile(sup, n, alpha, beta)
    return GkNormalization(full, n, alpha, beta, d, sup)
