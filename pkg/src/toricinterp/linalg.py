"""Derivative/power matrices over a support set and certified ranks.

Row (i, j) of ``B(s, m)`` holds the values i**a * j**b of the monomials of
degree <= m - 1, so a left-kernel vector of ``B`` is exactly the coefficient
vector of a section sum c_ij x^i y^j with multiplicity >= m at (1, 1), and a
column combination equal to e_k is a polynomial of degree <= m - 1 that
vanishes on the support except at point k.

Two rank routes are provided:

* modular: Gaussian elimination over Z/p for a word-size prime p (via
  python-flint). Rank mod p is a lower bound for the rational rank, so only a
  *full row rank* result is used as a certificate.
* exact: fraction-free (Bareiss) elimination over Z. Any rank deficiency is
  reported together with an integer left-kernel vector that is re-checked by
  exact multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import flint

from .errors import ConfigurationError, DomainError, InvariantViolation
from .exact import PRIMES, falling_factorial
from .lattice import SupportSet

__all__ = [
    "DerivMatrix",
    "EmptinessResult",
    "RankCertificate",
    "augmented_rank_test",
    "b_matrix_mod",
    "build_A",
    "build_B",
    "deriv_orders",
    "echelon",
    "exact_rank",
    "left_kernel_exact",
    "linear_system_empty",
    "mat_vec",
    "rank",
    "right_kernel_exact",
    "separating_polynomial",
    "solve_exact",
    "vec_mat",
]

Grid = Sequence[Sequence[int]]


def deriv_orders(m: int) -> tuple:
    """Pairs (a, b) with a + b <= m - 1 in lexicographic order."""
    if m < 1:
        raise DomainError(f"multiplicity must be >= 1, got {m}")
    return tuple((a, b) for a in range(m) for b in range(m - a))


@dataclass(frozen=True)
class DerivMatrix:
    flavor: str  # "A" or "B"
    rows: SupportSet
    cols: tuple
    entries: tuple = field(repr=False)

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def tolist(self):
        return [list(r) for r in self.entries]


def _check_support(s: SupportSet, m: int):
    if len(s) == 0:
        raise DomainError("empty support")
    return deriv_orders(m)


def build_A(s: SupportSet, m: int) -> DerivMatrix:
    """Entries d^a/dx^a d^b/dy^b (x^i y^j) at (1, 1) = (i)_a (j)_b."""
    cols = _check_support(s, m)
    entries = tuple(
        tuple(falling_factorial(i, a) * falling_factorial(j, b) for a, b in cols)
        for i, j in s
    )
    return DerivMatrix("A", s, cols, entries)


def _power_row(i: int, j: int, m: int, p: int | None = None) -> list[int]:
    pi, pj = [1] * m, [1] * m
    for t in range(1, m):
        pi[t] = pi[t - 1] * i
        pj[t] = pj[t - 1] * j
        if p is not None:
            pi[t] %= p
            pj[t] %= p
    if p is None:
        return [pi[a] * pj[b] for a in range(m) for b in range(m - a)]
    return [pi[a] * pj[b] % p for a in range(m) for b in range(m - a)]


def build_B(s: SupportSet, m: int) -> DerivMatrix:
    """Entries i**a * j**b, with 0**0 = 1."""
    cols = _check_support(s, m)
    entries = tuple(tuple(_power_row(i, j, m)) for i, j in s)
    return DerivMatrix("B", s, cols, entries)


def b_matrix_mod(s: SupportSet, m: int, p: int) -> flint.nmod_mat:
    """B(s, m) reduced mod p, built without forming the large integers."""
    _check_support(s, m)
    flat = []
    for i, j in s:
        flat.extend(_power_row(i % p, j % p, m, p))
    return flint.nmod_mat(len(s), m * (m + 1) // 2, flat, p)


def _grid(mtx) -> list[list[int]]:
    if isinstance(mtx, DerivMatrix):
        return mtx.tolist()
    rows = [list(r) for r in mtx]
    if not rows or not rows[0]:
        raise DomainError("empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DomainError("ragged matrix")
    return rows


def _transpose(rows):
    return [list(c) for c in zip(*rows)]


def mat_vec(rows: Grid, v: Sequence) -> list:
    return [sum(a * x for a, x in zip(r, v) if a and x) for r in rows]


def vec_mat(v: Sequence, rows: Grid) -> list:
    ncols = len(rows[0])
    out = [0] * ncols
    for coef, r in zip(v, rows):
        if coef:
            for k in range(ncols):
                out[k] += coef * r[k]
    return out


# ---------------------------------------------------------------------------
# exact elimination


def echelon(rows: Grid):
    """Fraction-free (Bareiss) row echelon form over Z.

    Returns ``(U, pivots)`` where ``U`` holds the ``len(pivots)`` nonzero
    echelon rows. Every division below is exact: after k pivots each entry is
    a (k+1)-minor of the input and the divisor is the previous pivot minor.
    """
    M = [list(r) for r in rows]
    nr = len(M)
    nc = len(M[0]) if M else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        k = next((i for i in range(r, nr) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        top = M[r]
        piv = top[c]
        for i in range(r + 1, nr):
            row = M[i]
            f = row[c]
            if f:
                M[i] = [0] * (c + 1) + [
                    (piv * row[t] - f * top[t]) // prev for t in range(c + 1, nc)
                ]
            elif prev != piv:
                M[i] = [0] * (c + 1) + [piv * row[t] // prev for t in range(c + 1, nc)]
        prev = piv
        pivots.append(c)
        r += 1
    return M[:r], pivots


def exact_rank(mtx) -> int:
    return len(echelon(_grid(mtx))[1])


def _primitive(vec) -> tuple:
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    first = next(v for v in ints if v)
    if first < 0:
        g = -g
    return tuple(v // g for v in ints)


def _back_substitute(U, pivots, ncols, fixed: dict, rhs=None) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for col, val in fixed.items():
        x[col] = Fraction(val)
    for i in range(len(pivots) - 1, -1, -1):
        pc = pivots[i]
        row = U[i]
        acc = Fraction(rhs[i]) if rhs is not None else Fraction(0)
        for k in range(pc + 1, ncols):
            if row[k] and x[k]:
                acc -= row[k] * x[k]
        x[pc] = acc / row[pc]
    return x


def right_kernel_exact(mtx) -> list[tuple]:
    """Integer basis of {x : M x = 0}; each vector primitive, first entry > 0."""
    rows = _grid(mtx)
    ncols = len(rows[0])
    U, pivots = echelon(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    return [_primitive(_back_substitute(U, pivots, ncols, {f: 1})) for f in free]


def left_kernel_exact(mtx) -> list[tuple]:
    """Integer basis of {y : y^T M = 0}; empty iff the rows are independent."""
    return right_kernel_exact(_transpose(_grid(mtx)))


def solve_exact(mtx, rhs: Sequence) -> list[Fraction] | None:
    """Some rational x with M x = rhs, or None if rhs is not in the column span."""
    rows = _grid(mtx)
    ncols = len(rows[0])
    aug = [list(r) + [int(b)] for r, b in zip(rows, rhs)]
    U, pivots = echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    U_left = [r[:ncols] for r in U]
    return _back_substitute(U_left, pivots, ncols, {}, rhs=[r[ncols] for r in U])


def augmented_rank_test(mtx, idx: int) -> bool:
    """rank([M | e_idx]) == rank(M), i.e. e_idx lies in the column span."""
    rows = _grid(mtx)
    aug = [r + [1 if i == idx else 0] for i, r in enumerate(rows)]
    return exact_rank(aug) == exact_rank(rows)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    method: str  # "modular" | "exact"
    nrows: int
    ncols: int
    prime: int | None = None
    witness: tuple | None = None
    m: int | None = None

    @property
    def full_row_rank(self) -> bool:
        return self.rank == self.nrows

    def to_dict(self) -> dict:
        out = {
            "support_size": self.nrows,
            "m": self.m,
            "cols": self.ncols,
            "rank": self.rank,
            "method": self.method,
            "full_row_rank": self.full_row_rank,
        }
        if self.prime is not None:
            out["prime"] = str(self.prime)
        if self.witness is not None:
            out["witness"] = [str(v) for v in self.witness]
        return out


def _resolve_prime(prime, allow_unlisted_prime):
    if prime is None:
        return PRIMES[0]
    if prime not in PRIMES and not allow_unlisted_prime:
        raise ConfigurationError(
            f"prime {prime} is not in the configured list; pass allow_unlisted_prime=True"
        )
    return prime


def rank(mtx, mode: str = "modular", prime: int | None = None,
         allow_unlisted_prime: bool = False) -> RankCertificate:
    """Rank of a DerivMatrix or integer grid.

    In modular mode the result is a lower bound for the rational rank.
    In exact mode a deficient result carries a verified left-kernel vector.
    """
    m = None
    if isinstance(mtx, DerivMatrix):
        m = max(a + b for a, b in mtx.cols) + 1
    if isinstance(mtx, flint.nmod_mat):
        if mode != "modular":
            raise DomainError("a matrix reduced mod p only supports modular rank")
        p = int(mtx.modulus())
        return RankCertificate(mtx.rank(), "modular", mtx.nrows(), mtx.ncols(), prime=p)
    rows = _grid(mtx)
    nr, nc = len(rows), len(rows[0])
    if mode == "modular":
        p = _resolve_prime(prime, allow_unlisted_prime)
        flat = [v % p for r in rows for v in r]
        r = flint.nmod_mat(nr, nc, flat, p).rank()
        return RankCertificate(r, "modular", nr, nc, prime=p, m=m)
    if mode != "exact":
        raise DomainError(f"unknown rank mode {mode!r}")
    r = exact_rank(rows)
    witness = None
    if r < nr:
        witness = left_kernel_exact(rows)[0]
        if any(vec_mat(witness, rows)):
            raise InvariantViolation("left-kernel witness does not annihilate the matrix")
    return RankCertificate(r, "exact", nr, nc, witness=witness, m=m)


@dataclass(frozen=True)
class EmptinessResult:
    empty: bool
    certificate: RankCertificate


def linear_system_empty(s: SupportSet, m: int, primes: Sequence[int] = PRIMES) -> EmptinessResult:
    """Decide whether no section supported on ``s`` has multiplicity >= m at (1, 1).

    Full row rank of B mod the first prime certifies emptiness. Otherwise the
    exact rank decides, and a nonempty verdict carries a left-kernel vector,
    i.e. the coefficients of such a section, checked by multiplication.
    """
    deriv_orders(m)
    p = primes[0]
    cert = rank(b_matrix_mod(s, m, p))
    cert = RankCertificate(cert.rank, "modular", cert.nrows, cert.ncols, prime=p, m=m)
    if cert.full_row_rank:
        return EmptinessResult(True, cert)
    cert = rank(build_B(s, m), mode="exact")
    return EmptinessResult(cert.full_row_rank, cert)


# past this many matrix entries, separation solves go through flint
_FLINT_SOLVE_ENTRIES = 2500


def _pivot_columns_mod(Bp: flint.nmod_mat) -> list[int]:
    R, r = Bp.rref()
    rows = R.tolist()
    return [next(k for k, v in enumerate(rows[i]) if int(v) != 0) for i in range(r)]


def _solve_via_pivots(B, target, Bp: flint.nmod_mat, prime: int) -> list[Fraction] | None:
    """Solve B c = target on a square subsystem picked mod p.

    Pivot columns and then pivot rows are chosen modulo ``prime``; both sets
    are independent over Q as well, so when the modular rank equals the
    rational rank the square solve yields the unique solution supported on
    those columns. Returns None when the modular choice was unlucky; the
    caller verifies any returned vector exactly anyway.
    """
    cols = _pivot_columns_mod(Bp)
    if not cols:
        return None
    if len(cols) == len(B):
        rows = list(range(len(B)))
    else:
        sub = flint.nmod_mat([[row[k] % prime for k in cols] for row in B], prime)
        rows = _pivot_columns_mod(sub.transpose())
    if len(rows) != len(cols):
        return None
    sq = flint.fmpz_mat([[B[i][k] for k in cols] for i in rows])
    x = sq.solve(flint.fmpz_mat([[target[i]] for i in rows]))
    sol = [Fraction(0)] * len(B[0])
    for k, v in zip(cols, x.entries()):
        sol[k] = Fraction(int(v.p), int(v.q))
    return sol


def separating_polynomial(s: SupportSet, m: int, idx: int,
                          prime: int = PRIMES[0]) -> tuple | None:
    """Coefficients c over ``deriv_orders(m)`` with B(s, m) c = e_idx, or None.

    ``sum c[(a, b)] x^a y^b`` has degree <= m - 1, is 1 at s[idx] and vanishes
    at every other support point.

    Small systems use the exact solver directly. For larger ones, presence
    follows from full row rank mod p or else from exact ranks of B and
    [B | e_idx] (flint over Z); the coefficients then come from a square
    subsystem; whichever route produced it, the returned vector is checked
    against the full matrix by exact multiplication.
    """
    if not 0 <= idx < len(s):
        raise DomainError(f"row index {idx} out of range for {len(s)} points")
    N, R = len(s), len(deriv_orders(m))
    B = build_B(s, m).tolist()
    target = [1 if i == idx else 0 for i in range(N)]
    sol = None
    if N * R > _FLINT_SOLVE_ENTRIES:
        # full row rank mod p already puts every e_idx in the column span
        Bp = b_matrix_mod(s, m, prime)
        if Bp.rank() < N:
            full = flint.fmpz_mat(B)
            aug = flint.fmpz_mat([row + [t] for row, t in zip(B, target)])
            if aug.rank() > full.rank():
                return None
        sol = _solve_via_pivots(B, target, Bp, prime)
        if sol is not None and mat_vec(B, sol) != target:
            sol = None
    if sol is None:
        sol = solve_exact(B, target)
        if sol is None:
            return None
    if mat_vec(B, sol) != target:
        raise InvariantViolation("separating polynomial fails exact verification")
    return tuple(sol)
