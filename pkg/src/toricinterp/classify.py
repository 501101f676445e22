"""Weight-triple classification for blow-ups of P(a, b, c) at a general point.

Verdicts come from published sufficient conditions (hard-coded rules) plus
computational evidence: a search for effective classes dH - mE with negative
self-intersection, each decided by the rank of the power matrix of the
degree-d support.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from joblib import Parallel, delayed

from .errors import InvariantViolation, ValidationError
from .exact import PRIMES, m_min
from .lattice import support_from_wpp
from .linalg import linear_system_empty

__all__ = [
    "GK_TRIPLES",
    "MDS",
    "NOT_MDS",
    "NegativeClass",
    "RuleHit",
    "Triple",
    "UNKNOWN",
    "Verdict",
    "apply_rules",
    "classify",
    "find_negative_classes",
    "gnw_triple",
    "scan",
    "scan_csv",
    "valid_triples",
    "validate_triple",
]

MDS, NOT_MDS, UNKNOWN = "MDS", "NOT_MDS", "UNKNOWN"

GK_TRIPLES = ((7, 15, 26), (7, 17, 22), (10, 13, 21), (11, 13, 19), (12, 13, 17))


@dataclass(frozen=True, order=True)
class Triple:
    a: int
    b: int
    c: int

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    @property
    def product(self) -> int:
        return self.a * self.b * self.c


def validate_triple(a, b, c) -> Triple:
    """Sorted triple of positive, pairwise coprime integers."""
    try:
        ws = sorted(int(v) for v in (a, b, c))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"weights must be integers, got {(a, b, c)}") from exc
    if ws[0] < 1:
        raise ValidationError(f"weights must be positive, got {tuple(ws)}")
    for i in range(3):
        for j in range(i + 1, 3):
            if math.gcd(ws[i], ws[j]) != 1:
                raise ValidationError(f"weights {tuple(ws)} are not pairwise coprime")
    return Triple(*ws)


@dataclass(frozen=True)
class RuleHit:
    name: str
    status: str
    citation: str
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "cite": self.citation}
        if self.detail:
            out["detail"] = self.detail
        return out


def gnw_triple(family: int, m: int) -> tuple:
    if family == 1:
        return tuple(sorted((7 * m - 3, 5 * m * m - 2 * m, 8 * m - 3)))
    return tuple(sorted((7 * m - 10, 5 * m * m - 7 * m + 1, 8 * m - 3)))


def _gnw_admissible(family: int, m: int) -> bool:
    if family == 1:
        return m >= 4 and m % 3 != 0
    return m >= 5 and (7 * m - 10) % 3 != 0 and m % 59 != (-7) % 59


_GNW_CITE = {
    1: "Goto-Nishida-Watanabe: (7m-3, 5m^2-2m, 8m-3), m >= 4, 3 does not divide m",
    2: "Goto-Nishida-Watanabe: (7m-10, 5m^2-7m+1, 8m-3), m >= 5, 3 does not divide 7m-10, m != -7 mod 59",
}


def apply_rules(t: Triple) -> list[RuleHit]:
    a, b, c = t
    hits = []
    if (a + b + c) ** 2 > a * b * c:
        hits.append(RuleHit("minus_K_big", MDS, "Cutkosky: -K big; (-K)^2 > 0 iff a+b+c > sqrt(abc)"))
    if a <= 4:
        hits.append(RuleHit("small_weight", MDS, "Cutkosky: some weight <= 4 (special case of -K big)"))
    if 6 in (a, b, c):
        hits.append(RuleHit("srinivasan_6bc", MDS, "Srinivasan: (6, b, c) for any b, c"))
    if (a, b, c) == (5, 77, 101):
        hits.append(RuleHit("srinivasan_5_77_101", MDS, "Srinivasan: (5, 77, 101)"))
    for family in (1, 2):
        # 8m - 3 is a weight in both families, which pins down m
        for w in sorted({a, b, c}):
            if (w + 3) % 8:
                continue
            m = (w + 3) // 8
            if _gnw_admissible(family, m) and gnw_triple(family, m) == (a, b, c):
                hits.append(RuleHit(f"gnw_family_{family}", NOT_MDS, _GNW_CITE[family], f"m={m}"))
    if (a, b, c) in GK_TRIPLES:
        hits.append(RuleHit("gk_list", NOT_MDS, "Gonzalez-Karu: the five triples with a+b+c <= 50"))
    return hits


@dataclass(frozen=True)
class NegativeClass:
    """A nonempty system |dH - mE| with abc*m^2 > d^2 and its section."""

    d: int
    m: int
    witness: tuple  # coefficients on the lexicographic degree-d support
    support_size: int

    def to_dict(self, with_witness: bool = True) -> dict:
        out = {"d": self.d, "m": self.m}
        if with_witness:
            out["support_size"] = self.support_size
            out["witness"] = [str(v) for v in self.witness]
        return out


@dataclass
class SearchResult:
    depth: int
    hits: list = field(default_factory=list)
    certificates: list = field(default_factory=list)  # (d, prime or "no-sections" or "exact")


def _test_degree(t: Triple, d: int, primes):
    a, b, c = t
    sup = support_from_wpp(a, b, c, d)
    m = m_min(a, b, c, d)
    if len(sup) == 0:
        return d, m, None, "no-sections"
    res = linear_system_empty(sup, m, primes)
    if res.empty:
        cert = res.certificate
        return d, m, None, str(cert.prime) if cert.method == "modular" else "exact"
    return d, m, NegativeClass(d, m, res.certificate.witness, len(sup)), None


def find_negative_classes(t: Triple, D: int, primes=PRIMES, n_jobs: int = 1) -> SearchResult:
    """Test |dH - m_min(d) E| for d = 1..D.

    A single multiplicity per degree suffices: if dH - mE is effective with
    abc*m^2 > d^2 then m >= m_min(d) and the same section has multiplicity
    >= m_min(d), so the system at (d, m_min(d)) is nonempty as well.

    Hits certify effective negative classes, not irreducible negative curves.
    """
    if D < 1:
        raise ValidationError(f"search depth must be >= 1, got {D}")
    jobs = (delayed(_test_degree)(t, d, primes) for d in range(1, D + 1))
    results = Parallel(n_jobs=n_jobs)(jobs) if n_jobs != 1 else [
        _test_degree(t, d, primes) for d in range(1, D + 1)
    ]
    out = SearchResult(D)
    for d, m, hit, cert in sorted(results, key=lambda r: r[0]):
        if hit is not None:
            out.hits.append(hit)
        else:
            out.certificates.append((d, cert))
    return out


@dataclass
class Verdict:
    triple: Triple
    status: str
    rules_fired: list
    negative_classes: list = field(default_factory=list)
    no_negative_class_up_to: int | None = None
    certificates: list = field(default_factory=list)
    characteristic: str = "0"

    @property
    def first_rule(self) -> str:
        return self.rules_fired[0].name if self.rules_fired else ""

    def to_dict(self, with_witness: bool = True) -> dict:
        out = {
            "triple": list(self.triple),
            "status": self.status,
            "characteristic": self.characteristic,
            "rules": [r.to_dict() for r in self.rules_fired],
            "negative_classes": [h.to_dict(with_witness) for h in self.negative_classes],
        }
        if self.no_negative_class_up_to is not None:
            out["no_negative_class_up_to"] = self.no_negative_class_up_to
        return out


def classify(t: Triple, search_depth: int = 0, primes=PRIMES, n_jobs: int = 1,
             triangle=None, triangle_d=None) -> Verdict:
    """Rule-based verdict; UNKNOWN triples get negative-class search evidence.

    ``triangle`` optionally supplies a polytope for the triple. When the slope
    criterion holds for it *and* a witness curve verifies at ``triangle_d``
    (default: smallest admissible d), a NOT_MDS rule is added. No map from
    triples to triangles is attempted here.
    """
    rules = apply_rules(t)
    if triangle is not None:
        from .gk import admissible_d, gk_criterion, gk_witness

        if gk_criterion(triangle).criterion_holds:
            d = triangle_d if triangle_d is not None else admissible_d(triangle, 1)[0]
            gk_witness(triangle, d)
            rules.append(RuleHit("gk_criterion", NOT_MDS,
                                 "Gonzalez-Karu slope criterion with verified witness",
                                 f"d={d}"))
    statuses = {r.status for r in rules}
    if MDS in statuses and NOT_MDS in statuses:
        raise InvariantViolation(f"{tuple(t)} fires both MDS and NOT_MDS rules: {rules}")
    if statuses:
        return Verdict(t, statuses.pop(), rules)
    verdict = Verdict(t, UNKNOWN, rules)
    if search_depth > 0:
        res = find_negative_classes(t, search_depth, primes, n_jobs)
        verdict.negative_classes = res.hits
        verdict.certificates = res.certificates
        verdict.no_negative_class_up_to = res.hits[0].d - 1 if res.hits else search_depth
    return verdict


def valid_triples(sum_max: int):
    """All sorted pairwise coprime triples with a + b + c <= sum_max."""
    for a in range(1, sum_max // 3 + 1):
        for b in range(a, (sum_max - a) // 2 + 1):
            if math.gcd(a, b) != 1:
                continue
            for c in range(b, sum_max - a - b + 1):
                if math.gcd(a, c) == 1 and math.gcd(b, c) == 1:
                    yield Triple(a, b, c)


def scan(sum_max: int, search_depth: int = 0, primes=PRIMES, n_jobs: int = 1) -> list[Verdict]:
    triples = list(valid_triples(sum_max))
    if n_jobs == 1:
        verdicts = [classify(t, search_depth, primes) for t in triples]
    else:
        verdicts = Parallel(n_jobs=n_jobs)(
            delayed(classify)(t, search_depth, primes) for t in triples
        )
    return sorted(verdicts, key=lambda v: v.triple)


SCAN_COLUMNS = ("a", "b", "c", "status", "first_rule", "neg_d", "neg_m")


def scan_csv(verdicts) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for v in verdicts:
        first = v.negative_classes[0] if v.negative_classes else None
        w.writerow([*v.triple, v.status, v.first_rule,
                    first.d if first else "", first.m if first else ""])
    return buf.getvalue()
