"""Quasi-regularizability, local neighbourhood expansion and the 3*alpha threshold.

All ratio comparisons use exact integers: ``lam * |A| <= |N(A)|`` is tested as
``lam.numerator * |A| <= lam.denominator * |N(A)|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .enumeration import independence_number, independent_sets
from .graph import Graph, is_connected, labels, open_neighborhood
from .wp import is_wp

Rational = Fraction
RationalLike = Union[Fraction, int, str]

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


def as_rational(value: RationalLike) -> Fraction:
    lam = Fraction(value)
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {value}")
    return lam


@dataclass(frozen=True)
class ExpansionWitness:
    set: int
    size: int
    neighborhood_size: int
    deficiency: Optional[Fraction] = None

    def to_dict(self) -> dict:
        out = {"set": labels(self.set), "size": self.size, "neighborhood_size": self.neighborhood_size}
        if self.deficiency is not None:
            out["deficiency"] = str(self.deficiency)
        return out


def _witness(g: Graph, a: int, lam: Optional[Fraction] = None) -> ExpansionWitness:
    size = a.bit_count()
    nb = open_neighborhood(g, a).bit_count()
    deficiency = None
    if lam is not None and lam * size > nb:
        deficiency = lam * size - nb
    return ExpansionWitness(a, size, nb, deficiency)


def violations(
    g: Graph, lam: RationalLike, ind: Optional[Sequence[int]] = None
) -> Iterator[ExpansionWitness]:
    """Every nonempty independent ``A`` with ``lam * |A| > |N(A)|``, in order."""
    lam = as_rational(lam)
    num, den = lam.numerator, lam.denominator
    adj = g.adj
    for a in independent_sets(g) if ind is None else ind:
        if not a:
            continue
        nb = 0
        rest = a
        while rest:
            low = rest & -rest
            nb |= adj[low.bit_length() - 1]
            rest ^= low
        if num * a.bit_count() > den * (nb & ~a).bit_count():
            yield _witness(g, a, lam)


def is_lambda_quasi_regularizable(
    g: Graph, lam: RationalLike, ind: Optional[Sequence[int]] = None
) -> Tuple[bool, Optional[ExpansionWitness]]:
    """Return ``(holds, first violating set or None)``."""
    for w in violations(g, lam, ind):
        return False, w
    return True, None


def min_expansion_ratio(
    g: Graph, ind: Optional[Sequence[int]] = None
) -> Tuple[Fraction, ExpansionWitness]:
    """Smallest ``|N(A)| / |A|`` over nonempty independent ``A``, with the first minimiser."""
    best: Optional[Tuple[int, int, int]] = None  # (|N|, |A|, A)
    for a in independent_sets(g) if ind is None else ind:
        if not a:
            continue
        size = a.bit_count()
        nb = open_neighborhood(g, a).bit_count()
        if best is None or nb * best[1] < best[0] * size:
            best = (nb, size, a)
    if best is None:
        raise ValueError("graph has no nonempty independent set")
    nb, size, a = best
    return Fraction(nb, size), ExpansionWitness(a, size, nb)


@dataclass
class LocalExpansionReport:
    status: str
    checked: int = 0
    violations: List[ExpansionWitness] = field(default_factory=list)
    reason: str = ""

    def to_dict(self) -> dict:
        out = {"status": self.status, "checked": self.checked,
               "violations": [w.to_dict() for w in self.violations]}
        if self.reason:
            out["reason"] = self.reason
        return out


def _premise(g: Graph, connected: Optional[bool], w2: Optional[bool]) -> str:
    if connected is None:
        connected = is_connected(g)
    if not connected:
        return "NotConnected"
    if w2 is None:
        w2 = g.n >= 2 and is_wp(g, 2).member
    if not w2:
        return "NotW2"
    return ""


def verify_local_expansion(
    g: Graph,
    connected: Optional[bool] = None,
    w2: Optional[bool] = None,
    ind: Optional[Sequence[int]] = None,
    alpha: Optional[int] = None,
) -> LocalExpansionReport:
    """Check ``|N(A)| >= 2|A|`` for every non-maximum independent ``A``.

    Runs only on connected W_2 graphs; otherwise the report is
    ``not-applicable`` with the reason (``NotConnected`` or ``NotW2``).
    Known premise values can be passed to skip recomputation.
    """
    reason = _premise(g, connected, w2)
    if reason:
        return LocalExpansionReport(NOT_APPLICABLE, reason=reason)
    if alpha is None:
        alpha = independence_number(g)
    report = LocalExpansionReport(PASS)
    for a in independent_sets(g) if ind is None else ind:
        size = a.bit_count()
        if size >= alpha:
            continue
        report.checked += 1
        if open_neighborhood(g, a).bit_count() < 2 * size:
            report.violations.append(_witness(g, a, Fraction(2)))
    if report.violations:
        report.status = FAIL
    return report


@dataclass
class ThresholdReport:
    status: str
    quasi_regularizable: Optional[bool] = None
    meets_threshold: Optional[bool] = None
    n: int = 0
    alpha: int = 0
    witness: Optional[ExpansionWitness] = None
    witness_is_maximum: Optional[bool] = None
    reason: str = ""

    def to_dict(self) -> dict:
        out = {"status": self.status}
        if self.status != NOT_APPLICABLE:
            out.update(quasi_regularizable=self.quasi_regularizable,
                       meets_threshold=self.meets_threshold, n=self.n, alpha=self.alpha)
            out["witness"] = self.witness.to_dict() if self.witness else None
            out["witness_is_maximum"] = self.witness_is_maximum
        if self.reason:
            out["reason"] = self.reason
        return out


def check_threshold_equivalence(
    g: Graph,
    connected: Optional[bool] = None,
    w2: Optional[bool] = None,
    ind: Optional[Sequence[int]] = None,
    alpha: Optional[int] = None,
) -> ThresholdReport:
    """Compare 2-quasi-regularizability with ``n >= 3 alpha`` on a connected W_2 graph."""
    reason = _premise(g, connected, w2)
    if reason:
        return ThresholdReport(NOT_APPLICABLE, reason=reason)
    if alpha is None:
        alpha = independence_number(g)
    holds, witness = is_lambda_quasi_regularizable(g, 2, ind)
    meets = g.n >= 3 * alpha
    report = ThresholdReport(PASS if holds == meets else FAIL, holds, meets, g.n, alpha, witness)
    if witness is not None:
        report.witness_is_maximum = witness.size == alpha
    return report
