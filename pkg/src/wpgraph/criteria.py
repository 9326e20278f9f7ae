"""Coefficient criteria for log-concavity and unimodality, and direct checks.

The criteria are pure formula evaluators.  Structural premises
(connectivity, W_p membership, quasi-regularizability) are never inferred
here; callers pass them in and they are copied into each verdict so a
reader can tell whether a fired verdict is actually backed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .enumeration import convolve

RationalLike = Union[Fraction, int, str]

CRITERIA = ("phi_general", "f_quadratic", "interval_form_case1", "interval_form_case2",
            "unimodality_LR", "direct")


class KOutOfRange(ValueError):
    pass


class AlphaTooSmall(ValueError):
    pass


class InternalZero(ValueError):
    pass


@dataclass
class CriterionVerdict:
    name: str
    p: int
    lam: Optional[Fraction]
    n: int
    alpha: int
    fired: bool
    per_k: List[Tuple[int, Union[int, Fraction]]] = field(default_factory=list)
    premises: Dict[str, bool] = field(default_factory=dict)
    detail: Dict[str, object] = field(default_factory=dict)

    @property
    def premises_hold(self) -> bool:
        return bool(self.premises) and all(self.premises.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": {"p": self.p, "lambda": None if self.lam is None else str(self.lam),
                       "n": self.n, "alpha": self.alpha},
            "fired": self.fired,
            "per_k": [[k, str(v) if isinstance(v, Fraction) and v.denominator != 1 else int(v)]
                      for k, v in self.per_k],
            "premises": dict(self.premises),
            "detail": dict(self.detail),
        }


def _check_k(alpha: int, k: int) -> None:
    if not 1 <= k <= alpha - 1:
        raise KOutOfRange(f"k={k} outside 1..{alpha - 1}")


def phi(p: int, lam: RationalLike, n: int, alpha: int, k: int) -> Fraction:
    """(k+1) p (alpha-k+1) - k (n - (lam+1) k), exactly."""
    _check_k(alpha, k)
    lam = Fraction(lam)
    return (k + 1) * p * (alpha - k + 1) - k * (n - (lam + 1) * k)


def f_quadratic(p: int, n: int, alpha: int, k: int) -> int:
    """k^2 - (n - p alpha) k + p alpha + p."""
    _check_k(alpha, k)
    return k * k - (n - p * alpha) * k + p * alpha + p


def log_concavity_criterion(
    p: int, lam: RationalLike, n: int, alpha: int, premises: Optional[Dict[str, bool]] = None
) -> CriterionVerdict:
    lam = Fraction(lam)
    per_k = [(k, phi(p, lam, n, alpha, k)) for k in range(1, alpha)]
    return CriterionVerdict("phi_general", p, lam, n, alpha, all(v >= 0 for _, v in per_k),
                            per_k, dict(premises or {}))


def quadratic_criterion(
    p: int, n: int, alpha: int, premises: Optional[Dict[str, bool]] = None
) -> CriterionVerdict:
    per_k = [(k, f_quadratic(p, n, alpha, k)) for k in range(1, alpha)]
    return CriterionVerdict("f_quadratic", p, Fraction(p), n, alpha, all(v >= 0 for _, v in per_k),
                            per_k, dict(premises or {}))


def below_sqrt_bound(p: int, n: int, alpha: int) -> bool:
    """n <= p alpha + 2 sqrt(p alpha + p), decided in integers."""
    r = n - p * alpha
    return r <= 0 or r * r <= 4 * (p * alpha + p)


def interval_form(
    p: int, n: int, alpha: int, premises: Optional[Dict[str, bool]] = None
) -> CriterionVerdict:
    """Two explicit (n, p, alpha) regions in which the quadratic stays nonnegative.

    The verdict name records the case that fired (``interval_form_case1`` or
    ``interval_form_case2``); when neither holds it is ``interval_form_case1``
    with ``fired`` false and ``detail['case']`` None.
    """
    if alpha < 2:
        raise AlphaTooSmall(f"alpha={alpha} < 2")
    low = below_sqrt_bound(p, n, alpha)
    case1 = (p + 1) * alpha <= n and low and alpha * alpha <= 4 * p * (alpha + 1)
    case2 = (not low
             and n * (alpha - 1) <= (alpha * alpha + 1) * p + (alpha - 1) ** 2
             and alpha * (alpha - 1) <= p * (alpha + 1))
    case = 1 if case1 else 2 if case2 else None
    name = "interval_form_case2" if case == 2 else "interval_form_case1"
    per_k = [(k, f_quadratic(p, n, alpha, k)) for k in range(1, alpha)]
    detail = {"case": case, "discriminant": (n - p * alpha) ** 2 - 4 * (p * alpha + p)}
    return CriterionVerdict(name, p, Fraction(p), n, alpha, case is not None, per_k,
                            dict(premises or {}), detail)


def unimodality_bounds(p: int, lam: RationalLike, n: int, alpha: int) -> Tuple[int, int, bool]:
    """``(L, R, R <= L + 1)`` with L = floor((p alpha - 1)/(p+1)), R = ceil((n-1)/(lam+2))."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    low = (p * alpha - 1) // (p + 1)
    num, den = (n - 1) * lam.denominator, lam.numerator + 2 * lam.denominator
    high = -(-num // den)
    return low, high, high <= low + 1


def unimodality_verdict(
    p: int, lam: RationalLike, n: int, alpha: int, premises: Optional[Dict[str, bool]] = None
) -> CriterionVerdict:
    lam = Fraction(lam)
    low, high, fired = unimodality_bounds(p, lam, n, alpha)
    detail = {"L": low, "R": high, "outcome": "unimodal" if fired else "inconclusive"}
    return CriterionVerdict("unimodality_LR", p, lam, n, alpha, fired, [], dict(premises or {}), detail)


def is_log_concave(coeffs: Sequence[int]) -> bool:
    return all(coeffs[k] * coeffs[k] >= coeffs[k - 1] * coeffs[k + 1] for k in range(1, len(coeffs) - 1))


def is_unimodal(coeffs: Sequence[int]) -> bool:
    k, m = 0, len(coeffs)
    while k + 1 < m and coeffs[k] <= coeffs[k + 1]:
        k += 1
    while k + 1 < m and coeffs[k] >= coeffs[k + 1]:
        k += 1
    return k == m - 1


def first_log_concavity_failure(coeffs: Sequence[int]) -> Optional[int]:
    for k in range(1, len(coeffs) - 1):
        if coeffs[k] * coeffs[k] < coeffs[k - 1] * coeffs[k + 1]:
            return k
    return None


def direct_verdict(n: int, alpha: int, coeffs: Sequence[int]) -> CriterionVerdict:
    lc, uni = is_log_concave(coeffs), is_unimodal(coeffs)
    return CriterionVerdict("direct", 0, None, n, alpha, lc and uni,
                            detail={"log_concave": lc, "unimodal": uni})


# Coefficient-inequality audit -------------------------------------------------

PREMISE_NOT_MET = "premise_not_met"


@dataclass
class ChainResult:
    status: str
    violations: List[int] = field(default_factory=list)
    checked: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"status": self.status, "violations": list(self.violations)}


@dataclass
class CoefficientAudit:
    p: int
    lam: Fraction
    upper: ChainResult
    lower: ChainResult

    @property
    def passed(self) -> bool:
        return self.upper.status != "fail" and self.lower.status != "fail"


def coefficient_inequality_audit(
    n: int,
    alpha: int,
    coeffs: Sequence[int],
    p: int,
    lam: RationalLike,
    quasi_regularizable: bool,
    connected: bool,
    wp_member: bool,
) -> CoefficientAudit:
    """Evaluate both coefficient chains over their ranges.

    Upper chain, needs lam-quasi-regularizability:
        (k+1) s_{k+1} <= (n - (lam+1) k) s_k,  0 <= k <= alpha-1.
    Lower chain, needs a connected W_p graph:
        p (alpha-k) s_k <= (k+1) s_{k+1},      1 <= k <= alpha-1.
    """
    lam = Fraction(lam)
    num, den = lam.numerator, lam.denominator
    s = list(coeffs)

    upper = ChainResult(PREMISE_NOT_MET)
    if quasi_regularizable:
        upper.status = "pass"
        for k in range(alpha):
            upper.checked.append(k)
            if (k + 1) * s[k + 1] * den > (n * den - (num + den) * k) * s[k]:
                upper.violations.append(k)

    lower = ChainResult(PREMISE_NOT_MET)
    if connected and wp_member:
        lower.status = "pass"
        for k in range(1, alpha):
            lower.checked.append(k)
            if p * (alpha - k) * s[k] > (k + 1) * s[k + 1]:
                lower.violations.append(k)

    for chain in (upper, lower):
        if chain.violations:
            chain.status = "fail"
    return CoefficientAudit(p, lam, upper, lower)


# Product lemma ---------------------------------------------------------------


def has_internal_zero(coeffs: Sequence[int]) -> bool:
    nz = [i for i, c in enumerate(coeffs) if c]
    return bool(nz) and any(c == 0 for c in coeffs[nz[0]:nz[-1] + 1])


@dataclass
class ProductReport:
    product: List[int]
    left_log_concave: bool
    right_log_concave: bool
    left_unimodal: bool
    right_unimodal: bool
    product_log_concave: bool
    product_unimodal: bool

    @property
    def violations(self) -> List[str]:
        out = []
        if self.left_log_concave and self.right_log_concave and not self.product_log_concave:
            out.append("lc*lc not log-concave")
        mixed = ((self.left_log_concave and self.right_unimodal)
                 or (self.right_log_concave and self.left_unimodal))
        if mixed and not self.product_unimodal:
            out.append("lc*unimodal not unimodal")
        return out


def product_lemma_check(left: Sequence[int], right: Sequence[int]) -> ProductReport:
    for seq in (left, right):
        if any(c < 0 for c in seq):
            raise ValueError("coefficients must be nonnegative")
        if has_internal_zero(seq):
            raise InternalZero(f"sequence {list(seq)} has an internal zero")
    prod = convolve(left, right)
    return ProductReport(prod, is_log_concave(left), is_log_concave(right), is_unimodal(left),
                         is_unimodal(right), is_log_concave(prod), is_unimodal(prod))


# Unified verdict -------------------------------------------------------------


def quasireg_threshold(p: int, n: int, alpha: int) -> bool:
    """n >= (p+1) alpha; for connected W_p graphs this is equivalent to p-quasi-regularizability."""
    return n >= (p + 1) * alpha


def unified_verdict(
    connected: bool,
    wp: Dict[int, bool],
    n: int,
    alpha: int,
    coeffs: Sequence[int],
    quasireg: Optional[Dict[Fraction, bool]] = None,
) -> List[CriterionVerdict]:
    """Run every criterion whose premises are available for this graph.

    For each p with a verified W_p membership and ``n >= (p+1) alpha`` the
    criteria run with lambda = p, the threshold standing in for
    p-quasi-regularizability.  Each lambda in ``quasireg`` verified to hold
    additionally runs the general and unimodality criteria with that
    lambda.  A final ``direct`` verdict evaluates the coefficients.
    """
    quasireg = quasireg or {}
    out: List[CriterionVerdict] = []
    for p in sorted(wp):
        if not wp[p]:
            continue
        base = {"connected": connected, f"W_{p}": True}
        lam = Fraction(p)
        if quasireg_threshold(p, n, alpha):
            premises = dict(base, threshold=True)
            if lam in quasireg:
                premises["quasireg_verified"] = quasireg[lam]
            out.append(log_concavity_criterion(p, lam, n, alpha, premises))
            out.append(quadratic_criterion(p, n, alpha, premises))
            if alpha >= 2:
                out.append(interval_form(p, n, alpha, premises))
            out.append(unimodality_verdict(p, lam, n, alpha, premises))
        for other in sorted(quasireg):
            if other == lam and quasireg_threshold(p, n, alpha):
                continue
            if quasireg[other]:
                premises = dict(base, quasireg_verified=True)
                out.append(log_concavity_criterion(p, other, n, alpha, premises))
                out.append(unimodality_verdict(p, other, n, alpha, premises))
    out.append(direct_verdict(n, alpha, coeffs))
    return out


def soundness_failures(verdicts: Sequence[CriterionVerdict]) -> List[CriterionVerdict]:
    """Fired verdicts with fully verified premises contradicted by the direct check."""
    direct = next(v for v in verdicts if v.name == "direct")
    lc, uni = direct.detail["log_concave"], direct.detail["unimodal"]
    bad = []
    for v in verdicts:
        if v.name == "direct" or not v.fired or not v.premises_hold:
            continue
        if v.premises.get("quasireg_verified") is not True:
            continue
        ok = uni if v.name == "unimodality_LR" else lc
        if not ok:
            bad.append(v)
    return bad
