"""Polynomial upper bounds on the smallest minimum degree of r-Ramsey-minimal
graphs for the clique on k+1 vertices, and the exponent analysis showing the
cubed-prime bound is the best total degree this packing approach can give.

The headline number is q^3 for the smallest prime q >= 4*k*r*ln(k); the other
published bounds are evaluated for comparison.  Bounds whose absolute constant
is unspecified in the literature are computed at a caller-supplied placeholder
(default 1), flagged, and never declared winners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .gf import is_prime_power, next_prime_geq


class OutOfRangeError(ValueError):
    """Parameters outside the proved range k >= 2, r >= 3."""


class AlphaOutOfRangeError(OutOfRangeError):
    """Exponent analysis needs alpha >= 1."""


class ConditionsFailedError(ValueError):
    """The packing lemma's hypotheses failed for the selected prime."""


ORIENTATION_HIGH_T = "high-t"  # order (q, q^alpha): more lines per point
ORIENTATION_HIGH_S = "high-s"  # order (q^alpha, q): more points per line
ORIENTATIONS = (ORIENTATION_HIGH_T, ORIENTATION_HIGH_S)


class LemmaConditions(NamedTuple):
    """Hypotheses for turning a packing into a degree bound, at (q, k, r)."""

    s_large_enough: bool  # q - 1 >= 3*r*k*ln(k)
    t_large_enough: bool  # q - 2 >= 3*k*(1 + ln(r))
    enough_classes: bool  # r <= q - 1

    def all_ok(self) -> bool:
        return all(self)


class MainBound(NamedTuple):
    """q^3 for the selected prime q, with the analytic cap (8*k*r*ln(k))^3."""

    q: int
    value: int
    cap: float


@dataclass(frozen=True)
class FlaggedBound:
    """A bound evaluated at a placeholder for an unspecified constant."""

    value: float
    constant: float
    constant_unspecified: bool = True

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "constant": self.constant,
            "constant_unspecified": self.constant_unspecified,
        }


@dataclass(frozen=True)
class BoundReport:
    """Every bound at one (k, r), plus the hypothesis verdicts and the winner
    among the fully specified bounds."""

    k: int
    r: int
    threshold: float
    q_found: int
    bound_main: int
    cap_main: float
    bound_fglps: int
    bound_hrs: FlaggedBound
    hrs_applicable: bool
    bound_bbl: FlaggedBound
    eq1_lower: FlaggedBound
    eq1_upper: FlaggedBound
    conditions_ok: LemmaConditions
    winner: str

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "threshold": self.threshold,
            "q": self.q_found,
            "bound_main": self.bound_main,
            "cap_main": self.cap_main,
            "bound_fglps": self.bound_fglps,
            "bound_hrs": self.bound_hrs.to_json(),
            "hrs_applicable": self.hrs_applicable,
            "bound_bbl": self.bound_bbl.to_json(),
            "eq1_lower": self.eq1_lower.to_json(),
            "eq1_upper": self.eq1_upper.to_json(),
            "conditions_ok": list(self.conditions_ok),
            "winner": self.winner,
        }


@dataclass(frozen=True)
class ExponentReport:
    """Forced point-count exponents for packings of order (q, q^alpha) or
    (q^alpha, q)."""

    alpha: float
    orientation: str
    k_exponent: float
    r_exponent: float
    total_degree: float

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "orientation": self.orientation,
            "k_exponent": self.k_exponent,
            "r_exponent": self.r_exponent,
            "total_degree": self.total_degree,
        }


def _require_range(k: int, r: int):
    if k < 2 or r < 3:
        raise OutOfRangeError(f"need k >= 2 and r >= 3, got k={k}, r={r}")


def threshold(k: int, r: int) -> float:
    """The prime search floor 4*k*r*ln(k)."""
    _require_range(k, r)
    return 4.0 * k * r * math.log(k)


def find_q(k: int, r: int, allow_prime_powers: bool = False) -> int:
    """Smallest prime >= threshold(k, r).

    ``allow_prime_powers`` widens the search to prime powers; that variant is
    an extension beyond the proved statement and is off by default.
    """
    floor = threshold(k, r)
    m = math.ceil(floor)
    while m < floor:  # guard against float rounding at the integer boundary
        m += 1
    if allow_prime_powers:
        q = m
        while not is_prime_power(q):
            q += 1
    else:
        q = next_prime_geq(max(m, 2))
    assert q <= 8.0 * k * r * math.log(k), f"q={q} escaped the Bertrand cap at k={k}, r={r}"
    assert r <= q - 1, f"not enough classes: r={r} > q-1={q - 1}"
    return q


def lemma_conditions(q: int, k: int, r: int) -> LemmaConditions:
    """Verdicts of the packing lemma's hypotheses at order (q-1, q-2) with r
    classes."""
    if q < 3:
        raise OutOfRangeError(f"need q >= 3, got {q}")
    return LemmaConditions(
        s_large_enough=q - 1 >= 3.0 * r * k * math.log(k),
        t_large_enough=q - 2 >= 3.0 * k * (1.0 + math.log(r)),
        enough_classes=r <= q - 1,
    )


def bound_main(k: int, r: int, allow_prime_powers: bool = False) -> MainBound:
    """q^3 for the selected prime, after confirming the lemma hypotheses."""
    q = find_q(k, r, allow_prime_powers=allow_prime_powers)
    conditions = lemma_conditions(q, k, r)
    if not conditions.all_ok():
        raise ConditionsFailedError(f"hypotheses failed at q={q}, k={k}, r={r}: {conditions}")
    cap = (8.0 * k * r * math.log(k)) ** 3
    return MainBound(q=q, value=q**3, cap=cap)


def bound_fglps(k: int, r: int) -> int:
    """8 * k^6 * r^3, exact."""
    _require_range(k, r)
    return 8 * k**6 * r**3


def bound_hrs(k: int, r: int, constant: float = 1.0) -> tuple[FlaggedBound, bool]:
    """C * (r ln r)^3 * (k ln k)^2 with its r < k^2 applicability flag."""
    if k < 2 or r < 2:
        raise OutOfRangeError(f"need k >= 2 and r >= 2, got k={k}, r={r}")
    if constant <= 0:
        raise OutOfRangeError(f"constant must be positive, got {constant}")
    value = constant * (r * math.log(r)) ** 3 * (k * math.log(k)) ** 2
    return FlaggedBound(value=value, constant=constant), r < k * k


def bound_bbl(k: int, r: int, constant: float = 1.0) -> FlaggedBound:
    """C * k^5 * r^(5/2)."""
    _require_range(k, r)
    if constant <= 0:
        raise OutOfRangeError(f"constant must be positive, got {constant}")
    return FlaggedBound(value=constant * k**5 * r**2.5, constant=constant)


def eq1_range(
    k: int, r: int, lower_constant: float = 1.0, upper_constant: float = 1.0
) -> tuple[FlaggedBound, FlaggedBound]:
    """Reference window c_k * r^2 * ln(r)/ln(ln(r)) .. C_k * r^2 * ln(r)^(8k^2).

    Needs r > e so ln(ln(r)) is positive; the upper value overflows to
    infinity for large k rather than raising.
    """
    if k < 2:
        raise OutOfRangeError(f"need k >= 2, got {k}")
    if r <= math.e:
        raise OutOfRangeError(f"need r > e for a meaningful lower form, got r={r}")
    if lower_constant <= 0 or upper_constant <= 0:
        raise OutOfRangeError("constants must be positive")
    lower = lower_constant * r * r * math.log(r) / math.log(math.log(r))
    log_upper = math.log(upper_constant) + 2 * math.log(r) + 8 * k * k * math.log(math.log(r))
    upper = math.exp(log_upper) if log_upper < 709.0 else math.inf
    return (
        FlaggedBound(value=lower, constant=lower_constant),
        FlaggedBound(value=upper, constant=upper_constant),
    )


def compare(
    k: int,
    r: int,
    hrs_constant: float = 1.0,
    bbl_constant: float = 1.0,
    eq1_lower_constant: float = 1.0,
    eq1_upper_constant: float = 1.0,
) -> BoundReport:
    """Full report at (k, r); only the two fully specified bounds compete for
    the winner slot."""
    main = bound_main(k, r)
    fglps = bound_fglps(k, r)
    hrs, hrs_applicable = bound_hrs(k, r, hrs_constant)
    eq1_lower, eq1_upper = eq1_range(k, r, eq1_lower_constant, eq1_upper_constant)
    return BoundReport(
        k=k,
        r=r,
        threshold=threshold(k, r),
        q_found=main.q,
        bound_main=main.value,
        cap_main=main.cap,
        bound_fglps=fglps,
        bound_hrs=hrs,
        hrs_applicable=hrs_applicable,
        bound_bbl=bound_bbl(k, r, bbl_constant),
        eq1_lower=eq1_lower,
        eq1_upper=eq1_upper,
        conditions_ok=lemma_conditions(main.q, k, r),
        winner="fglps" if fglps < main.value else "main",
    )


def exponent_analysis(alpha: float, orientation: str) -> ExponentReport:
    """Point-count exponents in k and r forced by an order-(q, q^alpha) or
    (q^alpha, q) packing."""
    if alpha < 1:
        raise AlphaOutOfRangeError(f"need alpha >= 1, got {alpha}")
    if orientation == ORIENTATION_HIGH_T:
        k_exp = r_exp = 2.0 + alpha
    elif orientation == ORIENTATION_HIGH_S:
        k_exp = 2.0 * alpha + 1.0
        r_exp = 2.0 + 1.0 / alpha
    else:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    return ExponentReport(
        alpha=alpha,
        orientation=orientation,
        k_exponent=k_exp,
        r_exponent=r_exp,
        total_degree=k_exp + r_exp,
    )


def min_total_degree(grid: Iterable[float]) -> tuple[float, float]:
    """Minimum total degree over both orientations across an alpha grid that
    must include 1."""
    alphas = sorted(set(grid))
    if not alphas or alphas[0] < 1:
        raise AlphaOutOfRangeError("grid must lie in [1, inf)")
    if 1.0 not in alphas:
        raise ValueError("grid must include alpha = 1")
    best: Optional[tuple[float, float]] = None
    for alpha in alphas:
        for orientation in ORIENTATIONS:
            degree = exponent_analysis(alpha, orientation).total_degree
            if best is None or degree < best[1]:
                best = (alpha, degree)
    return best


CSV_HEADER = "k,r,threshold,q,bound_main,cap_main,bound_fglps,bound_hrs,hrs_applicable,bound_bbl,winner"


def csv_row(report: BoundReport) -> str:
    """One grid-scan row in the fixed schema of :data:`CSV_HEADER`."""
    return ",".join(
        str(v)
        for v in (
            report.k,
            report.r,
            report.threshold,
            report.q_found,
            report.bound_main,
            report.cap_main,
            report.bound_fglps,
            report.bound_hrs.value,
            "true" if report.hrs_applicable else "false",
            report.bound_bbl.value,
            report.winner,
        )
    )
