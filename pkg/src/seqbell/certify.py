"""Device-independent certification of unsharpness parameters.

Observed sequential Bell values are inverted into point estimates and, in
the quantum-advantage regime, robust intervals:

* first observer:       lambda_1 = value_1 / OPT  (exact on the surface,
                        a lower bound for sub-optimal data);
* second observer cap:  value_2 <= lambda_2 * OPT * shrink(lambda_1) turns
                        into an upper bound on lambda_1 given value_2.

Off-surface observations are the normal case (experiments are noisy): the
result then carries the first-observer point estimates, the distance of the
observed tuple from the trade-off surface as ``residual``, and
``consistent = False`` when that distance exceeds the three-decimal
reporting tolerance 5e-3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import DomainError, InconsistencyError
from .closedform import (
    CHSH_OPT,
    ELEGANT_OPT,
    chsh_tradeoff,
    elegant_tradeoff2,
    elegant_value,
)

CONSISTENCY_ATOL = 5e-3
_DEGENERATE_WIDTH = 1e-9  # interval narrower than this is a point certificate


@dataclass(frozen=True)
class CertificationResult:
    """Certified unsharpness estimates and intervals with diagnostics.

    ``lambda_estimates`` holds (observer index, value) pairs;
    ``lambda_intervals`` holds (observer index, lower, upper) triples for
    the advantage regime; ``residual`` is the distance of the observed
    tuple from the admissible trade-off surface.
    """

    lambda_estimates: Tuple[Tuple[int, float], ...]
    lambda_intervals: Tuple[Tuple[int, float, float], ...]
    consistent: bool
    residual: float


def _clip_unit(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def certify_chsh_pair(b1: float, b2: float) -> CertificationResult:
    """Certify lambda_1 from an observed two-setting value pair."""
    if b1 <= 0.0 or b2 <= 0.0:
        raise DomainError("observed values must be positive")
    if b1 > CHSH_OPT + 1e-9:
        raise InconsistencyError(
            f"first observed value {b1} exceeds the quantum optimum {CHSH_OPT:.6f}"
        )
    lam1 = b1 / CHSH_OPT
    residual = abs(b2 - chsh_tradeoff(b1))
    intervals: Tuple[Tuple[int, float, float], ...] = ()
    if b1 > 2.0 and b2 > 2.0:
        try:
            lo, hi = chsh_lambda1_interval(b1, b2)
        except InconsistencyError:
            pass
        else:
            if hi - lo > _DEGENERATE_WIDTH:
                intervals = ((1, lo, hi),)
    return CertificationResult(
        lambda_estimates=((1, lam1),),
        lambda_intervals=intervals,
        consistent=residual <= CONSISTENCY_ATOL,
        residual=residual,
    )


def chsh_lambda1_interval(b1: float, b2: float) -> Tuple[float, float]:
    """Robust lambda_1 range when both observers show quantum advantage.

    Lower endpoint from the first observer's value, upper endpoint from the
    cap the second observer's value puts on the first one's disturbance.
    """
    if b1 < 2.0 or b2 < 2.0:
        raise DomainError(
            "robust interval needs quantum advantage for both observers (values >= 2)"
        )
    if b1 > CHSH_OPT + 1e-9:
        raise InconsistencyError(f"first value {b1} exceeds the quantum optimum")
    lower = _clip_unit(b1 / CHSH_OPT)
    inner = 2.0 * b2 / CHSH_OPT - 1.0
    if abs(inner) > 1.0:
        raise InconsistencyError(f"second value {b2} is outside the physical range")
    upper = _clip_unit(math.sqrt(1.0 - inner * inner))
    if lower > upper + 1e-9:
        raise InconsistencyError(
            f"empty interval: lower {lower:.6f} exceeds upper {upper:.6f}"
        )
    return lower, max(upper, lower)


def certify_elegant_pair(e1: float, e2: float) -> CertificationResult:
    """Certify lambda_1 from an observed elegant value pair."""
    if e1 <= 0.0 or e2 <= 0.0:
        raise DomainError("observed values must be positive")
    if e1 > ELEGANT_OPT + 1e-9:
        raise InconsistencyError(
            f"first observed value {e1} exceeds the quantum optimum {ELEGANT_OPT:.6f}"
        )
    lam1 = e1 / ELEGANT_OPT
    residual = abs(e2 - elegant_tradeoff2(e1))
    intervals: Tuple[Tuple[int, float, float], ...] = ()
    if e1 > 4.0 and e2 > 4.0:
        try:
            lo, hi = elegant_lambda1_interval(e1, e2, 1.0)
        except InconsistencyError:
            pass
        else:
            if hi - lo > _DEGENERATE_WIDTH:
                intervals = ((1, lo, hi),)
    return CertificationResult(
        lambda_estimates=((1, lam1),),
        lambda_intervals=intervals,
        consistent=residual <= CONSISTENCY_ATOL,
        residual=residual,
    )


def certify_elegant_triple(e1: float, e2: float, e3: float) -> CertificationResult:
    """Certify (lambda_1, lambda_2) from an observed elegant value triple."""
    if e1 <= 0.0 or e2 <= 0.0 or e3 <= 0.0:
        raise DomainError("observed values must be positive")
    if e1 > ELEGANT_OPT + 1e-9:
        raise InconsistencyError(
            f"first observed value {e1} exceeds the quantum optimum {ELEGANT_OPT:.6f}"
        )
    lam1 = e1 / ELEGANT_OPT
    xi1 = 1.0 + 2.0 * math.sqrt(max(1.0 - lam1 * lam1, 0.0))
    lam2 = 3.0 * e2 / (xi1 * ELEGANT_OPT)
    if not 0.0 <= lam2 <= 1.0 + 1e-9:
        raise InconsistencyError(
            f"second-observer unsharpness solves to {lam2:.6f}, outside [0, 1]"
        )
    lam2 = _clip_unit(lam2)
    residual = abs(e3 - elegant_value(3, [lam1, lam2, 1.0]))
    intervals = []
    if e1 > 4.0 and e2 > 4.0:
        try:
            lo, hi = elegant_lambda1_interval(e1, e2, lam2)
        except InconsistencyError:
            pass
        else:
            if hi - lo > _DEGENERATE_WIDTH:
                intervals.append((1, lo, hi))
    if e2 > 4.0 and e3 > 4.0:
        try:
            lo, hi = elegant_lambda2_interval(e2, e3, lam1)
        except InconsistencyError:
            pass
        else:
            if hi - lo > _DEGENERATE_WIDTH:
                intervals.append((2, lo, hi))
    return CertificationResult(
        lambda_estimates=((1, lam1), (2, lam2)),
        lambda_intervals=tuple(intervals),
        consistent=residual <= CONSISTENCY_ATOL,
        residual=residual,
    )


def elegant_lambda1_interval(
    e1: float, e2: float, lambda2: float
) -> Tuple[float, float]:
    """Robust lambda_1 range from the first two elegant values, given the
    second observer's unsharpness (1 for a sharp second observer)."""
    if not 0.0 < lambda2 <= 1.0:
        raise DomainError(f"second-observer unsharpness must be in (0, 1], got {lambda2}")
    if e1 > ELEGANT_OPT + 1e-9:
        raise InconsistencyError(f"first value {e1} exceeds the quantum optimum")
    lower = _clip_unit(e1 / ELEGANT_OPT)
    inner = 0.5 * (3.0 * e2 / (lambda2 * ELEGANT_OPT) - 1.0)
    if abs(inner) > 1.0:
        raise InconsistencyError(f"second value {e2} is outside the physical range")
    upper = _clip_unit(math.sqrt(1.0 - inner * inner))
    if lower > upper + 1e-9:
        raise InconsistencyError(
            f"empty interval: lower {lower:.6f} exceeds upper {upper:.6f}"
        )
    return lower, max(upper, lower)


def elegant_lambda1_interval3(e1: float, e2: float, e3: float) -> Tuple[float, float]:
    """lambda_1 range when the quantum advantage extends to a third
    observer (all three observed values above the noncontextual bound 4).

    The upper endpoint is the largest lambda_1 for which some admissible
    lambda_2 (itself large enough to explain e2) still allows a third value
    of at least e3; it is found by bisection on the monotone cap
        cap(xi_1) = (OPT/9) * xi_1 * (1 + 2*sqrt(1 - (3*e2/(xi_1*OPT))^2)).
    """
    for name, value in (("first", e1), ("second", e2), ("third", e3)):
        if value <= 4.0 - 1e-9:
            raise DomainError(
                f"{name} value must exceed the noncontextual bound 4, got {value}"
            )
    lower = _clip_unit(e1 / ELEGANT_OPT)

    def cap(xi1: float) -> float:
        lam2_min = 3.0 * e2 / (xi1 * ELEGANT_OPT)
        if lam2_min > 1.0:
            return -math.inf
        xi2_max = 1.0 + 2.0 * math.sqrt(1.0 - lam2_min * lam2_min)
        return (ELEGANT_OPT / 9.0) * xi1 * xi2_max

    if cap(3.0) < e3 - 1e-12:
        raise InconsistencyError(
            f"third value {e3} is unreachable even for an undisturbed chain"
        )
    lo_xi, hi_xi = 1.0, 3.0
    for _ in range(200):  # bisection on the increasing cap function
        mid = 0.5 * (lo_xi + hi_xi)
        if cap(mid) >= e3:
            hi_xi = mid
        else:
            lo_xi = mid
    xi1_min = hi_xi
    upper = _clip_unit(math.sqrt(max(1.0 - ((xi1_min - 1.0) / 2.0) ** 2, 0.0)))
    if lower > upper + 1e-9:
        raise InconsistencyError(
            f"empty interval: lower {lower:.6f} exceeds upper {upper:.6f}"
        )
    return lower, upper


def elegant_lambda2_interval(
    e2: float, e3: float, lambda1: float
) -> Tuple[float, float]:
    """Robust lambda_2 range from the second and third elegant values,
    given the first observer's unsharpness.

    The upper endpoint normalizes the third value by the quantum optimum,
    the constant fixed by exactness on the trade-off surface (the bound
    collapses onto the true lambda_2 for on-surface data).
    """
    if not 0.0 <= lambda1 <= 1.0:
        raise DomainError(f"first-observer unsharpness must be in [0, 1], got {lambda1}")
    xi1 = 1.0 + 2.0 * math.sqrt(1.0 - lambda1 * lambda1)
    lower = 3.0 * e2 / (xi1 * ELEGANT_OPT)
    if lower > 1.0 + 1e-9:
        raise InconsistencyError(
            f"second value {e2} exceeds the cap set by the first observer"
        )
    lower = _clip_unit(lower)
    inner = 0.5 * (9.0 * e3 / (xi1 * ELEGANT_OPT) - 1.0)
    if abs(inner) > 1.0:
        raise InconsistencyError(f"third value {e3} is outside the physical range")
    upper = _clip_unit(math.sqrt(1.0 - inner * inner))
    if lower > upper + 1e-9:
        raise InconsistencyError(
            f"empty interval: lower {lower:.6f} exceeds upper {upper:.6f}"
        )
    return lower, upper


def lambda3_min(e3: float, lambda1: float, lambda2: float) -> float:
    """Smallest third-observer unsharpness able to produce value e3 given
    the first two observers' unsharpness parameters."""
    for name, lam in (("first", lambda1), ("second", lambda2)):
        if not 0.0 <= lam <= 1.0:
            raise DomainError(f"{name}-observer unsharpness must be in [0, 1], got {lam}")
    xi1 = 1.0 + 2.0 * math.sqrt(1.0 - lambda1 * lambda1)
    xi2 = 1.0 + 2.0 * math.sqrt(1.0 - lambda2 * lambda2)
    result = 9.0 * e3 / (xi1 * xi2 * ELEGANT_OPT)
    if result > 1.0 + 1e-9:
        raise InconsistencyError(
            f"third value {e3} needs unsharpness {result:.6f} > 1 given the chain"
        )
    return min(result, 1.0)
