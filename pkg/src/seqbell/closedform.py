"""Closed-form quantum values, bounds and trade-off curves, as pure scalars.

Conventions used throughout (k-th observer unsharpness lambda_k):

    two-setting optimum      OPT2 = 2*sqrt(2)
    three-setting optimum    OPT3 = 4*sqrt(3)
    shrink factors           g(l) = (1 + sqrt(1 - l^2)) / 2        (two settings)
                             h(l) = (1 + 2*sqrt(1 - l^2)) / 3      (three settings)

Sequential maxima are products of per-observer shrink factors times the
final observer's own unsharpness:

    value2_k = lambda_k * OPT2 * prod_{i<k} g(lambda_i)     (k = 1..3)
    value3_k = lambda_k * OPT3 * prod_{i<k} h(lambda_i)     (k = 1..4)

Note on the k-th value: the naive geometric prefactor 3^-k * prod sqrt(3)
(1 + 2 sqrt(1 - lambda_i^2)) fails the no-disturbance sanity check (it
yields 4 instead of 4*sqrt(3) for k = 2 at lambda_1 = 0); the product form
above is the one consistent with the k = 1, 2, 3 values and with the exact
channel simulation, which is ground truth here.

The pair trade-off curves eliminate lambda_1 between value_1 and value_2;
the triple trade-off surface additionally eliminates lambda_2.  With
xi = 1 + Delta_1 and Delta_1 = 2 sqrt(1 - (e1/OPT3)^2), the three-setting
surface reads

    e3(e1, e2) = (OPT3 / 9) * xi * (1 + sqrt((4 + 4*Delta_1 - Delta_2) / xi)),
    Delta_2 = 3 * e2^2 / (4 * xi),

which is the normalization fixed by requiring e3 to coincide with
value3_3 at the solved (lambda_1, lambda_2); see docs/formulas.md for the
reconstruction evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError

CHSH_OPT = 2.0 * math.sqrt(2.0)
ELEGANT_OPT = 4.0 * math.sqrt(3.0)

_EPS = 1e-9  # boundary slack; absorbs 9-decimal rounding of emitted values


@dataclass(frozen=True)
class BoundSet:
    """Classical, preparation-noncontextual and quantum bounds."""

    local: float
    pnc: float
    quantum_opt: float


def _check_unit_interval(values: Sequence[float], count: int) -> list[float]:
    lams = [float(x) for x in values]
    if len(lams) == count - 1:
        lams.append(1.0)  # final observer sharp by default
    if len(lams) < count:
        raise DomainError(
            f"need at least {count - 1} unsharpness parameters, got {len(lams)}"
        )
    for lam in lams[:count]:
        if not 0.0 <= lam <= 1.0:
            raise DomainError(f"unsharpness parameter must lie in [0, 1], got {lam}")
    return lams[:count]


def _shrink2(lam: float) -> float:
    return 0.5 * (1.0 + math.sqrt(1.0 - lam * lam))


def _shrink3(lam: float) -> float:
    return (1.0 + 2.0 * math.sqrt(1.0 - lam * lam)) / 3.0


def chsh_value(k: int, lambdas: Sequence[float]) -> float:
    """Maximum two-setting value for observer k (k = 1, 2, 3).

    lambda_k multiplies as the final observer's sharpness; if the list has
    only k-1 entries the final observer defaults to sharp.
    """
    if k not in (1, 2, 3):
        raise DomainError(f"observer index must be 1, 2 or 3, got {k}")
    lams = _check_unit_interval(lambdas, k)
    value = lams[k - 1] * CHSH_OPT
    for lam in lams[: k - 1]:
        value *= _shrink2(lam)
    return value


def chsh_tradeoff(b1: float) -> float:
    """Largest second-observer value compatible with first value b1."""
    if not -_EPS <= b1 <= CHSH_OPT + _EPS:
        raise DomainError(f"first value must lie in [0, {CHSH_OPT:.6f}], got {b1}")
    ratio = min(max(b1 / CHSH_OPT, 0.0), 1.0)
    return math.sqrt(2.0) * (1.0 + math.sqrt(1.0 - ratio * ratio))


def elegant_value(k: int, lambdas: Sequence[float]) -> float:
    """Maximum elegant value for observer k (k = 1..4)."""
    if k not in (1, 2, 3, 4):
        raise DomainError(f"observer index must be 1..4, got {k}")
    lams = _check_unit_interval(lambdas, k)
    value = lams[k - 1] * ELEGANT_OPT
    for lam in lams[: k - 1]:
        value *= _shrink3(lam)
    return value


def elegant_tradeoff2(e1: float) -> float:
    """Largest second-observer elegant value compatible with first value e1."""
    if not -_EPS <= e1 <= ELEGANT_OPT + _EPS:
        raise DomainError(f"first value must lie in [0, {ELEGANT_OPT:.6f}], got {e1}")
    ratio = min(max(e1 / ELEGANT_OPT, 0.0), 1.0)
    return (4.0 / math.sqrt(3.0)) * (1.0 + 2.0 * math.sqrt(1.0 - ratio * ratio))


def elegant_tradeoff3(e1: float, e2: float) -> float:
    """Third-observer elegant value on the trade-off surface over (e1, e2).

    Admissible region: 0 <= e1 <= OPT3 and 0 <= e2 <= elegant_tradeoff2(e1)
    (equivalently, the implied lambda_2 lies in [0, 1]).
    """
    if not -_EPS <= e1 <= ELEGANT_OPT + _EPS:
        raise DomainError(f"first value must lie in [0, {ELEGANT_OPT:.6f}], got {e1}")
    cap = elegant_tradeoff2(e1)
    if not -_EPS <= e2 <= cap + 1e-9:
        raise DomainError(
            f"second value must lie in [0, {cap:.6f}] for first value {e1}, got {e2}"
        )
    lam1 = min(max(e1 / ELEGANT_OPT, 0.0), 1.0)
    xi1 = 1.0 + 2.0 * math.sqrt(1.0 - lam1 * lam1)
    lam2 = min(max(3.0 * e2 / (xi1 * ELEGANT_OPT), 0.0), 1.0)
    return elegant_value(3, [lam1, lam2, 1.0])


def bounds(kind: str) -> BoundSet:
    """Local, preparation-noncontextual and quantum bounds by functional."""
    name = str(getattr(kind, "value", kind)).lower()
    if name == "chsh":
        # the preparation-noncontextual bound is trivial (equals local) here
        return BoundSet(local=2.0, pnc=2.0, quantum_opt=CHSH_OPT)
    if name == "elegant":
        return BoundSet(local=6.0, pnc=4.0, quantum_opt=ELEGANT_OPT)
    raise DomainError(f"unknown functional kind {kind!r}")
