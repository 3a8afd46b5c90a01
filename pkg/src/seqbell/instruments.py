"""Unsharp dichotomic instruments and the sequential measure-and-relay channel.

A two-outcome unsharp measurement of a dichotomic observable B with
unsharpness lambda in [0, 1] has POVM elements

    E(+/-) = (1 +/- lambda)/2 * P(+)  +  (1 -/+ lambda)/2 * P(-)

where P(+/-) are the +/-1 eigenprojectors of B.  The state-update (Lueders)
Kraus operators are the square roots

    K(+/-) = alpha I +/- beta B,
    alpha = ( sqrt((1+lambda)/2) + sqrt((1-lambda)/2) ) / 2,
    beta  = ( sqrt((1+lambda)/2) - sqrt((1-lambda)/2) ) / 2,

with alpha^2 + beta^2 = 1/2 and alpha >= beta >= 0.  lambda = 1 is the
sharp projective limit (K become projectors), lambda = 0 the trivial
measurement (identity channel).

An observer who measures one of m settings chosen uniformly and relays the
unread outcome leaves behind the averaged state

    rho' = (1/m) sum_{outcomes, settings} (I (x) K) rho (I (x) K),

which for m = 2 settings equals
    2 alpha^2 rho + beta^2 sum_y (I (x) B_y) rho (I (x) B_y)
and for m = 3 settings equals
    (1/3) [ 6 alpha^2 rho + 2 beta^2 sum_y (I (x) B_y) rho (I (x) B_y) ].

All Kraus operators here are Hermitian, so the two conjugation orderings
K rho K-dagger and K-dagger rho K coincide (asserted by test).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ContractViolationError, DomainError
from .qcore import BipartiteState, DichotomicObservable, Operator, identity


def alpha_beta(lam: float) -> Tuple[float, float]:
    """Kraus coefficients (alpha, beta) for unsharpness lam in [0, 1]."""
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"unsharpness parameter must lie in [0, 1], got {lam}")
    plus = math.sqrt((1.0 + lam) / 2.0)
    minus = math.sqrt((1.0 - lam) / 2.0)
    return (plus + minus) / 2.0, (plus - minus) / 2.0


def povm_elements(
    observable: DichotomicObservable, lam: float
) -> Tuple[Operator, Operator]:
    """POVM pair (E+, E-) of the unsharp measurement of a dichotomic
    observable; E+ + E- = I and E+ - E- = lam * B."""
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"unsharpness parameter must lie in [0, 1], got {lam}")
    eye = identity(observable.dim)
    proj_plus = (eye + observable.operator) * 0.5
    proj_minus = (eye - observable.operator) * 0.5
    e_plus = ((1.0 + lam) / 2.0) * proj_plus + ((1.0 - lam) / 2.0) * proj_minus
    e_minus = ((1.0 - lam) / 2.0) * proj_plus + ((1.0 + lam) / 2.0) * proj_minus
    return e_plus, e_minus


def kraus(
    observable: DichotomicObservable, lam: float
) -> Tuple[Operator, Operator]:
    """Lueders Kraus pair (K+, K-) with K(+/-) = alpha I +/- beta B;
    K(+/-)^2 equals the corresponding POVM element."""
    a, b = alpha_beta(lam)
    eye = identity(observable.dim)
    return (
        a * eye + b * observable.operator,
        a * eye - b * observable.operator,
    )


@dataclass(frozen=True)
class UnsharpInstrument:
    """Unsharpness parameter plus the observer's setting list (2 settings
    for the two-setting scenario, 3 for the three-setting one)."""

    lam: float
    settings: Tuple[DichotomicObservable, ...]

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise DomainError(
                f"unsharpness parameter must lie in [0, 1], got {self.lam}"
            )
        settings = tuple(self.settings)
        object.__setattr__(self, "settings", settings)
        if len(settings) not in (2, 3):
            raise ContractViolationError(
                f"instrument needs 2 or 3 settings, got {len(settings)}"
            )
        dims = {s.dim for s in settings}
        if len(dims) != 1:
            raise ContractViolationError("instrument settings must share one dimension")
        a, b = alpha_beta(self.lam)
        assert abs(a * a + b * b - 0.5) < 1e-14 and a >= b >= 0.0

    @property
    def dim(self) -> int:
        return self.settings[0].dim

    def alpha_beta(self) -> Tuple[float, float]:
        return alpha_beta(self.lam)


def apply_sequential_channel(
    rho: BipartiteState, instrument: UnsharpInstrument
) -> BipartiteState:
    """Average post-measurement state after one observer's unsharp
    measurement on the second factor, setting drawn uniformly.

    Trace- and positivity-preserving; lam = 0 is the identity channel.
    """
    d = rho.local_dim
    if instrument.dim != d:
        raise ContractViolationError(
            f"instrument dimension {instrument.dim} does not match the state's "
            f"local dimension {d}"
        )
    eye = np.eye(d)
    m = len(instrument.settings)
    out = np.zeros_like(rho.matrix)
    for setting in instrument.settings:
        for k in kraus(setting, instrument.lam):
            lifted = np.kron(eye, k.matrix)
            out += lifted @ rho.matrix @ lifted
    out /= m
    return BipartiteState(d, Operator(out))
