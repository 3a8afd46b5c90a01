"""Bell functionals and the sequential protocol runner.

Two functionals are supported:

* the two-setting form  (A1 + A2) B1 + (A1 - A2) B2,  local bound 2,
  quantum optimum 2*sqrt(2);
* the elegant four-by-three form
      (A1 + A2 + A3 - A4) B1 + (A1 + A2 - A3 + A4) B2
    + (A1 - A2 + A3 + A4) B3,
  local bound 6, preparation-noncontextual bound 4, quantum optimum
  4*sqrt(3).

``run_sequence`` simulates the chain: one Alice, up to four sequential
observers on the other side, observer k measuring with unsharpness
lambda_k on the averaged state relayed by observer k-1.  The k-th entry of
the transcript is lambda_k * Tr[rho_k * BellOperator]; the lambda_k factor
is the single-setting unsharp-correlator multiplier of the final observer.
Transcript values always come from the exact channel simulation; the
closed-form module is the independent cross-check, never a shortcut here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from .errors import ContractViolationError, DomainError
from .instruments import UnsharpInstrument, apply_sequential_channel
from .qcore import BipartiteState, DichotomicObservable, Operator, expectation, tensor


class Functional(str, Enum):
    CHSH = "chsh"
    ELEGANT = "elegant"


# Coefficient tables: rows index Alice settings, columns Bob settings.
_CHSH_TABLE = ((1, 1), (1, -1))
_ELEGANT_TABLE = (
    (1, 1, 1),
    (1, 1, -1),
    (1, -1, 1),
    (-1, 1, 1),
)


@dataclass(frozen=True)
class BellFunctional:
    """Functional kind plus its (alice, bob) -> +/-1 coefficient table."""

    kind: Functional
    coefficients: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        expected = _CHSH_TABLE if self.kind is Functional.CHSH else _ELEGANT_TABLE
        if tuple(tuple(row) for row in self.coefficients) != expected:
            raise ContractViolationError(
                f"coefficient table does not match the {self.kind.value} functional"
            )

    @property
    def alice_settings(self) -> int:
        return len(self.coefficients)

    @property
    def bob_settings(self) -> int:
        return len(self.coefficients[0])


def bell_functional(kind: Functional | str) -> BellFunctional:
    kind = Functional(kind)
    table = _CHSH_TABLE if kind is Functional.CHSH else _ELEGANT_TABLE
    return BellFunctional(kind=kind, coefficients=table)


@dataclass(frozen=True)
class SequentialTranscript:
    """Per-observer quantum values of one sequential run."""

    values: Tuple[float, ...]
    lambdas: Tuple[float, ...]


def bell_operator(
    functional: BellFunctional,
    alice: Sequence[DichotomicObservable],
    bob: Sequence[DichotomicObservable],
) -> Operator:
    """Hermitian joint-space operator sum_ij c_ij A_i (x) B_j."""
    if len(alice) != functional.alice_settings or len(bob) != functional.bob_settings:
        raise ContractViolationError(
            f"{functional.kind.value} needs {functional.alice_settings} Alice and "
            f"{functional.bob_settings} Bob settings, got {len(alice)} and {len(bob)}"
        )
    total = None
    for row, a in zip(functional.coefficients, alice):
        for coeff, b in zip(row, bob):
            term = coeff * tensor(a.operator, b.operator)
            total = term if total is None else total + term
    return total


def correlator(
    rho: BipartiteState,
    alice: DichotomicObservable,
    bob: DichotomicObservable,
    lam: float,
) -> float:
    """Unsharp joint correlator lam * Tr[(A (x) B) rho]."""
    return lam * expectation(rho, tensor(alice.operator, bob.operator))


def run_sequence(
    functional: BellFunctional,
    model,
    lambdas: Sequence[float],
) -> SequentialTranscript:
    """Exact channel simulation of the sequential chain.

    ``model`` provides ``state``, ``alice`` and ``bob``; observer k obtains
    value_k = lambda_k * Tr[rho_k * BellOperator] and, unless last, relays
    the averaged post-measurement state to observer k+1.
    """
    lams = tuple(float(x) for x in lambdas)
    if not 1 <= len(lams) <= 4:
        raise DomainError(f"sequence length must be between 1 and 4, got {len(lams)}")
    for lam in lams:
        if not 0.0 <= lam <= 1.0:
            raise DomainError(f"unsharpness parameter must lie in [0, 1], got {lam}")
    operator = bell_operator(functional, model.alice, model.bob)
    rho = model.state
    values = []
    for k, lam in enumerate(lams):
        values.append(lam * expectation(rho, operator))
        if k + 1 < len(lams):
            rho = apply_sequential_channel(rho, UnsharpInstrument(lam, model.bob))
    return SequentialTranscript(values=tuple(values), lambdas=lams)
