"""Optimal measurement models for the two Bell functionals.

The two-setting (CHSH-type) optimum needs a maximally entangled state and
two anticommuting observables per party, with Bob's settings sitting at 45
degrees to Alice's:  B1 = (A1 + A2)/sqrt(2), B2 = (A1 - A2)/sqrt(2).

The four/three-setting ("elegant") optimum needs four Alice directions with
Gram matrix  n1.ni = +1/3 (i = 2, 3, 4),  ni.nj = -1/3 (i != j in {2,3,4})
and the closure n1 = n2 + n3 + n4; Bob's three directions are the
normalized combinations  (n1 + n2 + n3 - n4), (n1 + n2 - n3 + n4),
(n1 - n2 + n3 + n4), adjusted by the state's correlation signs.  A regular
tetrahedron realizes the Gram relations; the construction is one
representative of a local-unitary equivalence class.

Both models exist in local dimension 2 and, via the identity-tensor
embedding O -> O (x) I with a doubled entangled state, in local dimension 4;
the embedded model reproduces the same functional values, which is the
testable surrogate for dimension independence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import ConstructionError, DomainError
from .qcore import (
    ALGEBRA_ATOL,
    BipartiteState,
    DichotomicObservable,
    Operator,
    anticommutator,
    expectation,
    identity,
    make_max_entangled,
    max_abs,
    permute_pair_of_pairs,
    tensor,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
)

_PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

# Regular tetrahedron vertices (unit vectors, pairwise dot -1/3, sum zero).
_TETRAHEDRON = np.array(
    [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
) / math.sqrt(3.0)


def bloch_observable(direction: Sequence[float]) -> DichotomicObservable:
    """Qubit observable n . sigma for a unit Bloch vector n."""
    n = np.asarray(direction, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ConstructionError(f"need a unit 3-vector, got {direction}")
    mat = n[0] * PAULI_X.matrix + n[1] * PAULI_Y.matrix + n[2] * PAULI_Z.matrix
    return DichotomicObservable(Operator(mat))


def _correlation_signs(state: BipartiteState) -> np.ndarray:
    """Diagonal correlation signature (<XX>, <YY>, <ZZ>) of a qubit pair."""
    return np.array(
        [
            expectation(state, tensor(p, p))
            for p in _PAULIS
        ]
    )


@dataclass(frozen=True)
class ChshModel:
    """State plus observable pairs achieving the two-setting optimum."""

    state: BipartiteState
    alice: Tuple[DichotomicObservable, DichotomicObservable]
    bob: Tuple[DichotomicObservable, DichotomicObservable]

    def __post_init__(self):
        object.__setattr__(self, "alice", tuple(self.alice))
        object.__setattr__(self, "bob", tuple(self.bob))
        a1, a2 = (o.operator for o in self.alice)
        b1, b2 = (o.operator for o in self.bob)
        if max_abs(anticommutator(a1, a2)) > ALGEBRA_ATOL:
            raise ConstructionError("Alice's observables must anticommute")
        if max_abs(anticommutator(b1, b2)) > ALGEBRA_ATOL:
            raise ConstructionError("Bob's observables must anticommute")
        rt2 = math.sqrt(2.0)
        if max_abs((a1 + a2) / rt2 - b1) > ALGEBRA_ATOL or max_abs(
            (a1 - a2) / rt2 - b2
        ) > ALGEBRA_ATOL:
            raise ConstructionError(
                "Bob's frame must satisfy B1 = (A1+A2)/sqrt(2), B2 = (A1-A2)/sqrt(2)"
            )


@dataclass(frozen=True)
class ElegantModel:
    """State plus 4 Alice / 3 Bob observables achieving the elegant optimum."""

    state: BipartiteState
    alice: Tuple[DichotomicObservable, ...]
    bob: Tuple[DichotomicObservable, ...]

    def __post_init__(self):
        object.__setattr__(self, "alice", tuple(self.alice))
        object.__setattr__(self, "bob", tuple(self.bob))
        if len(self.alice) != 4 or len(self.bob) != 3:
            raise ConstructionError("elegant model needs 4 Alice and 3 Bob settings")
        a = [o.operator for o in self.alice]
        eye = identity(a[0].dim)
        for i in (1, 2, 3):
            if max_abs(anticommutator(a[0], a[i]) - (2.0 / 3.0) * eye) > ALGEBRA_ATOL:
                raise ConstructionError(
                    "Alice Gram relation {A1, Ai} = 2/3 violated"
                )
        for i, j in ((1, 2), (1, 3), (2, 3)):
            if max_abs(anticommutator(a[i], a[j]) + (2.0 / 3.0) * eye) > ALGEBRA_ATOL:
                raise ConstructionError(
                    "Alice Gram relation {Ai, Aj} = -2/3 violated"
                )
        if max_abs(a[0] - a[1] - a[2] - a[3]) > ALGEBRA_ATOL:
            raise ConstructionError("closure A1 - A2 - A3 - A4 = 0 violated")
        b = [o.operator for o in self.bob]
        for i in range(3):
            for j in range(i + 1, 3):
                if max_abs(anticommutator(b[i], b[j])) > ALGEBRA_ATOL:
                    raise ConstructionError("Bob's observables must pairwise anticommute")


def _embed_observable(obs: DichotomicObservable) -> DichotomicObservable:
    return DichotomicObservable(tensor(obs.operator, identity(2)))


def _embed_state(state: BipartiteState) -> BipartiteState:
    """Tensor a second copy of the pair and regroup legs so each party
    holds one qubit of each pair: local dimension doubles, marginals stay
    maximally mixed, correlations of embedded observables are unchanged."""
    d = state.local_dim
    doubled = np.kron(state.matrix, state.matrix)
    return BipartiteState(d * d, Operator(permute_pair_of_pairs(doubled, d)))


def _qubit_chsh_model() -> ChshModel:
    state = make_max_entangled(
        [DichotomicObservable(p) for p in _PAULIS], 2
    )
    signs = _correlation_signs(state)
    plus_axes = [i for i, s in enumerate(signs) if s > 0.5]
    if len(plus_axes) < 2:
        raise ConstructionError("state lacks two perfectly correlated axes")
    e1 = np.eye(3)[plus_axes[0]]
    e2 = np.eye(3)[plus_axes[1]]
    rt2 = math.sqrt(2.0)
    alice = (
        bloch_observable((e1 + e2) / rt2),
        bloch_observable((e1 - e2) / rt2),
    )
    bob = (bloch_observable(e1), bloch_observable(e2))
    return ChshModel(state=state, alice=alice, bob=bob)


def chsh_optimal_model(local_dim: int = 2) -> ChshModel:
    """Model reaching the two-setting quantum optimum 2*sqrt(2)."""
    if local_dim not in (2, 4):
        raise DomainError(f"supported local dimensions are 2 and 4, got {local_dim}")
    base = _qubit_chsh_model()
    if local_dim == 2:
        return base
    return ChshModel(
        state=_embed_state(base.state),
        alice=tuple(_embed_observable(o) for o in base.alice),
        bob=tuple(_embed_observable(o) for o in base.bob),
    )


def _qubit_elegant_model() -> ElegantModel:
    state = make_max_entangled(
        [DichotomicObservable(p) for p in _PAULIS], 2
    )
    signs = _correlation_signs(state)
    # n1 = n2 + n3 + n4 = -(remaining vertex); tetrahedron fixes the Gram matrix.
    alice_dirs = np.vstack([-_TETRAHEDRON[0], _TETRAHEDRON[1:]])
    combos = np.array([
        alice_dirs[0] + alice_dirs[1] + alice_dirs[2] - alice_dirs[3],
        alice_dirs[0] + alice_dirs[1] - alice_dirs[2] + alice_dirs[3],
        alice_dirs[0] - alice_dirs[1] + alice_dirs[2] + alice_dirs[3],
    ])
    combos /= np.linalg.norm(combos, axis=1)[:, None]
    bob_dirs = combos * np.sign(signs)[None, :]  # align with the state's correlations
    return ElegantModel(
        state=state,
        alice=tuple(bloch_observable(n) for n in alice_dirs),
        bob=tuple(bloch_observable(b) for b in bob_dirs),
    )


def elegant_optimal_model(local_dim: int = 2) -> ElegantModel:
    """Model reaching the elegant quantum optimum 4*sqrt(3)."""
    if local_dim not in (2, 4):
        raise DomainError(f"supported local dimensions are 2 and 4, got {local_dim}")
    base = _qubit_elegant_model()
    if local_dim == 2:
        return base
    return ElegantModel(
        state=_embed_state(base.state),
        alice=tuple(_embed_observable(o) for o in base.alice),
        bob=tuple(_embed_observable(o) for o in base.bob),
    )


def constraint_residual(model: ElegantModel) -> float:
    """Entrywise max-norm of A1 - A2 - A3 - A4 (zero at the optimum)."""
    a = [o.operator for o in model.alice]
    return max_abs(a[0] - a[1] - a[2] - a[3])
