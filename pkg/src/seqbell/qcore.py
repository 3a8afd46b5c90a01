"""Dimension-generic complex linear algebra and quantum-state primitives.

Everything downstream (measurement models, instruments, Bell functionals,
the numerical oracle) is built on three value types defined here:

* ``Operator``          -- dense complex square matrix with dimension metadata,
* ``DichotomicObservable`` -- Hermitian operator squaring to the identity,
* ``BipartiteState``    -- positive unit-trace operator on a d x d product space.

All instances are immutable after construction (backing arrays are marked
read-only), so every operation is pure and safe under concurrent use.
Storage is dense row-major complex128; dimensions stay small (<= 64).
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConstructionError,
    ContractViolationError,
    DimensionLimitError,
)

# Global numerical tolerances.
HERMITIAN_ATOL = 1e-12   # Hermiticity assertions
ALGEBRA_ATOL = 1e-10     # operator-algebra identities (O^2 = I, anticommutators, purity)
REFERENCE_ATOL = 5e-3    # agreement with three-decimal reference figures

# Tensor products refuse to grow past this total dimension.
MAX_TENSOR_DIM = 64


def _as_square_complex(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=np.complex128, copy=True, order="C")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ContractViolationError(f"expected a square matrix, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


class Operator:
    """Dense complex square matrix; the carrier of observables, Kraus
    operators, projectors and Bell operators."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        object.__setattr__(self, "matrix", _as_square_complex(matrix))

    def __setattr__(self, name, value):
        raise AttributeError("Operator is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_hermitian(self, atol: float = HERMITIAN_ATOL) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= atol)

    def dag(self) -> "Operator":
        return Operator(self.matrix.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    # Minimal arithmetic; enough for model construction and tests.
    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix - other.matrix)

    def __neg__(self) -> "Operator":
        return Operator(-self.matrix)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.matrix * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Operator":
        return Operator(self.matrix / scalar)

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise ContractViolationError(
                f"dimension mismatch in product: {self.dim} vs {other.dim}"
            )
        return Operator(self.matrix @ other.matrix)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Operator(dim={self.dim})"


def identity(dim: int) -> Operator:
    return Operator(np.eye(dim))


PAULI_X = Operator([[0, 1], [1, 0]])
PAULI_Y = Operator([[0, -1j], [1j, 0]])
PAULI_Z = Operator([[1, 0], [0, -1]])


def max_abs(op: Operator) -> float:
    """Entrywise max-norm; the residual measure used by algebraic checks."""
    return float(np.max(np.abs(op.matrix)))


def spectral_norm(op: Operator) -> float:
    return float(np.linalg.norm(op.matrix, 2))


class DichotomicObservable:
    """Hermitian operator with spectrum in {+1, -1}; a measurement setting."""

    __slots__ = ("operator",)

    def __init__(self, operator: Operator):
        if not isinstance(operator, Operator):
            operator = Operator(operator)
        if not operator.is_hermitian():
            raise ContractViolationError("dichotomic observable must be Hermitian")
        square = operator.matrix @ operator.matrix
        if np.max(np.abs(square - np.eye(operator.dim))) > ALGEBRA_ATOL:
            raise ContractViolationError(
                "dichotomic observable must square to the identity"
            )
        object.__setattr__(self, "operator", operator)

    def __setattr__(self, name, value):
        raise AttributeError("DichotomicObservable is immutable")

    @property
    def matrix(self) -> np.ndarray:
        return self.operator.matrix

    @property
    def dim(self) -> int:
        return self.operator.dim

    def __repr__(self) -> str:  # pragma: no cover
        return f"DichotomicObservable(dim={self.dim})"


class BipartiteState:
    """Positive unit-trace operator on a d x d tensor-product space."""

    __slots__ = ("local_dim", "operator")

    def __init__(self, local_dim: int, operator: Operator):
        if not isinstance(operator, Operator):
            operator = Operator(operator)
        if local_dim < 1 or operator.dim != local_dim * local_dim:
            raise ContractViolationError(
                f"state of local dimension {local_dim} needs a {local_dim**2}-dim "
                f"operator, got {operator.dim}"
            )
        if not operator.is_hermitian():
            raise ContractViolationError("state must be Hermitian")
        tr = operator.trace()
        if abs(tr - 1.0) > HERMITIAN_ATOL * operator.dim:
            raise ContractViolationError(f"state must have unit trace, got {tr}")
        eigs = np.linalg.eigvalsh(operator.matrix)
        if float(eigs.min()) < -1e-10:
            raise ContractViolationError(
                f"state must be positive, smallest eigenvalue {eigs.min():.3e}"
            )
        object.__setattr__(self, "local_dim", int(local_dim))
        object.__setattr__(self, "operator", operator)

    def __setattr__(self, name, value):
        raise AttributeError("BipartiteState is immutable")

    @property
    def matrix(self) -> np.ndarray:
        return self.operator.matrix

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __repr__(self) -> str:  # pragma: no cover
        return f"BipartiteState(local_dim={self.local_dim})"


def tensor(a: Operator, b: Operator, max_dim: int = MAX_TENSOR_DIM) -> Operator:
    """Kronecker product; the left factor indexes the slower axis."""
    out_dim = a.dim * b.dim
    if out_dim > max_dim:
        raise DimensionLimitError(
            f"tensor product dimension {out_dim} exceeds the cap {max_dim}"
        )
    return Operator(np.kron(a.matrix, b.matrix))


def partial_trace(rho: BipartiteState, side: str) -> Operator:
    """Trace out one subsystem ('A' or 'B') of a bipartite state.

    Returns the d x d reduced operator of the remaining party; the trace
    (= 1) is preserved.
    """
    d = rho.local_dim
    blocks = rho.matrix.reshape(d, d, d, d)  # (a, b, a', b')
    if side == "A":
        reduced = np.einsum("abac->bc", blocks)
    elif side == "B":
        reduced = np.einsum("abcb->ac", blocks)
    else:
        raise ContractViolationError(f"side must be 'A' or 'B', got {side!r}")
    return Operator(reduced)


def expectation(rho: BipartiteState, observable: Operator) -> float:
    """Born-rule expectation Tr[rho O] for Hermitian O on the joint space."""
    if observable.dim != rho.operator.dim:
        raise ContractViolationError(
            f"observable dimension {observable.dim} does not match state "
            f"dimension {rho.operator.dim}"
        )
    if not observable.is_hermitian():
        raise ContractViolationError("expectation requires a Hermitian observable")
    value = np.trace(rho.matrix @ observable.matrix)
    if abs(value.imag) > 1e-10:
        raise ContractViolationError(
            f"expectation of a Hermitian observable produced imaginary residue "
            f"{value.imag:.3e}"
        )
    return float(value.real)


def anticommutator(a: Operator, b: Operator) -> Operator:
    """ab + ba for equal-dimension operators."""
    if a.dim != b.dim:
        raise ContractViolationError(
            f"anticommutator needs equal dimensions, got {a.dim} and {b.dim}"
        )
    return Operator(a.matrix @ b.matrix + b.matrix @ a.matrix)


def make_max_entangled(
    anticommuting_set: Sequence[DichotomicObservable], d: int
) -> BipartiteState:
    """Build the maximally entangled state in Hilbert-Schmidt form.

    Starting from a full pairwise-anticommuting traceless family {N_i} of
    local dimension d, searches signs s_i in {+1, -1} for

        rho = (1/d^2) [ I (x) I + sum_i s_i N_i (x) N_i ]

    and returns the first assignment that is simultaneously positive and
    pure.  The sign freedom reflects local basis conventions; the printed
    all-plus form is not positive at d = 2.
    """
    obs = list(anticommuting_set)
    if not obs:
        raise ConstructionError("empty observable family")
    for o in obs:
        if o.dim != d:
            raise ConstructionError(
                f"family member has dimension {o.dim}, expected {d}"
            )
        if abs(o.operator.trace()) > ALGEBRA_ATOL:
            raise ConstructionError("family members must be traceless")
    for i in range(len(obs)):
        for j in range(i + 1, len(obs)):
            if max_abs(anticommutator(obs[i].operator, obs[j].operator)) > ALGEBRA_ATOL:
                raise ConstructionError(
                    f"family members {i} and {j} do not anticommute"
                )

    eye2 = np.eye(d * d, dtype=np.complex128)
    terms = [np.kron(o.matrix, o.matrix) for o in obs]
    best_purity = -np.inf
    any_positive = False
    for signs in product((1.0, -1.0), repeat=len(terms)):
        mat = eye2.copy()
        for s, term in zip(signs, terms):
            mat += s * term
        mat /= d * d
        eigs = np.linalg.eigvalsh(mat)
        positive = float(eigs.min()) >= -1e-10
        purity = float(np.sum(eigs * eigs))
        best_purity = max(best_purity, purity if positive else -np.inf)
        any_positive = any_positive or positive
        if positive and abs(purity - 1.0) <= ALGEBRA_ATOL:
            return BipartiteState(d, Operator(mat))
    if not any_positive:
        raise ConstructionError(
            "no sign assignment yields a positive operator (positivity failed)"
        )
    raise ConstructionError(
        "no sign assignment yields a pure state (purity failed; best "
        f"Tr[rho^2] = {best_purity:.6f}); the anticommuting family is too small"
    )


def permute_pair_of_pairs(matrix: np.ndarray, d: int) -> np.ndarray:
    """Reorder tensor legs (A1 B1 A2 B2) -> (A1 A2 B1 B2) of a matrix on
    four d-dimensional factors.  Used to embed a pair of two-party states
    as a single two-party state of local dimension d^2."""
    full = matrix.reshape((d,) * 8)
    full = full.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    return np.ascontiguousarray(full.reshape(d**4, d**4))
