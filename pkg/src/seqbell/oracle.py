"""Independent numerical verification of every closed form and identity.

Two kinds of checks live here:

* ``maximize_sequential`` searches over Bloch-parametrized local observables
  and Schmidt-parametrized pure shared states for the largest k-th
  sequential value, with no knowledge of the optimal model.  The search is
  derivative-free coordinate ascent with a golden-section line search over
  angles, multi-restarted, with a final step-halving polish; the best value
  is compared against the closed-form reference.

* ``verify_*`` operations evaluate operator identities numerically: the
  channel-dual of the Bell operator against substituted effective
  observables, anticommutator reductions (zero exactly on anticommuting
  settings, strictly positive on perturbed ones), and closed-form operator
  norms of the effective observables.

Every report carries the seed that produced it; results are deterministic
given the seed.  The search evaluates objectives on raw arrays for speed
(qubit correlation arithmetic at local dimension 2, dense matrices at 4);
each returned maximizer is re-evaluated through the typed simulation path
and the agreement is recorded in the report's residuals.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from types import SimpleNamespace
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .bell import Functional, bell_functional, run_sequence
from .closedform import CHSH_OPT, ELEGANT_OPT, chsh_value, elegant_value
from .errors import DomainError
from .instruments import alpha_beta
from .models import bloch_observable, chsh_optimal_model, elegant_optimal_model
from .qcore import BipartiteState, Operator, partial_trace

DEFAULT_SEED = 1729
DEFAULT_RESTARTS = 32

MAXIMIZE_ATOL = 1e-5     # closed-form agreement demanded of search optima
IDENTITY_ATOL = 1e-10    # operator identities and norm formulas
SUPER_OPTIMAL_SLACK = 1e-6  # optima may never exceed the reference by more

_COEFFS = {
    Functional.CHSH: np.array([[1.0, 1.0], [1.0, -1.0]]),
    Functional.ELEGANT: np.array(
        [[1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0]]
    ),
}


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one verification target.

    ``gap`` is |achieved - reference|; ``residuals`` names the
    operator-identity diagnostics evaluated at the maximizer (or on the
    grid); ``converged`` is False when the search stalled or produced a
    super-optimal artifact.
    """

    target: str
    achieved: float
    reference: float
    gap: float
    residuals: Dict[str, float]
    iterations: int
    seed: int
    converged: bool
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.converged and self.gap <= self.tolerance

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


# ---------------------------------------------------------------------------
# Fast model arithmetic on raw arrays.

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def _bloch_matrix(direction: np.ndarray) -> np.ndarray:
    nx, ny, nz = direction
    return np.array([[nz, nx - 1j * ny], [nx + 1j * ny, -nz]], dtype=np.complex128)


def _directions(angles: np.ndarray) -> np.ndarray:
    """(n, 2) array of (polar, azimuth) -> (n, 3) unit vectors."""
    theta, phi = angles[:, 0], angles[:, 1]
    st = np.sin(theta)
    return np.column_stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _split_params(params: np.ndarray, n_alice: int, n_bob: int):
    theta = params[0]
    alice = params[1 : 1 + 2 * n_alice].reshape(n_alice, 2)
    bob = params[1 + 2 * n_alice :].reshape(n_bob, 2)
    return theta, alice, bob


def _qubit_objective(
    coeffs: np.ndarray, k: int, lambdas: Sequence[float]
) -> "callable":
    """Fast d = 2 objective via correlation-tensor arithmetic.

    A Schmidt-form pure state cos(t)|00> + sin(t)|11> has correlation
    tensor diag(sin 2t, -sin 2t, 1); one relay step multiplies it on the
    right by (2a^2 - 2b^2) I + c * sum_y b_y b_y^T with c = 2 b^2 for two
    settings and (4/3) b^2 for three.
    """
    n_alice, n_bob = coeffs.shape
    ab = [alpha_beta(lam) for lam in lambdas[: k - 1]]
    scale_id = [2.0 * (a * a - b * b) for a, b in ab]
    scale_proj = [
        (2.0 if n_bob == 2 else 4.0 / 3.0) * b * b for _, b in ab
    ]
    final_lam = lambdas[k - 1]

    def objective(params: np.ndarray) -> float:
        theta, alice_angles, bob_angles = _split_params(params, n_alice, n_bob)
        a_dirs = _directions(alice_angles)
        b_dirs = _directions(bob_angles)
        s2 = math.sin(2.0 * theta)
        corr = np.diag([s2, -s2, 1.0])
        for sid, spr in zip(scale_id, scale_proj):
            corr = corr @ (sid * np.eye(3) + spr * (b_dirs.T @ b_dirs))
        return final_lam * float(np.einsum("ij,ik,kl,jl->", coeffs, a_dirs, corr, b_dirs))

    return objective


_PAIR_PERMUTATION = np.array(
    [
        ((a1 * 2 + a2) * 2 + b1) * 2 + b2
        for a1 in range(2)
        for b1 in range(2)
        for a2 in range(2)
        for b2 in range(2)
    ]
)


def _embedded_state_vector(theta: float) -> np.ndarray:
    """Pure state of two qubit pairs regrouped as one 4 x 4 pair: the
    searched pair in Schmidt form tensored with a maximally entangled
    ancilla pair, so the optimum has maximally mixed 4-dim marginals."""
    pair = np.array([math.cos(theta), 0.0, 0.0, math.sin(theta)], dtype=np.complex128)
    anchor = np.array([1.0, 0.0, 0.0, 1.0], dtype=np.complex128) / math.sqrt(2.0)
    vec = np.kron(pair, anchor)  # legs (a1 b1 a2 b2)
    out = np.empty_like(vec)
    out[_PAIR_PERMUTATION] = vec
    return out


def _matrix_objective(
    coeffs: np.ndarray, k: int, lambdas: Sequence[float], local_dim: int
) -> "callable":
    """Dense-matrix objective; the genuine d = 4 evaluation path."""
    n_alice, n_bob = coeffs.shape
    ab = [alpha_beta(lam) for lam in lambdas[: k - 1]]
    final_lam = lambdas[k - 1]
    eye_local = np.eye(local_dim, dtype=np.complex128)
    eye2 = np.eye(2, dtype=np.complex128)

    def local_op(direction: np.ndarray) -> np.ndarray:
        op = _bloch_matrix(direction)
        if local_dim == 4:
            op = np.kron(op, eye2)
        return op

    def objective(params: np.ndarray) -> float:
        theta, alice_angles, bob_angles = _split_params(params, n_alice, n_bob)
        a_ops = np.stack([local_op(n) for n in _directions(alice_angles)])
        b_ops = np.stack([local_op(n) for n in _directions(bob_angles)])
        if local_dim == 2:
            vec = np.array(
                [math.cos(theta), 0.0, 0.0, math.sin(theta)], dtype=np.complex128
            )
        else:
            vec = _embedded_state_vector(theta)
        # kron(A, B)[(a c), (b d)] = A[a, b] B[c, d]
        bell = np.einsum("ij,iab,jcd->acbd", coeffs, a_ops, b_ops).reshape(
            local_dim**2, local_dim**2
        )
        if not ab:
            return final_lam * float(np.real(np.vdot(vec, bell @ vec)))
        rho = np.outer(vec, vec.conj())
        for a, b in ab:
            nxt = np.zeros_like(rho)
            for bop in b_ops:
                for kmat in (a * eye_local + b * bop, a * eye_local - b * bop):
                    lifted = np.kron(eye_local, kmat)
                    nxt += lifted @ rho @ lifted
            rho = nxt / len(b_ops)
        return final_lam * float(np.real(np.trace(rho @ bell)))

    return objective


def _typed_value(
    kind: Functional,
    k: int,
    lambdas: Sequence[float],
    params: np.ndarray,
    local_dim: int,
) -> Tuple[float, SimpleNamespace]:
    """Re-evaluate a parameter vector through the typed simulation path."""
    functional = bell_functional(kind)
    n_alice = functional.alice_settings
    n_bob = functional.bob_settings
    theta, alice_angles, bob_angles = _split_params(params, n_alice, n_bob)
    alice = [bloch_observable(n) for n in _directions(alice_angles)]
    bob = [bloch_observable(n) for n in _directions(bob_angles)]
    if local_dim == 2:
        vec = np.array([math.cos(theta), 0, 0, math.sin(theta)], dtype=np.complex128)
    else:
        from .qcore import DichotomicObservable, identity, tensor

        alice = [DichotomicObservable(tensor(o.operator, identity(2))) for o in alice]
        bob = [DichotomicObservable(tensor(o.operator, identity(2))) for o in bob]
        vec = _embedded_state_vector(theta)
    state = BipartiteState(local_dim, Operator(np.outer(vec, vec.conj())))
    model = SimpleNamespace(state=state, alice=tuple(alice), bob=tuple(bob))
    transcript = run_sequence(functional, model, list(lambdas[:k]))
    return transcript.values[k - 1], model


# ---------------------------------------------------------------------------
# Derivative-free search: golden-section line search + coordinate ascent.

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(fun, lo: float, hi: float, iters: int):
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = fun(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = fun(d)
    return (c, fc) if fc >= fd else (d, fd)


def _coordinate_ascent(
    fun,
    x: np.ndarray,
    span: float,
    passes: int,
    golden_iters: int,
    shrink: float,
    stall_tol: float = 1e-10,
):
    """In-place coordinate ascent; returns (value, evals, stalled)."""
    best = fun(x)
    evals = 1
    stalled = False
    for _ in range(passes):
        before = best
        for i in range(x.size):
            keep = x[i]

            def line(t, _i=i):
                x[_i] = t
                return fun(x)

            t, ft = _golden_max(line, keep - span, keep + span, golden_iters)
            evals += golden_iters + 2
            if ft > best:
                best = ft
                x[i] = t
            else:
                x[i] = keep
        span *= shrink
        if best - before < stall_tol:
            stalled = True
            break
    return best, evals, stalled


def _polish(
    fun,
    x: np.ndarray,
    value: float,
    step: float = 1e-3,
    floor: float = 1e-11,
    max_evals: int = 4000,
):
    """Step-halving refinement around a converged ascent point."""
    evals = 0
    while step > floor and evals < max_evals:
        improved = False
        for i in range(x.size):
            for delta in (step, -step):
                x[i] += delta
                candidate = fun(x)
                evals += 1
                if candidate > value + 1e-15:
                    value = candidate
                    improved = True
                    break
                x[i] -= delta
        if not improved:
            step *= 0.5
    return value, evals


def _model_residuals(model: SimpleNamespace, kind: Functional) -> Dict[str, float]:
    """Self-testing diagnostics of a maximizer: anticommutation of the
    settings and maximally mixed marginals."""
    d = model.state.local_dim
    bob = [o.matrix for o in model.bob]
    bob_res = max(
        float(np.max(np.abs(bob[i] @ bob[j] + bob[j] @ bob[i])))
        for i in range(len(bob))
        for j in range(i + 1, len(bob))
    )
    alice = [o.matrix for o in model.alice]
    eye = np.eye(d)
    if kind is Functional.CHSH:
        alice_res = float(np.max(np.abs(alice[0] @ alice[1] + alice[1] @ alice[0])))
    else:
        gram = []
        for i in (1, 2, 3):
            gram.append(
                np.max(np.abs(alice[0] @ alice[i] + alice[i] @ alice[0] - (2 / 3) * eye))
            )
        for i, j in ((1, 2), (1, 3), (2, 3)):
            gram.append(
                np.max(np.abs(alice[i] @ alice[j] + alice[j] @ alice[i] + (2 / 3) * eye))
            )
        alice_res = float(max(gram))
    mix = np.eye(d) / d
    marg_a = float(np.max(np.abs(partial_trace(model.state, "B").matrix - mix)))
    marg_b = float(np.max(np.abs(partial_trace(model.state, "A").matrix - mix)))
    return {
        "bob_anticommutator": bob_res,
        "alice_relations": alice_res,
        "marginal_alice": marg_a,
        "marginal_bob": marg_b,
    }


def maximize_sequential(
    kind: Functional | str,
    k: int,
    lambdas: Sequence[float],
    local_dim: int = 2,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
) -> OracleReport:
    """Search for the largest k-th sequential value over parametrized models.

    Bloch-parametrized settings for both parties, Schmidt-parametrized pure
    shared state (tensored with a maximally entangled ancilla pair at local
    dimension 4); multi-restart coordinate ascent with golden-section line
    search and step-halving polish.  The report compares the best value
    found against the closed-form reference.
    """
    kind = Functional(kind)
    if k > 3:
        raise DomainError(f"search supports observers 1..3, got {k}")
    if restarts < 8:
        raise DomainError(f"at least 8 restarts required, got {restarts}")
    if local_dim not in (2, 4):
        raise DomainError(f"supported local dimensions are 2 and 4, got {local_dim}")
    lams = [float(x) for x in lambdas]
    if len(lams) < k:
        raise DomainError(f"need {k} unsharpness parameters, got {len(lams)}")
    coeffs = _COEFFS[kind]
    if kind is Functional.CHSH:
        reference = chsh_value(k, lams)
    else:
        reference = elegant_value(k, lams)
    if local_dim == 2:
        objective = _qubit_objective(coeffs, k, lams)
    else:
        objective = _matrix_objective(coeffs, k, lams, local_dim)

    n_params = 1 + 2 * (coeffs.shape[0] + coeffs.shape[1])
    rng = np.random.default_rng(seed)
    evals = 0
    candidates = []
    for _ in range(restarts):
        x = np.empty(n_params)
        x[0] = rng.uniform(0.0, math.pi / 2.0)
        x[1::2] = rng.uniform(0.0, math.pi, size=(n_params - 1) // 2)
        x[2::2] = rng.uniform(0.0, 2.0 * math.pi, size=(n_params - 1) // 2)
        value, used, _ = _coordinate_ascent(
            objective, x, span=math.pi / 2.0, passes=14, golden_iters=8, shrink=0.72
        )
        evals += used
        candidates.append((value, x))
    candidates.sort(key=lambda item: -item[0])

    best_value, best_x, stalled = -np.inf, None, False
    deep_passes = 45 if local_dim == 2 else 35
    for value, x in candidates[: max(3, restarts // 8)]:
        value, used, stall = _coordinate_ascent(
            objective, x, span=0.3, passes=deep_passes, golden_iters=18, shrink=0.62
        )
        evals += used
        value, used = _polish(objective, x, value)
        evals += used
        if value > best_value:
            best_value, best_x, stalled = value, x, stall

    typed_value, model = _typed_value(kind, k, lams, best_x, local_dim)
    residuals = _model_residuals(model, kind)
    residuals["typed_path_agreement"] = abs(typed_value - best_value)
    gap = abs(best_value - reference)
    converged = stalled and best_value <= reference + SUPER_OPTIMAL_SLACK
    lam_label = ",".join(f"{lam:g}" for lam in lams[:k])
    return OracleReport(
        target=f"maximize[{kind.value},k={k},d={local_dim},lambdas={lam_label}]",
        achieved=best_value,
        reference=reference,
        gap=gap,
        residuals=residuals,
        iterations=evals,
        seed=seed,
        converged=converged,
        tolerance=MAXIMIZE_ATOL,
    )


# ---------------------------------------------------------------------------
# Closed-form effective observables (the expressions under verification).


def effective_pair_observables(bob: Sequence[np.ndarray], lam: float):
    """Effective settings seen through one two-setting relay step."""
    a, b = alpha_beta(lam)
    p, q = 2 * a * a + b * b, b * b
    b1, b2 = bob
    return [p * b1 + q * (b2 @ b1 @ b2), p * b2 + q * (b1 @ b2 @ b1)]


def effective_pair_observables_twice(
    bob: Sequence[np.ndarray], lam1: float, lam2: float
):
    """Effective settings through two consecutive two-setting relay steps."""
    a1, b1_ = alpha_beta(lam1)
    a2, b2_ = alpha_beta(lam2)
    c_id = 4 * a1**2 * a2**2 + 2 * b1_**2 * b2_**2
    c_mid = 2 * a2**2 * b1_**2 + 2 * a1**2 * b2_**2
    c_word = b1_**2 * b2_**2
    out = []
    for i, j in ((0, 1), (1, 0)):
        bi, bj = bob[i], bob[j]
        mid = bj @ bi @ bj
        out.append(c_id * bi + c_mid * (bi + mid) + c_word * (mid + bi @ bj @ bi @ bj @ bi))
    return out


def effective_triple_observables(bob: Sequence[np.ndarray], lam: float):
    """Effective settings seen through one three-setting relay step."""
    a, b = alpha_beta(lam)
    p = 2 * (a * a + b * b / 3.0)
    q = (2.0 / 3.0) * b * b
    out = []
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        bi, bj, bk = bob[i], bob[j], bob[k]
        out.append(p * bi + q * (bj @ bi @ bj + bk @ bi @ bk))
    return out


def effective_triple_observables_twice(
    bob: Sequence[np.ndarray], lam1: float, lam2: float
):
    """Effective settings through two consecutive three-setting relay steps."""
    a1, b1_ = alpha_beta(lam1)
    a2, b2_ = alpha_beta(lam2)
    c0 = 4 * a1**2 * a2**2 + (4.0 / 3.0) * (
        b1_**2 * b2_**2 + a1**2 * b2_**2 + b1_**2 * a2**2
    )
    c1 = (4.0 / 3.0) * (a1**2 * b2_**2 + b1_**2 * a2**2) + (4.0 / 9.0) * b1_**2 * b2_**2
    c2 = (4.0 / 9.0) * b1_**2 * b2_**2
    out = []
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        bi, bj, bk = bob[i], bob[j], bob[k]
        words = (
            bi @ bj @ bi @ bj @ bi
            + bi @ bk @ bi @ bk @ bi
            + bk @ bj @ bi @ bj @ bk
            + bj @ bk @ bi @ bk @ bj
        )
        out.append(c0 * bi + c1 * (bj @ bi @ bj + bk @ bi @ bk) + c2 * words)
    return out


def _dual_channel(matrix: np.ndarray, bob: Sequence[np.ndarray], lam: float, d: int):
    """Heisenberg-picture relay step applied to a joint-space operator."""
    a, b = alpha_beta(lam)
    eye = np.eye(d, dtype=np.complex128)
    out = np.zeros_like(matrix)
    for setting in bob:
        for kmat in (a * eye + b * setting, a * eye - b * setting):
            lifted = np.kron(np.eye(d), kmat)
            out += lifted @ matrix @ lifted
    return out / len(bob)


def _bell_matrix(kind: Functional, alice, bob) -> np.ndarray:
    coeffs = _COEFFS[kind]
    total = np.zeros((alice[0].shape[0] * bob[0].shape[0],) * 2, dtype=np.complex128)
    for i in range(coeffs.shape[0]):
        for j in range(coeffs.shape[1]):
            total += coeffs[i, j] * np.kron(alice[i], bob[j])
    return total


def _optimal_mats(kind: Functional):
    model = (
        chsh_optimal_model(2) if kind is Functional.CHSH else elegant_optimal_model(2)
    )
    alice = [o.matrix for o in model.alice]
    bob = [o.matrix for o in model.bob]
    return model, alice, bob


def _effective_set(kind: Functional, bob, lam1: float, lam2: Optional[float]):
    if kind is Functional.CHSH:
        if lam2 is None:
            return effective_pair_observables(bob, lam1)
        return effective_pair_observables_twice(bob, lam1, lam2)
    if lam2 is None:
        return effective_triple_observables(bob, lam1)
    return effective_triple_observables_twice(bob, lam1, lam2)


def verify_effective_observables(
    lambda1: float,
    lambda2: Optional[float] = None,
    kind: Functional | str = Functional.CHSH,
    seed: int = DEFAULT_SEED,
) -> OracleReport:
    """Channel-dual of the Bell operator vs substituted effective settings.

    Route (a) conjugates the Bell operator with the lifted Kraus operators
    (twice when ``lambda2`` is given, later step first); route (b) replaces
    each Bob setting with its closed-form effective observable.  The two
    joint-space operators must agree entrywise to 1e-10.
    """
    kind = Functional(kind)
    _, alice, bob = _optimal_mats(kind)
    d = alice[0].shape[0]
    bell = _bell_matrix(kind, alice, bob)
    conjugated = bell
    if lambda2 is not None:
        conjugated = _dual_channel(conjugated, bob, lambda2, d)
    conjugated = _dual_channel(conjugated, bob, lambda1, d)
    substituted = _bell_matrix(kind, alice, _effective_set(kind, bob, lambda1, lambda2))
    residual = float(np.max(np.abs(conjugated - substituted)))
    stage = "twice" if lambda2 is not None else "once"
    return OracleReport(
        target=f"effective-observables[{kind.value},{stage}]",
        achieved=residual,
        reference=0.0,
        gap=residual,
        residuals={"operator_identity": residual},
        iterations=1,
        seed=seed,
        converged=True,
        tolerance=IDENTITY_ATOL,
    )


def _pair_anticommutator_max(mats) -> float:
    worst = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            worst = max(
                worst,
                float(np.max(np.abs(mats[i] @ mats[j] + mats[j] @ mats[i]))),
            )
    return worst


def _perturbed_bob(kind: Functional, angle: float = math.radians(5.0)):
    """Anticommuting canonical settings with the second one tilted."""
    if kind is Functional.CHSH:
        dirs = [np.array([1.0, 0, 0]), np.array([math.sin(angle), math.cos(angle), 0])]
    else:
        dirs = [
            np.array([1.0, 0, 0]),
            np.array([math.sin(angle), math.cos(angle), 0.0]),
            np.array([0.0, 0, 1.0]),
        ]
    return [_bloch_matrix(n) for n in dirs]


def verify_anticommutator_reduction(
    lambda1: float,
    lambda2: Optional[float] = None,
    kind: Functional | str = Functional.CHSH,
    seed: int = DEFAULT_SEED,
) -> OracleReport:
    """Effective settings anticommute exactly when the underlying settings
    do, and fail to once the settings are tilted (5 degrees here): the
    numerical witness of the 'only when' direction."""
    kind = Functional(kind)
    _, _, bob = _optimal_mats(kind)
    aligned = _pair_anticommutator_max(_effective_set(kind, bob, lambda1, lambda2))
    perturbed_set = _effective_set(kind, _perturbed_bob(kind), lambda1, lambda2)
    perturbed = _pair_anticommutator_max(perturbed_set)
    converged = perturbed > 1e-3
    stage = "twice" if lambda2 is not None else "once"
    return OracleReport(
        target=f"anticommutator-reduction[{kind.value},{stage}]",
        achieved=aligned,
        reference=0.0,
        gap=aligned,
        residuals={
            "aligned_anticommutator": aligned,
            "perturbed_anticommutator": perturbed,
        },
        iterations=1,
        seed=seed,
        converged=converged,
        tolerance=IDENTITY_ATOL,
    )


def verify_norm_formulas(
    lambda1: float,
    lambda2: Optional[float] = None,
    seed: int = DEFAULT_SEED,
) -> OracleReport:
    """Spectral norms of effective settings vs their closed forms."""
    a1, b1_ = alpha_beta(lambda1)
    checks = []
    _, _, bob2 = _optimal_mats(Functional.CHSH)
    _, _, bob3 = _optimal_mats(Functional.ELEGANT)
    for eff in effective_pair_observables(bob2, lambda1):
        checks.append(("pair_norm", np.linalg.norm(eff, 2), 2 * a1 * a1))
    for eff in effective_triple_observables(bob3, lambda1):
        checks.append(
            ("triple_norm", np.linalg.norm(eff, 2), 2 * (a1 * a1 - b1_ * b1_ / 3.0))
        )
    if lambda2 is not None:
        a2, b2_ = alpha_beta(lambda2)
        for eff in effective_pair_observables_twice(bob2, lambda1, lambda2):
            checks.append(
                ("pair_twice_norm", np.linalg.norm(eff, 2), 4 * a1**2 * a2**2)
            )
        for eff in effective_triple_observables_twice(bob3, lambda1, lambda2):
            checks.append(
                (
                    "triple_twice_norm",
                    np.linalg.norm(eff, 2),
                    4 * (a1**2 - b1_**2 / 3.0) * (a2**2 - b2_**2 / 3.0),
                )
            )
    residuals: Dict[str, float] = {}
    for name, achieved, expected in checks:
        residuals[name] = max(residuals.get(name, 0.0), abs(float(achieved) - expected))
    worst = max(residuals.values())
    return OracleReport(
        target="norm-formulas",
        achieved=worst,
        reference=0.0,
        gap=worst,
        residuals=residuals,
        iterations=len(checks),
        seed=seed,
        converged=True,
        tolerance=IDENTITY_ATOL,
    )


def verify_same_observables(
    lambda1: float,
    restarts: int = 8,
    seed: int = DEFAULT_SEED,
) -> OracleReport:
    """Search over an independent second-observer setting pair and confirm
    the optimum coincides with the first observer's settings."""
    if not 0.0 < lambda1 < 1.0:
        raise DomainError(f"first-observer unsharpness must be in (0, 1), got {lambda1}")
    model, alice, bob = _optimal_mats(Functional.CHSH)
    d = 2
    a, b = alpha_beta(lambda1)
    eye = np.eye(d, dtype=np.complex128)
    rho = np.zeros((d * d, d * d), dtype=np.complex128)
    for setting in bob:
        for kmat in (a * eye + b * setting, a * eye - b * setting):
            lifted = np.kron(eye, kmat)
            rho += lifted @ model.state.matrix @ lifted
    rho /= len(bob)
    coeffs = _COEFFS[Functional.CHSH]

    def objective(params: np.ndarray) -> float:
        dirs = _directions(params.reshape(2, 2))
        total = 0.0
        for i in range(2):
            for j in range(2):
                term = np.kron(alice[i], _bloch_matrix(dirs[j]))
                total += coeffs[i, j] * float(np.real(np.trace(rho @ term)))
        return total

    rng = np.random.default_rng(seed)
    evals = 0
    best_value, best_x = -np.inf, None
    for _ in range(restarts):
        x = np.empty(4)
        x[0::2] = rng.uniform(0.0, math.pi, size=2)
        x[1::2] = rng.uniform(0.0, 2.0 * math.pi, size=2)
        value, used, _ = _coordinate_ascent(
            objective, x, span=math.pi / 2.0, passes=30, golden_iters=14, shrink=0.7
        )
        evals += used
        value, used = _polish(objective, x, value)
        evals += used
        if value > best_value:
            best_value, best_x = value, x

    reference = chsh_value(2, [lambda1, 1.0])
    found_dirs = _directions(best_x.reshape(2, 2))
    bob_dirs = np.array(
        [[np.real(np.trace(s @ m)) / 2.0 for s in _SIGMA] for m in bob]
    )
    angle = max(
        float(math.acos(min(1.0, max(-1.0, float(np.dot(found_dirs[j], bob_dirs[j]))))))
        for j in range(2)
    )
    gap = abs(best_value - reference)
    converged = angle <= 1e-3 and best_value <= reference + SUPER_OPTIMAL_SLACK
    return OracleReport(
        target=f"same-observables[lambda1={lambda1:g}]",
        achieved=best_value,
        reference=reference,
        gap=gap,
        residuals={"settings_alignment_angle": angle},
        iterations=evals,
        seed=seed,
        converged=converged,
        tolerance=MAXIMIZE_ATOL,
    )


# ---------------------------------------------------------------------------
# The full verification suite (the CLI `verify` target).


def _grid_report(name: str, reports: Sequence[OracleReport], seed: int) -> OracleReport:
    """Aggregate per-point identity reports into one grid report."""
    worst = max(r.achieved for r in reports)
    residuals: Dict[str, float] = {}
    for r in reports:
        for key, value in r.residuals.items():
            residuals[key] = max(residuals.get(key, 0.0), value)
    return OracleReport(
        target=name,
        achieved=worst,
        reference=0.0,
        gap=worst,
        residuals=residuals,
        iterations=len(reports),
        seed=seed,
        converged=all(r.converged for r in reports),
        tolerance=reports[0].tolerance,
    )


def run_verification_suite(
    seed: int = DEFAULT_SEED,
    restarts: int = DEFAULT_RESTARTS,
    grid_points: int = 21,
) -> list[OracleReport]:
    """Every oracle target: search optima at both dimensions, the sequential
    examples, and all operator-identity families on an unsharpness grid."""
    reports = []
    reports.append(maximize_sequential(Functional.CHSH, 1, [1.0], 2, restarts, seed))
    reports.append(
        maximize_sequential(Functional.ELEGANT, 1, [1.0], 2, restarts, seed + 1)
    )
    reports.append(maximize_sequential(Functional.CHSH, 1, [1.0], 4, 8, seed + 2))
    reports.append(maximize_sequential(Functional.ELEGANT, 1, [1.0], 4, 8, seed + 3))
    # Sequential search targets stay inside the quantum-advantage regime,
    # where the trade-off value is the global maximum (outside it the
    # aligned classical strategy wins and the closed form is a constrained
    # optimum instead).
    reports.append(
        maximize_sequential(
            Functional.CHSH, 2, [0.8, 1.0], 2, max(8, restarts // 2), seed + 4
        )
    )
    reports.append(
        maximize_sequential(
            Functional.CHSH, 2, [0.7, 1.0], 2, max(8, restarts // 2), seed + 5
        )
    )
    reports.append(verify_same_observables(0.8, seed=seed + 6))

    grid = np.linspace(0.0, 1.0, grid_points)
    pair_grid = list(zip(grid, np.linspace(1.0, 0.0, grid_points)))
    for kind in (Functional.CHSH, Functional.ELEGANT):
        reports.append(
            _grid_report(
                f"effective-observables[{kind.value},once,grid={grid_points}]",
                [verify_effective_observables(l1, None, kind, seed) for l1 in grid],
                seed,
            )
        )
        reports.append(
            _grid_report(
                f"effective-observables[{kind.value},twice,grid={grid_points}]",
                [
                    verify_effective_observables(l1, l2, kind, seed)
                    for l1, l2 in pair_grid
                ],
                seed,
            )
        )
        inner = grid[1:-1]
        reports.append(
            _grid_report(
                f"anticommutator-reduction[{kind.value},grid={len(inner)}]",
                [verify_anticommutator_reduction(l1, None, kind, seed) for l1 in inner]
                + [
                    verify_anticommutator_reduction(l1, l2, kind, seed)
                    for l1, l2 in pair_grid[1:-1]
                ],
                seed,
            )
        )
    reports.append(
        _grid_report(
            f"norm-formulas[grid={grid_points}]",
            [
                verify_norm_formulas(l1, l2, seed)
                for l1, l2 in zip(grid, np.linspace(0.9, 0.1, grid_points))
            ],
            seed,
        )
    )
    return reports
