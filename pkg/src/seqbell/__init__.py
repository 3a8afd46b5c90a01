"""Sequential Bell tests with unsharp measurements.

Simulation of sequential two- and three-setting Bell experiments, closed-form
trade-off curves, device-independent certification of unsharpness parameters,
and an independent numerical-optimization oracle validating the closed forms.
"""

from .bell import (
    BellFunctional,
    Functional,
    SequentialTranscript,
    bell_functional,
    bell_operator,
    correlator,
    run_sequence,
)
from .certify import (
    CertificationResult,
    certify_chsh_pair,
    certify_elegant_pair,
    certify_elegant_triple,
    chsh_lambda1_interval,
    elegant_lambda1_interval,
    elegant_lambda1_interval3,
    elegant_lambda2_interval,
    lambda3_min,
)
from .closedform import (
    CHSH_OPT,
    ELEGANT_OPT,
    BoundSet,
    bounds,
    chsh_tradeoff,
    chsh_value,
    elegant_tradeoff2,
    elegant_tradeoff3,
    elegant_value,
)
from .errors import (
    ConstructionError,
    ContractViolationError,
    DimensionLimitError,
    DomainError,
    InconsistencyError,
    SeqbellError,
)
from .instruments import (
    UnsharpInstrument,
    alpha_beta,
    apply_sequential_channel,
    kraus,
    povm_elements,
)
from .models import (
    ChshModel,
    ElegantModel,
    bloch_observable,
    chsh_optimal_model,
    constraint_residual,
    elegant_optimal_model,
)
from .qcore import (
    BipartiteState,
    DichotomicObservable,
    Operator,
    anticommutator,
    expectation,
    identity,
    make_max_entangled,
    partial_trace,
    tensor,
)

__version__ = "0.1.0"
