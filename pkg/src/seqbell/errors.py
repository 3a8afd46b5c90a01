"""Exception taxonomy shared by every seqbell module."""


class SeqbellError(Exception):
    """Base class for all errors raised by this package."""


class DimensionLimitError(SeqbellError):
    """A tensor product would exceed the configured dimension cap."""


class ContractViolationError(SeqbellError):
    """An operator argument breaks a structural precondition (wrong shape,
    not Hermitian, not dichotomic, mismatched dimensions)."""


class ConstructionError(SeqbellError):
    """A state or model constructor could not satisfy its invariants;
    the message names the invariant that failed."""


class DomainError(SeqbellError):
    """A scalar argument lies outside its admissible range."""


class InconsistencyError(SeqbellError):
    """Observed values are mutually incompatible (empty certified interval,
    solved unsharpness outside [0, 1], unphysical input)."""
