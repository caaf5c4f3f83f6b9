"""Exception types shared across the package.

The split mirrors the kinds of failure the estimators distinguish:
bad inputs (domain / validation), insufficient precomputed data
(coverage), blown work budgets (resource), broken caller contracts
(contract), and numerically untrustworthy output (precision, reliability).
"""


class DomainError(ValueError):
    """Input outside the mathematical domain of the operation."""


class ValidationError(ValueError):
    """Structured input fails its declared invariants."""


class CoverageError(ValueError):
    """A prime table or schedule does not cover the requested range."""


class ResourceLimitError(RuntimeError):
    """Estimated work exceeds the configured budget."""


class ContractError(RuntimeError):
    """Operation invoked outside its stated precondition."""


class PrecisionLossError(RuntimeError):
    """Result cannot be delivered at the promised accuracy."""


class ReliabilityError(RuntimeError):
    """Statistical estimate too degenerate to report (e.g. tiny ESS)."""
