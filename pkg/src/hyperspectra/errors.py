"""Exception and warning classes shared by every module.

``exit_code`` is what the command-line front end returns when the error
escapes a subcommand: 2 for contract violations, 3 for exhausted budgets.
"""


class HyperspectraError(ValueError):
    exit_code = 2


class MalformedMatrix(HyperspectraError):
    pass


class NotLoxodromic(HyperspectraError):
    pass


class SameIdealPoint(HyperspectraError):
    pass


class InvalidBoundaryData(HyperspectraError):
    pass


class IncompatibleTraces(HyperspectraError):
    pass


class NotTwistNormalized(HyperspectraError):
    pass


class NotHyperbolic(HyperspectraError):
    pass


class NotSymmetricForm(HyperspectraError):
    pass


class BeyondCutoff(HyperspectraError):
    pass


class PoleProximity(HyperspectraError):
    pass


class DomainError(HyperspectraError):
    pass


class InsufficientData(HyperspectraError):
    pass


class NotParabolic(HyperspectraError):
    pass


class PossiblyIncompleteDiagram(HyperspectraError):
    pass


class DegenerateLattice(HyperspectraError):
    pass


class UnsortedInput(HyperspectraError):
    pass


class InvalidDocument(HyperspectraError):
    pass


class BudgetError(HyperspectraError):
    exit_code = 3


class CutoffTooLarge(BudgetError):
    pass


class BudgetExhausted(BudgetError):
    pass


class SearchExhausted(BudgetError):
    pass


class OverflowGuard(BudgetError):
    pass


class NonDiscreteWarning(RuntimeWarning):
    """An elliptic element turned up where a discrete torsion-free group
    should have none."""
