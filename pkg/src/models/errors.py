"""Exception hierarchy for reserve-system operations."""


class ReserveError(ValueError):
    """Base class for every error raised by the reserve engine."""


class InvalidInstance(ReserveError):
    """The instance violates a structural invariant."""


class CapacityMismatch(InvalidInstance):
    """Category capacities do not add up to the total number of units."""


class DuplicatePatient(InvalidInstance):
    """A patient identifier appears more than once."""


class MalformedPriority(InvalidInstance):
    """A priority order is missing a patient, repeats one, or misplaces the sentinel."""


class UnknownPatient(InvalidInstance):
    """A patient identifier is not part of the instance."""


class UnknownCategory(InvalidInstance):
    """A category identifier is not part of the instance."""


class InvalidMatching(InvalidInstance):
    """A matching does not cover the patient set or exceeds a capacity."""


class InvalidProfile(ReserveError):
    """A preference profile is inconsistent with eligibility."""


class InvalidPrecedence(ReserveError):
    """A precedence order is not a permutation of the categories."""


class NotAdjacent(InvalidPrecedence):
    """The two categories are not immediate neighbours in the precedence order."""


class InvalidBaseline(ReserveError):
    """A baseline instance is inconsistent."""


class InvalidSmartConfig(ReserveError):
    """The number of unreserved units processed first is out of range."""


class InvalidGraph(ReserveError):
    """A bipartite graph references undeclared nodes or has negative capacities."""


class AxiomViolation(ReserveError):
    """The matching fails at least one of the three axioms."""


class InstanceTooLarge(ReserveError):
    """The instance exceeds the size guard of an exhaustive procedure."""


class PreconditionViolated(ReserveError):
    """The hypotheses of a comparative-statics check are not met."""


class InvalidSettings(ReserveError):
    """The configuration file is unreadable or holds an out-of-range value."""
