"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A caller-supplied parameter is out of range or malformed."""


class DomainError(ValueError):
    """Input violates a mathematical precondition (e.g. modulus not squarefree)."""


class ResourceBudgetError(RuntimeError):
    """A computation would exceed its documented memory/time budget."""


class ConstructionError(RuntimeError):
    """The randomized obstruction-system sampler exhausted its retry budget.

    Carries the failure statistics so callers can report them.
    """

    def __init__(self, message, attempts=0, disjoint_rejections=0, coverage_rejections=0):
        super().__init__(message)
        self.attempts = attempts
        self.disjoint_rejections = disjoint_rejections
        self.coverage_rejections = coverage_rejections


class CacheFormatError(RuntimeError):
    """A cache file has the wrong magic, version, or kind."""


class CacheCorruptionError(RuntimeError):
    """A cache file is truncated or fails its checksum."""
