"""Exception types shared across the package."""


class DomainError(ValueError):
    """Bad input: mismatched primes, malformed partitions, violated preconditions."""


class ResourceGuardError(RuntimeError):
    """A configured size guard refused to run an enumeration."""

    def __init__(self, guard, message):
        super().__init__(f"{guard}: {message}")
        self.guard = guard


class FormulaError(AssertionError):
    """An exact identity that must hold by construction failed (a transcription bug)."""
