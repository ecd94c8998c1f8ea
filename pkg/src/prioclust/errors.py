"""Exception types shared across the package."""


class InstanceError(ValueError):
    """Malformed or invalid instance document."""


class PreconditionError(ValueError):
    """An algorithm was applied to an instance outside its domain."""


class Infeasible(Exception):
    """No solution exists at any candidate alpha (or at the alpha tried)."""


class Undecided(Exception):
    """The cutting-plane loop hit its iteration cap without a verdict."""


class InvariantViolation(AssertionError):
    """A structural guarantee of the algorithm failed; indicates a bug."""
