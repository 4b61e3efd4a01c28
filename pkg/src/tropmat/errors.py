"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or precondition-violating input."""


class TheoremViolation(RuntimeError):
    """A verified identity failed: signals a bug or an input outside the theory."""
