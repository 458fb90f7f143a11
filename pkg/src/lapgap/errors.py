"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid argument or malformed input data."""


class DomainError(InputError):
    """Structurally valid input outside an operation's domain (e.g. no k-faces)."""


class SizeLimitError(InputError):
    """Requested computation exceeds the desk-scale size caps."""


class IntegrityError(RuntimeError):
    """An internal cross-check failed; results cannot be trusted."""
