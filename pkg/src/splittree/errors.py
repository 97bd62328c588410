"""Exception types shared across the library."""


class InputError(ValueError):
    """Raised when an instance is malformed (empty, negative bounds, k < 2)."""


class LimitError(RuntimeError):
    """Raised when a configured resource limit (size, time, recursion depth)
    is exceeded.  Never stands in for a wrong verdict."""
