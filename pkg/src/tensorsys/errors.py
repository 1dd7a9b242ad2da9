"""Exception hierarchy shared across the package."""


class TensorSystemError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(TensorSystemError):
    """A table references an unknown label or is otherwise malformed."""


class MultiplicityError(TensorSystemError):
    """A fusion coefficient outside {0, 1} was supplied."""

    def __init__(self, triple, value):
        self.triple = triple
        self.value = value
        super().__init__(f"fusion coefficient N{triple} = {value} is not in {{0, 1}}")


class OrderingError(TensorSystemError):
    """An operation was called before its prerequisite validation step."""


class IncompleteGaugeError(TensorSystemError):
    """A gauge transform is missing an entry on the fusion support."""


class SingularBlockError(TensorSystemError):
    """An F block that must be inverted is numerically singular."""

    def __init__(self, block, smallest_singular_value):
        self.block = block
        self.smallest_singular_value = smallest_singular_value
        super().__init__(
            f"F block {block} is singular (smallest singular value "
            f"{smallest_singular_value:.3e})"
        )


class PreconditionError(TensorSystemError):
    """A documented operation precondition does not hold."""


class UnsupportedError(TensorSystemError):
    """The request is outside what the data supports (e.g. rules-only entries)."""
