"""Exception hierarchy.

Every error raised deliberately by the package derives from
:class:`EquilocError`; the CLI maps the three families below onto its exit
codes (1 input, 2 resource, 3 invariant violation).
"""


class EquilocError(Exception):
    pass


class InputError(EquilocError, ValueError):
    """Invalid user input: bad shapes, mismatched lattices, malformed text."""


class LatticeMismatch(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class NonHomogeneousIdeal(InputError):
    def __init__(self, generator, degrees):
        self.generator = generator
        self.degrees = tuple(degrees)
        shown = ", ".join(str(d) for d in self.degrees)
        super().__init__(
            f"generator {generator} is not homogeneous (component degrees {{{shown}}})"
        )


class NotFactored(InputError):
    """A class that had to be a product of linear forms was not."""


class NotInEC(InputError):
    """A denominator is not the Euler class of a C-nontrivial representation."""


class DegenerateLocalization(InputError):
    """An Euler class that must be inverted is zero in the coefficient field."""


class ResourceError(EquilocError):
    pass


class GroebnerBudgetExceeded(ResourceError):
    pass


class WindowTooSmall(ResourceError):
    pass


class InvariantViolation(EquilocError):
    """An internal consistency check failed; indicates a bug, not bad input."""
