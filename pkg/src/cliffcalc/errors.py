"""Exception hierarchy for the toolkit.

Two broad families matter to callers (and to the CLI exit codes):
``InputError`` for malformed or out-of-contract inputs, ``NumericError``
for computations that ran but could not deliver a trustworthy result.
"""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ToolkitError):
    """Invalid input: bad syntax, wrong rank, precondition violated."""

    exit_code = 1


class NumericError(ToolkitError):
    """Numerical failure: non-convergence, singularity, violated invariant."""

    exit_code = 2


class MaskRangeError(InputError):
    """Blade bitmask does not fit the algebra rank."""


class RankMismatchError(InputError):
    """Operands live in Clifford algebras of different rank."""


class FormatError(InputError):
    """Malformed textual or JSON representation of a value."""


class ParseError(InputError):
    """Expression syntax error; carries the source position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class DomainError(InputError):
    """A required spectrum or point lies outside the working planar domain."""


class NoContourError(InputError):
    """No admissible contour exists for the requested points and domain."""


class DegenerateDirectionError(InputError):
    """Operation needs a nonreal paravector (no imaginary direction present)."""


class SingularInputError(NumericError):
    """Inversion of a (numerically) zero or singular element requested."""


class SpectralPointError(NumericError):
    """Resolvent requested at (or too close to) a spectral point."""


class ContourSpectrumError(NumericError):
    """A contour passes through or too close to the spectrum it must enclose."""


class ConvergenceError(NumericError):
    """Iterative procedure (quadrature doubling, root polish) did not converge."""


class StemViolationError(NumericError):
    """A result that should be fixed by the real-structure conjugation is not."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SaturationError(NumericError):
    """A set claimed spectrally saturated gave slice-dependent answers."""
