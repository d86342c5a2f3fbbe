"""Exception hierarchy for jcforge.

Every failure the library signals deliberately derives from JCForgeError,
so callers (and the CLI exit-code mapping) can distinguish our diagnostics
from genuine bugs.
"""


class JCForgeError(Exception):
    """Base class for all jcforge errors."""


class FieldMismatch(JCForgeError):
    """Operands belong to different field specs."""


class DivisionByZero(JCForgeError, ZeroDivisionError):
    """Division or inversion of a zero element."""


class ParseError(JCForgeError):
    """Malformed text input (field, polynomial, matrix or partition)."""


class NotPrime(ParseError):
    """A field modulus that is not a prime in the supported range."""


class RaggedRows(ParseError):
    """Matrix literal whose rows have differing lengths."""


class NotSquare(JCForgeError):
    """A square matrix was required."""


class Singular(JCForgeError):
    """A non-invertible matrix where an inverse was required."""


class SingularInput(Singular):
    """A polynomial matrix with zero determinant."""


class DegreeTooLarge(JCForgeError):
    """Irreducibility search space exceeds the configured budget."""


class BudgetExceeded(JCForgeError):
    """Partition enumeration beyond the configured sum bound."""


class NotIrreducible(JCForgeError):
    """A polynomial required to be irreducible is not."""


class NotPrimary(JCForgeError):
    """Minimal polynomial of the input is not a power of the given f."""


class DimensionMismatch(JCForgeError):
    """Matrix size incompatible with deg f."""


class NotInImage(JCForgeError):
    """Partition outside the image of the type collapse map."""


class NoSuchType(JCForgeError):
    """Requested decomposition type is not admissible for the input."""


class TypeMismatch(JCForgeError):
    """Partition pair with differing sums where equality is required."""


class NotDivisible(JCForgeError):
    """A rank not divisible by deg f; the decomposition precondition fails."""


class InternalInconsistency(JCForgeError):
    """Two redundant computation routes disagree; indicates a bug."""
