"""Exception types shared across the package."""


class StructuralError(Exception):
    """Operands do not fit together (arity, rank or module mismatch)."""


class ArityError(StructuralError):
    """Two polynomials with different lambda-arities were combined."""


class ModuleMismatchError(StructuralError):
    """An element or map was used with a module it does not belong to."""


class DegreeOverflowError(StructuralError):
    """A cochain degree or truncation bound outside the supported range."""


class UnsupportedModeError(Exception):
    """A solver mode that is not available for the given inputs."""


class PreconditionError(Exception):
    """A documented precondition of an operation does not hold."""
