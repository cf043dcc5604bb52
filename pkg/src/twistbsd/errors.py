"""Exception hierarchy shared by every module."""


class TwistError(Exception):
    """Base class for all library errors."""


class ValidationError(TwistError, ValueError):
    """Bad user-supplied parameters (CLI exit code 2)."""


class NonPrime(ValidationError):
    pass


class CapExceeded(TwistError):
    """A computation would exceed a configured size cap (CLI exit code 3)."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class IdentityFailure(TwistError):
    """An exact identity that must hold did not (CLI exit code 4)."""


class NotRational(IdentityFailure):
    pass


class ZeroElement(TwistError, ValueError):
    pass


class NotASubfield(TwistError, ValueError):
    pass


class OrderNotDividing(TwistError, ValueError):
    pass


class TrivialCharacter(TwistError, ValueError):
    pass


class DegenerateCharacters(TwistError, ValueError):
    pass


class ConductorMismatch(TwistError, ValueError):
    pass


class BadEmbedding(TwistError, ValueError):
    pass


class WrongResidue(TwistError, ValueError):
    """Operation only defined for one residue class of p mod 6."""


class FieldMissing(TwistError, LookupError):
    pass


class OutOfRange(TwistError, ValueError):
    pass
