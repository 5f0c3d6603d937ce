"""Exception hierarchy. Each family maps to one CLI exit code."""


class FlagOrbitError(Exception):
    exit_code = 1


class ParseError(FlagOrbitError):
    exit_code = 2


class ValidationError(FlagOrbitError):
    exit_code = 3


class NotHermitian(ValidationError):
    pass


class NotSPP(ValidationError):
    pass


class NotSPI(ValidationError):
    pass


class NotSymmetricProduct(ValidationError):
    pass


class RankDeficient(ValidationError):
    pass


class NotInRCircle(ValidationError):
    pass


class InvalidClan(ValidationError):
    pass


class ContainsD(ValidationError):
    pass


class SizeMismatch(ValidationError):
    pass


class UnrealizableProfile(ValidationError):
    pass


class SizeGuardExceeded(FlagOrbitError):
    exit_code = 4


class CertificationFailure(FlagOrbitError):
    """Carries a JSON-serializable witness so the failure can be replayed."""

    exit_code = 5

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness if witness is not None else {}
