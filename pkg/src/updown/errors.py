"""Exception hierarchy shared by every module of the package."""


class UpdownError(Exception):
    """Base class for all package errors."""


class ValidationError(UpdownError):
    """An election or outcome failed structural validation."""


class DuplicateIdentifier(ValidationError):
    pass


class BallotOverlap(ValidationError):
    pass


class KOutOfRange(ValidationError):
    pass


class UnknownCandidateInBallot(ValidationError):
    pass


class EmptyGroup(UpdownError):
    pass


class EmptyT(UpdownError):
    pass


class InfeasibleOutcome(UpdownError):
    pass


# name used by the entitlement machinery for an infeasible partial outcome T
InfeasibleT = InfeasibleOutcome


class GuardExceeded(UpdownError):
    """An exhaustive enumeration would exceed its configured size bound."""


class TooLarge(UpdownError):
    pass


class NoViolationPossible(UpdownError):
    pass


class NotApplicable(UpdownError):
    pass


class ParseError(UpdownError):
    def __init__(self, message, path=None, line=None, field=None):
        self.path = path
        self.line = line
        self.field = field
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ": ".join([", ".join(where)]) if where else ""
        super().__init__(f"{prefix}: {message}" if prefix else message)


class BadParams(UpdownError):
    pass
