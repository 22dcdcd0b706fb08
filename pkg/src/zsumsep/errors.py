class ZsumError(Exception):
    pass


class ParseError(ZsumError, ValueError):
    pass


class GroupMismatch(ZsumError, ValueError):
    pass


class DimensionMismatch(ZsumError, ValueError):
    pass


class BudgetExceeded(ZsumError):
    """A configured search budget would be exceeded; never truncate silently."""


class Unreachable(ZsumError, ValueError):
    pass


class PreconditionViolated(ZsumError, ValueError):
    pass
