"""Exception types shared across the package."""


class NCFError(ValueError):
    """Base class for all input/contract errors raised by nestcan."""


class InvalidLength(NCFError):
    pass


class DimensionMismatch(NCFError):
    pass


class BadVariable(NCFError):
    pass


class InvalidForm(NCFError):
    pass


class NotReduced(NCFError):
    """The function has a non-essential variable."""


class NotNCF(NCFError):
    """The function is not nested canalizing."""


class TooLarge(NCFError):
    pass


class InvalidProfile(NCFError):
    pass


class BadLayer(NCFError):
    pass


class OutOfScope(NCFError):
    pass


class InvalidRequest(NCFError):
    pass
