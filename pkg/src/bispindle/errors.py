class BispindleError(Exception):
    """Base class for all library errors."""


class PreconditionError(BispindleError):
    """An operation was called on inputs violating its contract."""


class LimitExceeded(BispindleError):
    """An exact computation was requested beyond its configured size limit."""


class ExtractionFailed(BispindleError):
    """A witness extraction could not produce a verifiable certificate.

    Raised loudly instead of returning an unverified object; carries the
    diagnostic context that was available at the failure point.
    """
