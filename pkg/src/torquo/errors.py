class TorquoError(Exception):
    """Base class for errors raised by torquo."""


class InvalidQuasiFanError(TorquoError):
    """The input is not a quasi-fan (or not a fan where one is required)."""


class NotAMapError(TorquoError):
    """A lattice homomorphism does not map the source fan into the target fan."""


class InternalContradiction(TorquoError):
    """A property guaranteed by the theory failed; indicates a bug upstream."""
