"""Exception types.  Each carries the CLI exit code it maps to."""


class FermextError(Exception):
    exit_code = 2


class InvalidInput(FermextError):
    """Malformed or inconsistent input data."""


class InvalidFermion(InvalidInput):
    """The chosen fermion is not a nonzero element of order two."""


class NotACocycle(InvalidInput):
    """Data that should satisfy a cocycle condition does not."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(FermextError):
    """A search or linear-algebra size exceeds the configured budget."""


class Unsupported(FermextError):
    """Input outside the implemented scope (for example non-pointed targets)."""


EnumerationTooLarge = BudgetExceeded


class InvalidParameter(InvalidInput):
    """A parameter lies outside its admissible range."""


class InvalidSequence(InvalidInput):
    """A short sequence of modules is not exact."""


class InvalidMap(InvalidInput):
    """A coefficient map is not a G-equivariant homomorphism."""


class NormalizationRequired(InvalidInput):
    """Action data must satisfy mu(g; f, f) = 0 for this operation."""


class InvalidMu(InvalidInput):
    """mu does not make each rho(g) a monoidal functor."""
