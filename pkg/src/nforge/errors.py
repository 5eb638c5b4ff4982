"""Typed errors shared across the toolkit."""


class NForgeError(Exception):
    """Base class for all package-specific errors."""


class OddLattice(NForgeError):
    """Raised when an operation requires an even lattice and got an odd one."""


class NonIsotropicGlue(NForgeError):
    """Glue vector with q != 0 mod 2Z: the extension would not be even."""


class NonIntegralPairing(NForgeError):
    """Glue vectors whose mutual pairing is not integral: no common overlattice."""


class BadPrime(NForgeError):
    """Neighbor stepping at a prime dividing 2 * det, where the method breaks."""


class MassDeficit(NForgeError):
    """Genus enumeration closed under a prime but the mass does not add up."""


class BudgetExceeded(NForgeError):
    """An enumeration or backtracking search ran out of its node budget.

    ``best`` carries the best bound established so far (or None).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SymbolError(NForgeError):
    """Malformed or unparseable genus symbol."""
