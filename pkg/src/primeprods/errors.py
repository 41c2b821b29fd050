"""Shared exception types."""


class CapacityError(ValueError):
    """A size cap (modulus, sieve limit) would be exceeded."""


class NotInvertibleError(ValueError):
    """Requested a modular inverse of a non-unit."""


class IncompatibleCountsError(ValueError):
    """Residue-count distributions with mismatched modulus or cutoff."""


class ResourceBudgetError(RuntimeError):
    """An enumeration would exceed the configured iteration budget."""


class UnsupportedCaseError(ValueError):
    """Parameter combination outside the proven admissibility cases."""
