class ValidationError(ValueError):
    """Input violates a structural or domain invariant (shape, hermiticity, positivity, ...)."""


class SizeError(ValueError):
    """Permutation enumeration requested beyond the configured ``n_max``."""


class ParseError(ValueError):
    """Document is malformed (bad JSON, missing keys, wrong shapes)."""
