"""Exception types shared across the library."""


class ShapeError(ValueError):
    """Operands live over incompatible objects or semirings."""


class CapabilityError(RuntimeError):
    """The semiring does not support the requested operation."""


class DistributionError(ValueError):
    """Weights do not form a normalized finitely supported distribution."""


class WitnessError(ValueError):
    """A supplied witness fails its defining property."""


class LoadError(ValueError):
    """Malformed or inconsistent input file."""
