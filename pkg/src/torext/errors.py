"""Exception hierarchy shared by every module in the package."""


class TorextError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TorextError):
    """Input data violates a documented precondition or schema."""


class ResourceError(TorextError):
    """An enumeration or stabilization budget was exhausted."""


class CapExceeded(ResourceError):
    """An exhaustive search would exceed its configured cap."""


class NotStabilized(ResourceError):
    """Truncated dimensions did not stabilize within the degree cap."""


class DisconnectedGraph(InputError):
    """The dual graph is not connected."""


class InvalidFiber(InputError):
    """Intersection data fails validation."""


class DegreeNotZero(InputError):
    """A horizontal incidence vector has nonzero total degree."""


class PolynomialSyntaxError(InputError):
    """Polynomial text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(InputError):
    """Polynomial text names a variable outside the declared list."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r} (at position {position})")
        self.name = name
        self.position = position


class PointNotOnFiber(InputError):
    """The point does not lie on the special fiber of the chart."""


class CenterNotOnFiber(InputError):
    """The blow-up center does not lie on the special fiber."""


class NotHypersurface(InputError):
    """Blow-ups are only supported on one-equation two-variable charts."""


class NotTriangular(InputError):
    """Component equations do not form a triangular system."""


class UnknownExample(InputError):
    """No embedded case with the requested identifier."""
