"""Exception types shared across the package."""


class BialgdError(Exception):
    pass


class NoSolution(BialgdError):
    """The right-hand side is not in the column space."""


class Singular(BialgdError):
    pass


class NotInSubspace(BialgdError):
    pass


class ParentMismatch(BialgdError):
    pass


class InvalidAlgebra(BialgdError):
    """Structure constants violate associativity or the unit laws."""


class InvalidExtension(BialgdError):
    pass


class OrderCapExceeded(BialgdError):
    pass


class NotD2(BialgdError):
    def __init__(self, side, message=None):
        self.side = side
        super().__init__(message or f"extension is not {side} depth two")


class NotFound(BialgdError):
    """A certificate shows that no Frobenius system exists."""


class Inconclusive(BialgdError):
    pass


class NotSeparable(BialgdError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NontrivialCentralizer(BialgdError):
    pass


class IllDefined(BialgdError):
    pass
