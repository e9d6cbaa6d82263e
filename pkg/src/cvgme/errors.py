"""Exception types raised across the package."""


class CVGMEError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(CVGMEError, ValueError):
    pass


class NumericInputError(CVGMEError, ValueError):
    pass


class DecompositionError(CVGMEError, ValueError):
    """Cholesky factorization hit a non-positive pivot."""

    def __init__(self, pivot, value):
        self.pivot = pivot
        self.value = value
        super().__init__(
            f"matrix is not positive definite: pivot {pivot} is {value!r}"
        )


class InvalidSplitError(CVGMEError, ValueError):
    pass


class InvalidSymplecticError(CVGMEError, ValueError):
    pass


class UnsupportedOrderError(CVGMEError, ValueError):
    pass


class InvalidRootError(CVGMEError, ValueError):
    pass


class InvalidTreeError(CVGMEError, ValueError):
    pass


class SizeLimitError(CVGMEError, ValueError):
    pass


class UnknownFixtureError(CVGMEError, KeyError):
    pass


class StructuralError(CVGMEError, ValueError):
    """A labeling does not give at most two-mode quadrature combinations."""

    def __init__(self, column):
        self.column = column
        super().__init__(
            f"labeling fails the single-nonzero column check at column {column}"
        )


class ParameterError(CVGMEError, ValueError):
    pass


class ConstructionInfeasibleError(CVGMEError, ValueError):
    """The witness cannot detect any state: Tr[Z_W] >= 1."""

    def __init__(self, trace):
        self.trace = trace
        super().__init__(f"Tr[Z_W] = {trace:.6g} >= 1, no detectable state exists")


class PreconditionError(CVGMEError, ValueError):
    pass
