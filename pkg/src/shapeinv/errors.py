"""Exception hierarchy shared by all shapeinv modules."""


class ShapeinvError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(ShapeinvError):
    """Superpotential parameters violate a class constraint."""


class InvalidDomain(ShapeinvError):
    """Domain descriptor inconsistent with the potential class."""


class DomainError(ShapeinvError):
    """Coordinate at or outside the open domain endpoints."""


class NotBound(ShapeinvError):
    """Requested level index exceeds the bound-state count."""


class GridTooSmall(ShapeinvError):
    """Eigenvalue not converged with respect to domain size."""


class GridTooCoarse(ShapeinvError):
    """Finite-difference stencil error too large on this grid."""


class SingularPotential(ShapeinvError):
    """Potential non-finite at an interior grid node."""


class NoSignChange(ShapeinvError):
    """Root bracket does not contain a sign change."""


class MaxIterations(ShapeinvError):
    """Iterative refinement failed to converge."""


class ZeroFunction(ShapeinvError):
    """Wavefunction identically zero; cannot normalize."""


class NonNormalizable(ShapeinvError):
    """Ground-state candidate does not decay at the domain boundary."""


class BranchPointCrossed(ShapeinvError):
    """Energy outside the admissible range of a residue square root."""


class NoRoot(ShapeinvError):
    """Quantization function has no sign change on the search interval."""


class NodesTooClose(ShapeinvError):
    """Wavefunction nodes not isolated enough for pole estimates."""


class GridMismatch(ShapeinvError):
    """Operation requires both wavefunctions on the same grid."""


class UnsupportedClass(ShapeinvError):
    """Operation implemented only for a subset of potential classes."""
