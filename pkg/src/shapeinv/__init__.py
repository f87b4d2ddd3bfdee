"""shapeinv: spectra of the shape-invariant potentials by three routes.

Closed-form energies from the shape-invariance recursion, quantization by
residue algebra on the quantum momentum function, and direct numerical
solution of the Schrodinger equation, with cross-route verification,
ladder-operator eigenfunctions, and momentum-function pole audits.
"""

from ._kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .catalog import ClassId, SuperpotentialSpec, make_spec

__version__ = "0.1.0"

__all__ = [
    "ClassId",
    "SuperpotentialSpec",
    "make_spec",
    "KERNEL_IMPLEMENTATION",
    "__version__",
]
