"""coring-lab: exact constructive checks for corings built from bimodules."""

__version__ = "0.1.0"

from .fields import GF, QQ, Field, PrimeField, RationalField, field_of_characteristic
from .linalg import Mat, QuotientPresentation, cokernel, kernel_basis, solve_linear

__all__ = [
    "GF",
    "QQ",
    "Field",
    "PrimeField",
    "RationalField",
    "field_of_characteristic",
    "Mat",
    "QuotientPresentation",
    "cokernel",
    "kernel_basis",
    "solve_linear",
    "__version__",
]
