"""Exact modular data of affine sl2: the SL(2, Z/NZ) representations of WZW models."""

from . import cyclotomic, galois_kernel, modgroup, qseries, wzwrep
from .cyclotomic import Cyclotomic
from .galois_kernel import KernelReport, SignedPermutation, genus, image_order
from .modgroup import ResidueMatrix, STWord, decompose, lift
from .qseries import QSeries, character
from .wzwrep import RepMatrix, conductor, evaluate_word, rho_closed, rho_S, rho_T

__all__ = [
    "cyclotomic",
    "modgroup",
    "wzwrep",
    "galois_kernel",
    "qseries",
    "Cyclotomic",
    "ResidueMatrix",
    "STWord",
    "RepMatrix",
    "QSeries",
    "KernelReport",
    "SignedPermutation",
    "conductor",
    "decompose",
    "lift",
    "evaluate_word",
    "rho_S",
    "rho_T",
    "rho_closed",
    "character",
    "genus",
    "image_order",
]

__version__ = "1.0.0"
