"""witnesslab: constructive isomorphism tests for quaternion algebras and
Pfister forms over Q.

Non-isomorphic rational quaternion division algebras always disagree about
some quadratic subfield, and non-isometric anisotropic Pfister forms about
some Pfister divisor; this package computes, verifies and reports such
distinguishing witnesses, together with the exact local machinery
(Hilbert symbols, residue forms, local square classes) and independent
brute-force oracles backing every step.
"""

from .brauer import QuaternionAlgebra, embeds, hilbert, is_isomorphic, ram_set
from .places import Place
from .quadform import DiagonalForm, Monomial, PfisterForm
from .scans import BACKEND as SCAN_BACKEND
from .theorems import distinguish_pfister, distinguish_quaternions

__all__ = [
    "QuaternionAlgebra",
    "Place",
    "DiagonalForm",
    "Monomial",
    "PfisterForm",
    "hilbert",
    "ram_set",
    "is_isomorphic",
    "embeds",
    "distinguish_quaternions",
    "distinguish_pfister",
    "SCAN_BACKEND",
]

__version__ = "0.1.0"
