"""Pairings on Jacobians of genus 1 and 2 curves over finite fields."""
from .curve import CharPoly, CurveParams, frobenius_charpoly, validate_curve
from .field import FieldDescriptor, FieldElement, build_extension
from .jacobian import Jacobian, ReducedDivisor
from .pairings import PairingContext, pairing_dispatch

__all__ = [
    "CharPoly", "CurveParams", "FieldDescriptor", "FieldElement", "Jacobian",
    "PairingContext", "ReducedDivisor", "build_extension", "frobenius_charpoly",
    "pairing_dispatch", "validate_curve",
]
__version__ = "0.1.0"
