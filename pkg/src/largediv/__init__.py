"""Exact certification of large-divisor criteria and threshold theorems."""

from .intersection import DivisorClass, GeneratorBasis, IntersectionForm
from .incidence import IncidenceComplex
from .toy import ToyVariety

__version__ = "0.1.0"

__all__ = ["DivisorClass", "GeneratorBasis", "IntersectionForm", "IncidenceComplex", "ToyVariety"]
