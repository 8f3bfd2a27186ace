from .gaussian import GaussianRational, I, ONE, ZERO
from .poly import Poly, gcd
from .forms import (
    HoloOneForm,
    MeroOneForm,
    RealPForm,
    exterior_derivative,
    primitive_part,
    realify,
    sharp,
    wedge,
)
from .numberfield import NFElement, NumberField

__all__ = [
    "GaussianRational", "I", "ONE", "ZERO", "Poly", "gcd",
    "HoloOneForm", "MeroOneForm", "RealPForm", "exterior_derivative",
    "primitive_part", "realify", "sharp", "wedge", "NFElement", "NumberField",
]
