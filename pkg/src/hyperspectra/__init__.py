"""Computational tools for hyperbolic surfaces and cusped 3-manifolds.

The main entry points:

* :mod:`hyperspectra.moebius` -- PSL(2, C) elements, complex lengths, horoballs
* :mod:`hyperspectra.surfaces` -- pants and genus-two groups from Fenchel-Nielsen data
* :mod:`hyperspectra.spectrum` -- length spectra by orbit enumeration, and comparison
* :mod:`hyperspectra.growth` -- counting asymptotics and the logarithmic integral
* :mod:`hyperspectra.cusps` -- horoball diagrams and distinguished lines
* :mod:`hyperspectra.filling` -- Dehn filling estimates from normalized lengths
* :mod:`hyperspectra.farey` -- Farey graph distances and translation lengths
* :mod:`hyperspectra.io` -- JSON documents and SVG rendering
"""

from .errors import BudgetError, HyperspectraError, NonDiscreteWarning
from .moebius import Horoball, ProjectiveMatrix, classify, complex_length
from .surfaces import FenchelNielsenGenus2, MarkedGroup, genus2_from_fn, pants_group
from .spectrum import LengthSpectrum, compare_spectra, enumerate_spectrum
from .growth import CountingModel, crossover_length, logarithmic_integral
from .cusps import build_horoball_diagram, find_distinguished_lines
from .filling import CuspLattice, Slope, normalized_length, sufficiently_different
from .farey import FareySlope, IntegerMappingClass, farey_distance, stable_translation_length

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "HyperspectraError", "NonDiscreteWarning",
    "Horoball", "ProjectiveMatrix", "classify", "complex_length",
    "FenchelNielsenGenus2", "MarkedGroup", "genus2_from_fn", "pants_group",
    "LengthSpectrum", "compare_spectra", "enumerate_spectrum",
    "CountingModel", "crossover_length", "logarithmic_integral",
    "build_horoball_diagram", "find_distinguished_lines",
    "CuspLattice", "Slope", "normalized_length", "sufficiently_different",
    "FareySlope", "IntegerMappingClass", "farey_distance", "stable_translation_length",
]
