"""Exact construction and verification of quantization data on filtered algebras.

Build a datum (``build_metaplectic``), compute the trace, orthogonal
decomposition and quantization map (``quantize``), then check axioms
(``verify_axioms``) and the o / star products (``dixmier.star``).
"""

from .datum import (
    DatumError,
    QuantizationDatum,
    RangeError,
    compute_trace,
    galois_symmetrize,
    ortho_decompose,
    quantize,
    restrict_to_invariants,
    simplicity_check,
    verify_axioms,
)
from .enveloping import UEnvElement, casimir_scalar, kernel_J, pbw_mul, psi_extend, tau
from .examples import build_metaplectic, load_example
from .lie import LieAlgebraData
from .moyal import moyal_oracle
from .poisson import GaloisGroup, GradedPoissonStructure
from .poly import MalformedInput, MultiPoly
from .scalars import GaussianRational
from .star import StarSeries, circ, extract_Cp, homogenize, star_mul
from .weyl import WeylAlgebra, WeylElement

__version__ = "0.1.0"

__all__ = [
    "DatumError", "GaloisGroup", "GaussianRational", "GradedPoissonStructure", "LieAlgebraData",
    "MalformedInput", "MultiPoly", "QuantizationDatum", "RangeError", "StarSeries", "UEnvElement",
    "WeylAlgebra", "WeylElement", "build_metaplectic", "casimir_scalar", "circ", "compute_trace",
    "extract_Cp", "galois_symmetrize", "homogenize", "kernel_J", "load_example", "moyal_oracle",
    "ortho_decompose", "pbw_mul", "psi_extend", "quantize", "restrict_to_invariants",
    "simplicity_check", "star_mul", "tau", "verify_axioms",
]
