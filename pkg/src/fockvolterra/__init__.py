"""Volterra-type operators on Fock-Sobolev spaces: norms, kernels,
classification and spectra, computed from exact function representations."""

__version__ = "0.1.0"

from ._backend import COMPILED, NAME as BACKEND
from .config import DEFAULT, NumericalError, QuadConfig
from .weight import Weight, normalizer, psi, psi_prime
from .funcrep import (
    ComplexPolynomial,
    EntireFunction,
    ExpPoly,
    Poly,
    PolyCombination,
    ResolventImage,
    VolterraImage,
    differentiate,
    evaluate,
    exp_poly,
    exp_poly_membership,
    resolvent_apply,
    volterra_apply,
)
from .planequad import NormResult, integrate_plane, integrate_segment, sup_search
from .norms import EquivalenceReport, lemma2_check, norm, norm_p, norm_p_lp, norm_sup, norm_sup_lp
from .kernels import KernelModel, kernel_eval, kernel_norm_sq, moments, normalized_kernel
from .classify import ClassifierVerdict, classify_from_sup, classify_into_sup, symbol_ratio
from .spectrum import SpectrumDescription, in_spectrum, resolvent_norm_scan, spectrum_of

__all__ = [name for name in dir() if not name.startswith("_")]
