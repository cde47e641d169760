"""Exact skew-series algebra, free-subalgebra certificates and related decision procedures."""

from .errors import (InstanceError, NotAUnit, OrefreeError, ParseError, PoleError, PrecisionError, SigmaMismatch,
                     UnsupportedFactorization, UnsupportedInstance)
from .freeness import (DEPENDENT, INCONCLUSIVE, INDEPENDENT, NOT_DETERMINED, EscalationPolicy, FreenessCertificate,
                       Generator, SpecializationReport, certify_free, combine_witnesses, dependence_over_kt,
                       independence_over_k, power_independence, shifted_power_probe)
from .instances import InstanceSpec, load_instance, registry, run_pipeline
from .polys import Poly
from .quaternion import (QuatPoly, QuatRat, Quaternion, centralizer_basis, clear_left_denominator, embed_series,
                         quat_arith, verify_centralizer_in_Dt)
from .ratfunc import RatFunc, SigmaSpec, dispersion, evaluate_at, partial_fractions, ratfunc_arith, sigma_apply
from .sigma_eq import DifferenceVerdict, solve_additive, thm23_hypothesis, weyl_element_exists
from .skew import (SkewPoly, SkewSeries, expand_right_fraction, series_invert, skew_mul, word_to_series)
from .words import FactorLanguage, GrowthProfile, build_language, find_periodic_word, gap_dichotomy, growth

__version__ = "0.1.0"

__all__ = [
    "DEPENDENT",
    "DifferenceVerdict",
    "EscalationPolicy",
    "FactorLanguage",
    "FreenessCertificate",
    "Generator",
    "GrowthProfile",
    "INCONCLUSIVE",
    "INDEPENDENT",
    "InstanceError",
    "InstanceSpec",
    "NOT_DETERMINED",
    "NotAUnit",
    "OrefreeError",
    "ParseError",
    "PoleError",
    "Poly",
    "PrecisionError",
    "QuatPoly",
    "QuatRat",
    "Quaternion",
    "RatFunc",
    "SigmaMismatch",
    "SigmaSpec",
    "SkewPoly",
    "SkewSeries",
    "SpecializationReport",
    "UnsupportedFactorization",
    "UnsupportedInstance",
    "build_language",
    "centralizer_basis",
    "certify_free",
    "clear_left_denominator",
    "combine_witnesses",
    "dependence_over_kt",
    "dispersion",
    "embed_series",
    "evaluate_at",
    "expand_right_fraction",
    "find_periodic_word",
    "gap_dichotomy",
    "growth",
    "independence_over_k",
    "load_instance",
    "partial_fractions",
    "power_independence",
    "quat_arith",
    "ratfunc_arith",
    "registry",
    "run_pipeline",
    "series_invert",
    "shifted_power_probe",
    "sigma_apply",
    "skew_mul",
    "solve_additive",
    "thm23_hypothesis",
    "verify_centralizer_in_Dt",
    "weyl_element_exists",
    "word_to_series",
]
