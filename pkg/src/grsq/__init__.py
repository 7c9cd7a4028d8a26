"""Exact generalized Reed-Solomon codes over Q with bit-width instrumentation."""

from .bounds import BoundInputs, GrowthReport, bound_table, conformance_check
from .codec import (DecodeFailure, DecodeOutcome, ErrorPattern, KeyEqSolution, corrupt,
                    decode, encode, forney, locate_errors, solve_key_equation, syndrome)
from .construction import (AlphaChoice, CodeConstructionError, GeneratorKind, GrsCode, Preset,
                           choose_alphas, enumerate_min_locators, make_code)
from .exact import (Rat, RatMatrix, RatPoly, bitwidth_matrix, bitwidth_poly, bitwidth_rat,
                    bitwidth_vector, eea_with_stop, eea_with_stop_ff, format_rat, rat)

__all__ = [
    "AlphaChoice", "BoundInputs", "CodeConstructionError", "DecodeFailure", "DecodeOutcome",
    "ErrorPattern", "GeneratorKind", "GrowthReport", "GrsCode", "KeyEqSolution", "Preset",
    "Rat", "RatMatrix", "RatPoly", "bitwidth_matrix", "bitwidth_poly", "bitwidth_rat",
    "bitwidth_vector", "bound_table", "choose_alphas", "conformance_check", "corrupt",
    "decode", "eea_with_stop", "eea_with_stop_ff", "encode", "enumerate_min_locators",
    "format_rat", "forney", "locate_errors", "make_code", "rat", "solve_key_equation",
    "syndrome",
]
