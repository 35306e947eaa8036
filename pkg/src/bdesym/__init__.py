"""Exact symmetry analysis of binary differential equations ``a dy^2 + 2b dx dy + c dx^2 = 0``."""
from .algebra import (
    ComplexMapForm,
    ComplexPoly,
    GaussianRational,
    RealPoly,
    complex_form_to_triple,
    complex_to_real,
    real_to_complex,
    triple_to_complex_form,
)
from .equivariance import (
    BDE,
    DetectionReport,
    check_equivariance,
    detect_symmetries,
    discriminant,
    morse_symmetry_candidates,
    morse_value,
)
from .groups import EtaSpec, GroupElement, GroupSpec, SymmetryGroup, act_on_form, validate_eta
from .invariants import (
    GeneralForm,
    GeneratorSet,
    HilbertBasis,
    algorithm_3_1,
    compare_to_table,
    degree_bounded_equivariants,
    general_form,
    hilbert_basis,
    reflection_closure,
    simplify_generators,
    zn_generators,
)
from .parsing import parse_group, parse_poly

__version__ = "0.1.0"
