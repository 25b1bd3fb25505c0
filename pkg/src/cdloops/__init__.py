"""Signed basis loops of the Cayley-Dickson algebras and their subloop structure."""

from .algebra import (
    AlgebraElement,
    alg_multiply,
    check_algebra_identity,
    conjugate,
    find_zero_divisor,
    norm_sq,
    subalgebra_basis,
)
from .cdcore import LoopTable, build_cd_loop, multiply_basis, negate
from .identities import IDENTITY_NAMES, check_identity, identity_report
from .isoclass import CompositionProfile, IsoClass, are_isomorphic, classify, composition_profile
from .lattice import Lattice, build_lattice, export_dot, is_modular, join, meet
from .loopcore import ElementSet, closure, element_order, inverse_of, is_associative, is_latin_square
from .subloops import Subloop, enumerate_subloops, is_normal, maximal_subloops

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "CompositionProfile",
    "ElementSet",
    "IDENTITY_NAMES",
    "IsoClass",
    "Lattice",
    "LoopTable",
    "Subloop",
    "alg_multiply",
    "are_isomorphic",
    "build_cd_loop",
    "build_lattice",
    "check_algebra_identity",
    "check_identity",
    "classify",
    "closure",
    "composition_profile",
    "conjugate",
    "element_order",
    "enumerate_subloops",
    "export_dot",
    "find_zero_divisor",
    "identity_report",
    "inverse_of",
    "is_associative",
    "is_latin_square",
    "is_modular",
    "is_normal",
    "join",
    "maximal_subloops",
    "meet",
    "multiply_basis",
    "negate",
    "norm_sq",
    "subalgebra_basis",
]
