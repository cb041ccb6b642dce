"""Exact cyclotomic crossed products, metacyclic unit subgroups and the
involutions and invariants attached to them."""
from .arith import RationalModOne
from .crossed import CrossedElement, CrossedProductAlgebra, CyclicGaloisDatum
from .cyclotomic import CycloNumber, GaloisElement, SubfieldDatum
from .groups import GroupElement, MetacyclicPresentation, make_hewett_group
from .hewett import InvariantProfile, build_dprime, classify, invariant_profile, verify_embedding

__all__ = [
    "RationalModOne",
    "CycloNumber",
    "GaloisElement",
    "SubfieldDatum",
    "CyclicGaloisDatum",
    "CrossedProductAlgebra",
    "CrossedElement",
    "MetacyclicPresentation",
    "GroupElement",
    "make_hewett_group",
    "InvariantProfile",
    "invariant_profile",
    "classify",
    "build_dprime",
    "verify_embedding",
]
