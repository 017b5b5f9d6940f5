"""Exact toolkit for the D(S3) anyon model.

Submodules
----------
exact_arith
    Exact arithmetic in the cyclotomic field Q(zeta_72).
anyon_model
    F- and R-symbols, modular data and consistency checks.
fusion_space
    Fusion-tree bases, states and F-moves.
braid_engine
    Braid generators on fusion spaces, sectors and normalizations.
group_closure
    Finite matrix group closure and structure.
qutrit_models
    Qutrit encodings and braid-synthesized gates.
adaptive_sim
    Measurement-based adaptive protocols: exact trees and sampling.
cli
    The ``anyonkit`` command.
"""
from .anyon_model import AnyonModel, ds3_model
from .exact_arith import Cyclotomic, ExactMatrix, parse
from .fusion_space import FusionBasis, StateVector, TreeShape, enumerate_basis

__version__ = "0.1.0"

__all__ = [
    "AnyonModel",
    "Cyclotomic",
    "ExactMatrix",
    "FusionBasis",
    "StateVector",
    "TreeShape",
    "ds3_model",
    "enumerate_basis",
    "parse",
]
