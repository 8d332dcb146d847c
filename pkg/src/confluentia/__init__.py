"""Singularity classification, Mathieu/oscillator special functions and the
alpha-contraction of m(2) onto h(3), with a multiresolution convergence harness."""

from .algebra import INF, OdeSpec, RationalPoly, make_ode, validate
from .contraction import (AlgebraElement, BracketTable, bracket, confluence_sweep,
                          deformed_lame_ode, deformed_mathieu_ode, jacobi_defect,
                          limit_target, mu_of, param_map)
from .equations import algebraic_mathieu_ode, lame_ode, oscillator_algebraic_ode
from .exceptions import ConfluentiaError
from .singularity import SMultisymbol, classify, confluence_type, smultisymbol
from .special import Parity, mathieu_char, mathieu_eigenpair

__version__ = "0.1.0"

__all__ = [
    "INF", "OdeSpec", "RationalPoly", "make_ode", "validate",
    "AlgebraElement", "BracketTable", "bracket", "confluence_sweep", "deformed_lame_ode",
    "deformed_mathieu_ode", "jacobi_defect", "limit_target", "mu_of", "param_map",
    "algebraic_mathieu_ode", "lame_ode", "oscillator_algebraic_ode",
    "ConfluentiaError", "SMultisymbol", "classify", "confluence_type", "smultisymbol",
    "Parity", "mathieu_char", "mathieu_eigenpair",
]
