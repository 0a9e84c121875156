"""Asymptotics of the Kashaev invariant of torus knots."""

from .errors import (
    BaseMismatch,
    DivergenceWarning,
    InvalidComponent,
    InvalidKnot,
    NotCoprime,
    NotSimplePole,
    PoleProximity,
    PrecisionExhausted,
    TorusAsymError,
)
from .exact import TorusKnot, a_coefficients, alexander_polynomial, make_torus_knot, tau_series
from .charvar import CharVarComponent, enumerate_components
from .torsion import nonabelian_torsion, tau_eval, tau_residue, verify_residue_theorem
from .chern_simons import cs_invariant, inner_product, normalize
from .asymptotics import kashaev_expansion, main_theorem_check, residue_term, z_invariant
from .quadrature import choose_parameters, kashaev_integral

__version__ = "0.1.0"
