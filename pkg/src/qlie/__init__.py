"""Exact construction of the quantum Lie algebras L_q(gl_n) and L_q(sl_n).

Coefficients live in Q(s), s = q^(1/2) (:mod:`qlie.scalar`). The bracket
table is computed from numerical R-matrices (:mod:`qlie.algebra`) and
cross-checked against Sweedler sums in U_q(gl_n) (:mod:`qlie.oracle`).
"""
from .algebra import (
    build_basis, closed_form, closed_form_families, compare_families,
    compute_structure_constants, roots, xii_expansion,
)
from .scalar import ONE, ZERO, Scalar, parse_scalar, q, q_power, s

__version__ = "0.1.0"

__all__ = [
    "Scalar", "ZERO", "ONE", "q", "s", "q_power", "parse_scalar",
    "build_basis", "closed_form", "closed_form_families", "compare_families",
    "compute_structure_constants", "roots", "xii_expansion",
]
