"""Induced lattice U(N) gauge model.

Signatures are lists of nonincreasing integers; exact results are returned as
``"p/q"`` strings, convertible with :class:`fractions.Fraction`.
"""

from ._core import (
    CellComplex,
    InducedYMError,
    casimir1,
    casimir2,
    char_coefficient,
    char_coefficient_exact,
    char_coefficient_ratio,
    character,
    dual_partition,
    dual_wilson,
    fock_check,
    lattice_partition,
    monte_carlo,
    moments,
    signatures_in_box,
    singlet_hilbert_partial_sum,
    u1_oracle,
    weyl_dimension,
    wilson_exact,
    wilson_loop_one_plaquette,
    z_genus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
