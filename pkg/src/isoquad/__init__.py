"""Isotropy of quadratic forms over p-adic function fields, checked place by place."""

__version__ = "0.1.0"

from .errors import IsoquadError
from .qform import DiagForm, Status, Verdict, is_isotropic, normalize, replay
from .brauer import (SymbolMod2, albert_form, biquaternion_is_division, quaternion_norm_form,
                     symbol_is_nontrivial, symbol_residue)
from .curve import one_minus_x_square_in_completion, one_minus_x_square_in_F, sample_closed_points

__all__ = [
    "IsoquadError", "DiagForm", "Status", "Verdict", "is_isotropic", "normalize", "replay",
    "SymbolMod2", "albert_form", "biquaternion_is_division", "quaternion_norm_form",
    "symbol_is_nontrivial", "symbol_residue", "one_minus_x_square_in_completion",
    "one_minus_x_square_in_F", "sample_closed_points",
]
