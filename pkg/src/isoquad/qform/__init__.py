"""Diagonal forms, residue decompositions and the isotropy engine."""

from .form import DiagForm, field_from_json, form_from_json, normalize
from .springer import (ResidueDecomposition, TwoParamDecomposition, springer_decompose,
                       two_param_decompose)
from .engine import CertificateError, Status, Verdict, is_isotropic, replay
from .invariants import classical_is_isotropic, hasse_invariant

__all__ = [
    "DiagForm", "field_from_json", "form_from_json", "normalize", "ResidueDecomposition", "TwoParamDecomposition",
    "springer_decompose", "two_param_decompose", "CertificateError", "Status", "Verdict",
    "is_isotropic", "replay", "classical_is_isotropic", "hasse_invariant",
]
