"""Exact arithmetic for the fields the isotropy engine works over."""

from .finite import FiniteField, FFElem, ff_is_square, ff_sqrt, ffp_factorize, is_irreducible
from .local import LocalElement, LocalField, hilbert_symbol, lf_is_square, lf_residue, smallest_nonresidue
from .ffz import FFPlace, FFRatField, FFRatFunc, ffq_ratfunc_is_square
from .qpt import FactoredRatFunc, QptField
from .parse import parse_qpt, parse_rational

__all__ = [
    "FiniteField", "FFElem", "ff_is_square", "ff_sqrt", "ffp_factorize", "is_irreducible",
    "LocalElement", "LocalField", "hilbert_symbol", "lf_is_square", "lf_residue",
    "smallest_nonresidue", "FFPlace", "FFRatField", "FFRatFunc", "ffq_ratfunc_is_square",
    "FactoredRatFunc", "QptField", "parse_qpt", "parse_rational",
]
