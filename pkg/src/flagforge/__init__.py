"""Exact symbolic checks for flags of holomorphic distributions on P^n."""

from flagforge.polyring import Poly
from flagforge.extalg import MultiVector, PForm
from flagforge.projective import FieldsDistribution, ProjDistribution, descend_form, fields_distribution

__version__ = "0.1.0"

__all__ = [
    "FieldsDistribution",
    "MultiVector",
    "PForm",
    "Poly",
    "ProjDistribution",
    "descend_form",
    "fields_distribution",
]
