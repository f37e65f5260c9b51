"""Multiplicative dependence: exponent bounds, relation search and
certificates."""

from .bounds import (
    eta_lower_bound,
    masser_gm_bound,
    masser_gm_value,
    masser_lattice_bound,
    masser_lattice_value,
    omega_upper_bound,
)
from .relations import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Certificate,
    DependenceCertificate,
    IndependenceCertificate,
    InconclusiveResult,
    are_dependent,
    box_count,
    certificate_from_json,
    find_relation,
    gm_exponent_bound,
    power_product,
    relation_key,
)

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "Certificate",
    "DependenceCertificate",
    "IndependenceCertificate",
    "InconclusiveResult",
    "are_dependent",
    "box_count",
    "certificate_from_json",
    "eta_lower_bound",
    "find_relation",
    "gm_exponent_bound",
    "masser_gm_bound",
    "masser_gm_value",
    "masser_lattice_bound",
    "masser_lattice_value",
    "omega_upper_bound",
    "power_product",
    "relation_key",
]
