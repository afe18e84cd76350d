"""Weight certificates for Hardy improvements of 3d magnetic Schroedinger forms."""

from ._core import (
    ab_constants,
    angular_oracle_min_eigenvalue,
    audit,
    certify,
    field_json,
    k1_constant,
    k2_constant,
    lambda_constant,
    nearest_integer_distance_sq,
    w1_potential,
)

__all__ = [
    "ab_constants",
    "angular_oracle_min_eigenvalue",
    "audit",
    "certify",
    "field_json",
    "k1_constant",
    "k2_constant",
    "lambda_constant",
    "nearest_integer_distance_sq",
    "w1_potential",
]
