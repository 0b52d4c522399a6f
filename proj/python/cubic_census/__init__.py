"""Orders in complex cubic fields counted by regulator."""

from ._core import (
    CapacityError,
    Census,
    CubicError,
    Field,
    InvalidInput,
    StaleCache,
    UnsupportedSignature,
    analyze,
    census,
    class_number,
    count,
    density_diagnostic,
    discriminant,
    enumerate_fields,
    fundamental_unit,
    isomorphic,
    lambda_S,
    li,
    maximal_order,
    order_class_number,
    splitting_type,
)

__all__ = [
    "CapacityError", "Census", "CubicError", "Field", "InvalidInput", "StaleCache",
    "UnsupportedSignature", "analyze", "census", "class_number", "count",
    "density_diagnostic", "discriminant", "enumerate_fields", "fundamental_unit",
    "isomorphic", "lambda_S", "li", "maximal_order", "order_class_number", "splitting_type",
]
