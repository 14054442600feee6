"""Newton numbers of convenient Newton polyhedra and their behaviour under
adding lattice points, in exact arithmetic."""

from .core import (
    GammaMinusRegion,
    NewtonPolyhedron,
    SupportSet,
    build_polyhedron,
    gamma_minus,
    newton_number,
    restrict,
)
from .errors import (
    EmptySupport,
    MalformedInput,
    NewtonError,
    NotConvenient,
    NotLattice,
    PointInPolyhedron,
    TheoremViolation,
)
from .monotonicity import (
    Classification,
    add_point,
    classify,
    difference_skeleton,
    enumerate_equal,
    is_unit_pyramid,
    nu_drop,
    nu_zero_witness,
)
from .oracle import GeneratorConfig, cross_check, nu_oracle, random_convenient_support, volume_slab

__all__ = [
    "Classification", "EmptySupport", "GammaMinusRegion", "GeneratorConfig", "MalformedInput",
    "NewtonError", "NewtonPolyhedron", "NotConvenient", "NotLattice", "PointInPolyhedron",
    "SupportSet", "TheoremViolation", "add_point", "build_polyhedron", "classify", "cross_check",
    "difference_skeleton", "enumerate_equal", "gamma_minus", "is_unit_pyramid", "newton_number",
    "nu_drop", "nu_oracle", "nu_zero_witness", "random_convenient_support", "restrict", "volume_slab",
]
