"""Root system, Weyl group and affine alcove machinery for SU(n)."""

from domain.rootsys.alcove import (
    AffineOrbitWitness,
    affine_orbit,
    alcove_reduce,
    lattice_class_key,
    level_orbit_representative,
    on_affine_wall,
)
from domain.rootsys.lattice import (
    RootSystem,
    Weight,
    casimir,
    epsilon_coordinates,
    from_epsilon_coordinates,
    inner_product,
    level_k_weights,
)
from domain.rootsys.weyl import (
    WeylElement,
    highest_root_reflection,
    signed_orbit,
    simple_reflection,
    weyl_act,
    weyl_group,
)

__all__ = [
    "AffineOrbitWitness",
    "RootSystem",
    "Weight",
    "WeylElement",
    "affine_orbit",
    "alcove_reduce",
    "casimir",
    "epsilon_coordinates",
    "from_epsilon_coordinates",
    "highest_root_reflection",
    "inner_product",
    "lattice_class_key",
    "level_k_weights",
    "level_orbit_representative",
    "on_affine_wall",
    "signed_orbit",
    "simple_reflection",
    "weyl_act",
    "weyl_group",
]
