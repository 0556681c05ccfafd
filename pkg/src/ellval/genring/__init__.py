"""Coordinate rings in generic points, Gauss valuations and residues."""
from .gauss import (
    GenericProfile,
    RatExpr,
    coordinate_ring,
    gauss_val,
    is_ball_generic,
    rat_val,
    residue_at,
)
from .grouplaw import (
    ADD,
    ADD_INV,
    TRANSLATE,
    Add,
    AddInv,
    Translate,
    check_eq1,
    compose_group_law,
    eq1_rhs,
)
from .ring import CanonicalPoly, CoordinateRing, proportional


def normalize(ring: CoordinateRing, raw) -> CanonicalPoly:
    """Canonical form of ``{(e_vector, f_vector): coefficient}`` modulo the relations."""
    return ring.normalize(raw)


__all__ = [
    "ADD", "ADD_INV", "TRANSLATE", "Add", "AddInv", "Translate",
    "CanonicalPoly", "CoordinateRing", "GenericProfile", "RatExpr",
    "check_eq1", "compose_group_law", "coordinate_ring", "eq1_rhs",
    "gauss_val", "is_ball_generic", "normalize", "proportional",
    "rat_val", "residue_at",
]
