"""Finite-dimensional checks for the closed permutation groups between
GL(n,2) (or Sp(n,2)) and Sym(F_2^n)."""

from .errors import (
    BudgetExhausted,
    DegenerateForm,
    DependentInput,
    DimensionMismatch,
    F2ReductsError,
    GramMismatch,
    HypothesisFailed,
    InvariantViolation,
)
from .gf2 import Subspace, Vec2, add, contains, solve, span
from .forms import BilinForm, dot, hyperbolic_basis, standard_form, witt_extend
from .perm import GenSet, Perm, compose, group_order, inverse, member
from .stdgroups import (
    agl_gens,
    delta_gens,
    gl_gens,
    named_group,
    sp_gens,
    sym0_gens,
    sym_gens,
    t_gens,
    translation,
)
from .relations import (
    RelSpec,
    diamond,
    group_preserves,
    nabla,
    parallelogram,
    pentagon,
    preserves,
    simH,
    tri_type,
)
from .orbits import OrbitCensus, independentize, orbit_profile, same_orbit, tuple_orbits
from .autsearch import Structure, automorphisms, fixed_points, pointwise_stabilizer
from .fraisse import (
    Embedding,
    amalgamate,
    check_axioms,
    extension_witness,
    find_embedding,
    joint_embed,
    realize_graph,
)
from .classify import Fingerprint, classify, fingerprint

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "DegenerateForm",
    "DependentInput",
    "DimensionMismatch",
    "F2ReductsError",
    "GramMismatch",
    "HypothesisFailed",
    "InvariantViolation",
    "agl_gens",
    "delta_gens",
    "gl_gens",
    "named_group",
    "sp_gens",
    "sym0_gens",
    "sym_gens",
    "t_gens",
    "translation",
    "RelSpec",
    "diamond",
    "group_preserves",
    "nabla",
    "parallelogram",
    "pentagon",
    "preserves",
    "simH",
    "tri_type",
    "Embedding",
    "amalgamate",
    "check_axioms",
    "extension_witness",
    "find_embedding",
    "joint_embed",
    "realize_graph",
    "Subspace",
    "Vec2",
    "add",
    "contains",
    "solve",
    "span",
    "BilinForm",
    "dot",
    "hyperbolic_basis",
    "standard_form",
    "witt_extend",
    "GenSet",
    "Perm",
    "compose",
    "group_order",
    "inverse",
    "member",
    "OrbitCensus",
    "independentize",
    "orbit_profile",
    "same_orbit",
    "tuple_orbits",
    "Structure",
    "automorphisms",
    "fixed_points",
    "pointwise_stabilizer",
    "Fingerprint",
    "classify",
    "fingerprint",
]
