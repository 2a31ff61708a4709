"""Exact invariants of Grassmannians of sub-bimodules over path algebras.

The pipeline: an acyclic quiver yields its path quiver with relation
squares; dimension data yields the canonical coordinate bimodule; from
there, torus fixed points, cell decompositions, smoothness certificates,
finite-field point counts, and framed-moduli motives, all in exact
arithmetic.
"""

from .bimodule import (
    BasisLabel,
    BoundRepresentation,
    CoordinateModule,
    SubmodulePoint,
    build_canonical_bimodule,
    dim_vector_e,
    dim_vector_f,
    dim_vector_m,
    dim_vector_n,
    embed_representation,
    module_representation,
    quotient_representation,
    sub_representation,
)
from .cells import (
    Cocharacter,
    SmoothnessReport,
    check_smooth,
    check_smooth_module,
    generic_cocharacter,
    module_poincare_polynomial,
    poincare_polynomial,
    tangent_profile,
)
from .counting import (
    CountSample,
    InterpolationResult,
    count_and_interpolate,
    count_grassmannian_points,
    count_module_points,
    count_repvariety_points,
    first_primes,
    grassmannian_count_polynomial,
    interpolate_counts,
)
from .errors import InputError, QuivergrassError, Refusal
from .fixedpoints import (
    FixedPoint,
    decompose_fixed_point,
    enumerate_fixed_points,
    euler_characteristic,
    fixed_points_of_module,
    submodule_point,
)
from .homology import euler_form, graph_euler_form, hom_complex, hom_dim, hom_ext_dims
from .motive import (
    MotiveFraction,
    RecursionTable,
    consistency_check,
    gl_motive,
    recursion_residual,
    recursion_solve,
)
from .polynomials import IntPolynomial
from .quiver import (
    PathQuiver,
    Quiver,
    build_path_quiver,
    enumerate_paths,
    has_parallel_paths,
    parse_quiver,
    upper_ideals,
)

__version__ = "0.1.0"

__all__ = [
    "BasisLabel",
    "BoundRepresentation",
    "Cocharacter",
    "CoordinateModule",
    "CountSample",
    "FixedPoint",
    "InputError",
    "InterpolationResult",
    "IntPolynomial",
    "MotiveFraction",
    "PathQuiver",
    "Quiver",
    "QuivergrassError",
    "RecursionTable",
    "Refusal",
    "SmoothnessReport",
    "SubmodulePoint",
    "build_canonical_bimodule",
    "build_path_quiver",
    "check_smooth",
    "check_smooth_module",
    "consistency_check",
    "count_and_interpolate",
    "count_grassmannian_points",
    "count_module_points",
    "count_repvariety_points",
    "decompose_fixed_point",
    "dim_vector_e",
    "dim_vector_f",
    "dim_vector_m",
    "dim_vector_n",
    "embed_representation",
    "enumerate_fixed_points",
    "enumerate_paths",
    "euler_characteristic",
    "euler_form",
    "first_primes",
    "fixed_points_of_module",
    "generic_cocharacter",
    "gl_motive",
    "graph_euler_form",
    "grassmannian_count_polynomial",
    "has_parallel_paths",
    "hom_complex",
    "hom_dim",
    "hom_ext_dims",
    "interpolate_counts",
    "module_poincare_polynomial",
    "module_representation",
    "parse_quiver",
    "poincare_polynomial",
    "quotient_representation",
    "recursion_residual",
    "recursion_solve",
    "sub_representation",
    "submodule_point",
    "tangent_profile",
    "upper_ideals",
]
