"""Exact computations in homotopy categories of perfect complexes over
finite-dimensional algebras: Hom-spaces, orbit-category endomorphism
algebras, approximation exchanges, tilting complexes and dg cohomology."""

__version__ = "0.1.0"

from .algebra import (
    FDAlgebra, cartan_matrix, center, fingerprint, radical, symmetrizing_form,
    graded_symmetrizing_form, symmetry_report,
)
from .complexes import (
    ChainMap, ProjComplex, compose, cone, cone_maps, direct_sum, identity, minimize,
    shift, stalk, two_term,
)
from .dga import DGAlgebra, cohomology, degree_pattern, rhom_dga
from .endalg import (
    EndAlgebra, end_algebra, end_graded, end_ungraded, parse_relations, quiver_data,
    spanning_check, verify_relations,
)
from .errors import (
    ContractViolation, PreconditionError, StructuralError, SymtiltError, UnsupportedFeatureError,
)
from .fields import QQ, Field
from .homcalc import graded_hom, hom_k, is_null_homotopic, oracle_enumerate, reduce_to_basis
from .presets import build_preset, dihedral_base, truncated_poly
from .tilting import (
    build_tilting_complex, endring_of_tilting, exchange, left_approximation, prop21_tilting,
    verify_left_approx, verify_right_approx, verify_tilting,
)

__all__ = [
    "FDAlgebra",
    "cartan_matrix",
    "center",
    "fingerprint",
    "radical",
    "symmetrizing_form",
    "graded_symmetrizing_form",
    "symmetry_report",
    "ChainMap",
    "ProjComplex",
    "compose",
    "cone",
    "cone_maps",
    "direct_sum",
    "identity",
    "minimize",
    "shift",
    "stalk",
    "two_term",
    "DGAlgebra",
    "cohomology",
    "degree_pattern",
    "rhom_dga",
    "EndAlgebra",
    "end_algebra",
    "end_graded",
    "end_ungraded",
    "parse_relations",
    "quiver_data",
    "spanning_check",
    "verify_relations",
    "ContractViolation",
    "PreconditionError",
    "StructuralError",
    "SymtiltError",
    "UnsupportedFeatureError",
    "QQ",
    "Field",
    "graded_hom",
    "hom_k",
    "is_null_homotopic",
    "oracle_enumerate",
    "reduce_to_basis",
    "build_preset",
    "dihedral_base",
    "truncated_poly",
    "build_tilting_complex",
    "endring_of_tilting",
    "exchange",
    "left_approximation",
    "prop21_tilting",
    "verify_left_approx",
    "verify_right_approx",
    "verify_tilting",
]
