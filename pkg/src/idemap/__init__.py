"""Maps on rank-one idempotents and indefinite inner-product symmetries.

The package induces zero-product preserving maps from invertible
(semi)linear operators, verifies the preservation property on sampled
idempotent pairs, extends such maps to finite-rank idempotents,
reconstructs the inducing operator from a black-box map through a finite
probe protocol, and tests/characterizes/recovers symmetry
transformations of indefinite inner-product spaces with an arbitrary
invertible metric.
"""

__version__ = "0.1.0"

from .core import (
    AutomorphismTag,
    ScalarField,
    SemilinearOperator,
    conjugation_operator,
    field_of,
    identity_operator,
    kernel_and_range,
    pair,
    tensor,
    trace,
    up_to_scalar_distance,
)
from .errors import (
    DegenerateImage,
    DegeneratePair,
    DegenerateProbe,
    DimensionMismatch,
    ExtensionInconsistent,
    NotIdempotent,
    NotInduced,
    SingularOperator,
    UnrecognizedAutomorphism,
)
from .idempotents import (
    FiniteRankIdempotent,
    RankOneIdempotent,
    Relation,
    decompose,
    majorant,
    rank_one_from_pair,
    relate,
)
from .indefinite import (
    Characterization,
    IndefiniteSpace,
    Ray,
    RayMap,
    SymmetryKind,
    SymmetryReport,
    characterize,
    eta_orthogonal_partner,
    eta_product,
    generate_eta_isometry,
    induced_ray_map,
    is_symmetry,
    ray_eta_orthogonal,
    rays_equal,
    recover_inducing_operator,
)
from .transform import (
    PreservationReport,
    ProbeSet,
    RayPair,
    ReconstructionResult,
    TransformHandle,
    automorphism_of,
    check_preservation,
    extend,
    from_ray_pair,
    handle_from_table,
    identity_handle,
    induce,
    probe_table_from_operator,
    reconstruct,
    reconstruction_probe_set,
    transpose_handle,
    zero_product_partner,
)

__all__ = [
    "AutomorphismTag",
    "Characterization",
    "DegenerateImage",
    "DegeneratePair",
    "DegenerateProbe",
    "DimensionMismatch",
    "ExtensionInconsistent",
    "FiniteRankIdempotent",
    "IndefiniteSpace",
    "NotIdempotent",
    "NotInduced",
    "PreservationReport",
    "ProbeSet",
    "RankOneIdempotent",
    "Ray",
    "RayMap",
    "RayPair",
    "ReconstructionResult",
    "Relation",
    "ScalarField",
    "SemilinearOperator",
    "SingularOperator",
    "SymmetryKind",
    "SymmetryReport",
    "TransformHandle",
    "UnrecognizedAutomorphism",
    "automorphism_of",
    "characterize",
    "check_preservation",
    "conjugation_operator",
    "decompose",
    "eta_orthogonal_partner",
    "eta_product",
    "extend",
    "field_of",
    "from_ray_pair",
    "generate_eta_isometry",
    "handle_from_table",
    "identity_handle",
    "identity_operator",
    "induce",
    "induced_ray_map",
    "is_symmetry",
    "kernel_and_range",
    "majorant",
    "pair",
    "probe_table_from_operator",
    "rank_one_from_pair",
    "ray_eta_orthogonal",
    "rays_equal",
    "reconstruct",
    "reconstruction_probe_set",
    "recover_inducing_operator",
    "relate",
    "tensor",
    "trace",
    "transpose_handle",
    "up_to_scalar_distance",
    "zero_product_partner",
]
