"""Exact gamma invariants of two-part permutation modules of symmetric groups."""

__version__ = "0.1.0"

from .combinatorics import binom, block_sum, compositions, multinomial
from .errors import (
    InstanceTooLarge,
    InvalidParameters,
    NonIntegralMultiplicity,
    ParamsOutOfDomain,
    PermGammaError,
    PrimeTooLarge,
    UnknownIdentity,
)
from .gamma import (
    GammaReport,
    gamma_closed,
    gamma_oracle,
    gamma_structural,
    gamma_symmetric_group,
    young_gamma_first_hook,
)
from .groups import ElementaryGroup, OrbitType, build_group, cycle_type, enumerate_orbit_types
from .identities import IDENTITIES, verify_identity
from .tabloids import (
    Decomposition,
    PartitionPair,
    SummandSignature,
    decompose_enumerated,
    decompose_formula,
    enumerate_tabloids,
    fixed_count,
    signature_of,
)
from .tensor import CoreState, GrowthEstimate, core_of, growth, tensor_classes, tensor_step

__all__ = [
    "binom", "block_sum", "compositions", "multinomial",
    "InstanceTooLarge", "InvalidParameters", "NonIntegralMultiplicity", "ParamsOutOfDomain",
    "PermGammaError", "PrimeTooLarge", "UnknownIdentity",
    "GammaReport", "gamma_closed", "gamma_oracle", "gamma_structural", "gamma_symmetric_group",
    "young_gamma_first_hook",
    "ElementaryGroup", "OrbitType", "build_group", "cycle_type", "enumerate_orbit_types",
    "IDENTITIES", "verify_identity",
    "Decomposition", "PartitionPair", "SummandSignature", "decompose_enumerated",
    "decompose_formula", "enumerate_tabloids", "fixed_count", "signature_of",
    "CoreState", "GrowthEstimate", "core_of", "growth", "tensor_classes", "tensor_step",
]
