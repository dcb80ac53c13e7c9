"""Exact symbolic checks for Rota-Baxter operators on non-unital vertex
algebras, in the integrated lambda-bracket formalism."""

from .algebra import (
    AlgebraSpec,
    Pairing,
    direct_sum,
    eval_pairing,
    eval_pairing_nested,
    heisenberg,
    parity_sign,
    zero_algebra,
)
from .axioms import CheckReport, Witness, check_all, check_jacobi, check_skew, check_vacuum
from .cohomology import (
    Cochain1,
    Cochain2,
    build_phi,
    check_coboundary_eq,
    check_cocycle,
    check_dagger,
    check_deltaP_identity,
    delta_one,
    solve_scalar,
)
from .formal import (
    DeltaPoly,
    Element,
    FormalPoly,
    Generator,
    apply_partial,
    linear_combine,
    shift_negate,
    substitute_sum,
)
from .io import load_algebra, load_operator, parse_algebra, parse_operator
from .rota_baxter import (
    OperatorSpec,
    apply_operator,
    check_homomorphism,
    check_rb,
    deform,
    projection,
    scalar_operator,
    validate_operator,
)

__all__ = [
    "AlgebraSpec",
    "apply_operator",
    "apply_partial",
    "build_phi",
    "check_all",
    "check_coboundary_eq",
    "check_cocycle",
    "check_dagger",
    "check_deltaP_identity",
    "check_homomorphism",
    "check_jacobi",
    "check_rb",
    "check_skew",
    "check_vacuum",
    "CheckReport",
    "Cochain1",
    "Cochain2",
    "deform",
    "delta_one",
    "DeltaPoly",
    "direct_sum",
    "Element",
    "eval_pairing",
    "eval_pairing_nested",
    "FormalPoly",
    "Generator",
    "heisenberg",
    "linear_combine",
    "load_algebra",
    "load_operator",
    "OperatorSpec",
    "Pairing",
    "parity_sign",
    "parse_algebra",
    "parse_operator",
    "projection",
    "scalar_operator",
    "shift_negate",
    "solve_scalar",
    "substitute_sum",
    "validate_operator",
    "Witness",
    "zero_algebra",
]

__version__ = "0.1.0"
