"""Recompute a witness residual from the check name and its arguments."""

from __future__ import annotations

from typing import Optional

from .algebra import AlgebraSpec
from .axioms import (
    jacobi_residual,
    reverse_entry_residual,
    sesquilinearity_residual,
    skew_residual,
    vacuum_residual,
)
from .cohomology import (
    Cochain2,
    cocycle_residual,
    coboundary_residual,
    dagger_residual,
    deltaP_residual,
)
from .formal import FormalPoly
from .rota_baxter import LinearMap, OperatorSpec, deform, homomorphism_residual, rb_residual


def replay(
    check_name: str,
    args,
    A: AlgebraSpec,
    P: Optional[OperatorSpec] = None,
    cochain: Optional[Cochain2] = None,
    psi: Optional[LinearMap] = None,
) -> FormalPoly:
    """Residual of ``check_name`` at ``args``; zero means the identity holds there."""
    if check_name == "vacuum":
        return vacuum_residual(A, *args)
    if check_name == "sesquilinearity":
        return sesquilinearity_residual(A, *args)
    if check_name == "reverse_entries":
        return reverse_entry_residual(A, *args)
    if check_name == "skew_symmetry":
        return skew_residual(A, *args)
    if check_name == "jacobi":
        return jacobi_residual(A, *args)
    if P is None:
        raise ValueError(f"replaying {check_name} needs an operator")
    if check_name == "rota_baxter":
        return rb_residual(A, P, *args)
    if check_name == "homomorphism":
        return homomorphism_residual(A, P, *args, deform(A, P))
    if check_name == "dagger":
        return dagger_residual(A, P, *args)
    if check_name == "deltaP_identity":
        return deltaP_residual(A, P, *args)
    if check_name == "cocycle":
        if cochain is None:
            raise ValueError("replaying cocycle needs the cochain")
        return cocycle_residual(A, P, cochain, *args)
    if check_name == "coboundary":
        return coboundary_residual(A, P, psi if psi is not None else P, *args)
    raise ValueError(f"no replay rule for check {check_name!r}")
