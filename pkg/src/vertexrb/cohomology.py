"""The 2-cochain ``Phi = I* - I``, its cocycle condition, and coboundary tests.

The coefficient module is V itself with the twisted action
``I^M_{a,m} = I_{Pa,m}``; it is never materialised as a separate type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Tuple

from .algebra import AlgebraSpec, Pairing, eval_pairing, eval_pairing_nested, parity_sign
from .axioms import CheckReport, run_check
from .formal import Element, FormalPoly, RationalLike, as_rational, substitute_sum
from .rota_baxter import (
    LinearMap,
    OperatorSpec,
    check_rb,
    deform,
    deformed_value,
    require_valid,
)


class HypothesisNotMetError(ValueError):
    """A check whose statement assumes the Rota-Baxter identity was run on an
    operator that does not satisfy it."""


@dataclass(frozen=True)
class Cochain2:
    table: Pairing
    source: str

    def value(self, a, b, var: str) -> FormalPoly:
        return eval_pairing(self.table, a, b, var)


class Cochain1(LinearMap):
    """A d-equivariant, parity-preserving map used as a candidate primitive."""

    def __init__(self, domain, action, name: str = "psi"):
        super().__init__(domain, action)
        self.name = name

    @classmethod
    def from_map(cls, P: LinearMap, name: Optional[str] = None) -> "Cochain1":
        return cls(P.domain, P.action, name or getattr(P, "name", "psi"))


def _gens(A):
    return [Element.of(g) for g in A.generators]


def _table(A: AlgebraSpec, value) -> Pairing:
    return Pairing(
        A.generators,
        {(gi, gj): value(Element.of(gi), Element.of(gj)) for gi, gj in A.bracket.pairs()},
    )


def phi_value(A: AlgebraSpec, P: OperatorSpec, a: Element, b: Element, var: str) -> FormalPoly:
    """``I_{a,Pb} + I_{Pa,b} + (weight - 1) I_{a,b}``."""
    return deformed_value(A, P, P.weight - 1, a, b, var)


def build_phi(A: AlgebraSpec, P: OperatorSpec) -> Cochain2:
    require_valid(A, P)
    return Cochain2(_table(A, lambda a, b: phi_value(A, P, a, b, "lam")), f"phi({P.name})")


def zero_cochain(A: AlgebraSpec) -> Cochain2:
    return Cochain2(Pairing(A.generators), "zero")


def cocycle_residual(
    A: AlgebraSpec,
    P: OperatorSpec,
    C: Cochain2,
    a: Element,
    b: Element,
    c: Element,
    deformed: Optional[AlgebraSpec] = None,
) -> FormalPoly:
    """``I_{Pa, C_{b,c}(mu)}(nu) - e I_{Pb, C_{a,c}(mu)}(nu) - C_{I*_{a,b}(mu), c}(nu + mu)``."""
    deformed = deformed or deform(A, P)
    T = A.bracket
    lhs = eval_pairing_nested(T, P(a), C.value(b, c, "mu"), "nu") - eval_pairing_nested(
        T, P(b), C.value(a, c, "mu"), "nu"
    ).scale(parity_sign(a, b))
    inner = eval_pairing(deformed.bracket, a, b, "mu")
    rhs = substitute_sum(eval_pairing_nested(C.table, inner, c, "nu"), "nu", "nu", "mu")
    return lhs - rhs


def check_cocycle(A: AlgebraSpec, P: OperatorSpec, C: Cochain2) -> CheckReport:
    require_valid(A, P)
    deformed = deform(A, P)
    return run_check(
        "cocycle",
        list(itertools.product(_gens(A), repeat=3)),
        lambda a, b, c: cocycle_residual(A, P, C, a, b, c, deformed),
        stats={"cochain": C.source},
    )


def delta_one_value(
    A: AlgebraSpec, P: OperatorSpec, psi: LinearMap, a: Element, b: Element, var: str
) -> FormalPoly:
    """``I_{Pa, psi b} - psi(I*_{a,b}) + e I_{P psi a, b}``."""
    T = A.bracket
    return (
        eval_pairing(T, P(a), psi(b), var)
        - psi(deformed_value(A, P, P.weight, a, b, var))
        + eval_pairing(T, P(psi(a)), b, var).scale(parity_sign(a, b))
    )


def delta_one(A: AlgebraSpec, P: OperatorSpec, psi: LinearMap) -> Cochain2:
    require_valid(A, P)
    require_valid(A, psi, "1-cochain")
    name = getattr(psi, "name", "psi")
    return Cochain2(_table(A, lambda a, b: delta_one_value(A, P, psi, a, b, "lam")), f"delta({name})")


def check_deltaP_identity(A: AlgebraSpec, P: OperatorSpec) -> CheckReport:
    """``(delta P)_{a,b} = e I_{P^2 a, b}``; only meaningful for Rota-Baxter P."""
    rb = check_rb(A, P)
    if not rb.passed:
        raise HypothesisNotMetError(f"{P.name} is not a Rota-Baxter operator of weight {P.weight}")
    dP = delta_one(A, P, P)
    return run_check(
        "deltaP_identity",
        list(itertools.product(_gens(A), repeat=2)),
        lambda a, b: deltaP_residual(A, P, a, b, dP),
    )


def deltaP_residual(A: AlgebraSpec, P: OperatorSpec, a: Element, b: Element, dP: Optional[Cochain2] = None) -> FormalPoly:
    dP = dP or delta_one(A, P, P)
    return dP.value(a, b, "mu") - eval_pairing(A.bracket, P(P(a)), b, "mu").scale(parity_sign(a, b))


def dagger_residual(A: AlgebraSpec, P: OperatorSpec, a: Element, b: Element) -> FormalPoly:
    return phi_value(A, P, a, b, "mu") - eval_pairing(A.bracket, P(P(a)), b, "mu").scale(parity_sign(a, b))


def operator_shape(A: AlgebraSpec, P: LinearMap) -> str:
    """Coarse classification used in report notes."""
    P2 = P.compose(P)
    if all(not P2.image(g) for g in A.generators):
        return "nilpotent"
    images = [P.image(g) for g in A.generators]
    for kappa in {c for e in images for _, p in e.items() for _, c in p.items()}:
        if all(P.image(g) == Element.of(g, kappa) for g in A.generators):
            return f"scalar {kappa}"
    # compare actions: OperatorSpec equality also looks at name and weight
    if P2.action == P.action:
        return "projection"
    return "general"


def check_dagger(A: AlgebraSpec, P: OperatorSpec) -> CheckReport:
    """Necessary condition for ``Phi = delta P``. With ``P^2 = 0`` the right
    side vanishes, which is the nilpotent case of the same residual."""
    require_valid(A, P)
    shape = operator_shape(A, P)
    return run_check(
        "dagger",
        list(itertools.product(_gens(A), repeat=2)),
        lambda a, b: dagger_residual(A, P, a, b),
        stats={"operator_shape": shape, "weight": str(P.weight)},
    )


def check_coboundary_eq(A: AlgebraSpec, P: OperatorSpec, psi: LinearMap) -> CheckReport:
    phi = build_phi(A, P)
    dpsi = delta_one(A, P, psi)
    return run_check(
        "coboundary",
        list(itertools.product(_gens(A), repeat=2)),
        lambda a, b: coboundary_residual(A, P, psi, a, b, phi, dpsi),
        stats={"psi": getattr(psi, "name", "psi")},
    )


def coboundary_residual(A, P, psi, a, b, phi=None, dpsi=None) -> FormalPoly:
    """``Phi_{a,b} - (delta psi)_{a,b}``."""
    phi = phi or build_phi(A, P)
    dpsi = dpsi or delta_one(A, P, psi)
    return phi.value(a, b, "mu") - dpsi.value(a, b, "mu")


@dataclass(frozen=True)
class ScalarSolution:
    equation: str
    weight: Fraction
    roots: Tuple[Fraction, ...]
    irrational_flag: bool

    def __post_init__(self):
        for r in self.roots:
            if scalar_equation(self.equation, self.weight, r) != 0:
                raise ArithmeticError(f"{r} does not solve the {self.equation} equation")


def scalar_equation(kind: str, weight: Fraction, kappa: Fraction) -> Fraction:
    """Left side of the scalar equation, which must vanish at a root."""
    if kind == "coboundary":
        return kappa * kappa - 2 * kappa - (weight - 1)
    if kind == "rb":
        # P = kappa*id: kappa^2 I = kappa (2 kappa + weight) I
        return kappa * kappa - (2 * kappa * kappa + weight * kappa)
    raise ValueError(f"unknown equation kind {kind!r}")


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def solve_scalar(weight: RationalLike, kind: str = "coboundary") -> ScalarSolution:
    """Rational roots of the scalar coboundary or Rota-Baxter equation.

    coboundary: ``k^2 - 2k - (w - 1) = 0`` so ``k = 1 +- sqrt(w)``;
    rb: ``k^2 = 2k^2 + w k`` so ``k in {0, -w}``.
    """
    w = as_rational(weight)
    if kind == "coboundary":
        root = _rational_sqrt(w)
        if root is None:
            return ScalarSolution("coboundary", w, (), True)
        roots = sorted({1 + root, 1 - root}, reverse=True)
        return ScalarSolution("coboundary", w, tuple(roots), False)
    if kind == "rb":
        roots = sorted({Fraction(0), -w}, reverse=True)
        return ScalarSolution("rb", w, tuple(roots), False)
    raise ValueError(f"unknown equation kind {kind!r}")
