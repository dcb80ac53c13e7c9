"""Rota-Baxter operators, the deformed bracket and the homomorphism property."""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Optional, Tuple, Union

from .algebra import AlgebraSpec, Pairing, UnknownGeneratorError, eval_pairing
from .axioms import CheckReport, Witness, run_check
from .formal import Element, FormalPoly, Generator, RationalLike, as_rational


class OperatorValidationError(ValueError):
    def __init__(self, report: CheckReport, what: str = "operator"):
        bad = ", ".join(f"{w.args[0]} ({w.label})" for w in report.witnesses)
        super().__init__(f"{what} failed validation at {bad}")
        self.report = report


class LinearMap:
    """A map on generators, extended d-linearly (and coefficient-wise on
    FormalPolys). Generators of ``domain`` missing from ``action`` map to 0."""

    def __init__(self, domain: Iterable[Generator], action: Mapping[Generator, Element]):
        self.domain: Tuple[Generator, ...] = tuple(domain)
        known = set(self.domain)
        for g in action:
            if g not in known:
                raise UnknownGeneratorError(g.name)
        self._action = {g: action[g] for g in self.domain if g in action and action[g]}

    def image(self, g: Generator) -> Element:
        if g not in self._action and g not in self.domain:
            raise UnknownGeneratorError(g.name)
        return self._action.get(g, Element())

    @property
    def action(self):
        return dict(self._action)

    def __call__(self, x: Union[Element, FormalPoly]):
        if isinstance(x, FormalPoly):
            return x.map_coefficients(self._apply_element)
        return self._apply_element(x)

    def _apply_element(self, e: Element) -> Element:
        out = Element()
        for g, p in e.items():
            img = self.image(g)
            for exp, c in p.items():
                out = out + img.partial(exp).scale(c)
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self o other``."""
        return LinearMap(self.domain, {g: self(other.image(g)) for g in self.domain})

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and self.domain == other.domain
            and self._action == other._action
        )

    def __hash__(self):
        return hash((self.domain, tuple(self._action.items())))


class OperatorSpec(LinearMap):
    """A Rota-Baxter candidate ``P`` together with its weight."""

    def __init__(self, name: str, weight: RationalLike, domain, action):
        super().__init__(domain, action)
        self.name = name
        self.weight = as_rational(weight)

    def __eq__(self, other):
        return (
            isinstance(other, OperatorSpec)
            and self.name == other.name
            and self.weight == other.weight
            and super().__eq__(other)
        )

    def __hash__(self):
        return hash((self.name, self.weight, super().__hash__()))

    def __repr__(self):
        body = ", ".join(f"{g} -> {e}" for g, e in self._action.items())
        return f"OperatorSpec({self.name!r}, weight={self.weight}, {{{body}}})"


def apply_operator(P: LinearMap, x):
    return P(x)


def scalar_operator(A: AlgebraSpec, kappa: RationalLike, weight: RationalLike, name: Optional[str] = None) -> OperatorSpec:
    kappa = as_rational(kappa)
    return OperatorSpec(
        name or f"{kappa}*id",
        weight,
        A.generators,
        {g: Element.of(g, kappa) for g in A.generators},
    )


def projection(A: AlgebraSpec, keep: Iterable[str], weight: RationalLike = -1, name: Optional[str] = None) -> OperatorSpec:
    keep = [A.gen(n) for n in keep]
    return OperatorSpec(name or "proj", weight, A.generators, {g: Element.of(g) for g in keep})


def validate_map(A: AlgebraSpec, P: LinearMap, check_name: str = "operator_validation") -> CheckReport:
    """Parity preservation and torsion compatibility on every generator.

    Witness residuals: for a torsion violation ``d^t P(g)``; for a parity
    violation the part of ``P(g)`` with the wrong parity.
    """
    if P.domain != A.generators:
        raise UnknownGeneratorError("map is defined on a different generator list")
    witnesses = []
    for g in A.generators:
        img = P.image(g)
        wrong = Element({h: p for h, p in img.items() if h.parity != g.parity})
        if wrong:
            witnesses.append(Witness((Element.of(g),), FormalPoly.constant(wrong), "parity"))
        if g.torsion is not None:
            killed = img.partial(g.torsion)
            if killed:
                witnesses.append(Witness((Element.of(g),), FormalPoly.constant(killed), "torsion"))
    return CheckReport(check_name, tuple(witnesses), {"tuples": len(A.generators)})


def validate_operator(A: AlgebraSpec, P: OperatorSpec) -> CheckReport:
    return validate_map(A, P)


def require_valid(A: AlgebraSpec, P: LinearMap, what: str = "operator"):
    report = validate_map(A, P)
    if not report.passed:
        raise OperatorValidationError(report, what)


def rb_residual(A: AlgebraSpec, P: OperatorSpec, a: Element, b: Element, var: str = "mu") -> FormalPoly:
    T = A.bracket
    Pa, Pb = P(a), P(b)
    lhs = eval_pairing(T, Pa, Pb, var)
    inner = eval_pairing(T, Pa, b, var) + eval_pairing(T, a, Pb, var) + eval_pairing(T, a, b, var).scale(P.weight)
    return lhs - P(inner)


def _pairs(A: AlgebraSpec):
    gens = [Element.of(g) for g in A.generators]
    return list(itertools.product(gens, repeat=2))


def check_rb(A: AlgebraSpec, P: OperatorSpec) -> CheckReport:
    require_valid(A, P)
    return run_check(
        "rota_baxter",
        _pairs(A),
        lambda a, b: rb_residual(A, P, a, b),
        stats={"weight": str(P.weight)},
    )


def deformed_value(A: AlgebraSpec, P: LinearMap, weight, a: Element, b: Element, var: str) -> FormalPoly:
    """``I_{a,Pb} + I_{Pa,b} + weight * I_{a,b}`` evaluated directly."""
    T = A.bracket
    return (
        eval_pairing(T, a, P(b), var)
        + eval_pairing(T, P(a), b, var)
        + eval_pairing(T, a, b, var).scale(weight)
    )


def deform(A: AlgebraSpec, P: OperatorSpec) -> AlgebraSpec:
    """The deformed algebra. Its vacuum is always dropped."""
    require_valid(A, P)
    table = {
        (gi, gj): deformed_value(A, P, P.weight, Element.of(gi), Element.of(gj), "lam")
        for gi, gj in A.bracket.pairs()
    }
    bracket = Pairing(A.generators, table)
    return A.with_bracket(bracket, name=f"{A.name}_deformed_{P.name}", vacuum=None)


def homomorphism_residual(A: AlgebraSpec, P: OperatorSpec, a: Element, b: Element, deformed: AlgebraSpec, var: str = "mu") -> FormalPoly:
    return eval_pairing(A.bracket, P(a), P(b), var) - P(eval_pairing(deformed.bracket, a, b, var))


def check_homomorphism(A: AlgebraSpec, P: OperatorSpec) -> CheckReport:
    """``I_{Pa,Pb} = P(I*_{a,b})`` with ``I*`` read from the deformed table.

    This is the Rota-Baxter identity rewritten, so it is cross-checked
    against ``check_rb``; a disagreement is an internal error.
    """
    deformed = deform(A, P)
    report = run_check(
        "homomorphism",
        _pairs(A),
        lambda a, b: homomorphism_residual(A, P, a, b, deformed),
        stats={"weight": str(P.weight)},
    )
    rb = check_rb(A, P)
    if rb.witnesses != report.witnesses:
        raise RuntimeError("homomorphism and Rota-Baxter checks disagree")
    return CheckReport(
        report.check_name,
        report.witnesses,
        dict(report.stats, rb_cross_check="agree"),
        ("equivalent to the Rota-Baxter identity; witnesses match check_rb",),
    )
