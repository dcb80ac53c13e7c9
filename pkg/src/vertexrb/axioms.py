"""Vertex algebra axiom checks over generator tuples, with witnessed residuals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .algebra import (
    AlgebraSpec,
    eval_pairing,
    eval_pairing_nested,
    parity_sign,
    skew_complete,
    _right_translate,
)
from .formal import Element, FormalPoly, shift_negate, substitute_sum

# Largest d-power per side used by the evaluator self-test.
SESQUI_MAX_POWER = 3


class NoVacuumError(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    """Arguments of a violated identity and its nonzero residual LHS - RHS."""

    args: Tuple
    residual: FormalPoly
    label: str = ""


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    witnesses: Tuple[Witness, ...] = ()
    stats: Dict = field(default_factory=dict)
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def witness_args(self):
        return [w.args for w in self.witnesses]

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check_name} ({self.stats.get('tuples', 0)} tuples, {len(self.witnesses)} witnesses)"


def run_check(
    name: str,
    tuples: Iterable[Tuple],
    residual: Callable[..., FormalPoly],
    stats: Optional[Dict] = None,
    notes: Iterable[str] = (),
) -> CheckReport:
    """Evaluate ``residual(*t)`` over ``tuples`` in order, keeping nonzero ones."""
    witnesses = []
    count = 0
    for t in tuples:
        count += 1
        r = residual(*t)
        if r:
            witnesses.append(Witness(tuple(t), r))
    all_stats = {"tuples": count}
    all_stats.update(stats or {})
    return CheckReport(name, tuple(witnesses), all_stats, tuple(notes))


def _gens(A: AlgebraSpec) -> List[Element]:
    return [Element.of(g) for g in A.generators]


def vacuum_residual(A: AlgebraSpec, a: Element, b: Element) -> FormalPoly:
    """``I_{a,b}(lam)`` minus the non-vacuum argument (vacuum axiom)."""
    vac = Element.of(A.vacuum)
    expected = b if a == vac else a
    return eval_pairing(A.bracket, a, b, "lam") - FormalPoly.constant(expected)


def check_vacuum(A: AlgebraSpec) -> CheckReport:
    if A.vacuum is None:
        raise NoVacuumError(f"algebra {A.name} has no vacuum")
    vac = Element.of(A.vacuum)
    tuples = []
    for g in _gens(A):
        tuples.append((vac, g))
        if g != vac:
            tuples.append((g, vac))
    return run_check("vacuum", tuples, lambda a, b: vacuum_residual(A, a, b))


def sesquilinearity_residual(A: AlgebraSpec, a: Element, b: Element, m: int, n: int) -> FormalPoly:
    """Reduce ``I_{d^m a, d^n b}`` left-first minus right-first.

    Left-first pulls ``(-lam)^m`` out of ``I_{a, d^n b}``; right-first applies
    ``(d + lam)^n`` to ``I_{d^m a, b}``. Elements are torsion-reduced before
    evaluation, so a torsion generator with a nonzero bracket shows up here.
    """
    var = "lam"
    sign = -1 if m % 2 else 1
    left = eval_pairing(A.bracket, a, b.partial(n), var).times_var(var, m).scale(sign)
    right = _right_translate(eval_pairing(A.bracket, a.partial(m), b, var), n, var)
    return left - right


def check_sesquilinearity(A: AlgebraSpec, max_power: int = SESQUI_MAX_POWER) -> CheckReport:
    gens = _gens(A)
    tuples = [
        (a, b, m, n)
        for a, b in itertools.product(gens, repeat=2)
        for m in range(max_power + 1)
        for n in range(max_power + 1)
    ]
    return run_check(
        "sesquilinearity",
        tuples,
        lambda a, b, m, n: sesquilinearity_residual(A, a, b, m, n),
        stats={"max_power": max_power},
    )


def reverse_entry_residual(A: AlgebraSpec, a: Element, b: Element) -> FormalPoly:
    """Explicit entry ``(b, a)`` minus the skew-symmetric completion of ``(a, b)``."""
    (ga,), (gb,) = a.generators(), b.generators()
    sign = parity_sign(a, b)
    return A.bracket.entry(gb, ga) - skew_complete(A.bracket.entry(ga, gb), sign)


def check_reverse_entries(A: AlgebraSpec) -> CheckReport:
    idx = {g: i for i, g in enumerate(A.generators)}
    tuples = [
        (Element.of(gi), Element.of(gj))
        for gi, gj in A.bracket.pairs()
        if idx[gi] < idx[gj] and (gi, gj) in A.explicit and (gj, gi) in A.explicit
    ]
    return run_check("reverse_entries", tuples, lambda a, b: reverse_entry_residual(A, a, b))


def skew_residual(A: AlgebraSpec, a: Element, b: Element) -> FormalPoly:
    var = "lam"
    lhs = eval_pairing(A.bracket, b, a, var)
    rhs = shift_negate(eval_pairing(A.bracket, a, b, var), var, var).scale(parity_sign(a, b))
    return lhs - rhs


def check_skew(A: AlgebraSpec) -> CheckReport:
    tuples = list(itertools.product(_gens(A), repeat=2))
    return run_check("skew_symmetry", tuples, lambda a, b: skew_residual(A, a, b))


def jacobi_residual(A: AlgebraSpec, a: Element, b: Element, c: Element) -> FormalPoly:
    T = A.bracket
    lhs = eval_pairing_nested(T, a, eval_pairing(T, b, c, "mu"), "nu") - eval_pairing_nested(
        T, b, eval_pairing(T, a, c, "mu"), "nu"
    ).scale(parity_sign(a, b))
    rhs = substitute_sum(eval_pairing_nested(T, eval_pairing(T, a, b, "mu"), c, "nu"), "nu", "nu", "mu")
    return lhs - rhs


def check_jacobi(A: AlgebraSpec) -> CheckReport:
    tuples = list(itertools.product(_gens(A), repeat=3))
    return run_check("jacobi", tuples, lambda a, b, c: jacobi_residual(A, a, b, c))


def check_all(A: AlgebraSpec, unital: bool = False) -> List[CheckReport]:
    reports = [
        check_sesquilinearity(A),
        check_reverse_entries(A),
        check_skew(A),
        check_jacobi(A),
    ]
    if unital:
        reports.insert(0, check_vacuum(A))
    return reports


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports)
