"""Algebra presentations and the sesquilinear pairing evaluator.

A bracket (or any 2-cochain) is stored only on generator pairs. Values on
arbitrary elements are derived from the two sesquilinearity rules

    I_{d a, b}(x) = -x I_{a,b}(x),      I_{a, d b}(x) = (d + x) I_{a,b}(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .formal import (
    Element,
    FormalPoly,
    Generator,
    ParityError,
    as_poly,
    require_variables,
    shift_negate,
)

# Table values are stored in this variable and renamed on evaluation.
TABLE_VAR = "lam"


class UnknownGeneratorError(KeyError):
    pass


class VariableCollisionError(ValueError):
    pass


class AlgebraValidationError(ValueError):
    pass


class Pairing:
    """Generator-level table of single-variable FormalPolys."""

    __slots__ = ("generators", "_table", "_index")

    def __init__(
        self,
        generators: Sequence[Generator],
        table: Optional[Mapping[Tuple[Generator, Generator], FormalPoly]] = None,
        var: str = TABLE_VAR,
    ):
        self.generators: Tuple[Generator, ...] = tuple(generators)
        self._index = {g: i for i, g in enumerate(self.generators)}
        cleaned = {}
        for (gi, gj), value in (table or {}).items():
            for g in (gi, gj):
                if g not in self._index:
                    raise UnknownGeneratorError(g.name)
            require_variables(value, {var}, f"table entry ({gi}, {gj})")
            value = value.rename(var, TABLE_VAR)
            if value:
                cleaned[(gi, gj)] = value
        self._table: Dict[Tuple[Generator, Generator], FormalPoly] = dict(
            sorted(cleaned.items(), key=lambda kv: (self._index[kv[0][0]], self._index[kv[0][1]]))
        )

    def _check(self, g: Generator):
        if g not in self._index:
            raise UnknownGeneratorError(g.name)

    def entry(self, gi: Generator, gj: Generator, var: str = TABLE_VAR) -> FormalPoly:
        self._check(gi)
        self._check(gj)
        value = self._table.get((gi, gj))
        if value is None:
            return FormalPoly()
        return value.rename(TABLE_VAR, var)

    def items(self):
        return self._table.items()

    def pairs(self):
        return tuple((gi, gj) for gi in self.generators for gj in self.generators)

    def with_entry(self, gi: Generator, gj: Generator, value: FormalPoly, var: str = TABLE_VAR) -> "Pairing":
        table = dict(self._table)
        table[(gi, gj)] = value.rename(var, TABLE_VAR)
        return Pairing(self.generators, table)

    def __eq__(self, other):
        return (
            isinstance(other, Pairing)
            and self.generators == other.generators
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self.generators, tuple(self._table.items())))

    def __repr__(self):
        body = ", ".join(f"({a},{b}): {v}" for (a, b), v in self._table.items())
        return f"Pairing({{{body}}})"


def parity_sign(a: Element, b: Element) -> int:
    """``(-1)^(p(a) p(b))`` for homogeneous elements (zero counts as even)."""
    pa, pb = a.parity(), b.parity()
    return -1 if (pa or 0) * (pb or 0) else 1


def _right_translate(x: FormalPoly, n: int, var: str) -> FormalPoly:
    """``(d + var)^n`` applied to ``x``."""
    if n == 0:
        return x
    out = FormalPoly()
    for k in range(n + 1):
        out = out + x.partial(k).times_var(var, n - k).scale(comb(n, k))
    return out


def eval_pairing(T: Pairing, a: Element, b: Element, var: str) -> FormalPoly:
    """Extend the generator table ``T`` sesquilinearly to ``(a, b)``."""
    acc = FormalPoly()
    for gi, pa in a.items():
        for gj, pb in b.items():
            base = T.entry(gi, gj, var)
            if not base:
                continue
            for n, cb in pb.items():
                right = _right_translate(base, n, var)
                for m, ca in pa.items():
                    sign = -1 if m % 2 else 1
                    acc = acc + right.times_var(var, m).scale(sign * ca * cb)
    return acc


def eval_pairing_nested(
    T: Pairing,
    a: Union[Element, FormalPoly],
    b: Union[Element, FormalPoly],
    var: str,
) -> FormalPoly:
    """Coefficient-wise extension of ``eval_pairing`` to FormalPoly arguments."""
    pa, pb = as_poly(a), as_poly(b)
    if var in pa.variables() or var in pb.variables():
        raise VariableCollisionError(f"argument already uses the pairing variable {var}")
    acc = FormalPoly()
    for ma, ea in pa.items():
        for mb, eb in pb.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            acc = acc + eval_pairing(T, ea, eb, var).times_monomial(mono)
    return acc


def skew_complete(value: FormalPoly, sign: int) -> FormalPoly:
    """The reverse entry forced by skew-symmetry: ``sign * value(-x - d)``."""
    return shift_negate(value, TABLE_VAR, TABLE_VAR).scale(sign)


@dataclass(frozen=True)
class AlgebraSpec:
    """Generators, optional vacuum and a bracket table.

    ``explicit`` records which ordered pairs came from the input (the rest
    were filled in by skew-symmetry); it is metadata and not compared.
    """

    name: str
    generators: Tuple[Generator, ...]
    bracket: Pairing
    vacuum: Optional[Generator] = None
    explicit: frozenset = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self):
        validate_algebra(self)

    @classmethod
    def build(
        cls,
        name: str,
        generators: Iterable[Generator],
        brackets: Mapping[Tuple[Union[str, Generator], Union[str, Generator]], FormalPoly],
        vacuum: Union[str, Generator, None] = None,
        var: str = TABLE_VAR,
        complete: bool = True,
    ) -> "AlgebraSpec":
        """Build from a possibly partial table; missing reverse pairs are
        completed by skew-symmetry, anything else missing is zero."""
        generators = tuple(generators)
        by_name = _name_index(generators)

        def resolve(g):
            if isinstance(g, Generator):
                return g
            try:
                return by_name[g]
            except KeyError:
                raise UnknownGeneratorError(g) from None

        table = {}
        for (l, r), value in brackets.items():
            table[(resolve(l), resolve(r))] = value.rename(var, TABLE_VAR)
        explicit = frozenset(table)
        if complete:
            for (gi, gj), value in list(table.items()):
                if (gj, gi) not in table:
                    sign = -1 if gi.parity * gj.parity else 1
                    table[(gj, gi)] = skew_complete(value, sign)
        return cls(
            name=name,
            generators=generators,
            bracket=Pairing(generators, table),
            vacuum=resolve(vacuum) if vacuum is not None else None,
            explicit=explicit,
        )

    def gen(self, name: str) -> Generator:
        try:
            return _name_index(self.generators)[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def element(self, name: str, coeff=1, del_power: int = 0) -> Element:
        return Element.of(self.gen(name), coeff, del_power)

    @property
    def is_purely_even(self) -> bool:
        return all(g.parity == 0 for g in self.generators)

    def with_bracket(self, bracket: Pairing, name: Optional[str] = None, vacuum="keep") -> "AlgebraSpec":
        return AlgebraSpec(
            name=name or self.name,
            generators=self.generators,
            bracket=bracket,
            vacuum=self.vacuum if vacuum == "keep" else vacuum,
            explicit=frozenset(p for p, _ in bracket.items()),
        )


def _name_index(generators):
    return {g.name: g for g in generators}


def validate_algebra(A: AlgebraSpec):
    names = [g.name for g in A.generators]
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise AlgebraValidationError(f"duplicate generator names: {dup}")
    if A.bracket.generators != A.generators:
        raise AlgebraValidationError("bracket table is over a different generator list")
    if A.vacuum is not None:
        if A.vacuum not in A.generators:
            raise AlgebraValidationError(f"vacuum {A.vacuum} is not a generator")
        if A.vacuum.parity != 0 or A.vacuum.torsion is not None:
            raise AlgebraValidationError(f"vacuum {A.vacuum} must be even and free")
    for (gi, gj), value in A.bracket.items():
        expected = (gi.parity + gj.parity) % 2
        for e in value.elements():
            try:
                p = e.parity()
            except ParityError:
                raise AlgebraValidationError(f"bracket ({gi}, {gj}) is not homogeneous") from None
            if p != expected:
                raise AlgebraValidationError(
                    f"bracket ({gi}, {gj}) has parity {p}, expected {expected}"
                )


def zero_algebra(name: str, generators: Iterable[Generator]) -> AlgebraSpec:
    generators = tuple(generators)
    return AlgebraSpec(name, generators, Pairing(generators))


def direct_sum(name: str, *parts: AlgebraSpec) -> AlgebraSpec:
    """Direct sum with zero cross brackets; generator names must not clash."""
    generators = tuple(g for A in parts for g in A.generators)
    table = {}
    for A in parts:
        table.update(dict(A.bracket.items()))
    return AlgebraSpec(
        name,
        generators,
        Pairing(generators, table),
        explicit=frozenset(p for A in parts for p in A.explicit),
    )


def heisenberg(name: str = "heis1", alpha: str = "alpha", central: str = "k", level=Fraction(1)) -> AlgebraSpec:
    """Generator-level Heisenberg algebra: ``I_{alpha,alpha}(x) = level/2 x^2 k``
    with ``k`` central and killed by ``d``."""
    a = Generator(alpha, 0)
    k = Generator(central, 0, torsion=1)
    value = FormalPoly.term(Element.of(k, Fraction(level) / 2), lam=2)
    return AlgebraSpec.build(name, (a, k), {(a, a): value})
