"""Exact formal arithmetic for integrated lambda-bracket computations.

Three layers, all immutable and kept in canonical form (sorted, no zeros) so
that equality is structural:

* ``DeltaPoly``  -- a polynomial in the translation operator ``d`` with
  rational coefficients,
* ``Element``    -- a finite sum ``sum_g p_g(d) g`` over generators,
* ``FormalPoly`` -- a polynomial in the formal variables ``lam``, ``mu``,
  ``nu`` whose coefficients are Elements.

A generator of torsion order ``t`` satisfies ``d^t g = 0``; Elements drop
such terms on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, Optional, Tuple, Union

VARIABLES = ("lam", "mu", "nu")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Monomial = Tuple[int, int, int]
ONE: Monomial = (0, 0, 0)

RationalLike = Union[int, Fraction, str]


class VariableMismatchError(ValueError):
    """A formal polynomial uses a variable the operation does not allow."""


class ParityError(ValueError):
    """Parity was requested for an element that is not homogeneous."""


def as_rational(value: RationalLike) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coefficient {value!r}")
    return Fraction(value)


def _var(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise VariableMismatchError(f"unknown formal variable {name!r}") from None


@dataclass(frozen=True)
class Generator:
    """A generator of V with its parity and optional torsion order."""

    name: str
    parity: int = 0
    torsion: Optional[int] = None

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError(f"parity of {self.name!r} must be 0 or 1")
        if self.torsion is not None and self.torsion < 1:
            raise ValueError(f"torsion order of {self.name!r} must be positive")

    @property
    def sort_key(self):
        return (self.name, self.parity, self.torsion or 0)

    def __str__(self):
        return self.name


class DeltaPoly:
    """Polynomial in ``d`` with exact rational coefficients."""

    __slots__ = ("_items",)

    def __init__(self, coeffs: Optional[Mapping[int, RationalLike]] = None):
        items = []
        for exp, c in (coeffs or {}).items():
            if exp < 0:
                raise ValueError("negative power of d")
            c = as_rational(c)
            if c:
                items.append((int(exp), c))
        items.sort()
        self._items: Tuple[Tuple[int, Fraction], ...] = tuple(items)

    @classmethod
    def monomial(cls, exp: int = 0, coeff: RationalLike = 1) -> "DeltaPoly":
        return cls({exp: coeff})

    def items(self):
        return self._items

    def as_dict(self):
        return dict(self._items)

    @property
    def degree(self) -> int:
        return self._items[-1][0] if self._items else -1

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        return isinstance(other, DeltaPoly) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __add__(self, other: "DeltaPoly") -> "DeltaPoly":
        acc = dict(self._items)
        for e, c in other._items:
            acc[e] = acc.get(e, 0) + c
        return DeltaPoly(acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "DeltaPoly") -> "DeltaPoly":
        acc = {}
        for e1, c1 in self._items:
            for e2, c2 in other._items:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return DeltaPoly(acc)

    def scale(self, c: RationalLike) -> "DeltaPoly":
        c = as_rational(c)
        return DeltaPoly({e: c * v for e, v in self._items})

    def shift(self, n: int) -> "DeltaPoly":
        """Multiply by ``d^n``."""
        return DeltaPoly({e + n: v for e, v in self._items})

    def truncate(self, order: int) -> "DeltaPoly":
        """Drop every power ``d^e`` with ``e >= order``."""
        return DeltaPoly({e: v for e, v in self._items if e < order})

    def __repr__(self):
        return f"DeltaPoly({dict(self._items)!r})"


def _fmt_coeff(c: Fraction, rest: str) -> str:
    if not rest:
        return str(c)
    if c == 1:
        return rest
    if c == -1:
        return "-" + rest
    return f"{c}*{rest}"


class Element:
    """A finite combination ``sum_g p_g(d) g`` of generators."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Generator, Union[DeltaPoly, Mapping]]] = None):
        cleaned = {}
        for g, p in (terms or {}).items():
            if not isinstance(p, DeltaPoly):
                p = DeltaPoly(p)
            if g.torsion is not None:
                p = p.truncate(g.torsion)
            if p:
                cleaned[g] = p
        self._terms: Tuple[Tuple[Generator, DeltaPoly], ...] = tuple(
            sorted(cleaned.items(), key=lambda kv: kv[0].sort_key)
        )

    @classmethod
    def of(cls, g: Generator, coeff: RationalLike = 1, del_power: int = 0) -> "Element":
        return cls({g: DeltaPoly.monomial(del_power, coeff)})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    def items(self):
        return self._terms

    @property
    def terms(self):
        return dict(self._terms)

    def generators(self):
        return tuple(g for g, _ in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, Element) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: "Element") -> "Element":
        acc = dict(self._terms)
        for g, p in other._terms:
            acc[g] = acc[g] + p if g in acc else p
        return Element(acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RationalLike) -> "Element":
        c = as_rational(c)
        if not c:
            return Element()
        return Element({g: p.scale(c) for g, p in self._terms})

    def __rmul__(self, c):
        return self.scale(c)

    def partial(self, n: int = 1) -> "Element":
        if n < 0:
            raise ValueError("negative power of d")
        if n == 0:
            return self
        return Element({g: p.shift(n) for g, p in self._terms})

    def parity(self) -> Optional[int]:
        """Common parity of all generators; ``None`` for the zero element."""
        parities = {g.parity for g, _ in self._terms}
        if len(parities) > 1:
            raise ParityError(f"element {self} is not homogeneous")
        return parities.pop() if parities else None

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for g, p in self._terms:
            for e, c in p.items():
                base = g.name if e == 0 else (f"d({g.name})" if e == 1 else f"d^{e}({g.name})")
                parts.append(_fmt_coeff(c, base))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Element({self})"


def _mono_str(m: Monomial) -> str:
    out = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return "*".join(out)


def _add_into(acc: dict, mono: Monomial, e: Element):
    if e:
        acc[mono] = acc[mono] + e if mono in acc else e


class FormalPoly:
    """Polynomial in ``lam``, ``mu``, ``nu`` with Element coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Element]] = None):
        cleaned = {}
        for mono, e in (terms or {}).items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != len(VARIABLES) or min(mono) < 0:
                raise ValueError(f"bad monomial {mono!r}")
            if e:
                cleaned[mono] = e
        self._terms: Tuple[Tuple[Monomial, Element], ...] = tuple(sorted(cleaned.items()))

    @classmethod
    def constant(cls, e: Element) -> "FormalPoly":
        return cls({ONE: e})

    @classmethod
    def term(cls, e: Element, **powers: int) -> "FormalPoly":
        mono = [0, 0, 0]
        for name, n in powers.items():
            mono[_var(name)] = n
        return cls({tuple(mono): e})

    @classmethod
    def zero(cls) -> "FormalPoly":
        return cls()

    @classmethod
    def from_items(cls, pairs: Iterable[Tuple[Monomial, Element]]) -> "FormalPoly":
        acc = {}
        for mono, e in pairs:
            _add_into(acc, mono, e)
        return cls(acc)

    def items(self):
        return self._terms

    def elements(self) -> Iterator[Element]:
        return (e for _, e in self._terms)

    def variables(self) -> frozenset:
        return frozenset(
            name for i, name in enumerate(VARIABLES) if any(m[i] for m, _ in self._terms)
        )

    def degree(self, var: str) -> int:
        i = _var(var)
        return max((m[i] for m, _ in self._terms), default=-1)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, FormalPoly) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: "FormalPoly") -> "FormalPoly":
        acc = dict(self._terms)
        for m, e in other._terms:
            _add_into(acc, m, e)
        return FormalPoly(acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RationalLike) -> "FormalPoly":
        c = as_rational(c)
        if not c:
            return FormalPoly()
        return FormalPoly({m: e.scale(c) for m, e in self._terms})

    def __rmul__(self, c):
        return self.scale(c)

    def times_monomial(self, mono: Monomial) -> "FormalPoly":
        return FormalPoly({tuple(a + b for a, b in zip(m, mono)): e for m, e in self._terms})

    def times_var(self, var: str, n: int = 1) -> "FormalPoly":
        mono = [0, 0, 0]
        mono[_var(var)] = n
        return self.times_monomial(tuple(mono))

    def map_coefficients(self, f) -> "FormalPoly":
        return FormalPoly.from_items((m, f(e)) for m, e in self._terms)

    def partial(self, n: int = 1) -> "FormalPoly":
        return self.map_coefficients(lambda e: e.partial(n))

    def rename(self, src: str, dst: str) -> "FormalPoly":
        """Rename ``src`` to ``dst``; ``dst`` must be unused unless equal to ``src``."""
        if src == dst:
            return self
        if dst in self.variables():
            raise VariableMismatchError(f"cannot rename {src} to {dst}: {dst} in use")
        i, j = _var(src), _var(dst)

        def move(m):
            m = list(m)
            m[j], m[i] = m[i], 0
            return tuple(m)

        return FormalPoly({move(m): e for m, e in self._terms})

    def at_zero(self, var: str) -> "FormalPoly":
        """Set ``var = 0``: drop every monomial with a positive power of ``var``."""
        i = _var(var)
        return FormalPoly({m: e for m, e in self._terms if m[i] == 0})

    def coefficient(self, **powers: int) -> Element:
        mono = [0, 0, 0]
        for name, n in powers.items():
            mono[_var(name)] = n
        return dict(self._terms).get(tuple(mono), Element())

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, e in reversed(self._terms):
            ms = _mono_str(m)
            if not ms:
                parts.append(f"({e})")
            else:
                parts.append(f"{ms}*({e})")
        return " + ".join(parts)

    def __repr__(self):
        return f"FormalPoly({self})"


def as_poly(x: Union[Element, FormalPoly]) -> FormalPoly:
    return x if isinstance(x, FormalPoly) else FormalPoly.constant(x)


def require_variables(p: FormalPoly, allowed, what: str = "operation"):
    extra = p.variables() - frozenset(allowed)
    if extra:
        raise VariableMismatchError(
            f"{what} expects variables {sorted(allowed)}, polynomial also uses {sorted(extra)}"
        )


def linear_combine(parts: Iterable[Tuple[RationalLike, Element]]) -> Element:
    total = Element()
    for c, e in parts:
        total = total + e.scale(c)
    return total


def apply_partial(x, n: int):
    """Apply ``d^n`` to an Element, or coefficient-wise to a FormalPoly."""
    return x.partial(n)


def shift_negate(p: FormalPoly, src: str, dst: str) -> FormalPoly:
    """Substitute ``src -> -dst - d`` where ``d`` acts on the coefficients.

    ``c * src^n`` becomes ``sum_k C(n,k) (-1)^n dst^(n-k) d^k c``.
    """
    require_variables(p, {src}, "shift_negate")
    j = _var(dst)
    acc = {}
    for m, e in p.items():
        n = m[_var(src)]
        sign = -1 if n % 2 else 1
        for k in range(n + 1):
            mono = [0, 0, 0]
            mono[j] = n - k
            _add_into(acc, tuple(mono), e.partial(k).scale(sign * comb(n, k)))
    return FormalPoly(acc)


def substitute_sum(p: FormalPoly, src: str, a: str, b: str) -> FormalPoly:
    """Substitute ``src -> a + b`` binomially; coefficients are untouched.

    Powers of ``a`` or ``b`` already present are carried along as factors.
    """
    if a == b:
        raise VariableMismatchError("substitute_sum needs two distinct target variables")
    require_variables(p, {src, a, b}, "substitute_sum")
    i, ia, ib = _var(src), _var(a), _var(b)
    acc = {}
    for m, e in p.items():
        n = m[i]
        base = list(m)
        base[i] = 0
        for k in range(n + 1):
            mono = list(base)
            mono[ia] += k
            mono[ib] += n - k
            _add_into(acc, tuple(mono), e.scale(comb(n, k)))
    return FormalPoly(acc)
