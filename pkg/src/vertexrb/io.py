"""JSON encodings of algebras, operators and check reports.

Rationals are always strings ``"p/q"`` (or ``"p"``); floats are rejected.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Union

from .algebra import AlgebraSpec, AlgebraValidationError, TABLE_VAR, UnknownGeneratorError
from .axioms import CheckReport
from .cohomology import ScalarSolution
from .formal import VARIABLES, Element, FormalPoly, Generator
from .rota_baxter import OperatorSpec

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")

FIXTURE_PACKAGE = "vertexrb.data"


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    pass


def parse_rational(text: Any, where: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ParseError(f"{where}: expected a rational string like \"p/q\", got {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ParseError(f"{where}: zero denominator in {text!r}") from None


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _load_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _field(obj: Any, key: str, where: str, kind=None, default=...):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        if default is not ...:
            return default
        raise ParseError(f"{where}.{key}: missing")
    value = obj[key]
    if kind is not None and not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


def _power(obj, key, where) -> int:
    n = _field(obj, key, where, int, default=0)
    if n < 0:
        raise ParseError(f"{where}.{key}: must be non-negative")
    return n


def _lookup(by_name: Dict[str, Generator], name: Any, where: str) -> Generator:
    if not isinstance(name, str):
        raise ParseError(f"{where}: generator name must be a string")
    try:
        return by_name[name]
    except KeyError:
        raise ValidationError(f"{where}: unknown generator {name!r}") from None


def _check_torsion(g: Generator, del_power: int, where: str, strict: bool):
    if strict and g.torsion is not None and del_power >= g.torsion:
        raise ValidationError(
            f"{where}: d^{del_power}({g.name}) vanishes because {g.name} has torsion order {g.torsion}"
        )


def algebra_from_dict(data: Any, strict_torsion: bool = True, where: str = "algebra") -> AlgebraSpec:
    name = _field(data, "name", where, str)
    raw_gens = _field(data, "generators", where, list)
    generators = []
    for i, g in enumerate(raw_gens):
        w = f"{where}.generators[{i}]"
        gname = _field(g, "name", w, str)
        parity = _field(g, "parity", w, int, default=0)
        torsion = _field(g, "torsion_order", w, default=None)
        if torsion is not None and (not isinstance(torsion, int) or isinstance(torsion, bool)):
            raise ParseError(f"{w}.torsion_order: expected a positive integer or null")
        try:
            generators.append(Generator(gname, parity, torsion))
        except ValueError as exc:
            raise ValidationError(f"{w}: {exc}") from None
    by_name = {}
    for g in generators:
        if g.name in by_name:
            raise ValidationError(f"{where}.generators: duplicate name {g.name!r}")
        by_name[g.name] = g

    vacuum = _field(data, "vacuum", where, default=None)
    if vacuum is not None:
        vacuum = _lookup(by_name, vacuum, f"{where}.vacuum")

    table = {}
    for i, entry in enumerate(_field(data, "brackets", where, list, default=[])):
        w = f"{where}.brackets[{i}]"
        left = _lookup(by_name, _field(entry, "left", w), f"{w}.left")
        right = _lookup(by_name, _field(entry, "right", w), f"{w}.right")
        if (left, right) in table:
            raise ValidationError(f"{w}: duplicate bracket ({left.name}, {right.name})")
        acc = {}
        for j, term in enumerate(_field(entry, "terms", w, list)):
            tw = f"{w}.terms[{j}]"
            coeff = parse_rational(_field(term, "coeff", tw), f"{tw}.coeff")
            var_power = _power(term, "var_power", tw)
            del_power = _power(term, "del_power", tw)
            gen = _lookup(by_name, _field(term, "gen", tw), f"{tw}.gen")
            _check_torsion(gen, del_power, tw, strict_torsion)
            mono = (var_power, 0, 0)
            e = Element.of(gen, coeff, del_power)
            acc[mono] = acc[mono] + e if mono in acc else e
        table[(left, right)] = FormalPoly(acc)
    try:
        return AlgebraSpec.build(name, generators, table, vacuum=vacuum)
    except (AlgebraValidationError, UnknownGeneratorError) as exc:
        raise ValidationError(f"{where}: {exc}") from None


def parse_algebra(path: Union[str, Path], strict_torsion: bool = True) -> AlgebraSpec:
    return algebra_from_dict(_load_json(path), strict_torsion, where=str(path))


def element_from_list(terms: Any, by_name: Dict[str, Generator], where: str, strict_torsion: bool = True) -> Element:
    if not isinstance(terms, list):
        raise ParseError(f"{where}: expected a list of terms")
    out = Element()
    for j, term in enumerate(terms):
        tw = f"{where}[{j}]"
        coeff = parse_rational(_field(term, "coeff", tw), f"{tw}.coeff")
        del_power = _power(term, "del_power", tw)
        gen = _lookup(by_name, _field(term, "gen", tw), f"{tw}.gen")
        _check_torsion(gen, del_power, tw, strict_torsion)
        out = out + Element.of(gen, coeff, del_power)
    return out


def operator_from_dict(data: Any, A: AlgebraSpec, where: str = "operator", strict_torsion: bool = True) -> OperatorSpec:
    name = _field(data, "name", where, str)
    weight = parse_rational(_field(data, "weight", where), f"{where}.weight")
    by_name = {g.name: g for g in A.generators}
    action = {}
    for i, entry in enumerate(_field(data, "action", where, list, default=[])):
        w = f"{where}.action[{i}]"
        g = _lookup(by_name, _field(entry, "gen", w), f"{w}.gen")
        if g in action:
            raise ValidationError(f"{w}: generator {g.name!r} listed twice")
        action[g] = element_from_list(_field(entry, "image", w), by_name, f"{w}.image", strict_torsion)
    return OperatorSpec(name, weight, A.generators, action)


def parse_operator(path: Union[str, Path], A: AlgebraSpec, strict_torsion: bool = True) -> OperatorSpec:
    return operator_from_dict(_load_json(path), A, where=str(path), strict_torsion=strict_torsion)


def element_to_list(e: Element) -> List[Dict]:
    return [
        {"coeff": format_rational(c), "del_power": exp, "gen": g.name}
        for g, p in e.items()
        for exp, c in p.items()
    ]


def poly_to_list(p: FormalPoly) -> List[Dict]:
    out = []
    for mono, e in p.items():
        powers = {v: n for v, n in zip(VARIABLES, mono) if n}
        for term in element_to_list(e):
            out.append(dict(term, powers=powers))
    return out


def poly_from_list(terms: Any, by_name: Dict[str, Generator], where: str = "poly") -> FormalPoly:
    if not isinstance(terms, list):
        raise ParseError(f"{where}: expected a list of terms")
    pairs = []
    for j, term in enumerate(terms):
        tw = f"{where}[{j}]"
        powers = _field(term, "powers", tw, dict, default={})
        mono = [0, 0, 0]
        for v, n in powers.items():
            if v not in VARIABLES or not isinstance(n, int) or n < 0:
                raise ParseError(f"{tw}.powers: bad entry {v!r}: {n!r}")
            mono[VARIABLES.index(v)] = n
        e = element_from_list([term], by_name, tw, strict_torsion=False)
        pairs.append((tuple(mono), e))
    return FormalPoly.from_items(pairs)


def algebra_to_dict(A: AlgebraSpec) -> Dict:
    """Every nonzero ordered entry is written, so reloading reproduces the
    table exactly even if it is not skew-symmetric."""
    gens = []
    for g in A.generators:
        d = {"name": g.name, "parity": g.parity}
        if g.torsion is not None:
            d["torsion_order"] = g.torsion
        gens.append(d)
    brackets = []
    for (gi, gj), value in A.bracket.items():
        terms = [
            {"coeff": t["coeff"], "var_power": t["powers"].get(TABLE_VAR, 0), "del_power": t["del_power"], "gen": t["gen"]}
            for t in poly_to_list(value)
        ]
        brackets.append({"left": gi.name, "right": gj.name, "terms": terms})
    return {
        "name": A.name,
        "generators": gens,
        "vacuum": A.vacuum.name if A.vacuum is not None else None,
        "brackets": brackets,
    }


def write_algebra(A: AlgebraSpec, path: Union[str, Path]):
    Path(path).write_text(json.dumps(algebra_to_dict(A), indent=2) + "\n")


def operator_to_dict(P: OperatorSpec) -> Dict:
    return {
        "name": P.name,
        "weight": format_rational(P.weight),
        "action": [{"gen": g.name, "image": element_to_list(e)} for g, e in P.action.items()],
    }


def _arg_to_json(x):
    if isinstance(x, Element):
        return {"element": element_to_list(x), "text": str(x)}
    if isinstance(x, FormalPoly):
        return {"poly": poly_to_list(x), "text": str(x)}
    return x


def _arg_from_json(x, by_name):
    if isinstance(x, dict) and "element" in x:
        return element_from_list(x["element"], by_name, "witness.args", strict_torsion=False)
    if isinstance(x, dict) and "poly" in x:
        return poly_from_list(x["poly"], by_name, "witness.args")
    return x


def report_to_dict(report: CheckReport) -> Dict:
    return {
        "check_name": report.check_name,
        "passed": report.passed,
        "witnesses": [
            {
                "args": [_arg_to_json(a) for a in w.args],
                "label": w.label,
                "residual": poly_to_list(w.residual),
                "residual_text": str(w.residual),
            }
            for w in report.witnesses
        ],
        "stats": report.stats,
        "notes": list(report.notes),
    }


def witness_from_dict(data: Dict, A: AlgebraSpec):
    """Decode a JSON witness back to ``(args, residual)`` over ``A``."""
    by_name = {g.name: g for g in A.generators}
    args = tuple(_arg_from_json(a, by_name) for a in data["args"])
    return args, poly_from_list(data["residual"], by_name, "witness.residual")


def solution_to_dict(sol: ScalarSolution) -> Dict:
    return {
        "equation": sol.equation,
        "weight": format_rational(sol.weight),
        "roots": [format_rational(r) for r in sol.roots],
        "irrational_flag": sol.irrational_flag,
    }


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture, with or without the ``.json`` suffix."""
    fname = name if name.endswith(".json") else f"{name}.json"
    path = Path(str(resources.files(FIXTURE_PACKAGE).joinpath(fname)))
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return path


def fixture_names() -> List[str]:
    root = resources.files(FIXTURE_PACKAGE)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve_input(name_or_path: str) -> Path:
    """A filesystem path if it exists, else a bundled fixture of that name."""
    path = Path(name_or_path)
    if path.is_file():
        return path
    try:
        return fixture_path(name_or_path)
    except FileNotFoundError:
        raise ParseError(f"{name_or_path}: no such file or bundled fixture") from None


def load_algebra(name: str, strict_torsion: bool = True) -> AlgebraSpec:
    return parse_algebra(resolve_input(name), strict_torsion)


def load_operator(name: str, A: AlgebraSpec, strict_torsion: bool = True) -> OperatorSpec:
    return parse_operator(resolve_input(name), A, strict_torsion)
