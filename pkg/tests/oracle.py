"""Independent sympy model of V[lam, mu, nu] used as a test oracle.

An element ``sum_g p_g(d) g`` becomes the commutative expression
``sum_g p_g(D) G_g``; torsion is imposed by dropping ``D^e G_g`` for
``e >= torsion(g)`` after every operation. Substitutions are done with
``subs`` rather than binomial loops, so this shares no code path with the
engine.
"""

from fractions import Fraction

import sympy as sp

from vertexrb.formal import VARIABLES, Element, FormalPoly

D = sp.Symbol("D")
VARS = {name: sp.Symbol(name) for name in VARIABLES}


def gsym(g):
    return sp.Symbol(f"G_{g.name}")


def to_expr(x) -> sp.Expr:
    if isinstance(x, Element):
        x = FormalPoly.constant(x)
    out = sp.Integer(0)
    for mono, e in x.items():
        m = sp.Mul(*[VARS[v] ** n for v, n in zip(VARIABLES, mono)])
        for g, p in e.items():
            for exp, c in p.items():
                out += sp.Rational(c.numerator, c.denominator) * m * D**exp * gsym(g)
    return sp.expand(out)


def reduce(expr, gens) -> sp.Expr:
    expr = sp.expand(expr)
    if expr == 0:
        return expr
    out = sp.Integer(0)
    for g in gens:
        coeff = sp.expand(expr.coeff(gsym(g)))
        if g.torsion is not None and coeff != 0:
            poly = sp.Poly(coeff, D)
            coeff = sum(
                (c * D**k for (k,), c in poly.terms() if k < g.torsion),
                sp.Integer(0),
            )
        out += coeff * gsym(g)
    return sp.expand(out)


def shift_negate(expr, src, dst, gens):
    return reduce(expr.subs(VARS[src], -VARS[dst] - D), gens)


def substitute_sum(expr, src, a, b, gens):
    return reduce(expr.subs(VARS[src], VARS[a] + VARS[b]), gens)


def eval_pairing(table, a_expr, b_expr, var, gens):
    """``sum_ij p_i(-var) q_j(D + var) T_ij(var)`` with ``table`` a dict of
    sympy expressions in ``lam`` keyed by generator pairs."""
    x = VARS[var]
    out = sp.Integer(0)
    for gi in gens:
        p = sp.expand(a_expr).coeff(gsym(gi))
        if p == 0:
            continue
        for gj in gens:
            q = sp.expand(b_expr).coeff(gsym(gj))
            t = table.get((gi, gj), 0)
            if q == 0 or t == 0:
                continue
            out += p.subs(D, -x) * q.subs(D, D + x) * sp.sympify(t).subs(VARS["lam"], x)
    return reduce(out, gens)


def table_of(A):
    return {(gi, gj): to_expr(v) for (gi, gj), v in A.bracket.items()}


def apply_map(images, expr, gens):
    """``images`` maps generator -> sympy expression of its image."""
    out = sp.Integer(0)
    for g in gens:
        p = sp.expand(expr).coeff(gsym(g))
        if p != 0:
            out += p * images.get(g, 0)
    return reduce(out, gens)


def same(engine_value, expr, gens) -> bool:
    return sp.expand(to_expr(engine_value) - reduce(expr, gens)) == 0


def rational(q: Fraction):
    return sp.Rational(q.numerator, q.denominator)
