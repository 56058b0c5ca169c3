"""Independent reference computations in sympy.

None of these reuse the package's product, symmetrization or trace code;
they act with differential operators on test functions or expand closed
formulas directly.
"""

from __future__ import annotations

from itertools import permutations, product
from math import comb, factorial

import sympy as sp

from dixmier.poly import MultiPoly
from dixmier.scalars import GaussianRational


def to_sympy(c: GaussianRational):
    return sp.Rational(str(c.re)) + sp.I * sp.Rational(str(c.im))


def from_sympy(v) -> GaussianRational:
    re, im = sp.nsimplify(v).as_real_imag()
    return GaussianRational(str(sp.Rational(re)), str(sp.Rational(im)))


def poly_to_sympy(f: MultiPoly, symbols):
    return sp.expand(sum((to_sympy(c) * sp.Mul(*[s ** e for s, e in zip(symbols, exp)])
                          for exp, c in f.terms.items()), sp.Integer(0)))


def sympy_to_poly(expr, symbols, variables) -> MultiPoly:
    p = sp.Poly(sp.expand(expr), *symbols)
    return MultiPoly(variables, {m: from_sympy(c) for m, c in p.terms() if c != 0})


# -- Weyl algebra as differential operators on C[q_1..q_n] -------------------------


def q_symbols(n):
    return sp.symbols(f"q1:{n + 1}")


def apply_weyl(u, f, qs):
    """Apply sum c q^a d^b (normal order) to a sympy expression f."""
    out = sp.Integer(0)
    for (a, b), c in u.terms.items():
        g = f
        for qk, bk in zip(qs, b):
            if bk:
                g = sp.diff(g, qk, bk)
        out += to_sympy(c) * sp.Mul(*[qk ** ak for qk, ak in zip(qs, a)]) * g
    return sp.expand(out)


def sample_functions(n, top):
    qs = q_symbols(n)
    return [sp.Mul(*[qk ** e for qk, e in zip(qs, m)]) for m in product(range(top + 1), repeat=n)]


def operators_equal(u, v, n, top):
    """u == v as operators, tested on all monomials of per-variable degree <= top."""
    qs = q_symbols(n)
    return all(sp.expand(apply_weyl(u, f, qs) - apply_weyl(v, f, qs)) == 0 for f in sample_functions(n, top))


def compose_apply(u, v, f, qs):
    return apply_weyl(u, apply_weyl(v, f, qs), qs)


def symmetrized_word_action(a: int, b: int, f, q):
    """Average over all words in a copies of q and b copies of d/dq, applied to f."""
    words = set(permutations("q" * a + "d" * b))
    total = sp.Integer(0)
    for w in words:
        g = f
        for letter in reversed(w):
            g = sp.expand(q * g) if letter == "q" else sp.diff(g, q)
        total += g
    return sp.expand(total / len(words))


# -- trace: constant term of the Weyl symbol ---------------------------------------


def weyl_trace(u, n: int):
    """T(u) as the value at 0 of the Weyl symbol exp(-1/2 sum d_x d_y) of the normal symbol."""
    xs, ys = sp.symbols(f"x1:{n + 1}"), sp.symbols(f"y1:{n + 1}")
    total = sp.Integer(0)
    for (a, b), c in u.terms.items():
        if a != b:
            continue
        term = sp.Mul(*[x ** e for x, e in zip(xs, a)]) * sp.Mul(*[y ** e for y, e in zip(ys, b)])
        val = term
        for k, (x, y) in enumerate(zip(xs, ys)):
            val = sp.diff(val, x, a[k], y, b[k]) * sp.Rational(-1, 2) ** a[k] / factorial(a[k])
        total += to_sympy(c) * val.subs({s: 0 for s in xs + ys})
    return sp.nsimplify(total)


# -- Moyal by binomial expansion ------------------------------------------------------


def moyal_components(f, g, xs, ys, c):
    """C_p = c^p/p! (sum_k d_xk (x) d_yk - d_yk (x) d_xk)^p via a multinomial expansion."""
    n = len(xs)
    deg = min(sp.Poly(f, *xs, *ys).total_degree(), sp.Poly(g, *xs, *ys).total_degree())
    out = {}
    for p in range(deg + 1):
        total = sp.Integer(0)
        for split in product(range(p + 1), repeat=n):
            if sum(split) != p:
                continue
            mult = factorial(p)
            for s in split:
                mult //= factorial(s)
            choices = [range(s + 1) for s in split]
            for rs in product(*choices):
                coeff = mult
                df, dg = f, g
                for k, (s, r) in enumerate(zip(split, rs)):
                    coeff *= comb(s, r) * (-1) ** r
                    df = sp.diff(df, xs[k], s - r, ys[k], r) if s else df
                    dg = sp.diff(dg, xs[k], r, ys[k], s - r) if s else dg
                total += coeff * df * dg
        total = sp.expand(total * c ** p / factorial(p))
        if total != 0:
            out[p] = total
    return out


def killing_matrix(lie):
    idx = {b: i for i, b in enumerate(lie.basis)}
    n = lie.dim
    ads = []
    for a in lie.basis:
        m = sp.zeros(n, n)
        for j, b in enumerate(lie.basis):
            for k, v in lie.bracket(a, b).items():
                m[idx[k], j] = to_sympy(v)
        ads.append(m)
    return sp.Matrix(n, n, lambda i, j: (ads[i] * ads[j]).trace())


def sympy_rank(rows):
    return sp.Matrix([[to_sympy(v) for v in r] for r in rows]).rank() if rows else 0
