"""Closed-form Moyal product on C[x_1..x_n, y_1..y_n], used as an oracle.

C_p(f, g) = c^p / p! * P^p(f, g) with
P = sum_k (d/dx_k (x) d/dy_k - d/dy_k (x) d/dx_k).
The constant c is fixed once by C_1 = {f, g}/2.
"""

from __future__ import annotations

from math import factorial

from .poly import MalformedInput, MultiPoly, polys_sum
from .scalars import ONE, GaussianRational, as_scalar
from .star import StarSeries


def calibrate(poisson_sign) -> GaussianRational:
    """c with c * (f_x g_y - f_y g_x) = {f, g}/2 when {x_k, y_k} = poisson_sign."""
    return as_scalar(poisson_sign) / 2


def _power_of_P(n: int, p: int) -> dict:
    """Expansion of P^p as {(alpha, beta): coeff}, alpha acting on f, beta on g."""
    zero = (0,) * (2 * n)
    terms = {(zero, zero): ONE}
    for _ in range(p):
        nxt: dict = {}
        for (a, b), c in terms.items():
            for k in range(n):
                for i, j, sign in ((k, n + k, 1), (n + k, k, -1)):
                    na = a[:i] + (a[i] + 1,) + a[i + 1:]
                    nb = b[:j] + (b[j] + 1,) + b[j + 1:]
                    key = (na, nb)
                    v = nxt.get(key, 0) + c * sign
                    if v:
                        nxt[key] = v
                    else:
                        nxt.pop(key, None)
        terms = nxt
    return terms


def _apply(f: MultiPoly, alpha) -> MultiPoly:
    for i, e in enumerate(alpha):
        if e:
            f = f.diff(i, e)
            if not f:
                break
    return f


def moyal_oracle(f: MultiPoly, g: MultiPoly, t_power_cap: int | None = None,
                 constant=None) -> StarSeries:
    if f.variables != g.variables or len(f.variables) % 2:
        raise MalformedInput("Moyal product needs polynomials in the same Darboux variables")
    n = len(f.variables) // 2
    c = as_scalar(constant) if constant is not None else calibrate(-1)
    top = min(f.total_degree(), g.total_degree())
    if t_power_cap is not None:
        top = min(top, t_power_cap)
    comps = {}
    for p in range(top + 1):
        parts = []
        for (a, b), coeff in _power_of_P(n, p).items():
            da = _apply(f, a)
            if not da:
                continue
            db = _apply(g, b)
            if db:
                parts.append(da * db * coeff)
        if parts:
            comps[p] = polys_sum(f.variables, parts) * (c ** p / factorial(p))
    return StarSeries(f.variables, comps)
