"""The Weyl algebra A_n in normal order (every q to the left of every d).

Defining relations: [d_k, q_l] = delta_kl, all other generators commute.
Both q_k and d_k sit in filtration degree 1/2, so filtration degrees are
counted in half-units: deg(q^a d^b) = |a| + |b|.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Mapping, Sequence

from .linalg import axpy
from .poly import MalformedInput, MultiPoly, grlex_key
from .scalars import ONE, ZERO, GaussianRational, as_scalar, i_power

Key = tuple  # (a, b) with a, b exponent tuples of length n


def weyl_key(key: Key) -> tuple:
    a, b = key
    return grlex_key(a + b)


class WeylElement:
    """Immutable element sum c_ab q^a d^b of A_n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Key, object] | None = None):
        clean: dict = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != n or len(b) != n:
                raise MalformedInput(f"monomial ({a}, {b}) does not live in A_{n}")
            c = as_scalar(c)
            if c:
                axpy(clean, c, {(a, b): ONE})
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _from_clean(cls, n: int, terms: dict) -> "WeylElement":
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "terms", terms)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("WeylElement is immutable")

    @classmethod
    def scalar(cls, n: int, value=1) -> "WeylElement":
        value = as_scalar(value)
        zero = (0,) * n
        return cls._from_clean(n, {(zero, zero): value} if value else {})

    @classmethod
    def monomial(cls, a: Sequence[int], b: Sequence[int], coeff=1) -> "WeylElement":
        return cls(len(a), {(tuple(a), tuple(b)): coeff})

    @classmethod
    def q(cls, n: int, k: int) -> "WeylElement":
        return cls.monomial(tuple(int(i == k) for i in range(n)), (0,) * n)

    @classmethod
    def d(cls, n: int, k: int) -> "WeylElement":
        return cls.monomial((0,) * n, tuple(int(i == k) for i in range(n)))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise MalformedInput(f"cannot combine A_{self.n} with A_{other.n}")
            return other
        return WeylElement.scalar(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        axpy(terms, ONE, other.terms)
        return WeylElement._from_clean(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._from_clean(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_mul(self, other)
        c = as_scalar(other)
        if not c:
            return WeylElement._from_clean(self.n, {})
        return WeylElement._from_clean(self.n, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (ONE / as_scalar(other))

    def __pow__(self, k: int):
        result = WeylElement.scalar(self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.n == other.n and self.terms == other.terms
        try:
            return self == WeylElement.scalar(self.n, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Filtration degree in half-units; -1 for zero."""
        return max((sum(a) + sum(b) for a, b in self.terms), default=-1)

    def parity(self) -> int | None:
        """0 / 1 when every word has even / odd length, None when mixed or zero."""
        parities = {(sum(a) + sum(b)) % 2 for a, b in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def coefficient(self, a, b) -> GaussianRational:
        return self.terms.get((tuple(a), tuple(b)), ZERO)

    def __repr__(self):
        return f"WeylElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        single = self.n == 1
        parts = []
        for (a, b) in sorted(self.terms, key=weyl_key, reverse=True):
            c = self.terms[(a, b)]
            factors = []
            for sym, exps in (("q", a), ("d", b)):
                for k, e in enumerate(exps):
                    if e:
                        name = sym if single else f"{sym}{k + 1}"
                        factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"qa": list(a), "db": list(b), **self.terms[(a, b)].to_json()}
                for (a, b) in sorted(self.terms, key=weyl_key)
            ]
        }

    @classmethod
    def from_json(cls, n: int, data: Mapping) -> "WeylElement":
        out = WeylElement.scalar(n, 0)
        for t in data["terms"]:
            out = out + WeylElement(n, {(tuple(t["qa"]), tuple(t["db"])):
                                        GaussianRational(t.get("re", "0"), t.get("im", "0"))})
        return out


@lru_cache(maxsize=None)
def _reorder_1d(b: int, c: int) -> tuple:
    """d^b q^c = sum_m m! C(b,m) C(c,m) q^(c-m) d^(b-m); returns (m, coeff) pairs."""
    return tuple((m, factorial(m) * comb(b, m) * comb(c, m)) for m in range(min(b, c) + 1))


@lru_cache(maxsize=200_000)
def _monomial_product(a: tuple, b: tuple, c: tuple, d: tuple) -> tuple:
    """(q^a d^b)(q^c d^d) in normal order, as a tuple of ((a', b'), int) terms."""
    per_var = [_reorder_1d(bk, ck) for bk, ck in zip(b, c)]
    out = []
    for choice in product(*per_var):
        coeff = 1
        ms = []
        for m, w in choice:
            coeff *= w
            ms.append(m)
        new_a = tuple(ak + ck - m for ak, ck, m in zip(a, c, ms))
        new_b = tuple(bk + dk - m for bk, dk, m in zip(b, d, ms))
        out.append(((new_a, new_b), coeff))
    return tuple(out)


def weyl_mul(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.n != v.n:
        raise MalformedInput(f"cannot multiply A_{u.n} by A_{v.n}")
    terms: dict = {}
    for (a, b), c1 in u.terms.items():
        for (c, d), c2 in v.terms.items():
            c12 = c1 * c2
            for key, w in _monomial_product(a, b, c, d):
                new = terms.get(key, ZERO) + c12 * w
                if new:
                    terms[key] = new
                else:
                    del terms[key]
    return WeylElement._from_clean(u.n, terms)


def commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return weyl_mul(u, v) - weyl_mul(v, u)


def classical_variables(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("x", "y")
    return tuple(f"x{k + 1}" for k in range(n)) + tuple(f"y{k + 1}" for k in range(n))


def weyl_symbol(u: WeylElement, d2: int, variables: Sequence[str] | None = None) -> MultiPoly:
    """Order-(d2/2) symbol: the words of length exactly d2, read as x^a y^b."""
    variables = tuple(variables or classical_variables(u.n))
    if u.degree() > d2:
        raise MalformedInput(f"element has filtration degree {u.degree()}/2 > {d2}/2")
    terms = {a + b: c for (a, b), c in u.terms.items() if sum(a) + sum(b) == d2}
    return MultiPoly._from_clean(variables, terms)


def _symmetrize_pair(a: int, b: int, n: int, k: int) -> WeylElement:
    """Average over all orderings of a copies of q_k and b copies of d_k."""
    total = a + b
    q, d = WeylElement.q(n, k), WeylElement.d(n, k)
    # coefficient of s^i t^(total-i) in (s q + t d)^total, keyed by i
    layers = {0: WeylElement.scalar(n, 1)}
    for _ in range(total):
        nxt: dict[int, WeylElement] = {}
        for i, elem in layers.items():
            for shift, gen in ((1, q), (0, d)):
                j = i + shift
                term = weyl_mul(elem, gen)
                nxt[j] = nxt[j] + term if j in nxt else term
        layers = nxt
    words = comb(total, a)
    return layers.get(a, WeylElement.scalar(n, 0)) * GaussianRational(1) / words


def weyl_symmetrize(f: MultiPoly) -> WeylElement:
    """Weyl (totally symmetric) ordering of a polynomial in x_k, y_k."""
    if len(f.variables) % 2:
        raise MalformedInput("symmetrization needs an even number of generators")
    n = len(f.variables) // 2
    out = WeylElement.scalar(n, 0)
    for exp, c in f.terms.items():
        a, b = exp[:n], exp[n:]
        term = WeylElement.scalar(n, c)
        for k in range(n):
            if a[k] or b[k]:
                term = weyl_mul(term, _symmetrize_pair(a[k], b[k], n, k))
        out = out + term
    return out


def weyl_beta(u: WeylElement) -> WeylElement:
    """Anti-automorphism with q_k -> i q_k, d_k -> i d_k."""
    n = u.n
    zero = (0,) * n
    terms: dict = {}
    for (a, b), c in u.terms.items():
        scale = c * i_power(sum(a) + sum(b))
        for key, w in _monomial_product(zero, b, a, zero):
            axpy(terms, scale * w, {key: ONE})
    return WeylElement._from_clean(n, terms)


def _generator_images(n: int, matrix) -> list[WeylElement]:
    gens = [WeylElement.q(n, k) for k in range(n)] + [WeylElement.d(n, k) for k in range(n)]
    images = []
    for k in range(2 * n):
        img = WeylElement.scalar(n, 0)
        for l in range(2 * n):
            if matrix[l][k]:
                img = img + gens[l] * matrix[l][k]
        images.append(img)
    return images


def weyl_linear_act(matrix, u: WeylElement) -> WeylElement:
    """Algebra automorphism induced by a linear map on the generator span."""
    n = u.n
    size = 2 * n
    if len(matrix) != size:
        raise MalformedInput("matrix size does not match the generators")
    diagonal = all(not matrix[i][j] for i in range(size) for j in range(size) if i != j)
    if diagonal:
        diag = [as_scalar(matrix[i][i]) for i in range(size)]
        terms = {}
        for (a, b), c in u.terms.items():
            w = c
            for k, e in enumerate(a + b):
                if e:
                    w = w * diag[k] ** e
            if w:
                terms[(a, b)] = w
        return WeylElement._from_clean(n, terms)
    images = _generator_images(n, matrix)
    out = WeylElement.scalar(n, 0)
    for (a, b), c in u.terms.items():
        term = WeylElement.scalar(n, c)
        for k, e in enumerate(a + b):
            for _ in range(e):
                term = weyl_mul(term, images[k])
        out = out + term
    return out


def weyl_galois_act(s, u: WeylElement, group) -> WeylElement:
    return weyl_linear_act(group.matrix(s), u)


class WeylAlgebra:
    """A_n as a filtered algebra: canonical bases, symbols and lifts."""

    def __init__(self, n: int):
        if n < 1:
            raise MalformedInput("need at least one Darboux pair")
        self.n = n
        self.variables = classical_variables(n)
        self.order = weyl_key

    def one(self) -> WeylElement:
        return WeylElement.scalar(self.n, 1)

    def zero(self) -> WeylElement:
        return WeylElement.scalar(self.n, 0)

    def mul(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return weyl_mul(u, v)

    def degree(self, u: WeylElement) -> int:
        return u.degree()

    def vector(self, u: WeylElement) -> dict:
        return u.terms

    def from_vector(self, vec: Mapping) -> WeylElement:
        return WeylElement._from_clean(self.n, dict(vec))

    def top_monomials(self, d2: int) -> list[WeylElement]:
        from .poly import monomials_of_degree

        return [
            WeylElement._from_clean(self.n, {(e[: self.n], e[self.n:]): ONE})
            for e in monomials_of_degree(2 * self.n, d2)
        ]

    def basis(self, d2: int) -> list[WeylElement]:
        """Canonical basis of D_{d2/2}: normal monomials of length <= d2."""
        out = []
        for k in range(d2 + 1):
            out.extend(self.top_monomials(k))
        return out

    def contains(self, u: WeylElement) -> bool:
        return isinstance(u, WeylElement) and u.n == self.n

    def symbol(self, u: WeylElement, d2: int) -> MultiPoly:
        return weyl_symbol(u, d2, self.variables)

    def lift(self, f: MultiPoly, d2: int) -> WeylElement:
        """Some element of D_{d2/2} whose order-(d2/2) symbol is the homogeneous f."""
        terms = {}
        for exp, c in f.terms.items():
            if sum(exp) != d2:
                raise MalformedInput(f"{f} is not homogeneous of degree {d2}/2")
            terms[(exp[: self.n], exp[self.n:])] = c
        return WeylElement._from_clean(self.n, terms)

    def galois_act(self, group, s, u: WeylElement) -> WeylElement:
        return weyl_galois_act(s, u, group)
