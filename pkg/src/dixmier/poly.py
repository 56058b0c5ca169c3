"""Multivariate polynomials over Q(i) with a fixed, named generator list."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

from .scalars import ONE, ZERO, GaussianRational, as_scalar

Exponent = tuple[int, ...]


class MalformedInput(ValueError):
    """Raised for inputs that do not belong to the declared ring or datum."""


def grlex_key(exp: Exponent) -> tuple:
    """Graded-lex sort key; the first generator is the largest (x**2 < x*y < y**2)."""
    return (sum(exp), tuple(-e for e in exp))


def _add_into(acc: dict, key, coeff) -> None:
    new = acc.get(key, ZERO) + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


class MultiPoly:
    """Immutable polynomial: ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        clean: dict[Exponent, GaussianRational] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise MalformedInput(f"exponent {exp} does not match generators {variables}")
            if any(e < 0 for e in exp):
                raise MalformedInput(f"negative exponent {exp}")
            coeff = as_scalar(coeff)
            if coeff:
                _add_into(clean, exp, coeff)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_clean(cls, variables: tuple, terms: dict) -> "MultiPoly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "variables", variables)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls._from_clean(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], value=1) -> "MultiPoly":
        variables = tuple(variables)
        value = as_scalar(value)
        terms = {(0,) * len(variables): value} if value else {}
        return cls._from_clean(variables, terms)

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Exponent, coeff=1) -> "MultiPoly":
        return cls(variables, {tuple(exp): coeff})

    @classmethod
    def gen(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise MalformedInput(f"unknown generator {name!r}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls._from_clean(variables, {exp: ONE})

    # -- structure --------------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise MalformedInput(f"generator mismatch: {self.variables} vs {other.variables}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            _add_into(terms, exp, c)
        return MultiPoly._from_clean(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._from_clean(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = as_scalar(other)
            if not c:
                return MultiPoly.zero(self.variables)
            return MultiPoly._from_clean(self.variables, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(terms, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return MultiPoly._from_clean(self.variables, terms)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (ONE / as_scalar(other))

    def __pow__(self, k: int):
        result = MultiPoly.constant(self.variables, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == MultiPoly.constant(self.variables, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.variables, frozenset(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp: Exponent) -> GaussianRational:
        return self.terms.get(tuple(exp), ZERO)

    def items(self) -> Iterator[tuple[Exponent, GaussianRational]]:
        """Terms in canonical graded-lex order."""
        for exp in sorted(self.terms, key=grlex_key):
            yield exp, self.terms[exp]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def diff(self, index: int, times: int = 1) -> "MultiPoly":
        terms: dict = {}
        for exp, c in self.terms.items():
            e = exp[index]
            if e < times:
                continue
            factor = 1
            for k in range(times):
                factor *= e - k
            new = exp[:index] + (e - times,) + exp[index + 1:]
            _add_into(terms, new, c * factor)
        return MultiPoly._from_clean(self.variables, terms)

    def linear_substitution(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Algebra map sending generator k to ``images[k]``."""
        if len(images) != len(self.variables):
            raise MalformedInput("need one image per generator")
        result = MultiPoly.zero(self.variables)
        powers: dict = {}
        for exp, c in self.terms.items():
            term = MultiPoly.constant(self.variables, c)
            for k, e in enumerate(exp):
                if e:
                    key = (k, e)
                    if key not in powers:
                        powers[key] = images[k] ** e
                    term = term * powers[key]
            result = result + term
        return result

    # -- presentation -----------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e
            )
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
                {"exp": list(exp), **c.to_json()} for exp, c in self.items()
            ]
        }

    @classmethod
    def from_json(cls, variables: Sequence[str], data: Mapping) -> "MultiPoly":
        terms: dict = {}
        for t in data["terms"]:
            exp = tuple(t["exp"])
            coeff = GaussianRational(t.get("re", "0"), t.get("im", "0"))
            if exp in terms:
                terms[exp] = terms[exp] + coeff
            else:
                terms[exp] = coeff
        return cls(variables, terms)


def monomials_of_degree(num_vars: int, total: int) -> list[Exponent]:
    """All exponent tuples with the given total degree, in graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(num_vars), total):
        exp = [0] * num_vars
        for k in combo:
            exp[k] += 1
        out.append(tuple(exp))
    return sorted(out, key=grlex_key)


def weighted_monomials(weights: Sequence[int], target: int) -> list[Exponent]:
    """Exponents whose weighted degree sum(w_k * e_k) equals ``target`` (graded-lex order)."""
    n = len(weights)
    out: list[Exponent] = []

    def rec(k: int, remaining: int, acc: list[int]) -> None:
        if k == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = weights[k]
        if w <= 0:
            raise MalformedInput("generator degrees must be positive")
        for e in range(remaining // w + 1):
            acc.append(e)
            rec(k + 1, remaining - e * w, acc)
            acc.pop()

    rec(0, target, [])
    return sorted(out, key=grlex_key)


def polys_sum(variables: Sequence[str], polys: Iterable[MultiPoly]) -> MultiPoly:
    terms: dict = {}
    for p in polys:
        for exp, c in p.terms.items():
            _add_into(terms, exp, c)
    return MultiPoly._from_clean(tuple(variables), terms)
