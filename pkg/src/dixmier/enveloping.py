"""U(g) in PBW normal form, the homomorphism psi: U(g) -> D and its kernel J."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping

from .datum import DatumError, QuantizationDatum
from .lie import LieAlgebraData
from .linalg import Subspace, axpy, kernel_of_columns
from .poly import MalformedInput, grlex_key, monomials_of_degree
from .report import CheckReport
from .scalars import ONE, ZERO, GaussianRational, as_scalar, rational_str


class UEnvElement:
    """Sum of PBW monomials x_1^{e_1} ... x_m^{e_m} in the declared basis order."""

    __slots__ = ("lie", "terms")

    def __init__(self, lie: LieAlgebraData, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != lie.dim or any(e < 0 for e in exp):
                raise MalformedInput(f"bad PBW exponent {exp}")
            c = as_scalar(c)
            if c:
                clean[exp] = clean.get(exp, ZERO) + c
        object.__setattr__(self, "lie", lie)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __setattr__(self, name, value):
        raise AttributeError("UEnvElement is immutable")

    @classmethod
    def one(cls, lie) -> "UEnvElement":
        return cls(lie, {(0,) * lie.dim: ONE})

    @classmethod
    def gen(cls, lie, name: str) -> "UEnvElement":
        exp = [0] * lie.dim
        exp[lie.basis.index(name)] = 1
        return cls(lie, {tuple(exp): ONE})

    @classmethod
    def from_lie_vector(cls, lie, vec: Mapping) -> "UEnvElement":
        out = cls(lie)
        for name, c in vec.items():
            out = out + cls.gen(lie, name) * as_scalar(c)
        return out

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return UEnvElement(self.lie, out)

    def __neg__(self):
        return UEnvElement(self.lie, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UEnvElement):
            return pbw_mul(self, other, self.lie)
        c = as_scalar(other)
        return UEnvElement(self.lie, {k: v * c for k, v in self.terms.items()})

    __rmul__ = lambda self, other: self * other

    def __eq__(self, other):
        return isinstance(other, UEnvElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.items():
            word = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.lie.basis, exp) if e)
            parts.append(f"{c}*{word}" if word else str(c))
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"basis": list(self.lie.basis),
                "terms": [{"exp": list(e), "re": rational_str(c.re), "im": rational_str(c.im)}
                          for e, c in self.items()]}


@lru_cache(maxsize=None)
def _straightener(lie: LieAlgebraData):
    index = {n: i for i, n in enumerate(lie.basis)}
    bracket = {(index[a], index[b]): {index[k]: v for k, v in vec.items()}
               for (a, b), vec in lie.brackets.items()}

    @lru_cache(maxsize=None)
    def times_letter(exp: tuple, i: int) -> tuple:
        """PBW monomial ``exp`` times the letter x_i, straightened."""
        last = max((k for k, e in enumerate(exp) if e), default=-1)
        if i >= last:
            new = list(exp)
            new[i] += 1
            return ((tuple(new), ONE),)
        rest = list(exp)
        rest[last] -= 1
        rest = tuple(rest)
        out: dict = {}
        # rest x_last x_i = rest x_i x_last + rest [x_last, x_i]
        for m, c in times_letter(rest, i):
            for m2, c2 in times_letter(m, last):
                axpy(out, c * c2, {m2: ONE})
        for k, v in bracket.get((last, i), {}).items():
            for m, c in times_letter(rest, k):
                axpy(out, c * v, {m: ONE})
        return tuple(sorted(out.items()))

    return times_letter


def pbw_mul(u: UEnvElement, v: UEnvElement, lie: LieAlgebraData | None = None) -> UEnvElement:
    lie = lie or u.lie
    if u.lie is not lie or v.lie is not lie:
        raise MalformedInput("elements of different enveloping algebras")
    times_letter = _straightener(lie)
    out: dict = {}
    for ev, cv in v.terms.items():
        letters = [i for i, e in enumerate(ev) for _ in range(e)]
        for eu, cu in u.terms.items():
            acc = {eu: cu * cv}
            for i in letters:
                nxt: dict = {}
                for m, c in acc.items():
                    for m2, c2 in times_letter(m, i):
                        axpy(nxt, c * c2, {m2: ONE})
                acc = nxt
            axpy(out, ONE, acc)
    return UEnvElement(lie, out)


def pbw_basis_exact(lie: LieAlgebraData, length: int) -> list[UEnvElement]:
    return [UEnvElement(lie, {exp: ONE}) for exp in monomials_of_degree(lie.dim, length)]


def pbw_basis(lie: LieAlgebraData, max_length: int) -> list[UEnvElement]:
    return [w for n in range(max_length + 1) for w in pbw_basis_exact(lie, n)]


def tau(u: UEnvElement) -> UEnvElement:
    """Principal anti-automorphism: x -> -x on g, products reversed."""
    lie = u.lie
    out = UEnvElement(lie)
    for exp, c in u.terms.items():
        letters = [i for i, e in enumerate(exp) for _ in range(e)]
        term = UEnvElement.one(lie) * c
        for i in reversed(letters):
            term = pbw_mul(term, UEnvElement.gen(lie, lie.basis[i]) * -1)
        out = out + term
    return out


def psi_extend(u: UEnvElement, d: QuantizationDatum):
    """The algebra homomorphism U(g) -> D extending psi."""
    if u.lie.basis != d.lie.basis:
        raise MalformedInput("Lie basis of the element and the datum differ")
    cache = d.__dict__.setdefault("_psi_powers", {})

    def power(i, e):
        if (i, e) not in cache:
            cache[(i, e)] = d.one() if e == 0 else d.mul(power(i, e - 1), d.psi[d.lie.basis[i]])
        return cache[(i, e)]

    out = d.algebra.zero()
    for exp, c in u.terms.items():
        term = d.one()
        for i, e in enumerate(exp):
            if e:
                term = d.mul(term, power(i, e))
        out = out + term * c
    return out


# -- kernel ---------------------------------------------------------------------------


@dataclass
class KernelDegree:
    degree: int  # half-units
    dim_u: int
    dim_image: int
    dim_target: int
    basis: list

    @property
    def dim_kernel(self) -> int:
        return self.dim_u - self.dim_image

    @property
    def surjective(self) -> bool:
        return self.dim_image == self.dim_target

    def to_json(self) -> dict:
        return {"degree": self.degree, "dimU": self.dim_u, "dimImage": self.dim_image,
                "dimKernel": self.dim_kernel, "dimInvariantTarget": self.dim_target,
                "surjective": self.surjective, "kernelBasis": [k.to_json() for k in self.basis]}


def _normalize(u: UEnvElement) -> UEnvElement:
    lead = u.items()[0][1]
    return u * (ONE / lead)


def kernel_J(d: QuantizationDatum, cutoff: int) -> list[KernelDegree]:
    """J intersected with U_j for each word length j with 2j <= cutoff."""
    out = []
    for j in range(cutoff // 2 + 1):
        words = pbw_basis(d.lie, j)
        images = [d.algebra.vector(psi_extend(w, d)) for w in words]
        ker = kernel_of_columns(images, order=d.algebra.order)
        basis = []
        for vec in ker:
            k = UEnvElement(d.lie, {})
            for idx, c in vec.items():
                k = k + words[idx] * c
            basis.append(_normalize(k))
        span = Subspace(order=lambda key: grlex_key(key))
        for b in basis:
            span.add(b.terms)
        basis = [_normalize(UEnvElement(d.lie, span.rows[p])) for p in span.pivots()]
        out.append(KernelDegree(2 * j, len(words), len(words) - len(basis),
                                _invariant_dim(d, 2 * j), basis))
    return out


def _invariant_dim(d: QuantizationDatum, d2: int) -> int:
    span = Subspace(order=d.algebra.order)
    for b in d.algebra.basis(d2):
        avg = d.algebra.zero()
        for s in d.galois.names:
            avg = avg + d.act(s, b)
        span.add(d.algebra.vector(avg))
    return span.dim


def check_kernel(d: QuantizationDatum, cutoff: int, kernels=None) -> CheckReport:
    """J_j is nested, tau-stable and a two-sided ideal within range."""
    kernels = kernel_J(d, cutoff) if kernels is None else kernels
    rep = CheckReport("kernel", cutoff)
    for kd in kernels:
        rep.require(kd.dim_image + kd.dim_kernel == kd.dim_u, "rank-nullity fails")
        for k in kd.basis:
            rep.require(not psi_extend(k, d), "kernel element has nonzero image", u=k)
    spans = []
    for kd in kernels:
        sub = Subspace(order=grlex_key)
        for k in kd.basis:
            sub.add(k.terms)
        spans.append(sub)
    for lo, hi in zip(spans, spans[1:]):
        for row in lo.basis():
            rep.require(hi.contains(row), "J_j is not contained in J_{j+1}", u=UEnvElement(d.lie, row))
    top = cutoff // 2
    for kd in kernels:
        j = kd.degree // 2
        for k in kd.basis:
            rep.require(spans[j].contains(tau(k).terms), "J is not tau-stable", u=k)
            for w in pbw_basis(d.lie, top - j):
                for prod in (pbw_mul(w, k), pbw_mul(k, w)):
                    rep.require(not psi_extend(prod, d), "J is not a two-sided ideal", u=k, w=w)
    return rep


def check_tau_beta_square(d: QuantizationDatum, max_length: int) -> CheckReport:
    """psi(tau(u)) = beta(psi(u)) on every PBW word of length <= max_length."""
    rep = CheckReport("tau-beta", max_length)
    for w in pbw_basis(d.lie, max_length):
        rep.require(psi_extend(tau(w), d) == d.beta(psi_extend(w, d)),
                    "psi tau != beta psi", u=w)
    return rep


def check_pbw_associativity(lie: LieAlgebraData, max_length: int) -> CheckReport:
    rep = CheckReport("pbw-associativity", max_length)
    by_length = {n: pbw_basis_exact(lie, n) for n in range(max_length + 1)}
    for la, lb, lc in product(range(max_length + 1), repeat=3):
        if la + lb + lc > max_length:
            continue
        for a, b, c in product(by_length[la], by_length[lb], by_length[lc]):
            rep.require(pbw_mul(pbw_mul(a, b), c) == pbw_mul(a, pbw_mul(b, c)),
                        "PBW product is not associative", a=a, b=b, c=c)
    for x, y in product(lie.basis, repeat=2):
        gx, gy = UEnvElement.gen(lie, x), UEnvElement.gen(lie, y)
        rep.require(gx * gy - gy * gx == UEnvElement.from_lie_vector(lie, lie.bracket(x, y)),
                    f"x y - y x != [x, y] for ({x}, {y})")
    return rep


def casimir(lie: LieAlgebraData) -> UEnvElement:
    """sum_a x_a x^a with x^a the Killing-dual basis."""
    duals = lie.dual_basis()
    out = UEnvElement(lie)
    for a in lie.basis:
        out = out + pbw_mul(UEnvElement.gen(lie, a), UEnvElement.from_lie_vector(lie, duals[a]))
    return out


def casimir_scalar(d: QuantizationDatum) -> GaussianRational:
    """psi(Casimir), which must be a multiple of 1 (Killing-form normalization)."""
    if not d.lie.killing_is_nondegenerate():
        raise MalformedInput("Killing form is degenerate; no Casimir element")
    image = psi_extend(casimir(d.lie), d)
    vec = d.algebra.vector(image)
    one = d.algebra.vector(d.one())
    (key, unit), = one.items()
    c = vec.get(key, ZERO) / unit
    if image != d.one() * c:
        raise DatumError(f"psi(Casimir) = {image} is not a scalar")
    return c
