"""The product phi o psi = q^-1(q phi . q psi), its C_p components, the graded
star product on R[t], and the operators Lambda^x and Pi^(x,y).

All degrees are Euler degrees in half-units.  ``C_p(phi, psi)`` for
phi in R[j], psi in R[k] is the Euler component of degree j + k - p of
phi o psi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .datum import DatumError, QuantizationMap, RangeError
from .linalg import matmul, rank_fraction_free
from .poisson import constant_term
from .poly import MalformedInput, MultiPoly, polys_sum
from .report import CheckReport
from .scalars import HALF, ONE, ZERO, GaussianRational, as_scalar


@dataclass(frozen=True)
class StarSeries:
    """An element sum_p components[p] t^p of R[t]."""

    variables: tuple
    components: Mapping[int, MultiPoly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {p: c for p, c in sorted(self.components.items()) if c}
        if any(p < 0 for p in clean):
            raise MalformedInput("negative power of t")
        object.__setattr__(self, "components", clean)

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def __eq__(self, other):
        if not isinstance(other, StarSeries):
            return NotImplemented
        return self.variables == other.variables and self.components == other.components

    def __add__(self, other: "StarSeries") -> "StarSeries":
        out = dict(self.components)
        for p, c in other.components.items():
            out[p] = out[p] + c if p in out else c
        return StarSeries(self.variables, out)

    def __neg__(self):
        return StarSeries(self.variables, {p: -c for p, c in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "StarSeries":
        c = as_scalar(c)
        return StarSeries(self.variables, {p: v * c for p, v in self.components.items()})

    def shift(self, k: int = 1) -> "StarSeries":
        """Multiply by t^k."""
        return StarSeries(self.variables, {p + k: v for p, v in self.components.items()})

    @classmethod
    def of(cls, f: MultiPoly, power: int = 0) -> "StarSeries":
        return cls(f.variables, {power: f})

    def specialize(self) -> MultiPoly:
        """Value at t = 1."""
        return polys_sum(self.variables, self.components.values())

    def to_json(self) -> dict:
        return {str(p): c.to_json() for p, c in self.components.items()}

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"({c})*t^{p}" for p, c in self.components.items())


class StarProduct:
    """Memoized o-product built on a quantization map."""

    def __init__(self, qmap: QuantizationMap):
        self.qmap = qmap
        self.datum = qmap.datum
        self.classical = qmap.datum.classical
        self._q: dict = {}
        self._circ: dict = {}

    @property
    def cutoff(self) -> int:
        return self.qmap.cutoff

    @property
    def variables(self) -> tuple:
        return self.classical.variables

    def q(self, f: MultiPoly):
        if f not in self._q:
            self._q[f] = self.qmap(f)
        return self._q[f]

    def circ(self, f: MultiPoly, g: MultiPoly) -> MultiPoly:
        deg = self.classical.degree(f) + self.classical.degree(g)
        if deg > self.cutoff:
            raise RangeError(f"o-product of degree {deg}/2 exceeds the range {self.cutoff}/2")
        key = (f, g)
        if key not in self._circ:
            self._circ[key] = self.qmap.inverse_poly(self.datum.mul(self.q(f), self.q(g)))
        return self._circ[key]

    def components(self, f: MultiPoly, g: MultiPoly) -> dict[int, MultiPoly]:
        """Euler components of f o g, keyed by degree."""
        return self.classical.euler_components(self.circ(f, g))

    def cp(self, f: MultiPoly, g: MultiPoly) -> dict[int, MultiPoly]:
        """p -> C_p(f, g) for homogeneous f, g."""
        top = self._homogeneous_degree(f) + self._homogeneous_degree(g)
        out = {}
        for e2, part in self.components(f, g).items():
            if (top - e2) % 2:
                raise DatumError(f"o-product of {f} and {g} has a component of degree {e2}/2, "
                                 f"an odd number of half-steps below {top}/2")
            out[(top - e2) // 2] = part
        return dict(sorted(out.items()))

    def homogenize(self, f: MultiPoly, g: MultiPoly) -> StarSeries:
        total = StarSeries(self.variables)
        for fj in self.classical.euler_components(f).values():
            for gk in self.classical.euler_components(g).values():
                total = total + StarSeries(self.variables, self.cp(fj, gk))
        return total

    def star_mul(self, u: StarSeries, v: StarSeries) -> StarSeries:
        total = StarSeries(self.variables)
        for a, f in u.components.items():
            for b, g in v.components.items():
                total = total + self.homogenize(f, g).shift(a + b)
        return total

    def Q(self, f: MultiPoly, g: MultiPoly) -> GaussianRational:
        """T(q f . q g); equals the constant term of f o g whenever that is in range."""
        return self.qmap.trace(self.datum.mul(self.q(f), self.q(g)))

    def _homogeneous_degree(self, f: MultiPoly) -> int:
        parts = self.classical.euler_components(f)
        if len(parts) > 1:
            raise MalformedInput(f"{f} is not homogeneous")
        return next(iter(parts), 0)


def _star(q) -> StarProduct:
    if isinstance(q, StarProduct):
        return q
    cache = q.__dict__
    if "_star" not in cache:
        cache["_star"] = StarProduct(q)
    return cache["_star"]


def circ(phi: MultiPoly, psi: MultiPoly, q) -> MultiPoly:
    return _star(q).circ(phi, psi)


def extract_Cp(phi: MultiPoly, psi: MultiPoly, q) -> dict[int, MultiPoly]:
    return _star(q).cp(phi, psi)


def homogenize(phi: MultiPoly, psi: MultiPoly, q) -> StarSeries:
    return _star(q).homogenize(phi, psi)


def star_mul(u: StarSeries, v: StarSeries, q) -> StarSeries:
    return _star(q).star_mul(u, v)


# -- tables -------------------------------------------------------------------------


def basis_items(classical, cutoff: int) -> list[tuple[int, MultiPoly]]:
    return [(d2, b) for d2 in range(cutoff + 1) for b in classical.basis(d2)]


def basis_pairs(classical, cutoff: int):
    items = basis_items(classical, cutoff)
    for (j2, f), (k2, g) in product(items, repeat=2):
        if j2 + k2 <= cutoff:
            yield j2, f, k2, g


@dataclass(frozen=True)
class CpRow:
    j2: int
    k2: int
    phi: MultiPoly
    psi: MultiPoly
    cp: dict

    def to_json(self) -> dict:
        return {"j": self.j2, "k": self.k2, "phi": self.phi.to_json(), "psi": self.psi.to_json(),
                "Cp": {str(p): c.to_json() for p, c in self.cp.items()}}


@dataclass(frozen=True)
class CpTable:
    cutoff: int
    rows: tuple

    def to_json(self) -> list:
        return [r.to_json() for r in self.rows]


def cp_table(q, cutoff: int | None = None) -> CpTable:
    star = _star(q)
    cutoff = star.cutoff if cutoff is None else cutoff
    rows = tuple(CpRow(j2, k2, f, g, star.cp(f, g)) for j2, f, k2, g in basis_pairs(star.classical, cutoff))
    return CpTable(cutoff, rows)


# -- checks --------------------------------------------------------------------------


def _cp_or_fail(star: StarProduct, rep: CheckReport, f, g):
    try:
        return star.cp(f, g)
    except DatumError as exc:
        rep.fail(str(exc), phi=f, psi=g)
        return None


def check_circ_identities(q, cutoff: int) -> CheckReport:
    """C_0 = product, C_1 = half bracket, parity, degree rule, truncation, for j + k <= cutoff."""
    star = _star(q)
    cl = star.classical
    rep = CheckReport("circ-identities", cutoff)
    for j2, f, k2, g in basis_pairs(cl, cutoff):
        cfg, cgf = _cp_or_fail(star, rep, f, g), _cp_or_fail(star, rep, g, f)
        if cfg is None or cgf is None:
            continue
        zero = MultiPoly.zero(cl.variables)
        rep.require(cfg.get(0, zero) == f * g, "C_0 is not the product", phi=f, psi=g)
        rep.require(cfg.get(1, zero) == cl.bracket(f, g) * HALF, "C_1 is not half the bracket", phi=f, psi=g)
        for p in set(cfg) | set(cgf):
            sign = -1 if p % 2 else 1
            rep.require(cfg.get(p, zero) == cgf.get(p, zero) * sign, f"parity fails for C_{p}", phi=f, psi=g)
        for p in cfg:
            rep.require(p <= min(j2, k2), f"truncation: C_{p} below degree |j-k|", phi=f, psi=g)
    return rep


def check_truncation(q, cutoff: int) -> CheckReport:
    star = _star(q)
    rep = CheckReport("truncation", cutoff)
    for j2, f, k2, g in basis_pairs(star.classical, cutoff):
        comps = star.components(f, g)
        low = min(comps, default=abs(j2 - k2))
        rep.require(low >= abs(j2 - k2) and max(comps, default=0) <= j2 + k2,
                    "component outside degrees |j-k|..j+k", phi=f, psi=g)
    return rep


def check_associativity(q, cutoff: int) -> CheckReport:
    star = _star(q)
    cl = star.classical
    rep = CheckReport("associativity", cutoff)
    items = basis_items(cl, cutoff)
    for (j2, a), (k2, b), (l2, c) in product(items, repeat=3):
        if j2 + k2 + l2 > cutoff:
            continue
        lhs = star.circ(star.circ(a, b), c)
        rhs = star.circ(a, star.circ(b, c))
        rep.require(lhs == rhs, "(a o b) o c != a o (b o c)", a=a, b=b, c=c)
    return rep


def check_Q(q, cutoff: int) -> CheckReport:
    """Q(f, g) = T(f o g): orthogonal across degrees, (anti)symmetric, nondegenerate."""
    star = _star(q)
    cl = star.classical
    rep = CheckReport("Q", cutoff)
    for j2, f, k2, g in basis_pairs(cl, cutoff):
        via_circ = constant_term(star.circ(f, g))
        rep.require(via_circ == star.Q(f, g), "constant term of f o g != T(qf qg)", phi=f, psi=g)
        if j2 != k2:
            rep.require(not via_circ, "Q pairs different degrees", phi=f, psi=g)
        else:
            sign = -1 if j2 % 2 else 1
            rep.require(via_circ == constant_term(star.circ(g, f)) * sign,
                        "Q is not (anti)symmetric", phi=f, psi=g)
    for d2 in range(cutoff + 1):
        basis = cl.basis(d2)
        g = [[star.Q(a, b) for b in basis] for a in basis]
        rep.require(rank_fraction_free(g) == len(basis), f"Q is degenerate on R[{d2}/2]")
    return rep


def check_supertrace(q, cutoff: int) -> CheckReport:
    """T(f o g) = (-1)^{|f||g|} T(g o f); R[j] has parity 2j mod 2."""
    star = _star(q)
    rep = CheckReport("star-supertrace", cutoff)
    for j2, f, k2, g in basis_pairs(star.classical, cutoff):
        tfg = constant_term(star.circ(f, g))
        tgf = constant_term(star.circ(g, f))
        if j2 % 2 == k2 % 2:
            sign = -1 if j2 % 2 else 1
            rep.require(tfg == tgf * sign, "supertrace identity fails", phi=f, psi=g)
        else:
            rep.require(not tfg and not tgf, "T nonzero on mixed parity", phi=f, psi=g)
    return rep


def check_star_axioms(q, cutoff: int) -> CheckReport:
    """Graded star product axioms on homogenize, plus uniqueness of the homogenization."""
    star = _star(q)
    cl = star.classical
    rep = CheckReport("star-axioms", cutoff)
    for j2, f, k2, g in basis_pairs(cl, cutoff):
        h, hr = star.homogenize(f, g), star.homogenize(g, f)
        zero = MultiPoly.zero(cl.variables)
        c = h.components
        rep.require(c.get(0, zero) == f * g, "t^0 term is not the product", phi=f, psi=g)
        rep.require(c.get(1, zero) == cl.bracket(f, g) * HALF, "t^1 term is not half the bracket",
                    phi=f, psi=g)
        for p in set(c) | set(hr.components):
            sign = -1 if p % 2 else 1
            rep.require(c.get(p, zero) == hr.components.get(p, zero) * sign,
                        f"parity fails at t^{p}", phi=f, psi=g)
        for p, part in c.items():
            rep.require(cl.euler_components(part).keys() == {j2 + k2 - 2 * p},
                        f"t^{p} term not in R[j+k-p]", phi=f, psi=g)
            rep.require(p <= min(j2, k2), f"t^{p} exceeds 2 min(j, k)", phi=f, psi=g)
        rep.require(h.specialize() == star.circ(f, g), "specialization at t=1 is not o", phi=f, psi=g)
        # any graded product specializing to o has C_p = Euler part of degree j+k-p
        rebuilt = StarSeries(cl.variables, {(j2 + k2 - e2) // 2: part
                                            for e2, part in star.components(f, g).items()})
        rep.require(rebuilt == h, "homogenization not determined by Euler degrees", phi=f, psi=g)
    return rep


def check_star_associativity(q, cutoff: int) -> CheckReport:
    star = _star(q)
    cl = star.classical
    rep = CheckReport("star-associativity", cutoff)
    items = basis_items(cl, cutoff)
    for (j2, a), (k2, b), (l2, c) in product(items, repeat=3):
        if j2 + k2 + l2 > cutoff:
            continue
        sa, sb, sc = (StarSeries.of(e) for e in (a, b, c))
        lhs = star.star_mul(star.star_mul(sa, sb), sc)
        rhs = star.star_mul(sa, star.star_mul(sb, sc))
        rep.require(lhs == rhs, "star product is not associative", a=a, b=b, c=c)
    return rep


def check_exact_invariance(q, cutoff: int) -> CheckReport:
    """[phi, psi]_star = t {phi, psi} for phi in R[1] (hence for every phi^x)."""
    star = _star(q)
    cl = star.classical
    rep = CheckReport("exact-invariance", cutoff)
    hams = [cl.hamiltonian(x) for x in star.datum.lie.basis] + cl.basis(2)
    for phi in hams:
        for k2, psi in basis_items(cl, cutoff - 2):
            comm = star.homogenize(phi, psi) - star.homogenize(psi, phi)
            rep.require(comm == StarSeries.of(cl.bracket(phi, psi), 1),
                        "[phi, psi]_star != t {phi, psi}", phi=phi, psi=psi)
    return rep


def check_moyal_agreement(q, cutoff: int, oracle) -> CheckReport:
    """homogenize equals an independent closed-form product on all basis pairs."""
    star = _star(q)
    cl = star.classical
    rep = CheckReport("moyal-agreement", cutoff)
    for (j2, f), (k2, g) in product(basis_items(cl, cutoff), repeat=2):
        if j2 + k2 > cutoff:
            continue
        h = star.homogenize(f, g)
        rep.require(h == oracle(f, g), "star product differs from the oracle", phi=f, psi=g)
        rep.require(h.specialize() == star.circ(f, g), "o differs from the oracle at t=1", phi=f, psi=g)
    return rep


def star_axiom_failures(q, cutoff: int) -> list[CheckReport]:
    return [r for r in (check_star_axioms(q, cutoff), check_exact_invariance(q, cutoff),
                        check_star_associativity(q, cutoff)) if not r.passed]


# -- Lambda^x, Phi^x, Pi -----------------------------------------------------------------


def hamiltonian_derivation(x, psi: MultiPoly, classical) -> MultiPoly:
    """Phi^x(psi) = {phi^x, psi}; ``x`` is a basis name or a Lie vector."""
    phi = classical.moment(x if isinstance(x, Mapping) else {x: ONE})
    return classical.bracket(phi, psi)


def lambda_apply(x, psi: MultiPoly, q) -> MultiPoly:
    star = _star(q)
    cl = star.classical
    phi = cl.moment(x if isinstance(x, Mapping) else {x: ONE})
    return star.circ(phi, psi) - phi * psi - cl.bracket(phi, psi) * HALF


def _matrix(cl, images, target_d2: int, source_dim: int) -> list[list[GaussianRational]]:
    """Columns are coordinates of ``images`` in basis(target_d2)."""
    rows = cl.dim(target_d2)
    cols = [cl.coords(im, target_d2) if rows else [] for im in images]
    return [[cols[c][r] for c in range(source_dim)] for r in range(rows)]


@dataclass
class LambdaOperator:
    """``matrices[x][d2]``: Lambda^x from R[d2/2] to R[d2/2 - 1] in canonical bases."""

    cutoff: int
    matrices: dict
    leaks: list  # (x, psi) where Lambda^x(psi) left degree j - 1


def lambda_op(x: str, q, cutoff: int) -> dict[int, list]:
    return build_lambda(q, cutoff, [x]).matrices[x]


def build_lambda(q, cutoff: int, names=None) -> LambdaOperator:
    star = _star(q)
    cl = star.classical
    if cutoff + 2 > star.cutoff:
        raise RangeError(f"Lambda on degree {cutoff}/2 needs q up to {cutoff + 2}/2")
    names = list(star.datum.lie.basis) if names is None else list(names)
    matrices: dict = {x: {} for x in names}
    leaks = []
    for x in names:
        for d2 in range(cutoff + 1):
            basis = cl.basis(d2)
            images = []
            for psi in basis:
                im = lambda_apply(x, psi, star)
                if im and set(cl.euler_components(im)) != {d2 - 2}:
                    leaks.append((x, psi))
                    im = cl.euler_components(im).get(d2 - 2, MultiPoly.zero(cl.variables))
                images.append(im)
            matrices[x][d2] = _matrix(cl, images, d2 - 2, len(basis))
    return LambdaOperator(cutoff, matrices, leaks)


def degree_matrix(cl, fn, d2: int) -> list[list[GaussianRational]]:
    """Matrix of a degree-preserving map on R[d2/2]."""
    basis = cl.basis(d2)
    return _matrix(cl, [fn(b) for b in basis], d2, len(basis))


def _sub(a, b):
    return [[u - v for u, v in zip(ra, rb)] for ra, rb in zip(a, b)]


def _lin(terms, rows, cols):
    out = [[ZERO] * cols for _ in range(rows)]
    for c, m in terms:
        for r in range(rows):
            for k in range(cols):
                out[r][k] = out[r][k] + c * m[r][k]
    return out


def lambda_suite(q, cutoff: int) -> list[CheckReport]:
    """The six properties of Lambda^x, as matrix identities on R[j], j <= cutoff/2."""
    star = _star(q)
    cl, lie = star.classical, star.datum.lie
    lam = build_lambda(star, cutoff)
    L = lam.matrices
    reps = {k: CheckReport(f"lambda-{k}", cutoff) for k in ("i", "ii", "iii", "iv", "v", "vi")}

    # (i) Q(Lambda^x phi, psi) = Q(phi, phi^x psi)
    for x in lie.basis:
        phix = cl.hamiltonian(x)
        for d2 in range(2, cutoff + 1):
            for phi in cl.basis(d2):
                lphi = lambda_apply(x, phi, star)
                for psi in cl.basis(d2 - 2):
                    reps["i"].require(star.Q(lphi, psi) == star.Q(phi, phix * psi),
                                      f"Lambda^{x} is not the Q-adjoint of phi^{x}", phi=phi, psi=psi)
    # (ii) x -> Lambda^x|R[j] is injective, so Lambda^x != 0 on R[j] for every x != 0
    for d2 in range(2, cutoff + 1):
        if not cl.dim(d2):
            continue
        flat = [[v for row in L[x][d2] for v in row] for x in lie.basis]
        reps["ii"].require(rank_fraction_free(flat) == lie.dim,
                           f"some nonzero x has Lambda^x = 0 on R[{d2}/2]")
    # (iii) degree -1
    reps["iii"].checked += sum(cl.dim(d2) for d2 in range(cutoff + 1)) * lie.dim
    for x, psi in lam.leaks:
        reps["iii"].fail(f"Lambda^{x} does not lower the degree by exactly 1", psi=psi)
    # (iv), (v), (vi)
    phis = {x: {d2: degree_matrix(cl, lambda f, x=x: hamiltonian_derivation(x, f, cl), d2)
                for d2 in range(cutoff + 1)} for x in lie.basis}
    smats = {s: {d2: degree_matrix(cl, lambda f, s=s: cl.galois_act(s, f), d2)
                 for d2 in range(cutoff + 1)} for s in cl.galois.names}
    for d2 in range(cutoff + 1):
        rows, cols = cl.dim(d2 - 2), cl.dim(d2)
        if not rows or not cols:
            continue
        for x, y in product(lie.basis, repeat=2):
            if d2 >= 4:
                comm = _sub(matmul(L[x][d2 - 2], L[y][d2]), matmul(L[y][d2 - 2], L[x][d2]))
                reps["iv"].require(all(not v for r in comm for v in r),
                                   f"[Lambda^{x}, Lambda^{y}] != 0 on R[{d2}/2]")
            lhs = _sub(matmul(phis[x][d2 - 2], L[y][d2]), matmul(L[y][d2], phis[x][d2]))
            rhs = _lin([(c, L[z][d2]) for z, c in lie.bracket(x, y).items()], rows, cols)
            reps["v"].require(lhs == rhs, f"[Phi^{x}, Lambda^{y}] != Lambda^[{x},{y}] on R[{d2}/2]")
        for x in lie.basis:
            for s in cl.galois.names:
                reps["vi"].require(matmul(smats[s][d2 - 2], L[x][d2]) == matmul(L[x][d2], smats[s][d2]),
                                   f"Lambda^{x} does not commute with {s} on R[{d2}/2]")
    return list(reps.values())


def pi_rep(x, y, psi: MultiPoly, q) -> MultiPoly:
    """Pi^(x,y)(psi) = phi^x o psi - psi o phi^y; x, y are basis names or Lie vectors."""
    star = _star(q)
    cl = star.classical
    as_vec = lambda v: v if isinstance(v, Mapping) else ({v: ONE} if v is not None else {})
    phix, phiy = cl.moment(as_vec(x)), cl.moment(as_vec(y))
    return star.circ(phix, psi) - star.circ(psi, phiy)


def check_pi(q, cutoff: int) -> CheckReport:
    """Pi^(x,-x) and Pi^(x,x) against Lambda and the bracket, S-commutation, and the g + g action."""
    star = _star(q)
    cl, lie = star.classical, star.datum.lie
    rep = CheckReport("pi", cutoff)
    for x in lie.basis:
        phix = cl.hamiltonian(x)
        for d2, psi in basis_items(cl, cutoff):
            minus = pi_rep(x, {x: -ONE}, psi, star)
            rep.require(minus == (phix * psi + lambda_apply(x, psi, star)) * 2,
                        f"Pi^({x},-{x}) != 2 phi^{x} + 2 Lambda^{x}", psi=psi)
            rep.require(pi_rep(x, x, psi, star) == hamiltonian_derivation(x, psi, cl),
                        f"Pi^({x},{x}) != {{phi^{x}, .}}", psi=psi)
            for s in cl.galois.names:
                rep.require(pi_rep(x, x, cl.galois_act(s, psi), star) == cl.galois_act(s, pi_rep(x, x, psi, star))
                            and pi_rep(x, None, cl.galois_act(s, psi), star)
                            == cl.galois_act(s, pi_rep(x, None, psi, star)),
                            f"Pi does not commute with {s}", psi=psi)
    gens = [((x,), None) for x in lie.basis] + [(None, (y,)) for y in lie.basis]

    def vec(part):
        return {part[0]: ONE} if part else {}

    def apply(el, f):
        a, b = el
        return pi_rep(vec(a), vec(b), f, star)

    for a, b in product(gens, repeat=2):
        bracket = (lie.bracket_vectors(vec(a[0]), vec(b[0])), lie.bracket_vectors(vec(a[1]), vec(b[1])))
        for d2, psi in basis_items(cl, cutoff - 4):
            lhs = apply(a, apply(b, psi)) - apply(b, apply(a, psi))
            rhs = pi_rep(bracket[0], bracket[1], psi, star)
            rep.require(lhs == rhs, "Pi is not a representation of g + g", psi=psi)
    return rep
