"""Filtered quantization data: trace, pairing, orthogonal decomposition, q.

Every statement is checked on finite truncations.  ``cutoff`` is always a
filtration degree in half-units: ``cutoff = 6`` means D_3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial
from typing import Callable, Mapping, Sequence

from .lie import LieAlgebraData
from .linalg import CoordinateSystem, Subspace, axpy, kernel_of_columns, nullspace, rank_fraction_free, solve
from .poisson import GaloisGroup, GradedPoissonStructure, reynolds, trivial_group
from .poly import MalformedInput, MultiPoly, polys_sum
from .scalars import ONE, ZERO, GaussianRational, as_scalar, i_power


class DatumError(ValueError):
    """The datum violates an axiom in a way that blocks a construction."""


class RangeError(ValueError):
    """A computation would leave the verified filtration range."""


# -- algebras ----------------------------------------------------------------------


class InvariantSubalgebra:
    """The S-invariants of a filtered algebra, with bases from Reynolds averages."""

    def __init__(self, parent, group: GaloisGroup):
        self.parent = parent
        self.group = group
        self.order = parent.order
        self.variables = parent.variables
        self._bases: dict[int, list] = {}

    def _reynolds(self, u):
        return reynolds(self.group, u, lambda s, v: self.parent.galois_act(self.group, s, v))

    def one(self):
        return self.parent.one()

    def zero(self):
        return self.parent.zero()

    def mul(self, u, v):
        return self.parent.mul(u, v)

    def degree(self, u) -> int:
        return self.parent.degree(u)

    def vector(self, u) -> dict:
        return self.parent.vector(u)

    def from_vector(self, vec):
        return self.parent.from_vector(vec)

    def basis(self, d2: int) -> list:
        if d2 not in self._bases:
            sub = Subspace(order=self.order)
            for b in self.parent.basis(d2):
                sub.add(self.parent.vector(self._reynolds(b)))
            self._bases[d2] = [self.parent.from_vector(dict(sub.rows[p])) for p in sub.pivots()]
        return self._bases[d2]

    def contains(self, u) -> bool:
        return self.parent.contains(u) and self._reynolds(u) == u

    def symbol(self, u, d2: int) -> MultiPoly:
        return self.parent.symbol(u, d2)

    def lift(self, f: MultiPoly, d2: int):
        return self._reynolds(self.parent.lift(f, d2))

    def galois_act(self, group, s, u):
        return self.parent.galois_act(group, s, u)


# -- the datum -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuantizationDatum:
    algebra: object
    lie: LieAlgebraData
    psi: dict
    galois: GaloisGroup
    beta: Callable
    classical: GradedPoissonStructure
    name: str = ""
    # Registered only for cross-checking against the computed trace.
    trace_oracle: Callable | None = None

    def __post_init__(self):
        for x in self.lie.basis:
            if x not in self.psi:
                raise MalformedInput(f"psi is missing the Lie basis element {x!r}")

    def mul(self, u, v):
        return self.algebra.mul(u, v)

    def commutator(self, u, v):
        return self.algebra.mul(u, v) - self.algebra.mul(v, u)

    def act(self, s, u):
        return self.algebra.galois_act(self.galois, s, u)

    def one(self):
        return self.algebra.one()

    def psi_of(self, vec: Mapping[str, object]):
        out = self.algebra.zero()
        for x, c in vec.items():
            out = out + self.psi[x] * c
        return out

    def ad(self, x: str, u):
        return self.commutator(self.psi[x], u)

    def replace(self, **changes) -> "QuantizationDatum":
        fields_ = dict(
            algebra=self.algebra, lie=self.lie, psi=self.psi, galois=self.galois,
            beta=self.beta, classical=self.classical, name=self.name,
            trace_oracle=self.trace_oracle,
        )
        fields_.update(changes)
        return QuantizationDatum(**fields_)


def coordinates(d: QuantizationDatum, elements: Sequence, d2: int) -> list[list[GaussianRational]]:
    """Coordinates of elements of D_{d2/2} in ``d.algebra.basis(d2)``."""
    system = CoordinateSystem([d.algebra.vector(b) for b in d.algebra.basis(d2)],
                              order=d.algebra.order)
    return [system(d.algebra.vector(e)) for e in elements]


def _proportional(vec: Mapping, ref: Mapping) -> bool:
    if set(vec) != set(ref) or not ref:
        return False
    k = next(iter(ref))
    c = vec[k] / ref[k]
    return all(vec[key] == c * ref[key] for key in ref)


# -- trace ------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TraceFunctional:
    """Linear functional on D_{cutoff/2}: T(1) = 1 and T vanishes on the ad-image."""

    algebra: object
    cutoff: int
    complement: Subspace
    unit_residual: dict

    def __call__(self, u) -> GaussianRational:
        if self.algebra.degree(u) > self.cutoff:
            raise RangeError(f"trace known only up to filtration degree {self.cutoff}/2")
        r = self.complement.reduce(self.algebra.vector(u))
        if not r:
            return ZERO
        ref = max(self.unit_residual, key=self.algebra.order)
        c = r.get(ref, ZERO) / self.unit_residual[ref]
        check = dict(r)
        axpy(check, -c, self.unit_residual)
        if check:
            raise MalformedInput("element does not lie in the algebra")
        return c

    def row(self, d2: int) -> list[GaussianRational]:
        return [self(b) for b in self.algebra.basis(d2)]


def ad_image(d: QuantizationDatum, cutoff: int) -> Subspace:
    w = Subspace(order=d.algebra.order)
    for b in d.algebra.basis(cutoff):
        for x in d.lie.basis:
            w.add(d.algebra.vector(d.ad(x, b)))
    return w


def invariants(d: QuantizationDatum, cutoff: int) -> list:
    """Basis of the joint kernel of all ad(psi^x) on D_{cutoff/2}."""
    basis = d.algebra.basis(cutoff)
    columns = []
    for b in basis:
        col = {}
        for x in d.lie.basis:
            for k, v in d.algebra.vector(d.ad(x, b)).items():
                col[(x, k)] = v
        columns.append(col)
    order = lambda key: (d.lie.basis.index(key[0]), d.algebra.order(key[1]))
    out = []
    for vec in kernel_of_columns(columns, order=order):
        elem = d.algebra.zero()
        for idx, c in vec.items():
            elem = elem + basis[idx] * c
        out.append(elem)
    return out


def compute_trace(d: QuantizationDatum, cutoff: int) -> TraceFunctional:
    inv = invariants(d, cutoff)
    one = d.one()
    if len(inv) != 1:
        raise DatumError(f"invariants of D_{cutoff}/2 have dimension {len(inv)}, expected 1")
    if not _proportional(d.algebra.vector(inv[0]), d.algebra.vector(one)):
        raise DatumError("the invariant line is not spanned by 1")
    w = ad_image(d, cutoff)
    dim = len(d.algebra.basis(cutoff))
    if dim - w.dim != 1:
        raise DatumError(f"ad-image has codimension {dim - w.dim} in D_{cutoff}/2, expected 1")
    r1 = w.reduce(d.algebra.vector(one))
    if not r1:
        raise DatumError("1 lies in the ad-image: D is not completely reducible at this cutoff")
    return TraceFunctional(d.algebra, cutoff, w, r1)


def trace_by_linear_system(d: QuantizationDatum, cutoff: int) -> list[GaussianRational]:
    """T on ``basis(cutoff)`` by solving T([psi^x, b]) = 0, T(1) = 1 directly.

    Independent of ``compute_trace``: unknowns are the values of T, pivots
    are taken from the lowest basis index.
    """
    basis = d.algebra.basis(cutoff)
    coords = coordinates(d, [d.ad(x, b) for b in basis for x in d.lie.basis], cutoff)
    eqs = Subspace(order=lambda i: -i)
    for row in coords:
        eqs.add({i: c for i, c in enumerate(row) if c})
    free = [i for i in range(len(basis)) if i not in eqs.rows]
    if len(free) != 1:
        raise DatumError(f"trace equations leave {len(free)} free values, expected 1")
    f = free[0]
    values = [ZERO] * len(basis)
    values[f] = ONE
    for p, row in eqs.rows.items():
        values[p] = -row.get(f, ZERO)
    (one_coords,) = coordinates(d, [d.one()], cutoff)
    norm = sum((c * v for c, v in zip(one_coords, values)), ZERO)
    if not norm:
        raise DatumError("every invariant functional vanishes on 1")
    return [v / norm for v in values]


def pairing(d: QuantizationDatum, trace, a, b) -> GaussianRational:
    return trace(d.mul(a, b))


def gram(d: QuantizationDatum, trace, left: Sequence, right: Sequence | None = None):
    right = left if right is None else right
    return [[trace(d.mul(a, b)) for b in right] for a in left]


def _combination(d: QuantizationDatum, basis: Sequence, coeffs: Sequence):
    out = d.algebra.zero()
    for b, c in zip(basis, coeffs):
        if c:
            out = out + b * c
    return out


# -- orthogonal decomposition and q --------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrthoDecomposition:
    """``components[d2]`` is a basis of D^{d2/2}, aligned with ``classical.basis(d2)``."""

    cutoff: int
    components: dict
    grams: dict

    def basis(self, d2: int) -> list:
        return self.components.get(d2, [])


def ortho_decompose(d: QuantizationDatum, trace, cutoff: int) -> OrthoDecomposition:
    components: dict[int, list] = {}
    grams: dict[int, list] = {}
    total = 0
    for d2 in range(cutoff + 1):
        classical_basis = d.classical.basis(d2)
        total += len(classical_basis)
        if len(d.algebra.basis(d2)) != total:
            raise DatumError(
                f"dim D_{d2}/2 = {len(d.algebra.basis(d2))} but the graded pieces of R "
                f"up to {d2}/2 have total dimension {total} (symbol map not bijective)"
            )
        new = []
        for f in classical_basis:
            m = d.algebra.lift(f, d2)
            for i in range(d2):
                lower = components.get(i)
                if not lower:
                    continue
                rhs = [trace(d.mul(b, m)) for b in lower]
                if any(rhs):
                    coeffs = solve(grams[i], rhs)
                    m = m - _combination(d, lower, coeffs)
            new.append(m)
        g = gram(d, trace, new)
        if new and rank_fraction_free(g) != len(new):
            radical = [_combination(d, new, v) for v in nullspace(g)]
            raise DatumError(
                f"pairing is degenerate on D^{d2}/2; radical: {[str(r) for r in radical]}"
            )
        components[d2] = new
        grams[d2] = g
    return OrthoDecomposition(cutoff, components, grams)


@dataclass(frozen=True, eq=False)
class QuantizationMap:
    datum: QuantizationDatum
    decomposition: OrthoDecomposition
    trace: TraceFunctional

    @property
    def cutoff(self) -> int:
        return self.decomposition.cutoff

    def __call__(self, f: MultiPoly):
        d = self.datum
        out = d.algebra.zero()
        for d2, part in d.classical.euler_components(f).items():
            if d2 > self.cutoff:
                raise RangeError(f"q is built only up to degree {self.cutoff}/2")
            coeffs = d.classical.coords(part, d2)
            out = out + _combination(d, self.decomposition.basis(d2), coeffs)
        return out

    def inverse(self, a) -> dict[int, MultiPoly]:
        d = self.datum
        out: dict[int, MultiPoly] = {}
        while a:
            deg = d.algebra.degree(a)
            if deg > self.cutoff:
                raise RangeError(f"element of degree {deg}/2 exceeds the range {self.cutoff}/2")
            sym = d.algebra.symbol(a, deg)
            out[deg] = sym
            a = a - self(sym)
        return dict(sorted(out.items()))

    def inverse_poly(self, a) -> MultiPoly:
        return polys_sum(self.datum.classical.variables, self.inverse(a).values())

    def matrix(self, d2: int) -> list[list[GaussianRational]]:
        """Columns: q of each basis element of R[d2/2], in coordinates of D_{d2/2}."""
        cols = coordinates(self.datum, self.decomposition.basis(d2), d2)
        return [list(r) for r in zip(*cols)] if cols else []


def build_q(d: QuantizationDatum, decomp: OrthoDecomposition, trace=None) -> QuantizationMap:
    if trace is None:
        trace = compute_trace(d, 2 * decomp.cutoff)
    for d2 in range(decomp.cutoff + 1):
        for f, b in zip(d.classical.basis(d2), decomp.basis(d2)):
            if d.algebra.symbol(b, d2) != f:
                raise DatumError(f"lift of {f} has the wrong symbol")
    return QuantizationMap(d, decomp, trace)


def quantize(d: QuantizationDatum, cutoff: int) -> QuantizationMap:
    """Trace to 2*cutoff, decomposition and q up to ``cutoff``."""
    trace = compute_trace(d, 2 * cutoff)
    return build_q(d, ortho_decompose(d, trace, cutoff), trace)


def q_inverse(d: QuantizationDatum, qmap: QuantizationMap, a) -> dict[int, MultiPoly]:
    return qmap.inverse(a)


# -- axiom verification ----------------------------------------------------------------


@dataclass
class AxiomResult:
    axiom: str
    status: str
    cutoff: int
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "status": self.status, "cutoff": self.cutoff,
                "witness": self.witness}


@dataclass
class AxiomReport:
    datum: str
    cutoff: int
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]


def _witness(detail: str, *elements) -> dict:
    items = []
    for e in elements:
        items.append(e.to_json() if hasattr(e, "to_json") else str(e))
    return {"detail": detail, "elements": items}


class _Fail(Exception):
    def __init__(self, witness: dict):
        super().__init__(witness["detail"])
        self.witness = witness


def _require(cond: bool, detail: str, *elements) -> None:
    if not cond:
        raise _Fail(_witness(detail, *elements))


def _basis_by_degree(d: QuantizationDatum, cutoff: int) -> list:
    return [(d.algebra.degree(b), b) for b in d.algebra.basis(cutoff)]


def _pairs_in_range(d: QuantizationDatum, cutoff: int):
    items = _basis_by_degree(d, cutoff)
    for (du, u), (dv, v) in product(items, repeat=2):
        if du + dv <= cutoff:
            yield du, u, dv, v


def _check_I(d, cutoff):
    for du, u, dv, v in _pairs_in_range(d, cutoff):
        uv = d.mul(u, v)
        _require(d.algebra.degree(uv) <= du + dv, "D_j D_k not inside D_{j+k}", u, v)
        c = uv - d.mul(v, u)
        _require(not c or d.algebra.degree(c) <= du + dv - 2, "[D_j, D_k] not inside D_{j+k-1}", u, v)


def _check_II(d, cutoff):
    group = d.galois
    _require(not group.closure_failures(), "Galois group is not closed under composition")
    items = _basis_by_degree(d, cutoff)
    for s in group.names:
        for du, u in items:
            su = d.act(s, u)
            _require(d.algebra.degree(su) <= du, f"element {s} does not preserve the filtration", u)
            _require(d.algebra.contains(su), f"element {s} leaves the algebra", u)
            if s == group.identity:
                _require(su == u, "identity acts nontrivially", u)
            for t in group.names:
                _require(d.act(s, d.act(t, u)) == d.act(group.compose(s, t), u),
                         f"action is not a representation at ({s}, {t})", u)
        for du, u, dv, v in _pairs_in_range(d, cutoff):
            _require(d.act(s, d.mul(u, v)) == d.mul(d.act(s, u), d.act(s, v)),
                     f"element {s} is not multiplicative", u, v)


def _check_III(d, cutoff):
    _require(not d.lie.jacobi_failures(), "structure constants violate Jacobi")
    span = Subspace(order=d.algebra.order)
    for x in d.lie.basis:
        p = d.psi[x]
        _require(d.algebra.contains(p), f"psi^{x} is not in the algebra", p)
        _require(d.algebra.degree(p) <= 2, f"psi^{x} is not in D_1", p)
        for s in d.galois.names:
            _require(d.act(s, p) == p, f"psi^{x} is not S-invariant", p)
        _require(span.add(d.algebra.vector(p)), f"psi is not injective at {x}", p)
    for x, y in product(d.lie.basis, repeat=2):
        _require(d.commutator(d.psi[x], d.psi[y]) == d.psi_of(d.lie.bracket(x, y)),
                 f"[psi^{x}, psi^{y}] != psi^[{x},{y}]", d.psi[x], d.psi[y])
    for du, u in _basis_by_degree(d, cutoff):
        for x in d.lie.basis:
            _require(d.algebra.degree(d.ad(x, u)) <= du,
                     f"ad psi^{x} does not preserve the filtration", u)


def _check_IV(d, cutoff):
    st = d.classical
    total = 0
    for d2 in range(cutoff + 1):
        total += st.dim(d2)
        _require(len(d.algebra.basis(d2)) == total,
                 f"dim D_{d2}/2 does not match R up to degree {d2}/2")
        tops = [b for b in d.algebra.basis(d2) if d.algebra.degree(b) == d2]
        symbols = Subspace()
        for b in tops:
            sym = d.algebra.symbol(b, d2)
            _require(st.contains(sym), "symbol lies outside R", b)
            _require(symbols.add(sym.terms), "symbol map is not injective on gr", b)
        _require(symbols.dim == st.dim(d2), f"symbol map is not onto R[{d2}/2]")
    items = _basis_by_degree(d, cutoff)
    for s in d.galois.names:
        for du, u in items:
            _require(d.algebra.symbol(d.act(s, u), du) == st.galois_act(s, d.algebra.symbol(u, du)),
                     f"symbol is not equivariant for {s}", u)
    for du, u, dv, v in _pairs_in_range(d, cutoff):
        su, sv = d.algebra.symbol(u, du), d.algebra.symbol(v, dv)
        _require(d.algebra.symbol(d.mul(u, v), du + dv) == su * sv,
                 "symbol is not multiplicative", u, v)
        c = d.commutator(u, v)
        if du + dv >= 2:
            _require(d.algebra.symbol(c, du + dv - 2) == st.bracket(su, sv),
                     "symbol of the commutator is not the Poisson bracket", u, v)
        else:
            _require(not c and not st.bracket(su, sv), "low-degree commutator is nonzero", u, v)
    for x in d.lie.basis:
        _require(d.algebra.symbol(d.psi[x], 2) == st.hamiltonian(x),
                 f"gamma(psi^{x}) != phi^{x}", d.psi[x])


def _check_V(d, cutoff):
    beta = d.beta
    for x in d.lie.basis:
        _require(beta(d.psi[x]) == -d.psi[x], f"beta(psi^{x}) != psi^(-{x})", d.psi[x])
    items = _basis_by_degree(d, cutoff)
    for du, u in items:
        bu = beta(u)
        _require(d.algebra.degree(bu) <= du, "beta does not preserve the filtration", u)
        _require(d.algebra.contains(bu), "beta leaves the algebra", u)
        _require(d.algebra.symbol(bu, du) == d.classical.alpha(d.algebra.symbol(u, du)),
                 "beta does not induce alpha on gr", u)
        _require(beta(beta(beta(bu))) == u, "beta^4 != 1", u)
        for s in d.galois.names:
            _require(beta(d.act(s, u)) == d.act(s, bu), f"beta does not commute with {s}", u)
    for du, u, dv, v in _pairs_in_range(d, cutoff):
        _require(beta(d.mul(u, v)) == d.mul(beta(v), beta(u)),
                 "beta is not an anti-automorphism", u, v)


def superhomogeneous_basis(d: QuantizationDatum, d2: int) -> tuple[list, list]:
    """Bases of the +1 and -1 eigenspaces of beta^2 inside D_{d2/2}."""
    even, odd = Subspace(order=d.algebra.order), Subspace(order=d.algebra.order)
    for b in d.algebra.basis(d2):
        bb = d.beta(d.beta(b))
        even.add(d.algebra.vector((b + bb) / 2))
        odd.add(d.algebra.vector((b - bb) / 2))
    make = lambda sub: [d.algebra.from_vector(dict(sub.rows[p])) for p in sub.pivots()]
    return make(even), make(odd)


def check_supertrace(d: QuantizationDatum, trace, cutoff: int) -> list:
    """Failures of T(ab) = (-1)^{|a||b|} T(ba) and T(D_odd) = 0 on D_{cutoff/2}."""
    even, odd = superhomogeneous_basis(d, cutoff)
    labelled = [(0, a) for a in even] + [(1, a) for a in odd]
    bad = []
    for pa, a in labelled:
        for pb, b in labelled:
            ab, ba = trace(d.mul(a, b)), trace(d.mul(b, a))
            if pa == pb:
                sign = -1 if pa == 1 else 1
                if ab != ba * sign:
                    bad.append(("supertrace", a, b))
            elif ab or ba:
                bad.append(("mixed parity", a, b))
    odd_range = trace.cutoff if isinstance(trace, TraceFunctional) else cutoff
    for a in superhomogeneous_basis(d, odd_range)[1]:
        if trace(a):
            bad.append(("odd", a, None))
    return bad


def _check_VI(d, cutoff, trace):
    _require(trace(d.one()) == 1, "normalization: T(1) != 1", d.one())
    if d.trace_oracle is not None:
        oracle = d.trace_oracle
        _require(oracle(d.one()) == 1, f"normalization: registered trace gives T(1) = {oracle(d.one())}",
                 d.one())
        for b in d.algebra.basis(2 * cutoff):
            _require(oracle(b) == trace(b), "registered trace disagrees with the computed one", b)
    bad = check_supertrace(d, trace, cutoff)
    if bad:
        kind, a, b = bad[0]
        raise _Fail(_witness(f"T is not a supertrace ({kind})", *[e for e in (a, b) if e is not None]))


def _check_VII(d, cutoff, trace):
    for d2 in range(cutoff + 1):
        basis = d.algebra.basis(d2)
        g = gram(d, trace, basis)
        if rank_fraction_free(g) != len(basis):
            radical = [_combination(d, basis, v) for v in nullspace(g)]
            raise _Fail(_witness(f"pairing is degenerate on D_{d2}/2", *radical))


def verify_axioms(d: QuantizationDatum, cutoff: int) -> AxiomReport:
    report = AxiomReport(d.name, cutoff)

    def run(label, fn, *args):
        try:
            fn(d, cutoff, *args)
            report.results.append(AxiomResult(label, "pass", cutoff))
        except _Fail as exc:
            report.results.append(AxiomResult(label, "fail", cutoff, exc.witness))
        except (DatumError, RangeError, MalformedInput) as exc:
            report.results.append(AxiomResult(label, "fail", cutoff, _witness(str(exc))))

    for label, fn in (("I", _check_I), ("II", _check_II), ("III", _check_III),
                      ("IV", _check_IV), ("V", _check_V)):
        run(label, fn)
    try:
        trace = compute_trace(d, 2 * cutoff)
    except DatumError as exc:
        for label in ("VI", "VII"):
            report.results.append(AxiomResult(label, "fail", cutoff, _witness(str(exc))))
        return report
    run("VI", _check_VI, trace)
    run("VII", _check_VII, trace)
    return report


# -- invariants, simplicity -------------------------------------------------------------


def restrict_to_invariants(d: QuantizationDatum) -> QuantizationDatum:
    if d.galois.is_trivial():
        return d
    algebra = InvariantSubalgebra(d.algebra, d.galois)
    n_gens = len(next(iter(d.galois.elements.values())))
    return QuantizationDatum(
        algebra=algebra,
        lie=d.lie,
        psi=dict(d.psi),
        galois=trivial_group(n_gens),
        beta=d.beta,
        classical=d.classical.restrict(),
        name=f"{d.name}-invariants" if d.name else "invariants",
    )


def galois_symmetrize(d: QuantizationDatum, a):
    """(n!)^-1 sum over orderings of the S-translates of a, multiplied out."""
    if not a:
        raise MalformedInput("galois_symmetrize needs a nonzero element")
    translates = [d.act(s, a) for s in d.galois.names]
    n = len(translates)
    total = d.algebra.zero()
    for perm in permutations(range(n)):
        term = d.one()
        for i in perm:
            term = d.mul(term, translates[i])
        total = total + term
    b = total * (ONE / as_scalar(factorial(n)))
    j = d.algebra.degree(a)
    predicted = predicted_symbol(d, a)
    if predicted and not b:
        raise DatumError("symmetrized element vanished although its predicted symbol does not")
    if d.algebra.symbol(b, j * n) != predicted:
        raise DatumError("symmetrized element has the wrong top symbol")
    return b


def predicted_symbol(d: QuantizationDatum, a) -> MultiPoly:
    j = d.algebra.degree(a)
    sym = d.algebra.symbol(a, j)
    out = d.classical.one()
    for s in d.galois.names:
        out = out * d.classical.galois_act(s, sym)
    return out


@dataclass
class SimplicityVerdict:
    cutoff: int
    degrees: dict  # d2 -> "nondegenerate" | "degenerate"
    radicals: dict  # d2 -> list of radical elements

    @property
    def nondegenerate(self) -> bool:
        return all(v == "nondegenerate" for v in self.degrees.values())


def simplicity_check(d: QuantizationDatum, basis_by_degree: Mapping[int, Sequence], cutoff: int,
                     trace=None) -> SimplicityVerdict:
    """Gram-rank certificate that the pairing is nondegenerate on a beta^2-stable subalgebra."""
    if trace is None:
        trace = compute_trace(d, 2 * cutoff)
    degrees, radicals = {}, {}
    for d2 in range(cutoff + 1):
        basis = list(basis_by_degree.get(d2, []))
        span = Subspace(d.algebra.vector(b) for b in basis)
        if span.dim != len(basis):
            raise MalformedInput(f"basis at degree {d2}/2 is not linearly independent")
        for b in basis:
            if not span.contains(d.algebra.vector(d.beta(d.beta(b)))):
                raise MalformedInput(f"subalgebra basis at degree {d2}/2 is not beta^2-stable")
        g = gram(d, trace, basis)
        if rank_fraction_free(g) == len(basis):
            degrees[d2] = "nondegenerate"
        else:
            degrees[d2] = "degenerate"
            radicals[d2] = [_combination(d, basis, v) for v in nullspace(g)]
    return SimplicityVerdict(cutoff, degrees, radicals)


# -- properties of the decomposition ---------------------------------------------------


def decomposition_failures(qmap: QuantizationMap) -> list[str]:
    """Orthogonality across degrees, (G x S x beta)-stability, beta = i^{2j} on D^j."""
    d, decomp, trace = qmap.datum, qmap.decomposition, qmap.trace
    bad = []
    degrees = range(decomp.cutoff + 1)
    for j2, k2 in product(degrees, repeat=2):
        if j2 == k2:
            continue
        for a in decomp.basis(j2):
            for b in decomp.basis(k2):
                if trace(d.mul(a, b)):
                    bad.append(f"D^{j2}/2 and D^{k2}/2 are not orthogonal")
                    break
    for d2 in degrees:
        block = decomp.basis(d2)
        span = Subspace(d.algebra.vector(b) for b in block)
        for b in block:
            if d.beta(b) != b * i_power(d2):
                bad.append(f"beta is not i^{d2} on D^{d2}/2")
            for x in d.lie.basis:
                if not span.contains(d.algebra.vector(d.ad(x, b))):
                    bad.append(f"D^{d2}/2 is not stable under ad psi^{x}")
            for s in d.galois.names:
                if not span.contains(d.algebra.vector(d.act(s, b))):
                    bad.append(f"D^{d2}/2 is not stable under {s}")
    return bad


def q_equivariance_failures(qmap: QuantizationMap) -> list[tuple[str, MultiPoly]]:
    d = qmap.datum
    bad = []
    for d2 in range(qmap.cutoff + 1):
        for f in d.classical.basis(d2):
            qf = qmap(f)
            for x in d.lie.basis:
                if qmap(d.classical.bracket(d.classical.hamiltonian(x), f)) != d.ad(x, qf):
                    bad.append((x, f))
            for s in d.galois.names:
                if qmap(d.classical.galois_act(s, f)) != d.act(s, qf):
                    bad.append((s, f))
            if d.beta(qf) != qmap(d.classical.alpha(f)):
                bad.append(("beta", f))
    return bad


def pairing_beta_failures(d: QuantizationDatum, trace, cutoff: int) -> list:
    """Pairs where P(a, b) != P(beta b, beta a)."""
    basis = d.algebra.basis(cutoff)
    images = [d.beta(b) for b in basis]
    bad = []
    for (a, ba), (b, bb) in product(zip(basis, images), repeat=2):
        if trace(d.mul(a, b)) != trace(d.mul(bb, ba)):
            bad.append((a, b))
    return bad


def naturally_graded_check(d: QuantizationDatum, cutoff: int) -> dict:
    """Whether R is N-graded and whether beta^2 = 1, up to the cutoff; they must agree."""
    integer_only = all(d.classical.dim(d2) == 0 for d2 in range(1, cutoff + 1, 2))
    beta_sq_trivial = all(d.beta(d.beta(b)) == b for b in d.algebra.basis(cutoff))
    return {"integer_graded": integer_only, "beta_squared_identity": beta_sq_trivial,
            "consistent": integer_only == beta_sq_trivial}
