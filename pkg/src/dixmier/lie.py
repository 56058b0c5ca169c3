"""Finite-dimensional Lie algebras given by exact structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .linalg import rank_fraction_free, solve
from .poly import MalformedInput
from .scalars import ONE, ZERO, GaussianRational, as_scalar

LieVector = dict  # basis name -> coefficient


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    """``brackets[(a, b)]`` is the expansion of [a, b] on the basis (missing pairs are 0).

    Only one of (a, b), (b, a) needs to be given; antisymmetry fills the other.
    """

    basis: tuple[str, ...]
    brackets: dict = field(default_factory=dict)
    killing_form: tuple[tuple[GaussianRational, ...], ...] | None = None

    def __post_init__(self):
        full: dict = {}
        for (a, b), vec in self.brackets.items():
            if a not in self.basis or b not in self.basis:
                raise MalformedInput(f"unknown Lie basis element in [{a}, {b}]")
            vec = {k: as_scalar(v) for k, v in vec.items() if as_scalar(v)}
            for k in vec:
                if k not in self.basis:
                    raise MalformedInput(f"unknown Lie basis element {k}")
            if (b, a) in full and full[(b, a)] != {k: -v for k, v in vec.items()}:
                raise MalformedInput(f"inconsistent brackets for ({a}, {b})")
            full[(a, b)] = vec
            full[(b, a)] = {k: -v for k, v in vec.items()}
        object.__setattr__(self, "brackets", full)
        if self.killing_form is None:
            object.__setattr__(self, "killing_form", self._compute_killing())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket(self, a: str, b: str) -> LieVector:
        return dict(self.brackets.get((a, b), {}))

    def bracket_vectors(self, u: LieVector, v: LieVector) -> LieVector:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for k, c in self.brackets.get((a, b), {}).items():
                    out[k] = out.get(k, ZERO) + ca * cb * c
        return {k: c for k, c in out.items() if c}

    def ad_matrix(self, a: str) -> list[list[GaussianRational]]:
        """Matrix of ad(a) on the ordered basis (columns are images)."""
        idx = {name: i for i, name in enumerate(self.basis)}
        m = [[ZERO] * self.dim for _ in range(self.dim)]
        for j, b in enumerate(self.basis):
            for k, c in self.brackets.get((a, b), {}).items():
                m[idx[k]][j] = c
        return m

    def _compute_killing(self):
        ads = {a: self.ad_matrix(a) for a in self.basis}
        n = self.dim

        def trace_prod(x, y):
            return sum((x[i][k] * y[k][i] for i in range(n) for k in range(n)), ZERO)

        return tuple(
            tuple(trace_prod(ads[a], ads[b]) for b in self.basis) for a in self.basis
        )

    def killing(self, a: str, b: str) -> GaussianRational:
        return self.killing_form[self.basis.index(a)][self.basis.index(b)]

    def killing_is_nondegenerate(self) -> bool:
        return rank_fraction_free([list(r) for r in self.killing_form]) == self.dim

    def dual_basis(self) -> dict[str, LieVector]:
        """Killing-dual basis: <a, dual(b)> = delta_ab."""
        if not self.killing_is_nondegenerate():
            raise MalformedInput("Killing form is degenerate")
        k = [list(r) for r in self.killing_form]
        duals = {}
        for j, b in enumerate(self.basis):
            rhs = [as_scalar(1 if i == j else 0) for i in range(self.dim)]
            coeffs = solve(k, rhs)
            duals[b] = {a: c for a, c in zip(self.basis, coeffs) if c}
        return duals

    def permuted(self, order) -> "LieAlgebraData":
        order = tuple(order)
        if sorted(order) != sorted(self.basis):
            raise MalformedInput("not a permutation of the basis")
        return LieAlgebraData(order, {k: v for k, v in self.brackets.items()})

    # -- checks -------------------------------------------------------------
    def jacobi_failures(self) -> list[tuple[str, str, str]]:
        bad = []
        for a, b, c in product(self.basis, repeat=3):
            ea, eb, ec = {a: ONE}, {b: ONE}, {c: ONE}
            total: dict = {}
            for x, y, z in ((ea, eb, ec), (eb, ec, ea), (ec, ea, eb)):
                outer = self.bracket_vectors(x, self.bracket_vectors(y, z))
                for k, v in outer.items():
                    total[k] = total.get(k, ZERO) + v
            if any(total.values()):
                bad.append((a, b, c))
        return bad

    def killing_invariance_failures(self) -> list[tuple[str, str, str]]:
        """Triples where <[x,y],z> + <y,[x,z]> != 0."""
        bad = []

        def pair(u: LieVector, v: LieVector):
            return sum(
                (cu * cv * self.killing(a, b) for a, cu in u.items() for b, cv in v.items()),
                ZERO,
            )

        for x, y, z in product(self.basis, repeat=3):
            lhs = pair(self.bracket(x, y), {z: ONE}) + pair({y: ONE}, self.bracket(x, z))
            if lhs:
                bad.append((x, y, z))
        return bad


def abelian(names) -> LieAlgebraData:
    return LieAlgebraData(tuple(names), {})
