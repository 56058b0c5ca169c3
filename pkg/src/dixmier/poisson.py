"""Graded Poisson algebras R = polynomial ring with a half-integer Euler grading.

Degrees are stored in half-units throughout: an element of R[j] has
``d2 == 2*j``.  Generators carry positive half-unit degrees and the
bracket is the constant-coefficient bracket
``{f, g} = sum_ij omega[i][j] * df/dg_i * dg/dg_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .lie import LieAlgebraData
from .linalg import Subspace
from .poly import MalformedInput, MultiPoly, grlex_key, polys_sum, weighted_monomials
from .scalars import ONE, ZERO, GaussianRational, as_scalar, i_power, rational_str


@dataclass(frozen=True, eq=False)
class GaloisGroup:
    """Finite group acting linearly on a generator span.

    Column k of ``elements[s]`` is the image of generator k.  The same
    matrices act on the classical generators and on their quantum lifts.
    """

    elements: dict
    identity: str

    def __post_init__(self):
        mats = {}
        for name, m in self.elements.items():
            mats[str(name)] = tuple(tuple(as_scalar(v) for v in row) for row in m)
        object.__setattr__(self, "elements", mats)
        object.__setattr__(self, "identity", str(self.identity))
        if self.identity not in mats:
            raise MalformedInput("identity element missing from the group")

    @property
    def names(self) -> list[str]:
        return list(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def matrix(self, s) -> tuple:
        s = str(s)
        if s not in self.elements:
            raise MalformedInput(f"{s!r} is not an element of the Galois group")
        return self.elements[s]

    def compose(self, s, t) -> str:
        """Name of the element acting as s after t."""
        a, b = self.matrix(s), self.matrix(t)
        n = len(a)
        prod_m = tuple(
            tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n))
            for i in range(n)
        )
        for name, m in self.elements.items():
            if m == prod_m:
                return name
        raise MalformedInput(f"group not closed: {s} * {t}")

    def closure_failures(self) -> list[tuple[str, str]]:
        bad = []
        for s, t in product(self.names, repeat=2):
            try:
                self.compose(s, t)
            except MalformedInput:
                bad.append((s, t))
        return bad

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "elements": {
                name: [[c.to_json() for c in row] for row in m] for name, m in self.elements.items()
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GaloisGroup":
        elements = {
            name: [[GaussianRational.from_json(c) if isinstance(c, Mapping) else c for c in row]
                   for row in m]
            for name, m in data["elements"].items()
        }
        return cls(elements, data["identity"])


def trivial_group(n_generators: int) -> GaloisGroup:
    ident = [[1 if i == j else 0 for j in range(n_generators)] for i in range(n_generators)]
    return GaloisGroup({"1": ident}, "1")


def sign_group(n_generators: int) -> GaloisGroup:
    """Z/2 acting by -1 on every generator."""
    ident = [[1 if i == j else 0 for j in range(n_generators)] for i in range(n_generators)]
    neg = [[-1 if i == j else 0 for j in range(n_generators)] for i in range(n_generators)]
    return GaloisGroup({"1": ident, "-1": neg}, "1")


@dataclass(frozen=True, eq=False)
class GradedPoissonStructure:
    variables: tuple[str, ...]
    generator_degrees: tuple[int, ...]
    poisson_pairs: tuple[tuple[GaussianRational, ...], ...]
    galois: GaloisGroup
    lie: LieAlgebraData
    moment_map: dict = field(default_factory=dict)
    # When set, R is the subring of invariants of this group (and ``galois`` is what is left).
    invariant_group: GaloisGroup | None = None

    def __post_init__(self):
        n = len(self.variables)
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generator_degrees", tuple(int(d) for d in self.generator_degrees))
        omega = tuple(tuple(as_scalar(v) for v in row) for row in self.poisson_pairs)
        object.__setattr__(self, "poisson_pairs", omega)
        if len(self.generator_degrees) != n or len(omega) != n or any(len(r) != n for r in omega):
            raise MalformedInput("generator degrees / Poisson matrix do not match the generators")
        for i in range(n):
            for j in range(n):
                if omega[i][j] != -omega[j][i]:
                    raise MalformedInput("Poisson matrix must be antisymmetric")
        for name, poly in self.moment_map.items():
            if name not in self.lie.basis:
                raise MalformedInput(f"moment map given for unknown Lie element {name!r}")
            if poly.variables != self.variables:
                raise MalformedInput("moment map polynomial uses the wrong generators")

    # -- grading ------------------------------------------------------------
    def degree_of(self, exp) -> int:
        return sum(e * w for e, w in zip(exp, self.generator_degrees))

    def poly(self, terms: Mapping | None = None) -> MultiPoly:
        return MultiPoly(self.variables, terms or {})

    def one(self) -> MultiPoly:
        return MultiPoly.constant(self.variables, 1)

    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.gen(self.variables, name)

    def _check(self, f: MultiPoly) -> None:
        if not isinstance(f, MultiPoly) or f.variables != self.variables:
            raise MalformedInput(f"polynomial not in the ring on generators {self.variables}")

    def euler_components(self, f: MultiPoly) -> dict[int, MultiPoly]:
        self._check(f)
        parts: dict[int, dict] = {}
        for exp, c in f.terms.items():
            parts.setdefault(self.degree_of(exp), {})[exp] = c
        return {d2: MultiPoly._from_clean(self.variables, t) for d2, t in sorted(parts.items())}

    def is_homogeneous(self, f: MultiPoly) -> bool:
        return len(self.euler_components(f)) <= 1

    def degree(self, f: MultiPoly) -> int:
        """Top Euler degree in half-units; -1 for the zero polynomial."""
        return max(self.euler_components(f), default=-1)

    # -- canonical bases ----------------------------------------------------
    def _monomial_basis(self, d2: int) -> list[MultiPoly]:
        return [
            MultiPoly._from_clean(self.variables, {exp: ONE})
            for exp in weighted_monomials(self.generator_degrees, d2)
        ]

    def _subspace(self, d2: int) -> Subspace:
        cache = self.__dict__.setdefault("_subspace_cache", {})
        if d2 not in cache:
            sub = Subspace(order=grlex_key)
            for m in self._monomial_basis(d2):
                if self.invariant_group is not None:
                    group = self.invariant_group
                    m = reynolds(group, m, lambda s, f: self._act_matrix(group.matrix(s), f))
                sub.add(m.terms)
            cache[d2] = sub
        return cache[d2]

    def basis(self, d2: int) -> list[MultiPoly]:
        """Canonical basis of R[d2/2], graded-lex ordered."""
        if d2 < 0:
            return []
        sub = self._subspace(d2)
        return [MultiPoly._from_clean(self.variables, dict(sub.rows[p])) for p in sub.pivots()]

    def dim(self, d2: int) -> int:
        return len(self._subspace(d2)) if d2 >= 0 else 0

    def coords(self, f: MultiPoly, d2: int) -> list[GaussianRational]:
        """Coordinates of a homogeneous f in ``basis(d2)``."""
        self._check(f)
        sub = self._subspace(d2)
        try:
            c = sub.coords(f.terms)
        except ValueError:
            raise MalformedInput(f"{f} is not in R[{d2}/2]") from None
        return [c.get(p, ZERO) for p in sub.pivots()]

    def contains(self, f: MultiPoly) -> bool:
        if not isinstance(f, MultiPoly) or f.variables != self.variables:
            return False
        for d2, part in self.euler_components(f).items():
            if not self._subspace(d2).contains(part.terms):
                return False
        return True

    # -- operations -----------------------------------------------------------
    def bracket(self, f: MultiPoly, g: MultiPoly) -> MultiPoly:
        self._check(f)
        self._check(g)
        n = len(self.variables)
        df = [f.diff(i) for i in range(n)]
        dg = [g.diff(j) for j in range(n)]
        out = []
        for i in range(n):
            if not df[i]:
                continue
            for j in range(n):
                w = self.poisson_pairs[i][j]
                if w and dg[j]:
                    out.append(df[i] * dg[j] * w)
        return polys_sum(self.variables, out)

    def alpha(self, f: MultiPoly) -> MultiPoly:
        return polys_sum(
            self.variables, (part * i_power(d2) for d2, part in self.euler_components(f).items())
        )

    def _act_matrix(self, m, f: MultiPoly) -> MultiPoly:
        n = len(self.variables)
        images = [
            polys_sum(self.variables, [self.gen(self.variables[l]) * m[l][k] for l in range(n) if m[l][k]])
            for k in range(n)
        ]
        return f.linear_substitution(images)

    def galois_act(self, s, f: MultiPoly) -> MultiPoly:
        self._check(f)
        return self._act_matrix(self.galois.matrix(s), f)

    def hamiltonian(self, x: str) -> MultiPoly:
        if x not in self.moment_map:
            raise MalformedInput(f"no moment map for {x!r}")
        return self.moment_map[x]

    def moment(self, vec: Mapping[str, object]) -> MultiPoly:
        return polys_sum(self.variables, (self.hamiltonian(x) * c for x, c in vec.items()))

    def restrict(self) -> "GradedPoissonStructure":
        """The invariant subring R^S, with trivial residual group."""
        return GradedPoissonStructure(
            self.variables,
            self.generator_degrees,
            self.poisson_pairs,
            trivial_group(len(self.variables)),
            self.lie,
            dict(self.moment_map),
            invariant_group=self.galois,
        )

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        lie_brackets = []
        for (a, b), vec in sorted(self.lie.brackets.items(),
                                  key=lambda kv: (self.lie.basis.index(kv[0][0]),
                                                  self.lie.basis.index(kv[0][1]))):
            ia, ib = self.lie.basis.index(a), self.lie.basis.index(b)
            if ia < ib and vec:
                lie_brackets.append({"a": a, "b": b,
                                     "value": {k: rational_str(v.re) for k, v in vec.items()}})
        return {
            "variables": list(self.variables),
            "degrees": list(self.generator_degrees),
            "poisson": [[rational_str(v.re) for v in row] for row in self.poisson_pairs],
            "galois": self.galois.to_json(),
            "lie": {"basis": list(self.lie.basis), "brackets": lie_brackets},
            "moment_map": {x: self.moment_map[x].to_json() for x in self.lie.basis
                           if x in self.moment_map},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedPoissonStructure":
        variables = tuple(data["variables"])
        lie = LieAlgebraData(
            tuple(data["lie"]["basis"]),
            {(b["a"], b["b"]): {k: GaussianRational(v) for k, v in b["value"].items()}
             for b in data["lie"].get("brackets", [])},
        )
        return cls(
            variables,
            tuple(data["degrees"]),
            tuple(tuple(GaussianRational(v) for v in row) for row in data["poisson"]),
            GaloisGroup.from_json(data["galois"]),
            lie,
            {x: MultiPoly.from_json(variables, p) for x, p in data.get("moment_map", {}).items()},
        )


def reynolds(group: GaloisGroup, f, act) -> object:
    """Average of the S-translates of f."""
    total = None
    for s in group.names:
        img = act(s, f)
        total = img if total is None else total + img
    return total * (ONE / as_scalar(group.order))


# -- module-level operations --------------------------------------------------


def poly_poisson_bracket(f: MultiPoly, g: MultiPoly, st: GradedPoissonStructure) -> MultiPoly:
    return st.bracket(f, g)


def euler_components(f: MultiPoly, st: GradedPoissonStructure) -> dict[int, MultiPoly]:
    """Homogeneous components keyed by degree in half-units."""
    return st.euler_components(f)


def alpha(f: MultiPoly, st: GradedPoissonStructure) -> MultiPoly:
    return st.alpha(f)


def constant_term(f: MultiPoly) -> GaussianRational:
    return f.coefficient((0,) * len(f.variables))


def galois_act(s, f: MultiPoly, st: GradedPoissonStructure) -> MultiPoly:
    return st.galois_act(s, f)


# -- structural checks ----------------------------------------------------------


def jacobi_failures(st: GradedPoissonStructure, triples) -> list:
    bad = []
    for f, g, h in triples:
        total = (
            st.bracket(f, st.bracket(g, h))
            + st.bracket(g, st.bracket(h, f))
            + st.bracket(h, st.bracket(f, g))
        )
        if total:
            bad.append((f, g, h))
    return bad


def moment_map_failures(st: GradedPoissonStructure) -> list[tuple[str, str]]:
    bad = []
    for x, y in product(st.lie.basis, repeat=2):
        lhs = st.bracket(st.hamiltonian(x), st.hamiltonian(y))
        rhs = st.moment(st.lie.bracket(x, y))
        if lhs != rhs:
            bad.append((x, y))
    return bad
