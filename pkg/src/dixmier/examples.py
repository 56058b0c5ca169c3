"""Shipped data: metaplectic realizations of sp(2n) inside the Weyl algebra A_n.

The classical side is C[x_1..x_n, y_1..y_n] with every generator of
degree 1/2 (the functions on the double cover of the minimal orbit) and
S = Z/2 acting by -1.  The quantum side is A_n with q_k lifting x_k and
d_k lifting y_k.

Sign calibrations: the Weyl relation [d_k, q_k] = 1 forces the symbol
bracket {x_k, y_k} = -1, since the symbol of a commutator must be the
Poisson bracket of the symbols.  The Moyal constant follows from
C_1 = {.,.}/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .datum import QuantizationDatum, restrict_to_invariants
from .lie import LieAlgebraData
from .linalg import CoordinateSystem
from .poisson import GradedPoissonStructure, sign_group
from .poly import MalformedInput, MultiPoly, grlex_key, monomials_of_degree
from .scalars import HALF, I, ZERO, GaussianRational
from .weyl import WeylAlgebra, classical_variables, weyl_beta, weyl_symmetrize

BRACKET_SIGN = -1  # {x_k, y_k}
BETA_ON_GENERATORS = I  # beta(q_k) = i q_k, beta(d_k) = i d_k
MOYAL_CONSTANT = GaussianRational(Fraction(BRACKET_SIGN, 2))


@dataclass(frozen=True, eq=False)
class ExampleSpec:
    name: str
    n: int
    lie: LieAlgebraData
    moment_map: dict
    calibrations: dict = field(default_factory=dict)


def _poisson_matrix(n: int) -> list[list[int]]:
    size = 2 * n
    omega = [[0] * size for _ in range(size)]
    for k in range(n):
        omega[k][n + k] = BRACKET_SIGN
        omega[n + k][k] = -BRACKET_SIGN
    return omega


def _quadratic_basis(n: int) -> list[tuple[str, MultiPoly]]:
    variables = classical_variables(n)
    if n == 1:
        x, y = (MultiPoly.gen(variables, v) for v in variables)
        return [("e", x * x * HALF), ("f", -(y * y) * HALF), ("h", x * y)]
    out = []
    for exp in monomials_of_degree(2 * n, 2):
        mono = MultiPoly.monomial(variables, exp)
        name = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exp) if e
        )
        out.append((name, mono * HALF if max(exp) == 2 else mono))
    return out


def metaplectic_spec(n: int) -> ExampleSpec:
    """sp(2n) as quadratic Hamiltonians; structure constants come from the bracket."""
    if n < 1:
        raise MalformedInput("n must be at least 1")
    variables = classical_variables(n)
    pairs = _quadratic_basis(n)
    names = tuple(name for name, _ in pairs)
    st = GradedPoissonStructure(
        variables, (1,) * (2 * n), _poisson_matrix(n), sign_group(2 * n),
        LieAlgebraData(names, {}), {},
    )
    coords = CoordinateSystem([p.terms for _, p in pairs], order=grlex_key)
    brackets = {}
    for i, (a, pa) in enumerate(pairs):
        for b, pb in pairs[i + 1:]:
            c = coords(st.bracket(pa, pb).terms)
            brackets[(a, b)] = {names[k]: v for k, v in enumerate(c) if v}
    lie = LieAlgebraData(names, brackets)
    calibrations = {"bracket": BRACKET_SIGN, "beta": BETA_ON_GENERATORS, "moyal": MOYAL_CONSTANT}
    return ExampleSpec(f"metaplectic-{n}", n, lie, dict(pairs), calibrations)


def build_metaplectic(n: int) -> QuantizationDatum:
    spec = metaplectic_spec(n)
    variables = classical_variables(n)
    group = sign_group(2 * n)
    classical = GradedPoissonStructure(
        variables, (1,) * (2 * n), _poisson_matrix(n), group, spec.lie, spec.moment_map
    )
    psi = {x: weyl_symmetrize(spec.moment_map[x]) for x in spec.lie.basis}
    return QuantizationDatum(
        algebra=WeylAlgebra(n),
        lie=spec.lie,
        psi=psi,
        galois=group,
        beta=weyl_beta,
        classical=classical,
        name=f"a{n}" if n > 1 else "a1",
    )


def broken_beta(n: int = 1) -> QuantizationDatum:
    """Seeded failure: beta replaced by the identity map (violates axiom V)."""
    d = build_metaplectic(n)
    return d.replace(beta=lambda u: u, name=f"{d.name}-broken-beta")


def broken_trace(n: int = 1) -> QuantizationDatum:
    """Seeded failure: a registered trace that is 0 on 1 (normalization)."""
    d = build_metaplectic(n)
    return d.replace(trace_oracle=lambda u: ZERO, name=f"{d.name}-broken-trace")


EXAMPLES: dict[str, Callable[[], QuantizationDatum]] = {
    "a1": lambda: build_metaplectic(1),
    "a1-invariants": lambda: restrict_to_invariants(build_metaplectic(1)),
    "a2": lambda: build_metaplectic(2),
    "a2-invariants": lambda: restrict_to_invariants(build_metaplectic(2)),
    "a1-broken-beta": lambda: broken_beta(1),
    "a1-broken-trace": lambda: broken_trace(1),
}

DEFAULT_CUTOFF = {"a1": 6, "a1-invariants": 6, "a2": 4, "a2-invariants": 4,
                  "a1-broken-beta": 6, "a1-broken-trace": 6}


def load_example(name: str) -> QuantizationDatum:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise MalformedInput(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
