import pytest
import sympy as sp
from hypothesis import given, strategies as st

from dixmier.datum import DatumError, RangeError
from dixmier.examples import MOYAL_CONSTANT
from dixmier.moyal import calibrate, moyal_oracle
from dixmier.poisson import constant_term
from dixmier.poly import MalformedInput, MultiPoly
from dixmier.scalars import HALF, ONE, ZERO
from dixmier.star import (
    StarSeries,
    basis_items,
    build_lambda,
    check_associativity,
    check_exact_invariance,
    check_moyal_agreement,
    check_pi,
    check_circ_identities,
    check_Q,
    check_star_associativity,
    check_star_axioms,
    check_supertrace,
    check_truncation,
    circ,
    cp_table,
    extract_Cp,
    hamiltonian_derivation,
    homogenize,
    lambda_apply,
    lambda_suite,
    pi_rep,
    star_mul,
)
from oracles import moyal_components, poly_to_sympy, sympy_to_poly

VARS = ("x", "y")


def const(c):
    return MultiPoly.constant(VARS, c)


def test_calibrated_products(q_a1, xy):
    x, y = xy
    assert circ(x, y, q_a1) == x * y - const(HALF)
    assert circ(y, x, q_a1) == x * y + const(HALF)
    assert circ(const(1), x * x * y, q_a1) == x * x * y
    assert circ(x, x, q_a1) == x * x


def test_moment_map_commutators(a1, q_a1):
    phi = a1.classical.moment_map
    comm = lambda a, b: circ(phi[a], phi[b], q_a1) - circ(phi[b], phi[a], q_a1)
    assert comm("h", "e") == phi["e"] * 2
    assert comm("h", "f") == -phi["f"] * 2
    assert comm("e", "f") == phi["h"]


def test_extract_cp_examples(q_a1, xy):
    x, y = xy
    assert extract_Cp(x, y, q_a1) == {0: x * y, 1: const(-HALF)}
    assert extract_Cp(x * x, y * y, q_a1) == {0: x * x * y * y, 1: x * y * -2, 2: const(HALF)}


def test_extract_cp_rejects_inhomogeneous(q_a1, xy):
    x, y = xy
    with pytest.raises(MalformedInput):
        extract_Cp(x + x * y, y, q_a1)


def test_homogenize_and_specialize(q_a1, xy):
    x, y = xy
    f, g = x + x * y, y * y
    series = homogenize(f, g, q_a1)
    assert series.specialize() == circ(f, g, q_a1)
    one = StarSeries.of(const(1))
    assert star_mul(one, StarSeries.of(f), q_a1) == StarSeries.of(f)


def test_range_error(q_a1, xy):
    x, y = xy
    with pytest.raises(RangeError):
        circ(x ** 5, y ** 4, q_a1)


def test_star_series_algebra(xy):
    x, y = xy
    s = StarSeries.of(x, 1) + StarSeries.of(y)
    assert (s - s).components == {}
    assert s.shift(2).components == {3: x, 2: y}
    assert s.scale(2).specialize() == (x + y) * 2
    with pytest.raises(MalformedInput):
        StarSeries(VARS, {-1: x})


def test_Q_values(star_a1, xy):
    x, y = xy
    assert star_a1.Q(x, y) == -HALF
    assert star_a1.Q(y, x) == HALF
    assert star_a1.Q(x, x) == ZERO
    # T((qd + 1/2)^2) = 1/2 - 1 + 1/4
    assert star_a1.Q(x * y, x * y) == -HALF * HALF
    for (j, f) in basis_items(star_a1.classical, 4):
        for (k, g) in basis_items(star_a1.classical, 4):
            c0 = star_a1.classical.euler_components(star_a1.circ(f, g)).get(0)
            assert star_a1.Q(f, g) == (constant_term(c0) if c0 else ZERO)


@pytest.mark.parametrize("check", [check_circ_identities, check_truncation, check_associativity, check_Q,
                                   check_supertrace, check_star_axioms, check_star_associativity,
                                   check_exact_invariance])
def test_star_checks_a1(q_a1, check):
    rep = check(q_a1, 6)
    assert rep.passed, rep.failures[:3]
    assert rep.checked > 0


@pytest.mark.parametrize("check", [check_circ_identities, check_truncation, check_associativity, check_Q,
                                   check_star_axioms, check_exact_invariance])
def test_star_checks_a2(q_a2, check):
    assert check(q_a2, 4).passed


def test_moyal_oracle_agrees_with_sympy(a1):
    xs, ys = sp.symbols("x y")
    items = basis_items(a1.classical, 6)
    for _, f in items:
        for _, g in items:
            expected = moyal_components(poly_to_sympy(f, (xs, ys)), poly_to_sympy(g, (xs, ys)),
                                        (xs,), (ys,), sp.Rational(-1, 2))
            got = moyal_oracle(f, g).components
            assert set(got) == set(expected)
            for p, c in got.items():
                assert c == sympy_to_poly(expected[p], (xs, ys), VARS)


def test_moyal_calibration():
    assert calibrate(-1) == -HALF
    assert MOYAL_CONSTANT == -HALF


def test_star_agrees_with_moyal(q_a1):
    rep = check_moyal_agreement(q_a1, 8, lambda f, g: moyal_oracle(f, g, constant=MOYAL_CONSTANT))
    assert rep.passed and rep.checked > 0


def test_star_agrees_with_moyal_two_pairs(q_a2):
    rep = check_moyal_agreement(q_a2, 4, lambda f, g: moyal_oracle(f, g, constant=MOYAL_CONSTANT))
    assert rep.passed


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_circ_matches_moyal_random(star_a1, a, b):
    f = MultiPoly(VARS, {(2 - i, i): c for i, c in enumerate(a)})
    g = MultiPoly(VARS, {(3 - i, i): c for i, c in enumerate(b)})
    assert star_a1.circ(f, g) == moyal_oracle(f, g, constant=MOYAL_CONSTANT).specialize()


def test_cp_table_shape(q_a1):
    table = cp_table(q_a1, 2)
    rows = table.to_json()
    assert rows and set(rows[0]) == {"j", "k", "phi", "psi", "Cp"}
    # pairs (j, k) with j + k <= 1 over graded pieces of dims 1, 2, 3
    assert len(rows) == 1 + 2 + 2 + 3 + 3 + 4


def test_lambda_is_second_moyal_component(a1, q_a1):
    xs, ys = sp.symbols("x y")
    for x in a1.lie.basis:
        phi = a1.classical.moment_map[x]
        for _, psi in basis_items(a1.classical, 6):
            c2 = moyal_components(poly_to_sympy(phi, (xs, ys)), poly_to_sympy(psi, (xs, ys)),
                                  (xs,), (ys,), sp.Rational(-1, 2)).get(2, sp.Integer(0))
            assert lambda_apply(x, psi, q_a1) == sympy_to_poly(c2, (xs, ys), VARS)


def test_lambda_example(a1, q_a1):
    # Lambda^e(phi^f) = C_2(x^2/2, -y^2/2) = -1/8
    assert lambda_apply("e", a1.classical.moment_map["f"], q_a1) == const(-HALF * HALF * HALF)


def test_lambda_suite_a1(q_a1):
    reps = lambda_suite(q_a1, 6)
    assert [r.name for r in reps] == [f"lambda-{k}" for k in ("i", "ii", "iii", "iv", "v", "vi")]
    for r in reps:
        assert r.passed, (r.name, r.failures[:2])


def test_build_lambda_needs_range(q_a1):
    with pytest.raises(RangeError):
        build_lambda(q_a1, 8)
    lam = build_lambda(q_a1, 6)
    assert lam.leaks == []
    assert set(lam.matrices) == {"e", "f", "h"}


def test_pi_identities(a1, q_a1, xy):
    x, y = xy
    assert pi_rep("h", "h", x, q_a1) == hamiltonian_derivation("h", x, a1.classical)
    assert pi_rep(None, None, x, q_a1) == MultiPoly.zero(VARS)
    rep = check_pi(q_a1, 6)
    assert rep.passed, rep.failures[:2]


def test_lambda_suite_a2(a2):
    from dixmier.datum import quantize
    q = quantize(a2, 4)
    for r in lambda_suite(q, 2):
        assert r.passed, r.name


def test_cp_odd_half_step_is_error(a1, q_a1, xy):
    x, _ = xy
    # a homogeneous input never produces an odd half-step
    assert set(extract_Cp(x, x * x, q_a1)) == {0}
    with pytest.raises(DatumError):
        from dixmier.star import StarProduct

        class Skewed(StarProduct):
            def components(self, f, g):
                return {1: x}

        Skewed(q_a1).cp(x, x)
