from itertools import product

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from dixmier.poisson import sign_group
from dixmier.poly import MalformedInput, MultiPoly
from dixmier.scalars import HALF, ONE, GaussianRational
from dixmier.weyl import (
    WeylAlgebra,
    WeylElement,
    commutator,
    weyl_beta,
    weyl_galois_act,
    weyl_mul,
    weyl_symbol,
    weyl_symmetrize,
)
from oracles import apply_weyl, compose_apply, operators_equal, poly_to_sympy, q_symbols, symmetrized_word_action, sample_functions

Q, D = WeylElement.q(1, 0), WeylElement.d(1, 0)
ONE1 = WeylElement.scalar(1, 1)
VARS = ("x", "y")
X, Y = (MultiPoly.gen(VARS, v) for v in VARS)


def weyl_elements(n=1, max_exp=3):
    key = st.tuples(st.tuples(*[st.integers(0, max_exp)] * n), st.tuples(*[st.integers(0, max_exp)] * n))
    return st.dictionaries(key, st.integers(-4, 4), max_size=4).map(lambda t: WeylElement(n, t))


def test_defining_relation_and_examples():
    assert weyl_mul(D, Q) == weyl_mul(Q, D) + ONE1
    qd = weyl_mul(Q, D)
    assert weyl_mul(qd, qd) == WeylElement(1, {((2,), (2,)): 1, ((1,), (1,)): 1})
    assert weyl_mul(ONE1, qd) == qd


@given(weyl_elements(), weyl_elements())
def test_product_matches_operator_composition(u, v):
    qs = q_symbols(1)
    uv = weyl_mul(u, v)
    for f in sample_functions(1, 6):
        assert sp.expand(apply_weyl(uv, f, qs) - compose_apply(u, v, f, qs)) == 0


@given(weyl_elements(2, 2), weyl_elements(2, 2))
def test_product_matches_operator_composition_two_pairs(u, v):
    qs = q_symbols(2)
    uv = weyl_mul(u, v)
    for f in sample_functions(2, 4):
        assert sp.expand(apply_weyl(uv, f, qs) - compose_apply(u, v, f, qs)) == 0


def test_associativity_on_monomial_triples():
    monos = [WeylElement.monomial((a,), (b,)) for a in range(3) for b in range(3) if a + b <= 4]
    for u, v, w in product(monos, repeat=3):
        assert weyl_mul(weyl_mul(u, v), w) == weyl_mul(u, weyl_mul(v, w))


def test_mismatched_n():
    with pytest.raises(MalformedInput):
        weyl_mul(Q, WeylElement.q(2, 0))


@given(weyl_elements(), weyl_elements())
def test_filtration_and_commutator_degree(u, v):
    uv = weyl_mul(u, v)
    assert uv.degree() <= u.degree() + v.degree() or not uv
    c = commutator(u, v)
    if c:
        assert c.degree() <= u.degree() + v.degree() - 2


@given(weyl_elements(), weyl_elements())
def test_symbol_is_multiplicative_and_poisson(u, v):
    if not u or not v:
        return
    ju, jv = u.degree(), v.degree()
    su, sv = weyl_symbol(u, ju), weyl_symbol(v, jv)
    assert weyl_symbol(weyl_mul(u, v), ju + jv) == su * sv
    # [d, q] = 1 pairs with {x, y} = -1
    bracket = su.diff(1) * sv.diff(0) - su.diff(0) * sv.diff(1)
    assert weyl_symbol(commutator(u, v), ju + jv - 2) == bracket


def test_symbol_examples():
    qd1 = weyl_mul(Q, D) + ONE1
    assert weyl_symbol(qd1, 2) == X * Y
    assert weyl_symbol(qd1, 4) == MultiPoly.zero(VARS)
    assert weyl_symbol(weyl_mul(Q, Q) + D, 2) == X * X
    with pytest.raises(MalformedInput):
        weyl_symbol(qd1, 1)


def test_symmetrize_examples():
    assert weyl_symmetrize(X * Y) == weyl_mul(Q, D) + ONE1 * HALF
    assert weyl_symmetrize(X * X) == weyl_mul(Q, Q)
    assert weyl_symmetrize(MultiPoly.constant(VARS, 1)) == ONE1


@pytest.mark.parametrize("a,b", [(a, b) for a in range(4) for b in range(4) if a + b <= 5])
def test_symmetrize_matches_word_average(a, b):
    (qq,) = q_symbols(1)
    u = weyl_symmetrize(X ** a * Y ** b)
    for f in sample_functions(1, a + b + 1):
        assert sp.expand(apply_weyl(u, f, (qq,)) - symmetrized_word_action(a, b, f, qq)) == 0


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_symmetrize_is_section_of_symbol(cs):
    f = MultiPoly(VARS, {(4 - k, k): c for k, c in enumerate(cs)})
    assert weyl_symbol(weyl_symmetrize(f), 4) == f


def test_beta_examples():
    qd = weyl_mul(Q, D)
    assert weyl_beta(qd) == -qd - ONE1
    assert weyl_beta(weyl_mul(Q, Q)) == -weyl_mul(Q, Q)
    assert weyl_beta(ONE1) == ONE1


@given(weyl_elements(), weyl_elements())
def test_beta_anti_automorphism(u, v):
    assert weyl_beta(weyl_mul(u, v)) == weyl_mul(weyl_beta(v), weyl_beta(u))
    b4 = weyl_beta(weyl_beta(weyl_beta(weyl_beta(u))))
    assert b4 == u


def test_beta_squared_is_parity():
    alg = WeylAlgebra(1)
    for m in alg.basis(6):
        ((a, b),) = m.terms
        sign = (-1) ** (sum(a) + sum(b))
        assert weyl_beta(weyl_beta(m)) == m * sign


def test_galois_action():
    g = sign_group(2)
    qd = weyl_mul(Q, D)
    assert weyl_galois_act("-1", Q, g) == -Q
    assert weyl_galois_act("-1", qd, g) == qd
    assert weyl_galois_act("1", qd + Q, g) == qd + Q
    with pytest.raises(MalformedInput):
        weyl_galois_act("i", Q, g)


@given(weyl_elements(), weyl_elements())
def test_galois_is_automorphism_commuting_with_beta(u, v):
    g = sign_group(2)
    act = lambda w: weyl_galois_act("-1", w, g)
    assert act(weyl_mul(u, v)) == weyl_mul(act(u), act(v))
    assert act(weyl_beta(u)) == weyl_beta(act(u))


def test_json_round_trip():
    u = weyl_mul(Q, D) * GaussianRational(1, 2) + ONE1
    data = u.to_json()
    assert set(data["terms"][0]) == {"qa", "db", "re", "im"}
    assert WeylElement.from_json(1, data) == u


def test_algebra_bases_and_lift():
    alg = WeylAlgebra(2)
    assert len(alg.basis(2)) == 15  # words of length <= 2 in four letters
    f = MultiPoly.gen(("x1", "x2", "y1", "y2"), "x1") * MultiPoly.gen(("x1", "x2", "y1", "y2"), "y2")
    lift = alg.lift(f, 2)
    assert alg.symbol(lift, 2) == f
    assert operators_equal(lift, lift, 2, 2)
