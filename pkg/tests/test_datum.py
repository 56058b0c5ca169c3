import pytest
import sympy as sp

from dixmier.datum import (
    DatumError,
    RangeError,
    compute_trace,
    decomposition_failures,
    galois_symmetrize,
    gram,
    naturally_graded_check,
    pairing,
    q_equivariance_failures,
    q_inverse,
    quantize,
    restrict_to_invariants,
    simplicity_check,
    superhomogeneous_basis,
    trace_by_linear_system,
    verify_axioms,
)
from dixmier.examples import broken_beta, broken_trace, build_metaplectic
from dixmier.poisson import trivial_group
from dixmier.poly import MalformedInput, MultiPoly
from dixmier.scalars import HALF, ONE, ZERO, GaussianRational
from dixmier.weyl import WeylElement, weyl_mul, weyl_symmetrize
from oracles import from_sympy, weyl_trace

Q, D = WeylElement.q(1, 0), WeylElement.d(1, 0)
ONE1 = WeylElement.scalar(1, 1)
QD = weyl_mul(Q, D)
QQ = weyl_mul(Q, Q)


def test_trace_examples(trace_a1):
    assert trace_a1(ONE1) == ONE
    assert trace_a1(QD) == -HALF
    assert trace_a1(QQ) == ZERO
    assert trace_a1(Q) == ZERO


def test_trace_matches_symbol_constant_term(a1, trace_a1):
    for b in a1.algebra.basis(12):
        assert trace_a1(b) == from_sympy(weyl_trace(b, 1)), b


def test_trace_matches_linear_system(a1, trace_a1):
    values = trace_by_linear_system(a1, 8)
    assert values == [trace_a1(b) for b in a1.algebra.basis(8)]


def test_trace_two_pairs_against_oracle(a2):
    trace = compute_trace(a2, 6)
    for b in a2.algebra.basis(6):
        assert trace(b) == from_sympy(weyl_trace(b, 2))


def test_trace_range(trace_a1):
    with pytest.raises(RangeError):
        trace_a1(WeylElement.monomial((13,), (0,)))


def test_trace_rejects_abelian_datum(a1):
    from dixmier.lie import abelian
    toy = a1.replace(lie=abelian(["h"]), psi={"h": a1.psi["h"]})
    with pytest.raises(DatumError):
        compute_trace(toy, 4)


def test_pairing_examples(a1, trace_a1):
    assert pairing(a1, trace_a1, Q, D) == -HALF
    assert pairing(a1, trace_a1, D, Q) == HALF
    assert pairing(a1, trace_a1, Q, Q) == ZERO
    g = gram(a1, trace_a1, [ONE1, Q, D])
    assert g == [[ONE, ZERO, ZERO], [ZERO, ZERO, -HALF], [ZERO, HALF, ZERO]]


def test_decomposition_low_degrees(q_a1):
    decomp = q_a1.decomposition
    assert decomp.basis(0) == [ONE1]
    assert decomp.basis(1) == [Q, D]
    assert decomp.basis(2) == [QQ, QD + ONE1 * HALF, weyl_mul(D, D)]


def test_q_examples(q_a1, xy):
    x, y = xy
    assert q_a1(x * y) == QD + ONE1 * HALF
    assert q_a1(x * x) == QQ
    assert q_a1(x * x * y) == WeylElement(1, {((2,), (1,)): 1, ((1,), (0,)): 1})
    assert q_inverse(q_a1.datum, q_a1, QD) == {0: MultiPoly.constant(("x", "y"), -HALF), 2: x * y}


def test_q_equals_weyl_symmetrization(a1, q_a1):
    for d2 in range(9):
        for f in a1.classical.basis(d2):
            assert q_a1(f) == weyl_symmetrize(f)


def test_q_of_moment_map_is_psi(a1, q_a1):
    for x in a1.lie.basis:
        assert q_a1(a1.classical.moment_map[x]) == a1.psi[x]


def test_q_inverse_round_trip(a1, q_a1):
    for b in a1.algebra.basis(6):
        assert q_a1(q_a1.inverse_poly(b)) == b


def test_q_range(q_a1, xy):
    x, _ = xy
    with pytest.raises(RangeError):
        q_a1(x ** 9)
    with pytest.raises(RangeError):
        q_a1.inverse(WeylElement.monomial((9,), (0,)))


def test_decomposition_properties(q_a1, q_a2):
    assert decomposition_failures(q_a1) == []
    assert q_equivariance_failures(q_a1) == []
    assert decomposition_failures(q_a2) == []


def test_axioms_a1(a1):
    report = verify_axioms(a1, 6)
    assert report.passed
    assert [r.axiom for r in report.results] == ["I", "II", "III", "IV", "V", "VI", "VII"]


def test_axioms_a1_invariants(a1_inv):
    assert verify_axioms(a1_inv, 6).passed


def test_axioms_a2(a2):
    assert verify_axioms(a2, 2).passed


def test_broken_beta_fails_V():
    report = verify_axioms(broken_beta(1), 6)
    assert not report["V"].passed
    assert report["V"].witness["elements"]
    assert report["I"].passed and report["II"].passed


def test_broken_trace_fails_VI():
    report = verify_axioms(broken_trace(1), 6)
    assert not report["VI"].passed
    assert "normalization" in report["VI"].witness["detail"]


def test_superhomogeneous_split(a1):
    even, odd = superhomogeneous_basis(a1, 3)
    assert len(even) + len(odd) == len(a1.algebra.basis(3))
    assert len(odd) == 6  # q, d and the four cubic monomials


def test_invariant_restriction(a1, a1_inv):
    assert a1_inv.algebra.basis(1) == [ONE1]
    assert len(a1_inv.algebra.basis(3)) == 4
    even, odd = superhomogeneous_basis(a1_inv, 5)
    assert odd == []
    trivial = a1.replace(galois=trivial_group(2))
    assert restrict_to_invariants(trivial) is trivial


def test_galois_symmetrize(a1):
    assert galois_symmetrize(a1, Q) == -QQ
    b = galois_symmetrize(a1, QD)
    assert b == weyl_mul(QD, QD)
    with pytest.raises(MalformedInput):
        galois_symmetrize(a1, a1.algebra.zero())


def test_simplicity_a1_and_invariants(a1, a1_inv, trace_a1):
    full = simplicity_check(a1, {d2: a1.algebra.basis(d2) for d2 in range(6)}, 5, trace_a1)
    assert full.nondegenerate
    inv = simplicity_check(a1, {d2: a1_inv.algebra.basis(d2) for d2 in range(6)}, 5, trace_a1)
    assert inv.nondegenerate


def test_simplicity_detects_degenerate_trace(a1):
    def normal_constant(u):
        return u.terms.get(((0,), (0,)), ZERO)

    verdict = simplicity_check(a1, {0: [ONE1], 1: a1.algebra.basis(1)}, 1, normal_constant)
    assert verdict.degrees == {0: "nondegenerate", 1: "degenerate"}
    # right radical: T'(a d) = 0 for all a; left radical: T'(q a) = 0
    (rad,) = verdict.radicals[1]
    assert rad == D
    assert all(normal_constant(weyl_mul(Q, b)) == ZERO for b in a1.algebra.basis(1))


def test_simplicity_rejects_dependent_basis(a1, trace_a1):
    with pytest.raises(MalformedInput):
        simplicity_check(a1, {1: [Q, Q * 2]}, 1, trace_a1)


def test_naturally_graded_consistent(a1):
    assert naturally_graded_check(a1, 6)["consistent"]
