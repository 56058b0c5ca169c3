"""Check groups run by the command-line driver and the acceptance tests."""

from __future__ import annotations

import random

from .datum import (
    DatumError,
    RangeError,
    compute_trace,
    decomposition_failures,
    galois_symmetrize,
    naturally_graded_check,
    predicted_symbol,
    q_equivariance_failures,
    quantize,
    restrict_to_invariants,
    simplicity_check,
    verify_axioms,
)
from .enveloping import UEnvElement, casimir, casimir_scalar, check_kernel, check_pbw_associativity, check_tau_beta_square, kernel_J
from .examples import MOYAL_CONSTANT, load_example
from .moyal import moyal_oracle
from .linalg import Subspace
from .poly import MalformedInput, grlex_key
from .report import CheckReport
from .star import (
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
    lambda_suite,
)
from .weyl import WeylElement, weyl_symmetrize


def moyal(f, g):
    return moyal_oracle(f, g, constant=MOYAL_CONSTANT)


def _report_from_axioms(report) -> list[CheckReport]:
    out = []
    for r in report.results:
        rep = CheckReport(f"axiom-{r.axiom}", report.cutoff, checked=1)
        if r.status != "pass":
            rep.failures.append(dict(r.witness or {}, axiom=r.axiom))
        out.append(rep)
    return out


def decomposition_report(qmap) -> list[CheckReport]:
    d = qmap.datum
    rep = CheckReport("decomposition", qmap.cutoff, checked=1)
    for msg in decomposition_failures(qmap):
        rep.fail(msg)
    eq = CheckReport("q-equivariance", qmap.cutoff, checked=1)
    for what, f in q_equivariance_failures(qmap):
        eq.fail(f"q does not intertwine {what}", phi=f)
    out = [rep, eq]
    if isinstance(d.algebra.one(), WeylElement):
        sym = CheckReport("q-symmetrization", qmap.cutoff)
        for d2 in range(qmap.cutoff + 1):
            for f in d.classical.basis(d2):
                sym.require(qmap(f) == weyl_symmetrize(f), "q differs from Weyl symmetrization", phi=f)
        out.append(sym)
    return out


def group_axioms(d, cutoff: int) -> list[CheckReport]:
    out = _report_from_axioms(verify_axioms(d, cutoff))
    if all(r.passed for r in out):
        out += decomposition_report(quantize(d, cutoff))
    return out


def group_star(d, cutoff: int) -> list[CheckReport]:
    q = quantize(d, cutoff)
    reps = [fn(q, cutoff) for fn in (check_circ_identities, check_truncation, check_associativity, check_Q,
                                     check_supertrace, check_star_axioms, check_star_associativity,
                                     check_exact_invariance)]
    if isinstance(d.algebra.one(), WeylElement):
        reps.append(check_moyal_agreement(q, cutoff, moyal))
    return reps


def group_lambda(d, cutoff: int) -> list[CheckReport]:
    q = quantize(d, cutoff + 2)
    return lambda_suite(q, cutoff) + [check_pi(q, cutoff)]


def group_kernel(d, cutoff: int) -> list[CheckReport]:
    kernels = kernel_J(d, cutoff)
    reps = [check_kernel(d, cutoff, kernels), check_tau_beta_square(d, cutoff // 2 + 1),
            check_pbw_associativity(d.lie, 3)]
    cas = CheckReport("casimir", cutoff)
    try:
        c = casimir_scalar(d)
        order = tuple(reversed(d.lie.basis))
        c2 = casimir_scalar(d.replace(lie=d.lie.permuted(order)))
        cas.require(c == c2, "psi(Casimir) depends on the basis order", scalar=c, permuted=c2)
        omega = casimir(d.lie) - UEnvElement.one(d.lie) * c
        if len(kernels) > 2:
            span = Subspace((k.terms for k in kernels[2].basis), order=grlex_key)
            cas.require(span.contains(omega.terms), "Casimir minus its scalar is not in J", scalar=c)
    except (MalformedInput, DatumError) as exc:
        cas.fail(str(exc))
    reps.append(cas)
    return reps


def group_simplicity(d, cutoff: int, seed: int = 0) -> list[CheckReport]:
    trace = compute_trace(d, 2 * cutoff)
    gram = CheckReport("gram-D", cutoff, checked=1)
    verdict = simplicity_check(d, {d2: d.algebra.basis(d2) for d2 in range(cutoff + 1)}, cutoff, trace)
    for d2, rad in verdict.radicals.items():
        gram.fail(f"pairing degenerate on D_{d2}/2", radical=rad)
    inv = restrict_to_invariants(d)
    gram_s = CheckReport("gram-DS", cutoff, checked=1)
    verdict = simplicity_check(d, {d2: inv.algebra.basis(d2) for d2 in range(cutoff + 1)}, cutoff, trace)
    for d2, rad in verdict.radicals.items():
        gram_s.fail(f"pairing degenerate on (D^S)_{d2}/2", radical=rad)
    sym = CheckReport("galois-symmetrize", cutoff)
    rng = random.Random(seed)
    top = max(1, cutoff // d.galois.order)
    for _ in range(10):
        d2 = rng.randint(1, top)
        basis = d.algebra.basis(d2)
        a = d.algebra.zero()
        while not a:
            for b in basis:
                a = a + b * rng.randint(-3, 3)
        try:
            b = galois_symmetrize(d, a)
        except DatumError as exc:
            sym.fail(str(exc), a=a)
            continue
        deg = d.algebra.degree(a) * d.galois.order
        sym.require(bool(b) and all(d.act(s, b) == b for s in d.galois.names)
                    and d.algebra.symbol(b, deg) == predicted_symbol(d, a),
                    "symmetrized element is zero, not invariant, or has the wrong symbol", a=a)
    graded = CheckReport("graded-vs-beta", cutoff, checked=1)
    info = naturally_graded_check(d, cutoff)
    if not info["consistent"]:
        graded.fail("integer grading and beta^2 = 1 disagree", **info)
    return [gram, gram_s, sym, graded]


GROUPS = {
    "axioms": group_axioms,
    "star": group_star,
    "lambda": group_lambda,
    "kernel": group_kernel,
    "simplicity": group_simplicity,
}


def run_group(example: str, group: str, cutoff: int, seed: int = 0) -> dict:
    d = load_example(example)
    fn = GROUPS[group]
    try:
        reps = fn(d, cutoff, seed) if group == "simplicity" else fn(d, cutoff)
    except (DatumError, RangeError, MalformedInput) as exc:
        rep = CheckReport(group, cutoff)
        rep.fail(f"{type(exc).__name__}: {exc}")
        reps = [rep]
    return {"group": group, "passed": all(r.passed for r in reps), "reports": [r.to_json() for r in reps]}
