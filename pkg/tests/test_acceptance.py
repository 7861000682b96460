"""Acceptance suite: each criterion runs at its stated box and prints one
pass/fail line.  Everything is exact GF(2) combinatorics; no tolerances.
"""

from subtle import verify


def _run(check, *args):
    result = check(*args)
    print(result.line())
    assert result.passed, result.detail
    return result


def test_criterion_01_presentation_vs_decomposition():
    # BU:n table equals the direct-sum convolution, n=1..3, both models, (8,8)
    _run(verify.check_decomposition)


def test_criterion_02_comparison_kernel():
    # comp:n kernel equals the stated ideal, n=1..3, both models, (8,8)
    _run(verify.check_kernel)


def test_criterion_03_diagonal_recursion():
    # power tables split along d = w+n-1 for n<=5, both models, (8,8)
    _run(verify.check_diagonal_recursion)


def test_criterion_04_colimit_stabilization():
    # Npow(m) entries equal the colimit entries for m >= Dmax on (6,6)
    _run(verify.check_colimit_stabilization)


def test_criterion_05_twist_isomorphism():
    # bijective per bidegree on (6,6), n<=2, and self-inverse on generators
    _run(verify.check_twist)


def test_criterion_06_groebner_oracle():
    # every built ring matches dense row reduction on a (6,6) box
    _run(verify.check_groebner_oracle)


def test_criterion_07_motive_rewrites():
    # confluence on 1000 seeded expressions, inverses, torsor coherence
    _run(verify.check_motive_suite)


def test_criterion_08_sq1_suite():
    # Leibniz + square-zero on (5,5) and the nonvanishing witness
    _run(verify.check_sq1)


def test_criterion_09_specialization():
    # zero classes satisfy every relation and report split-compatible
    _run(verify.check_specialization)


def test_criterion_10_cli_golden():
    # pinned commands reproduce byte-identical outputs
    _run(verify.check_golden)
