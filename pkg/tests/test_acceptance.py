"""Acceptance suite: one test per criterion, printing a pass/fail line each.

Counts and tolerances are pinned here; the suites draw reproducible inputs
from fixed seeds.  Run with ``pytest tests/test_acceptance.py -v -s`` to see
the per-criterion lines.
"""

import json

from cliffcalc import verify
from cliffcalc.cli import render_job


def _report(number, name, result):
    status = "PASS" if result.passed else "FAIL"
    detail = "; ".join(
        f"{c.name}: worst={c.worst:.3g} (tol {c.tolerance:g})" for c in result.checks
    )
    print(f"ACCEPTANCE {number:2d} [{status}] {name} -- {detail}")
    assert result.passed, f"criterion {number} failed: {detail}"


def test_criterion_01_algebra_suite():
    result = verify.suite_algebra(seed=101, max_exhaustive=5, max_dense=6, tol=1e-12)
    _report(1, "blade algebra identities", result)


def test_criterion_02_paravector_identities():
    result = verify.suite_paravector(seed=102, count=1000, tol=1e-12)
    _report(2, "paravector norm identity and resolvent", result)


def test_criterion_03_spectral_projections():
    result = verify.suite_projections(seed=103, count=500, tol=1e-12)
    _report(3, "spectral projections and decomposition", result)


def test_criterion_04_stem_realness():
    result = verify.suite_stem_realness(
        seed=104, stem_count=50, kappa_count=50, nonstem_count=10,
        tol=1e-10, witness_floor=1e-3)
    _report(4, "stem realness and non-stem witnesses", result)


def test_criterion_05_agreement():
    result = verify.suite_agreement(
        seed=105, count=100, tol=1e-8, independence_tol=1e-10)
    _report(5, "contour transform vs direct formula", result)


def test_criterion_06_slice_regularity():
    result = verify.suite_regularity(
        seed=106, fn_count=20, point_count=20, h=1e-4, tol=1e-6, witness_floor=0.5)
    _report(6, "slice regularity of contour transforms", result)


def test_criterion_07_multiplicativity():
    result = verify.suite_multiplicativity(seed=107, count=100, tol=1e-8, poly_tol=1e-10)
    _report(7, "multiplicativity and polynomial clauses", result)


def test_criterion_08_operator_spectra():
    result = verify.suite_operator_spectra(seed=108, count=200, pairing_tol=1e-10)
    _report(8, "operator spectrum membership routes", result)


def test_criterion_09_flat_invariance():
    result = verify.suite_flat_invariance(
        seed=109, stem_count=10, tol=1e-9, witness_floor=1e-3)
    _report(9, "real-structure invariance of the calculus", result)


def test_criterion_10_calculus_equivalence():
    result = verify.suite_equivalence(seed=110, count=20, tol=1e-6)
    _report(10, "slice calculus vs contour calculus", result)


def test_criterion_11_spectral_mapping():
    result = verify.suite_spectral_mapping(seed=111, count=20, tol=1e-6)
    _report(11, "spectral mapping", result)


def test_criterion_12_representation_and_lift():
    result = verify.suite_representation_lift(seed=112, fn_count=5, points=100, tol=1e-10)
    _report(12, "representation formula and slice lift", result)


def test_criterion_13_cli_determinism(tmp_path):
    jobs = [
        {"command": "spectrum", "args": {"paravector": "1+2e1+2e2", "n": 2}},
        {"command": "eval",
         "args": {"fn": "z^2 - e1*z", "at": "0.5+e1+e2", "n": 2, "method": "both"}},
        {"command": "check", "args": {"suite": "projections", "seed": 3}},
    ]
    identical = True
    for job in jobs:
        job_file = tmp_path / f"{job['command']}.json"
        job_file.write_text(json.dumps(job))
        loaded = json.loads(job_file.read_text())
        if render_job(loaded) != render_job(loaded):
            identical = False
    status = "PASS" if identical else "FAIL"
    print(f"ACCEPTANCE 13 [{status}] job files re-render byte-identically")
    assert identical
