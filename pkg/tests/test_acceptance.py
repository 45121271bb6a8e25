"""Acceptance suite: every committed criterion at its stated tolerance.

Each test prints one pass/fail line per criterion (run with -s to stream
them; `kpzlab accept` produces the same report from the command line).

The geometric-law check of c06 is a strict xfail: the corner-growth shape
chain is reversible for the per-configuration weight (p/q)^boxes, so the
box-count law carries an extra partition-number factor and its total
variation against the plain geometric pmf is analytically ~0.142, which no
sampling effort can reduce below the 0.02 tolerance.  The companion
diagnostic check (same data against the partition-weighted law) must pass,
which localizes the discrepancy in the reference law, not the simulator.
See notes on the stationary-law criterion in the project decision log.
"""

import numpy as np
import pytest

from kpzlab import acceptance

_RESULTS: dict = {}
_MANIFEST = acceptance.load_manifest()


def _run(cid):
    if cid not in _RESULTS:
        _RESULTS[cid] = acceptance.CRITERIA[cid](_MANIFEST[cid])
    res = _RESULTS[cid]
    print(f"[{'PASS' if res['passed'] else 'FAIL'}] {res['id']}: "
          f"{res['title']} ({res['seconds']}s)")
    for c in res["checks"]:
        print(f"    {'pass' if c['passed'] else 'FAIL'}  {c['name']} = "
              f"{c['statistic']} ({c['op']} {c['threshold']})")
    return res


def _assert_checks(res, skip=()):
    for c in res["checks"]:
        if c["name"] in skip:
            continue
        assert c["passed"], f"{res['id']}: {c['name']} = {c['statistic']} " \
                            f"violates {c['op']} {c['threshold']}"


pytestmark = pytest.mark.acceptance


def test_c01_rost_limit_shape():
    _assert_checks(_run("c01_rost_shape"))


def test_c02_corner_lpp_coupling_exact():
    _assert_checks(_run("c02_lpp_coupling"))


def test_c03_lpp_fluctuation_exponent():
    _assert_checks(_run("c03_lpp_exponent"))


def test_c04_tw_gue_distributional_fit():
    _assert_checks(_run("c04_tw_fit"))


def test_c05_tw_moments_tails_crosscheck():
    _assert_checks(_run("c05_tw_moments"))


GEOMETRIC_CHECK = "total variation vs geometric law"


@pytest.mark.xfail(strict=True,
                   reason="box-count law is partition-weighted (p/q)^k p(k); "
                          "TV against the plain geometric pmf is analytically "
                          "~0.142 > 0.02, see decision log")
def test_c06_stationary_geometric_as_specified():
    res = _run("c06_stationary_law")
    check = next(c for c in res["checks"] if c["name"] == GEOMETRIC_CHECK)
    assert check["passed"], f"TV = {check['statistic']}"


def test_c06_stationary_partition_weighted_diagnostic():
    res = _run("c06_stationary_law")
    _assert_checks(res, skip=(GEOMETRIC_CHECK,))


def test_c07_ew_kpz_crossover():
    _assert_checks(_run("c07_crossover"))


def test_c08_gaussian_baseline():
    _assert_checks(_run("c08_gaussian_baseline"))


def test_c09_oracle_equivalences():
    _assert_checks(_run("c09_oracles"))


def test_c10_qsystem_degenerations():
    _assert_checks(_run("c10_qsystems"))


def test_c11_fpp_diagonal_properties():
    _assert_checks(_run("c11_fpp_diagonal"))


def test_c12_rwre_properties():
    _assert_checks(_run("c12_rwre"))


def test_acceptance_report_is_serializable(tmp_path):
    res = _run("c02_lpp_coupling")
    out = acceptance.run_criteria(["c02_lpp_coupling"], tmp_path)
    assert (tmp_path / "acceptance.json").exists()
    assert out[0]["id"] == res["id"]
    stats_vals = [c["statistic"] for c in out[0]["checks"]]
    assert all(np.isfinite(v) for v in stats_vals)
