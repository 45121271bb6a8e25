import numpy as np
import pytest

from kpzlab import tracywidom as tw
from kpzlab.airy import airy_ai
from kpzlab.errors import ParameterError, RangeError

# Literature values used as frozen goldens after the dual-route cross-check
# (Fredholm determinant vs Painleve II) validated the tables.
GUE_MOMENTS = (-1.7710868074, 0.8131947928, 0.2240842036)
GOE_MOMENTS = (-1.2065335746, 1.6077810346, 0.2934645240)


@pytest.fixture(scope="module")
def gue():
    return tw.tw_table("GUE")


@pytest.fixture(scope="module")
def goe():
    return tw.tw_table("GOE")


def test_gue_moments_against_figure_values(gue):
    mean, var, _ = gue.moments()
    assert abs(mean - (-1.77)) <= 0.02
    assert abs(var - 0.81) <= 0.02


def test_moments_against_frozen_goldens(gue, goe):
    for table, golden in ((gue, GUE_MOMENTS), (goe, GOE_MOMENTS)):
        mean, var, skew = table.moments()
        assert abs(mean - golden[0]) < 1e-5
        assert abs(var - golden[1]) < 1e-5
        assert abs(skew - golden[2]) < 1e-4


def test_table_invariants(gue, goe):
    gue.check_invariants()
    goe.check_invariants()
    assert gue.cdf_values[-1] >= 1.0 - 1e-8
    assert np.all(np.diff(gue.cdf_values) > 0)


def test_fredholm_vs_painleve(gue):
    s = np.linspace(-5.0, 2.0, 71)
    diff = np.abs(tw.fredholm_gue_cdf(s) - gue.cdf(s))
    assert diff.max() <= 1e-6


def test_nystrom_order_doubling(gue):
    s = gue.s[::8]           # every 0.08 across the full table
    d40 = tw.fredholm_gue_cdf(s, order=40)
    d80 = tw.fredholm_gue_cdf(s, order=80)
    assert np.max(np.abs(d40 - d80)) < 1e-8


def test_hastings_mcleod_matches_airy_right():
    s = np.linspace(4.0, 8.0, 41)
    q = tw.hastings_mcleod_q(s)
    ai = airy_ai(s)[0]
    assert np.max(np.abs(q / ai - 1.0)) <= 1e-6


def test_painleve_backbone_against_fredholm_second_derivative():
    # -(d^2/ds^2) log F2 equals q(s)^2; checked at s = -6, beyond the plain
    # value cross-check window but where the Nystrom log-determinant still
    # resolves the near-unit kernel eigenvalues
    h = 0.1
    s0 = -6.0
    vals = np.array([np.log(tw.fredholm_gue_cdf(s0 + k * h, order=60))
                     for k in (-1, 0, 1)])
    second = (vals[0] - 2 * vals[1] + vals[2]) / h ** 2
    q0 = tw.hastings_mcleod_q(s0)
    assert abs(-second - q0 ** 2) < 1e-3 * q0 ** 2


def test_cdf_pdf_range_errors(gue):
    with pytest.raises(RangeError):
        gue.cdf(-11.0)
    with pytest.raises(RangeError):
        gue.pdf(7.0)
    with pytest.raises(RangeError):
        tw.hastings_mcleod_q(9.0)


def test_unknown_ensemble():
    with pytest.raises(ParameterError):
        tw.tw_table("GSE")


def test_tail_exponents(gue, goe):
    left, right = tw.tw_tail_exponents("GUE")
    assert 2.7 <= left <= 3.3
    assert 1.35 <= right <= 1.65
    left1, right1 = tw.tw_tail_exponents("GOE")
    assert 2.7 <= left1 <= 3.3
    assert 1.35 <= right1 <= 1.65
    ctl_l, ctl_r = tw.normal_tail_exponents()
    assert 1.9 <= ctl_l <= 2.1
    assert 1.9 <= ctl_r <= 2.1


def test_left_tail_stitch_is_continuous(gue):
    stitched = tw._left_tail_log_pdf("GUE", np.array([-10.0]))[0]
    assert abs(stitched - gue.log_pdf[0]) < 1e-9


def test_standardized_cdf_shape(gue):
    z = np.linspace(-3.0, 3.0, 13)
    vals = gue.standardized_cdf(z)
    assert np.all(np.diff(vals) > 0)
    assert vals[0] < 0.05 and vals[-1] > 0.95
