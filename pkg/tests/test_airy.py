import math

import numpy as np
import pytest
import scipy.special

from kpzlab.airy import SERIES_CUTOFF, _ai_unchecked, _asym_neg_pair, _asym_pos_pair, \
    _series_pair, airy_ai
from kpzlab.errors import RangeError


def test_ai_at_zero():
    ai, aip = airy_ai(0.0)
    assert abs(ai - 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)) < 1e-14
    assert abs(aip + 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)) < 1e-14
    assert abs(ai - 0.3550280539) < 1e-9


def test_airy_equation_residual_by_finite_differences():
    # five-point second derivative; |Ai'' - x Ai| must stay below 1e-8
    h = 0.01
    for x in (-5.0, -1.3, 0.0, 0.7, 2.0, 5.5):
        vals = airy_ai(np.array([x - 2 * h, x - h, x, x + h, x + 2 * h]))[0]
        second = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
        assert abs(second - x * vals[2]) < 1e-8


def test_against_scipy_on_window():
    x = np.linspace(-20.0, 20.0, 2001)
    ai, aip = airy_ai(x)
    ref_ai, ref_aip, _, _ = scipy.special.airy(x)
    assert np.max(np.abs(ai - ref_ai)) < 1e-10
    assert np.max(np.abs(aip - ref_aip)) < 1e-10


def test_positive_and_decreasing_on_0_10():
    x = np.linspace(0.0, 10.0, 401)
    ai, _ = airy_ai(x)
    assert np.all(ai > 0.0)
    assert np.all(np.diff(ai) < 0.0)


def test_series_asymptotic_overlap():
    xo = np.linspace(SERIES_CUTOFF - 0.5, SERIES_CUTOFF + 0.5, 51)
    a1, b1 = _series_pair(xo)
    a2, b2 = _asym_pos_pair(xo)
    assert np.max(np.abs(a1 - a2)) <= 1e-11
    assert np.max(np.abs(b1 - b2)) <= 1e-11
    a1, b1 = _series_pair(-xo)
    a2, b2 = _asym_neg_pair(-xo)
    assert np.max(np.abs(a1 - a2)) <= 1e-11
    assert np.max(np.abs(b1 - b2)) <= 1e-11


def test_window_enforced():
    with pytest.raises(RangeError):
        airy_ai(20.5)
    with pytest.raises(RangeError):
        airy_ai(np.array([0.0, -25.0]))


def test_internal_evaluation_beyond_window():
    x = np.array([25.0, 40.0, 80.0])
    ai, _ = _ai_unchecked(x)
    ref = scipy.special.airy(x)[0]
    assert np.max(np.abs(ai / ref - 1.0)) < 1e-12
