"""Counting bounds: element counts, fingerprint counts, ratio divergence."""

import itertools
import math

import pytest

from walkfp.bounds import (
    distinct_edge_pattern_count,
    evolution_operator_element_count,
    fingerprint_count,
    latin_square_srg_lower_bound_log,
    log_z_upper,
    ratio_lower_bound_log,
    widget_class_count_bounds,
)


def test_element_count():
    # p=3, N=16: C(18,3)^2 = 816^2
    assert evolution_operator_element_count(3, 16) == 816 ** 2
    assert evolution_operator_element_count(1, 5) == 25
    with pytest.raises(ValueError):
        evolution_operator_element_count(0, 5)


def test_fingerprint_count_small():
    # multisets of y=3 elements over x_p=2 values: {aaa, aab, abb, bbb}
    assert fingerprint_count(2, 3) == 4
    # oracle: direct enumeration
    for x_p, y in [(2, 3), (3, 4), (4, 2)]:
        direct = len(set(
            tuple(sorted(c))
            for c in itertools.combinations_with_replacement(range(x_p), y)
        ))
        assert fingerprint_count(x_p, y) == direct


def test_fingerprint_count_overflow_guard():
    with pytest.raises(OverflowError):
        fingerprint_count(10 ** 8, 10 ** 8)


def test_latin_square_bound_closed_form():
    # [DERIVED] direct evaluation at N=25: log((1/6) * 120^7 * 25^(-12.5))
    expected = math.log(120 ** 7 / 6) - 12.5 * math.log(25)
    assert latin_square_srg_lower_bound_log(25) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        latin_square_srg_lower_bound_log(24)
    with pytest.raises(ValueError):
        latin_square_srg_lower_bound_log(1)


def test_widget_class_count_lower_bounds():
    # ceil(2^(p^2) / (2 p!^2)): p=2 -> ceil(16/8)=2, p=3 -> ceil(512/72)=8
    assert widget_class_count_bounds(2)[0] == 2
    assert widget_class_count_bounds(3)[0] == 8
    lower, log2_upper = widget_class_count_bounds(4)
    assert lower <= 2 ** log2_upper


@pytest.mark.parametrize("p", [1, 2, 3])
def test_orbit_count_methods_agree(p):
    assert (distinct_edge_pattern_count(p, "burnside")
            == distinct_edge_pattern_count(p, "canonical"))


def test_orbit_count_methods_agree_p4():
    assert (distinct_edge_pattern_count(4, "burnside")
            == distinct_edge_pattern_count(4, "canonical"))


def test_orbit_count_small_values():
    # [DERIVED] brute-force orbit enumeration for p <= 2
    assert distinct_edge_pattern_count(1) == 2
    seen = set()
    orbits = 0
    for bits in range(16):
        if bits in seen:
            continue
        orbits += 1
        m = [[bits >> (2 * i + j) & 1 for j in range(2)] for i in range(2)]
        for sigma in itertools.permutations(range(2)):
            for tau in itertools.permutations(range(2)):
                for mat in (m, list(map(list, zip(*m)))):
                    code = 0
                    for i in range(2):
                        for j in range(2):
                            code |= mat[sigma[i]][tau[j]] << (2 * i + j)
                    seen.add(code)
    assert distinct_edge_pattern_count(2) == orbits


def test_ratio_bound_report():
    r = ratio_lower_bound_log(3, 10 ** 4)
    assert r.x_p_is_lower_bound and r.x_p_used == 8
    assert r.log_r_lower == pytest.approx(r.log_s_lower - r.log_z_upper)
    explicit = ratio_lower_bound_log(3, 10 ** 4, x_p=8)
    assert not explicit.x_p_is_lower_bound
    assert explicit.log_r_lower == r.log_r_lower
    d = r.as_dict()
    assert d["log_Z_upper"] == pytest.approx(log_z_upper(3, 10 ** 4, 8))


def test_ratio_bound_grows():
    prev = None
    for m in range(40, 100, 10):
        val = ratio_lower_bound_log(3, m * m).log_r_lower
        if prev is not None:
            assert val > prev
        prev = val
