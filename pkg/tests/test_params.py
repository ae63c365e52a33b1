from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symblob.exact import ConfigError, RootSpec, box
from symblob.params import (
    DN, BLabel, ParameterError, Std, WeightParams, all_labels, b_of_theta, dn_labels,
    label_convert, line_pattern, scheme_convert, standard_labels, weight_coords,
)

ns = st.integers(1, 9)


@given(ns)
def test_label_count_matches_lambda(n):
    assert len(all_labels(n)) == 2 * n == len(standard_labels(n))


@given(ns)
def test_label_convert_is_a_bijection(n):
    images = {label_convert(L) for L in all_labels(n)}
    assert images == set(standard_labels(n))
    for s in standard_labels(n):
        assert label_convert(label_convert(s)) == s


def test_label_convert_examples():
    assert label_convert(BLabel(4)) == Std(4, 0)
    assert label_convert(DN(5, 2, -1, -1)) == Std(5, 1)
    assert label_convert(DN(5, 2, 1, 1)) == Std(5, -3)
    assert label_convert(DN(4, 1, 1, -1)) == Std(4, -1)


@pytest.mark.parametrize("bad", [(3, 1, 1, 1), (3, 0, -1, 1), (4, 1, -1, -1), (3, 3, 1, 1), (3, 0, 1, 2)])
def test_invalid_dn_labels(bad):
    with pytest.raises(ParameterError):
        DN(*bad)


def test_std_range():
    with pytest.raises(ParameterError):
        Std(3, 3)


def test_dn_scheme_values(generic):
    t = scheme_convert(generic, "DN")
    D = generic.D
    assert t.d == box(2, 0, D)
    assert t.dL == box(generic.w1, 0, D) / box(generic.w1, 1, D)
    assert t.kL == t.kR == 1


def test_schemes_related_by_rescaling():
    p = WeightParams(Fraction(1, 3), Fraction(2, 5), theta=Fraction(1, 7))
    for n in (3, 4):
        dn = scheme_convert(p, "DN", n)
        g1 = scheme_convert(p, "GMP1", n)
        assert dn == g1.rescale1()
        assert scheme_convert(p, "GMP2", n) == g1.rescale2()
        assert g1.kLR == b_of_theta(n, p.w1, p.w2, p.theta, p.D)


def test_b_parity_forms():
    w1, w2, th = Fraction(1, 3), Fraction(2, 5), Fraction(1, 7)
    D = 420
    even = box((w1 + w2 + th + 1) / 2, 0, D) * box((w1 + w2 - th + 1) / 2, 0, D)
    assert b_of_theta(2, w1, w2, th, D) == even
    assert b_of_theta(3, w1, w2, w1 - w2, D).is_zero()


def test_D_includes_halves_only_with_theta():
    p = WeightParams(Fraction(1, 3), Fraction(2, 5))
    assert p.D == 30
    assert p.with_(theta=Fraction(1, 7)).D == 210


def test_dn_rejects_vanishing_denominator():
    p = WeightParams(2, Fraction(1, 2), spec=RootSpec.root(3))
    with pytest.raises(ParameterError):
        scheme_convert(p, "DN")
    assert p.guards["[w1+1]"]


def test_unknown_scheme():
    with pytest.raises(ConfigError):
        WeightParams(1, 1, scheme="XYZ")


@given(ns)
def test_line_patterns(n):
    for L in dn_labels(n):
        words = line_pattern(L)
        assert words.count("") == L.m + (L.e1 + L.e2) // 2
        assert ("L" in words) == (L.e1 == -1)
        assert ("R" in words) == (L.e2 == -1)
        assert (len(words) - n) % 2 == 0
    assert line_pattern(BLabel(n)) is None


def test_weight_coords():
    assert weight_coords(DN(5, 2, -1, -1), Fraction(1, 3), Fraction(2, 5)) == \
        (-(2 + Fraction(1, 3) + Fraction(2, 5)), -(2 + Fraction(1, 3) + Fraction(2, 5)))
