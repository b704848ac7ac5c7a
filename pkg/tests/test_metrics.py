from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import layered_forms
from nestcan.dyadic import DyadicRational
from nestcan.errors import BadLayer, InvalidProfile, OutOfScope, TooLarge
from nestcan.metrics import (
    activity_formula, activity_numerators, conjectured_max, iter_profiles, lemma_profiles, lemma_value,
    max_sensitivity_bruteforce, max_sensitivity_scan, report, scan_report,
    sensitivity_bounds, sensitivity_formula, weight_formula,
)
from nestcan.ncf import LayerProfile, construct_ncf
from nestcan.truthtable import activity_bruteforce, average_sensitivity_bruteforce, hamming_weight

profiles = st.integers(2, 12).flatmap(lambda n: st.sampled_from(list(iter_profiles(n))))


def F(a, b):
    return Fraction(a, b)


class TestWeight:
    def test_examples(self):
        assert weight_formula((3,), 1) == 7
        assert weight_formula((1, 2), 1) == 5
        assert weight_formula((1, 2), 0) == 3

    @given(layered_forms(2, 9))
    def test_matches_table(self, form):
        assert weight_formula(form.profile, form.b) == hamming_weight(construct_ncf(form))

    def test_bad_profile(self):
        with pytest.raises(InvalidProfile):
            weight_formula((2, 1), 0)
        with pytest.raises(InvalidProfile):
            weight_formula(7, 0)


class TestActivity:
    def test_examples(self):
        assert activity_formula((1, 2), 1) == F(3, 4)
        assert activity_formula((1, 2), 2) == F(1, 4)
        assert activity_formula((5,), 1) == F(1, 16)

    def test_bad_layer(self):
        with pytest.raises(BadLayer):
            activity_formula((1, 2), 3)
        with pytest.raises(BadLayer):
            activity_formula((1, 2), 0)

    @given(layered_forms(2, 8))
    def test_matches_bruteforce(self, form):
        tt = construct_ncf(form)
        for l, layer in enumerate(form.layers, start=1):
            expected = activity_formula(form.profile, l)
            for v, _ in layer:
                assert activity_bruteforce(tt, v) == expected

    @given(profiles)
    def test_numerators_match_formula(self, p):
        nums = activity_numerators(p)
        assert [DyadicRational(x, p.n - 1) for x in nums] == [
            activity_formula(p, l) for l in range(1, p.r + 1)]

    @given(profiles)
    def test_decreasing_across_layers(self, p):
        acts = [activity_formula(p, l) for l in range(1, p.r + 1)]
        assert all(a > b for a, b in zip(acts, acts[1:]))


class TestSensitivity:
    def test_examples(self):
        assert sensitivity_formula((1, 2)) == F(5, 4)
        assert sensitivity_formula((3,)) == F(3, 4)
        assert sensitivity_formula((1, 2, 1, 2)) == F(21, 16)
        assert str(sensitivity_formula((1, 2, 1, 2))) == "21/16"

    @pytest.mark.parametrize("n", range(2, 12))
    def test_single_layer(self, n):
        assert sensitivity_formula((n,)) == F(n, 2 ** (n - 1))

    @given(layered_forms(2, 8))
    def test_matches_bruteforce(self, form):
        tt = construct_ncf(form)
        assert average_sensitivity_bruteforce(tt) == sensitivity_formula(form.profile)

    @given(profiles)
    def test_is_sum_of_activities(self, p):
        total = sum((k * activity_formula(p, l).as_fraction() for l, k in enumerate(p.ks, 1)),
                    Fraction(0))
        assert sensitivity_formula(p) == total

    def test_bounds(self):
        assert sensitivity_bounds(3) == (F(3, 4), F(3, 2))
        assert sensitivity_bounds(4) == (F(1, 2), F(7, 4))
        lo, hi = sensitivity_bounds(10)
        assert lo == F(10, 512) and hi == F(511, 256)
        for n in (0, 1, 2):
            with pytest.raises(OutOfScope):
                sensitivity_bounds(n)

    def test_report_json(self):
        rep = report((1, 2))
        assert rep.to_json() == {
            "profile": [1, 2],
            "per_layer_activity": [
                {"num": 3, "log2_den": 2, "decimal": "0.750000"},
                {"num": 1, "log2_den": 2, "decimal": "0.250000"},
            ],
            "average_sensitivity": {"num": 5, "log2_den": 2, "decimal": "1.250000"},
            "weight_b0": 3,
            "weight_b1": 5,
        }


class TestProfiles:
    def test_small(self):
        assert [p.ks for p in iter_profiles(4)] == [(1, 1, 2), (1, 3), (2, 2), (4,)]
        assert [p.ks for p in iter_profiles(5, 2)] == [(1, 4), (2, 3), (3, 2)]

    @pytest.mark.parametrize("n", range(2, 16))
    def test_count(self, n):
        assert len(list(iter_profiles(n))) == 2 ** (n - 2)


class TestScan:
    def test_n4(self):
        best, arg = max_sensitivity_scan(4)
        assert best == F(5, 4)
        assert [p.ks for p in arg] == [(1, 1, 2), (1, 3)]

    def test_n5(self):
        best, arg = max_sensitivity_scan(5)
        assert best == F(21, 16)
        assert LayerProfile((1, 1, 1, 2)) in arg

    def test_n6_ties(self):
        best, arg = max_sensitivity_scan(6)
        assert best == F(21, 16)
        for ks in [(1, 1, 1, 1, 2), (1, 1, 1, 3), (1, 2, 3), (1, 2, 1, 2)]:
            assert LayerProfile(ks) in arg

    def test_range(self):
        for n in (2, 31):
            with pytest.raises(TooLarge):
                max_sensitivity_scan(n)

    @pytest.mark.parametrize("n", range(3, 17))
    def test_dp_matches_bruteforce(self, n):
        assert max_sensitivity_scan(n) == max_sensitivity_bruteforce(n)

    @pytest.mark.parametrize("n", range(3, 31))
    def test_conjecture(self, n):
        assert max_sensitivity_scan(n)[0] == conjectured_max(n)

    @pytest.mark.parametrize("n", range(3, 25))
    def test_number_of_maximisers(self, n):
        assert len(max_sensitivity_scan(n)[1]) == max(1, 2 ** (n // 2 - 1))

    def test_lemma_profiles(self):
        assert [p.ks for p, _ in lemma_profiles(3)] == [(1, 2)]
        assert [p.ks for p, _ in lemma_profiles(4)] == [(1, 1, 2), (1, 3)]
        assert [p.ks for p, _ in lemma_profiles(6)] == [(1, 1, 1, 1, 2), (1, 1, 1, 3), (1, 2, 3)]
        assert [p.ks for p, _ in lemma_profiles(7)] == [(1, 1, 1, 1, 1, 2), (1, 1, 1, 1, 3)]

    @pytest.mark.parametrize("n", range(3, 21))
    def test_lemma_values(self, n):
        for p, value in lemma_profiles(n):
            assert sensitivity_formula(p) == value

    def test_lemma_value_bad_item(self):
        with pytest.raises(ValueError):
            lemma_value(5, 4)

    def test_report(self):
        rep = scan_report(4, strict=True)
        assert rep["matches_conjecture"] and rep["argmax"] == [[1, 1, 2], [1, 3]]
        assert rep["max"] == {"num": 5, "log2_den": 2, "decimal": "1.250000"}

    def test_values_are_dyadic(self):
        assert isinstance(max_sensitivity_scan(8)[0], DyadicRational)
