import pytest
from hypothesis import given
from hypothesis import strategies as st

import naive
from spectra.factors import CapExceeded, FactorIndex
from spectra.words import Horizon, SpecError, STABILIZED

words_01 = st.text(alphabet="01", min_size=1, max_size=120)
words_abc = st.text(alphabet="abc", min_size=1, max_size=90)


@given(words_01)
def test_complexity_matches_window_counts(w):
    idx = FactorIndex(w)
    for n in range(len(w) + 1):
        assert idx.complexity(n) == naive.complexity(w, n)


@given(words_abc)
def test_factor_listing_is_sorted_and_complete(w):
    idx = FactorIndex(w)
    for n in range(1, min(len(w), 8) + 1):
        assert idx.factors_of_length(n) == naive.factors_sorted(w, n)


@given(words_01)
def test_membership_agrees_with_substring_search(w):
    idx = FactorIndex(w)
    probes = {w[i:i + k] for i in range(len(w)) for k in (1, 2, 3)}
    probes |= {"0", "1", "01", "10", "000", "111", "0101"}
    for u in probes:
        assert idx.is_factor(u) == (u in w)


@given(words_01)
def test_end_spread_matches_scan(w):
    idx = FactorIndex(w)
    probes = {w[i:i + k] for i in range(len(w)) for k in (1, 2, 4)}
    for u in sorted(probes):
        if not u:
            continue
        assert idx.occurrence_spread(u) == naive.end_spread(w, u)


@given(words_abc)
def test_containment_counts_match(w):
    idx = FactorIndex(w)
    us = sorted({w[i:i + 2] for i in range(len(w) - 1)})[:4]
    for u in us:
        for n in (2, 3, 5):
            if n > len(w):
                continue
            assert idx.count_containing(u, n) == naive.count_containing(w, u, n)


def test_profile_of_thue_morse_prefix():
    w = "".join("01"[bin(i).count("1") & 1] for i in range(1024))
    idx = FactorIndex(w)
    assert idx.complexity_profile(8) == [1, 2, 4, 6, 10, 12, 16, 20, 22]


def test_right_special_factors():
    idx = FactorIndex("01001010010010100101001001010010")
    # in this window both 0 and 1 extend "010" while "110" never occurs
    assert "010" in idx.right_special(3)
    assert "110" not in idx.right_special(3)


def test_horizon_gates_long_queries():
    hz = Horizon(n_max=5, guarantee=STABILIZED, prefix_len=64)
    idx = FactorIndex("0110100110010110" * 4, horizon=hz)
    assert idx.complexity(5) > 0
    with pytest.raises(SpecError):
        idx.complexity(6)
    with pytest.raises(SpecError):
        idx.factors_of_length(9)


def test_enumeration_cap_trips():
    idx = FactorIndex("01101001" * 16, enumeration_cap=3)
    with pytest.raises(CapExceeded):
        idx.factors_of_length(4)


def test_non_recurring_factor_finds_lone_pattern():
    # "2" appears once, so the shortest witness is "2" itself
    idx = FactorIndex("010101012010101010101")
    assert idx.non_recurring_factor(6) == "2"


def test_non_recurring_factor_none_for_tiling():
    idx = FactorIndex("01" * 40)
    assert idx.non_recurring_factor(4) is None


def test_empty_factor_conventions():
    idx = FactorIndex("0101")
    assert idx.complexity(0) == 1
    assert idx.is_factor("")
    assert idx.occurrence_spread("") is None
