import pytest
from hypothesis import given
from hypothesis import strategies as st

import naive
from spectra.radical import (
    IN,
    INCONCLUSIVE,
    NOT_IN,
    classify_radical,
    occurrences,
    radical_complement,
    saturated_assembly_bound,
)
from spectra.words import SpecError, generate_prefix


def fib_prefix(n):
    w = "0"
    while len(w) < n:
        w = "".join({"0": "01", "1": "0"}[c] for c in w)
    return w[:n]


def tm_prefix(n):
    return "".join("01"[bin(i).count("1") & 1] for i in range(n))


def test_occurrences_overlap():
    assert occurrences("aaaa", "aa") == [0, 1, 2]
    assert occurrences("abab", "c") == []


def test_letters_are_never_negligible_in_fibonacci():
    w = fib_prefix(1024)
    for z, at in (("0", 2), ("1", 3), ("01", 4)):
        v = classify_radical(w, z)
        assert v.kind == NOT_IN
        assert v.failing_n == at
        assert v.evidence is not None


def test_negligible_pattern_in_block_word(corpus):
    w = generate_prefix(corpus.words["radical_example"].spec, 4096)
    v = classify_radical(w, "y")
    assert v.kind == IN
    assert v.generators
    # every generator is an x-run, and together they absorb long factors
    assert all(set(g) == {"x"} for g in v.generators)
    lone = classify_radical(w, "xyx")
    assert lone.kind == IN


def test_missing_pattern_is_trivially_negligible():
    v = classify_radical("01" * 200, "2")
    assert v.kind == IN
    assert "never occurs" in v.note


def test_tiny_word_is_inconclusive():
    v = classify_radical("0110", "0", n_slack=16)
    assert v.kind == INCONCLUSIVE


def test_scale_table_matches_naive_scan():
    w = tm_prefix(288)
    for z in ("0", "10", "110"):
        v = classify_radical(w, z, n_slack=4)
        for n, scale in v.table:
            assert scale == naive.min_uniform_scale(w, z, n)


def test_verdicts_reject_empty_inputs():
    with pytest.raises(SpecError):
        classify_radical("", "0")
    with pytest.raises(SpecError):
        classify_radical("0101", "")


@given(st.text(alphabet="01", min_size=1, max_size=3),
       st.integers(min_value=0, max_value=5))
def test_periodic_words_have_empty_radical(period, shift):
    w = (period * 80)[shift:shift + 64]
    z = w[:2] if len(w) >= 2 else w[:1]
    v = classify_radical(w, z, n_slack=3)
    assert v.kind == NOT_IN


def test_assembly_bound_without_pattern():
    # no window of length 3 contains "2", so nothing assembles
    assert saturated_assembly_bound("0101010101", "2", 3) == 2


def test_assembly_cycle_is_unbounded():
    # every length-2 window contains "0", and they chain into cycles
    assert saturated_assembly_bound("0" * 60, "0", 2) is None


def test_assembly_bound_finite_case():
    # "1"-bearing windows of a lone "1" cannot chain indefinitely
    w = "0" * 30 + "1" + "0" * 30
    bound = saturated_assembly_bound(w, "1", 4)
    assert bound is not None
    assert bound >= 4


def test_complement_split_for_fibonacci():
    w = fib_prefix(1024)
    cs = radical_complement(w, 3)
    assert cs.in_radical == ()
    assert cs.unresolved == ()
    assert set(cs.words) == {f for n in (1, 2, 3)
                             for f in naive.factor_set(w, n)}


def test_complement_split_for_block_word(corpus):
    w = generate_prefix(corpus.words["radical_example"].spec, 4096)
    cs = radical_complement(w, 2)
    assert set(cs.words) == {"x", "xx"}
    assert set(cs.in_radical) == {"y", "xy", "yx"}
    assert cs.unresolved == ()


def test_verdict_serialization_is_plain_data():
    import json
    v = classify_radical(fib_prefix(512), "0")
    payload = json.loads(json.dumps(v.to_dict()))
    assert payload["kind"] == NOT_IN
    assert payload["z"] == "0"
    assert payload["scale"] == "bounded"
