from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import naive
from spectra.factors import FactorIndex
from spectra.spectrum import (
    appearance_bound,
    build_poset,
    canonical_root,
    class_from_index,
    class_from_root,
    class_leq,
    is_primitive,
    least_rotation,
    longest_chain,
    minimal_and_maximal,
    periodic_factors,
    periodic_spectrum,
    primitive_root,
    proper_union_check,
    recurrence_flags,
    slope_window,
)
from spectra.words import PeriodicSpec, SpecError

H = 30


@given(st.text(alphabet="ab", min_size=1, max_size=12))
def test_primitive_root_properties(u):
    root = primitive_root(u)
    assert is_primitive(root)
    assert len(u) % len(root) == 0
    assert root * (len(u) // len(root)) == u


@given(st.text(alphabet="abc", min_size=1, max_size=10))
def test_least_rotation_is_least(u):
    rot = least_rotation(u)
    all_rots = {u[i:] + u[:i] for i in range(len(u))}
    assert rot == min(all_rots)
    assert canonical_root(u) == least_rotation(primitive_root(u))


def test_periodic_factors_are_rotation_windows():
    assert sorted(periodic_factors("01", 3)) == ["010", "101"]
    assert periodic_factors("0", 4) == ["0000"]
    assert periodic_factors("01", 0) == [""]


def test_spectrum_of_mixed_word():
    # long 0-blocks survive the eighth-power test, nothing else does
    idx = FactorIndex("1" + "0" * 80 + "1" + "0" * 80)
    assert periodic_spectrum(idx, max_period=4, power=8) == ["0"]


def test_spectrum_deduplicates_rotations():
    idx = FactorIndex("01" * 50)
    assert periodic_spectrum(idx, max_period=6, power=8) == ["01"]


def _per_class(name, root):
    return class_from_root(name, root, H)


def test_class_order_is_containment():
    a = _per_class("per:0", "0")
    ab = class_from_index(
        "mix", FactorIndex("0" * 40 + "1" + "0" * 40), H,
        recurrence_flags(FactorIndex("0" * 40 + "1" + "0" * 40), H))
    assert class_leq(ab, a)       # the mixed word has every 0-block
    assert not class_leq(a, ab)


def test_class_comparison_needs_matching_horizons():
    with pytest.raises(SpecError):
        class_leq(_per_class("a", "0"), class_from_root("b", "0", H + 1))


def test_periodic_flags_are_exact():
    spec = PeriodicSpec(period="0011")
    idx = FactorIndex("0011" * 30)
    flags = recurrence_flags(idx, H, spec=spec)
    assert flags.periodic.value and flags.periodic.guarantee == "exact"
    assert flags.uniformly_recurrent.value


def test_lone_letter_blocks_recurrence():
    idx = FactorIndex("00100000000000000000000000000000")
    flags = recurrence_flags(idx, 8)
    assert not flags.recurrent.value
    assert not flags.uniformly_recurrent.value


@given(st.text(alphabet="01", min_size=4, max_size=60))
def test_appearance_bound_matches_naive(w):
    probes = sorted({w[i:i + 2] for i in range(len(w) - 1)})
    for u in probes:
        assert appearance_bound(w, u) == naive.appearance_scale(w, u)


def test_build_poset_rejects_non_recurrent_candidates():
    root = _per_class("per:0", "0")
    w = "00100000000000000000000000000000000000000"
    idx = FactorIndex(w)
    bad = class_from_index("bad", idx, H, recurrence_flags(idx, H))
    with pytest.raises(SpecError):
        build_poset(root, [bad])


def test_poset_merges_equivalent_classes():
    root = _per_class("per:0", "0")
    twin = _per_class("zeros", "0")
    poset = build_poset(root, [twin])
    assert [nd.name for nd in poset.nodes] == ["per:0"]
    assert poset.nodes[0].aliases == ("zeros",)


def test_two_periodic_points_are_incomparable():
    # the root word carries both block families but is not recurrent
    # itself, so the spectrum holds exactly the two periodic classes
    w = "0" * 40 + "1" * 40
    idx = FactorIndex(w)
    root = class_from_index("blocks", idx, H, recurrence_flags(idx, H))
    assert not root.recurrent
    poset = build_poset(root, [_per_class("per:0", "0"),
                               _per_class("per:1", "1")])
    assert [nd.name for nd in poset.nodes] == ["per:0", "per:1"]
    assert poset.minimal() == ["per:0", "per:1"]
    assert poset.maximal() == ["per:0", "per:1"]
    assert longest_chain(poset).chain in (("per:0",), ("per:1",))
    report = minimal_and_maximal(poset)
    assert report.ok


def test_chain_poset_reports(corpus):
    from spectra.checks import build_bundle
    bundle = build_bundle(corpus, "chain")
    assert [nd.name for nd in bundle.poset.nodes] == ["chain", "per:0"]
    assert bundle.poset.leq("chain", "per:0")
    assert bundle.chain.chain == ("chain", "per:0")
    assert bundle.minmax.minimal == ("chain",)
    assert bundle.minmax.maximal == ("per:0",)
    assert bundle.union.applied and bundle.union.witness == "1"
    assert bundle.bounds.ok
    assert bundle.bounds.c_star == Fraction(257, 81)
    assert bundle.bounds.d_star == 4


def test_candidate_outside_the_family_is_dropped():
    poset = build_poset(_per_class("per:0", "0"), [_per_class("per:1", "1")])
    assert [nd.name for nd in poset.nodes] == ["per:0"]


def test_union_check_skips_missing_root():
    poset = build_poset(_per_class("per:0", "0"), [])
    report = proper_union_check(poset, "absent")
    assert not report.applied
    assert report.ok


def test_slope_window_brackets():
    assert slope_window(100) == (50, 100)
    assert slope_window(7) == (4, 7)
    assert slope_window(1) == (1, 1)


def test_gated_inequality_sits_out_for_periodic_roots(corpus):
    from spectra.checks import build_bundle
    bundle = build_bundle(corpus, "periodic01")
    by_id = {c.check_id: c for c in bundle.bounds.checks}
    gated = by_id["per_count_vs_slope"]
    assert not gated.applied
    assert gated.ok


def test_gated_inequality_applies_for_chain(corpus):
    from spectra.checks import build_bundle
    bundle = build_bundle(corpus, "chain")
    by_id = {c.check_id: c for c in bundle.bounds.checks}
    assert by_id["per_count_vs_slope"].applied
