import warnings
from random import Random

import pytest

from spectra.checks import build_bundle
from spectra.radical import ComplementSet
from spectra.spectrum import build_poset, class_from_root
from spectra.topology import (
    ClosedSpec,
    axiom_check,
    closed_set,
    closure_and_points,
    extensional_spec,
    order_reversing_check,
    principal_open,
    sample_closed_specs,
    sublevel_closed_check,
    up_set,
    urec_density_check,
)
from spectra.words import SpecError

H = 30


@pytest.fixture(scope="module")
def chain_bundle(corpus):
    return build_bundle(corpus, "chain")


def test_closed_spec_validation():
    with pytest.raises(SpecError):
        ClosedSpec("avoiding", ("",), 0, "bad").validate()
    with pytest.raises(SpecError):
        ClosedSpec("upward", ("0",), 0, "bad").validate()
    # extensional families must be closed under subwords
    with pytest.raises(SpecError):
        extensional_spec("gap", {2: ["01"]}, bound=2)
    spec = extensional_spec("ok", {1: ["0", "1"], 2: ["01"]}, bound=2)
    spec.validate()


def test_avoiding_sets_on_chain(chain_bundle):
    poset = chain_bundle.poset
    assert closed_set(poset, ClosedSpec("avoiding", ("1",), 0, "no-ones")) \
        == frozenset({"per:0"})
    assert closed_set(poset, ClosedSpec("avoiding", (), 0, "full")) \
        == frozenset({"chain", "per:0"})
    assert closed_set(poset, ClosedSpec("avoiding", ("0", "1"), 0, "none")) \
        == frozenset()


def test_principal_opens_reverse_containment(chain_bundle):
    poset = chain_bundle.poset
    assert principal_open(poset, "1") == frozenset({"chain"})
    assert principal_open(poset, "0") == frozenset({"chain", "per:0"})
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        empty = principal_open(poset, "11")
    assert empty == frozenset()
    assert caught and "open" in str(caught[0].message)


def test_up_sets_are_closures(chain_bundle):
    poset = chain_bundle.poset
    assert up_set(poset, "chain") == frozenset({"chain", "per:0"})
    assert up_set(poset, "per:0") == frozenset({"per:0"})
    pts = closure_and_points(poset)
    assert pts.dense == ("chain",)
    assert pts.closed_points == ("per:0",)


def test_axioms_hold_on_sampled_sets(chain_bundle):
    specs = sample_closed_specs(chain_bundle.poset, Random(7))
    report = axiom_check(chain_bundle.poset, specs)
    assert report.ok, report.failures


def test_order_and_sublevel_checks(chain_bundle):
    assert order_reversing_check(chain_bundle.poset).ok
    assert sublevel_closed_check(chain_bundle.poset).ok


def test_density_matches_uniform_recurrence(chain_bundle):
    report = urec_density_check(chain_bundle.poset, chain_bundle.complement)
    assert report.ok, report.failures


def test_density_flags_wrong_essential_set():
    root = class_from_root("per:01", "01", H)
    poset = build_poset(root, [])
    wrong = ComplementSet(bound=1, words=("0",), in_radical=("1",),
                          unresolved=(), approximate=True)
    report = urec_density_check(poset, wrong)
    assert not report.ok


def test_density_reports_unresolved_words():
    root = class_from_root("per:0", "0", H)
    poset = build_poset(root, [])
    undecided = ComplementSet(bound=1, words=("0",), in_radical=(),
                              unresolved=("0",), approximate=True)
    report = urec_density_check(poset, undecided)
    assert not report.ok
    assert any("unresolved" in f for f in report.failures)


def test_density_survives_non_closed_essential_set():
    root = class_from_root("per:0", "0", H)
    poset = build_poset(root, [])
    # "00" without "0" is not factor-closed; must fail, not crash
    broken = ComplementSet(bound=2, words=("00",), in_radical=(),
                           unresolved=(), approximate=True)
    report = urec_density_check(poset, broken)
    assert not report.ok
    assert any("not usable" in f for f in report.failures)
