"""End-to-end verification over the bundled corpus.

Each corpus word is expanded into a bundle: a faithful prefix, its factor
index, recurrence verdicts, the materialized poset with its reports, the
negligibility scans, and the topology checks. The twelve criteria below
compare those bundles against the manifest's pinned values and against
independent reconstructions. `run_verification` evaluates all of them and
is what both the CLI and the acceptance tests call.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import asdict, dataclass, field
from random import Random

from .corpus import Corpus, WordEntry, load_corpus
from .factors import FactorIndex
from .radical import ComplementSet, RadicalVerdict, classify_radical, radical_complement
from .spectrum import (
    BoundsReport,
    ChainReport,
    MinMaxReport,
    Poset,
    RecurrenceFlags,
    SpectrumClass,
    UnionWitness,
    bounds_report,
    build_poset,
    class_from_index,
    class_from_root,
    longest_chain,
    minimal_and_maximal,
    periodic_spectrum,
    proper_union_check,
    recurrence_flags,
)
from .topology import (
    CheckReport,
    axiom_check,
    closure_and_points,
    order_reversing_check,
    sample_closed_specs,
    sublevel_closed_check,
    urec_density_check,
)
from .words import Horizon, generate_prefix, horizon_for

CRITERIA = (
    "oracle-equivalence",
    "profile-identity",
    "complexity-dichotomy",
    "separator-radical",
    "containment-floor",
    "periodic-spectra",
    "bound-suite",
    "topology-axioms",
    "continuity-suite",
    "density-suite",
    "union-witness",
    "determinism",
)


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


@dataclass
class WordBundle:
    name: str
    entry: WordEntry
    horizon: Horizon
    prefix: str
    index: FactorIndex
    flags: RecurrenceFlags
    profile: list[int]
    spectrum: list[str]
    poset: Poset
    minmax: MinMaxReport
    chain: ChainReport
    union: UnionWitness
    bounds: BoundsReport
    radical_prefix: str
    verdicts: dict[str, RadicalVerdict]
    complement: ComplementSet
    topo_axioms: CheckReport
    topo_order: CheckReport
    topo_sublevel: CheckReport
    topo_density: CheckReport
    points: object


def _word_rng(corpus: Corpus, name: str) -> Random:
    return Random(corpus.seed ^ zlib.crc32(name.encode()))


def _root_class(corpus: Corpus, name: str) -> tuple[SpectrumClass, RecurrenceFlags]:
    entry = corpus.words[name]
    horizon = horizon_for(entry.spec, corpus.h)
    prefix = generate_prefix(entry.spec, horizon.prefix_len)
    index = FactorIndex(prefix, horizon=horizon)
    flags = recurrence_flags(index, corpus.h, spec=entry.spec,
                             ur_scan_len=corpus.defaults["ur_scan_len"])
    return class_from_index(name, index, corpus.h, flags), flags


def build_bundle(corpus: Corpus, name: str) -> WordBundle:
    entry = corpus.words[name]
    h = corpus.h
    horizon = horizon_for(entry.spec, h)
    prefix = generate_prefix(entry.spec, horizon.prefix_len)
    index = FactorIndex(prefix, horizon=horizon)
    flags = recurrence_flags(index, h, spec=entry.spec,
                             ur_scan_len=corpus.defaults["ur_scan_len"])
    profile = index.complexity_profile(h)
    root = class_from_index(name, index, h, flags)

    spectrum = periodic_spectrum(index,
                                 max_period=corpus.defaults["max_period"],
                                 power=corpus.defaults["power"])
    others = [class_from_root(f"per:{r}", r, h) for r in spectrum]
    for cand in entry.candidates:
        if cand == name:
            continue
        cls, _ = _root_class(corpus, cand)
        others.append(cls)

    poset = build_poset(root, others)
    minmax = minimal_and_maximal(poset)
    chain = longest_chain(poset)
    union = proper_union_check(poset, name)
    bounds = bounds_report(name, profile, h, poset, flags)

    job = entry.radical
    radical_prefix = generate_prefix(entry.spec, job.prefix)
    verdicts = {z: classify_radical(radical_prefix, z, n_slack=job.n_slack)
                for z in sorted(job.targets)}
    complement = radical_complement(radical_prefix, job.complement_bound,
                                    n_slack=job.n_slack)

    rng = _word_rng(corpus, name)
    specs = sample_closed_specs(poset, rng)
    return WordBundle(
        name=name,
        entry=entry,
        horizon=horizon,
        prefix=prefix,
        index=index,
        flags=flags,
        profile=profile,
        spectrum=spectrum,
        poset=poset,
        minmax=minmax,
        chain=chain,
        union=union,
        bounds=bounds,
        radical_prefix=radical_prefix,
        verdicts=verdicts,
        complement=complement,
        topo_axioms=axiom_check(poset, specs),
        topo_order=order_reversing_check(poset),
        topo_sublevel=sublevel_closed_check(poset),
        topo_density=urec_density_check(poset, complement),
        points=closure_and_points(poset),
    )


def build_bundles(corpus: Corpus) -> dict[str, WordBundle]:
    return {name: build_bundle(corpus, name) for name in corpus.words}


def artifacts_from_bundles(bundles: dict[str, WordBundle]) -> dict:
    out = {}
    for name, b in bundles.items():
        out[name] = {
            "prefix32": b.prefix[:32],
            "horizon": asdict(b.horizon),
            "profile": b.profile,
            "flags": b.flags.to_dict(),
            "periodic_spectrum": b.spectrum,
            "poset": b.poset.to_dict(),
            "minmax": b.minmax.to_dict(),
            "chain": b.chain.to_dict(),
            "union": b.union.to_dict(),
            "bounds": b.bounds.to_dict(),
            "points": b.points.to_dict(),
            "topology": {
                "axioms": b.topo_axioms.to_dict(),
                "order": b.topo_order.to_dict(),
                "sublevel": b.topo_sublevel.to_dict(),
                "density": b.topo_density.to_dict(),
            },
            "radical": {
                "targets": {z: v.to_dict() for z, v in b.verdicts.items()},
                "complement": b.complement.to_dict(),
            },
        }
    return out


def collect_artifacts(corpus: Corpus) -> dict:
    """Everything the suite derives from the corpus, as one JSON-safe dict."""
    return artifacts_from_bundles(build_bundles(corpus))


# ---------------------------------------------------------------------------
# criteria


def _thue_morse_letter(n: int) -> str:
    return "01"[bin(n).count("1") & 1]


def _c_oracle_equivalence(corpus, bundles):
    bad = []
    for name, b in bundles.items():
        want = b.entry.expected.get("prefix32")
        if want is not None and b.prefix[:32] != want:
            bad.append(f"{name}: prefix diverges from its pinned start")
    if "thue_morse" in bundles:
        got = generate_prefix(corpus.words["thue_morse"].spec, 2048)
        via_parity = "".join(_thue_morse_letter(i) for i in range(2048))
        if got != via_parity:
            bad.append("thue_morse: substitution route disagrees with "
                       "the bit-parity route")
    if "fibonacci" in bundles and "fibonacci_sturmian" in bundles:
        a = generate_prefix(corpus.words["fibonacci"].spec, 2048)
        s = generate_prefix(corpus.words["fibonacci_sturmian"].spec, 2048)
        if a != s:
            bad.append("fibonacci: substitution route disagrees with "
                       "the slope route")
    detail = (f"{len(bundles)} pinned prefixes, 2 independent "
              f"construction routes")
    return not bad, "; ".join(bad) if bad else detail


def _c_profile_identity(corpus, bundles):
    bad = []
    points = 0
    for name, b in bundles.items():
        for key, want in sorted(b.entry.expected.get("profile", {}).items()):
            points += 1
            if b.profile[int(key)] != want:
                bad.append(f"{name}: p({key}) = {b.profile[int(key)]}, "
                           f"pinned {want}")
        if b.profile[0] != 1:
            bad.append(f"{name}: p(0) != 1")
        if any(b.profile[n + 1] < b.profile[n] for n in range(corpus.h)):
            bad.append(f"{name}: profile decreases")
        for n in (1, 7, 31):
            direct = len({b.prefix[i:i + n]
                          for i in range(len(b.prefix) - n + 1)})
            if direct != b.profile[n]:
                bad.append(f"{name}: index count and window count "
                           f"differ at n = {n}")
    detail = f"{points} pinned values, window recounts at n = 1, 7, 31"
    return not bad, "; ".join(bad) if bad else detail


def _c_complexity_dichotomy(corpus, bundles):
    bad = []
    h = corpus.h
    for name, b in bundles.items():
        want = b.entry.expected.get("flags", {})
        got = {"periodic": bool(b.flags.periodic),
               "recurrent": bool(b.flags.recurrent),
               "uniformly_recurrent": bool(b.flags.uniformly_recurrent)}
        for key, val in sorted(want.items()):
            if got[key] != val:
                bad.append(f"{name}: {key} = {got[key]}, pinned {val}")
        if got["periodic"]:
            if b.profile[h] > h:
                bad.append(f"{name}: flagged periodic but p({h}) > {h}")
        else:
            low = [n for n in range(1, h + 1) if b.profile[n] < n + 1]
            if low:
                bad.append(f"{name}: flagged aperiodic but p(n) <= n "
                           f"at n = {low[0]}")
        if got["uniformly_recurrent"] and not got["recurrent"]:
            bad.append(f"{name}: uniformly recurrent but not recurrent")
        if got["periodic"] and not got["uniformly_recurrent"]:
            bad.append(f"{name}: periodic but not uniformly recurrent")
    detail = f"flags and growth split for {len(bundles)} words"
    return not bad, "; ".join(bad) if bad else detail


def _c_separator_radical(corpus, bundles):
    bad = []
    targets = 0
    for name, b in bundles.items():
        for z, want in sorted(b.entry.radical.targets.items()):
            targets += 1
            v = b.verdicts[z]
            if v.kind != want["kind"]:
                bad.append(f"{name}/{z!r}: verdict {v.kind}, "
                           f"pinned {want['kind']}")
                continue
            if "failing_n" in want and v.failing_n != want["failing_n"]:
                bad.append(f"{name}/{z!r}: fails at n = {v.failing_n}, "
                           f"pinned {want['failing_n']}")
            if "top_scale" in want:
                top = v.table[-1][1]
                if top != want["top_scale"]:
                    bad.append(f"{name}/{z!r}: top scale {top}, "
                               f"pinned {want['top_scale']}")
    detail = f"{targets} pinned verdicts across {len(bundles)} words"
    return not bad, "; ".join(bad) if bad else detail


def _c_containment_floor(corpus, bundles):
    floor = corpus.floor
    bad = []
    checked = 0
    for name in floor.get("words", []):
        b = bundles[name]
        max_u = floor["max_u"]
        n_max = floor["n_max"]
        us = [u for fs in b.index.factors_up_to(max_u).values() for u in fs]
        for n in range(1, n_max + 1):
            fs = b.index.factors_of_length(n)
            for u in us:
                if len(u) > n:
                    continue
                checked += 1
                count = sum(1 for f in fs if u in f)
                need = n + 1 - len(u)
                if count < need:
                    bad.append(f"{name}: {count} length-{n} factors "
                               f"contain {u!r}, need {need}")
    for pin in floor.get("pinned", []):
        b = bundles[pin["word"]]
        count = b.index.count_containing(pin["u"], pin["n"])
        if count != pin["count"]:
            bad.append(f"{pin['word']}: count({pin['u']!r}, {pin['n']}) "
                       f"= {count}, pinned {pin['count']}")
    detail = (f"{checked} floor comparisons, "
              f"{len(floor.get('pinned', []))} pinned counts")
    return not bad, "; ".join(bad[:4]) if bad else detail


def _c_periodic_spectra(corpus, bundles):
    bad = []
    for name, b in bundles.items():
        want = b.entry.expected.get("periodic_spectrum")
        if want is not None and b.spectrum != want:
            bad.append(f"{name}: spectrum {b.spectrum}, pinned {want}")
        pw = b.entry.expected.get("poset", {})
        got_poset = b.poset.to_dict()
        for key in ("nodes", "minimal", "maximal"):
            if key not in pw:
                continue
            got = (sorted(nd["name"] for nd in got_poset["nodes"])
                   if key == "nodes" else sorted(got_poset[key]))
            if got != sorted(pw[key]):
                bad.append(f"{name}: poset {key} {got}, pinned {pw[key]}")
        if not b.minmax.ok:
            bad.append(f"{name}: maximality disagrees with uniform "
                       f"recurrence for {list(b.minmax.ur_mismatches)}")
    detail = f"spectra and poset structure for {len(bundles)} words"
    return not bad, "; ".join(bad) if bad else detail


def _c_bound_suite(corpus, bundles):
    bad = []
    for name, b in bundles.items():
        want = b.entry.expected.get("bounds", {})
        got = {"c_star": str(b.bounds.c_star), "d_star": b.bounds.d_star,
               "rec_count": b.bounds.rec_count,
               "urec_count": b.bounds.urec_count,
               "per_count": b.bounds.per_count}
        for key, val in sorted(want.items()):
            if got[key] != val:
                bad.append(f"{name}: {key} = {got[key]}, pinned {val}")
        for check in b.bounds.checks:
            if not check.ok:
                bad.append(f"{name}: {check.check_id} violated "
                           f"({check.lhs} vs {check.rhs})")
    n_checks = sum(len(b.bounds.checks) for b in bundles.values())
    detail = f"{n_checks} inequalities over {len(bundles)} posets"
    return not bad, "; ".join(bad) if bad else detail


def _c_topology_axioms(corpus, bundles):
    bad = []
    runs = 0
    for name, b in bundles.items():
        runs += b.topo_axioms.checks_run
        if not b.topo_axioms.ok:
            bad.extend(f"{name}: {f}" for f in b.topo_axioms.failures)
        pts = b.points
        maximal = sorted(b.poset.maximal())
        if sorted(pts.closed_points) != maximal:
            bad.append(f"{name}: closed points {list(pts.closed_points)} "
                       f"are not the maximal classes {maximal}")
        minimal = b.poset.minimal()
        want_dense = sorted(minimal) if len(minimal) == 1 else []
        if sorted(pts.dense) != want_dense:
            bad.append(f"{name}: dense points {list(pts.dense)}, "
                       f"expected {want_dense}")
    detail = f"{runs} axiom checks plus point structure"
    return not bad, "; ".join(bad[:4]) if bad else detail


def _c_continuity_suite(corpus, bundles):
    bad = []
    for name, b in bundles.items():
        for rep in (b.topo_order, b.topo_sublevel):
            if not rep.ok:
                bad.extend(f"{name}/{rep.name}: {f}" for f in rep.failures)
    detail = f"order reversal and sublevel closure for {len(bundles)} words"
    return not bad, "; ".join(bad[:4]) if bad else detail


def _c_density_suite(corpus, bundles):
    bad = []
    for name, b in bundles.items():
        if not b.topo_density.ok:
            bad.extend(f"{name}: {f}" for f in b.topo_density.failures)
    detail = f"essential-factor closures for {len(bundles)} words"
    return not bad, "; ".join(bad[:4]) if bad else detail


def _c_union_witness(corpus, bundles):
    bad = []
    applied = 0
    for name, b in bundles.items():
        want = b.entry.expected.get("union", {})
        if not b.union.ok:
            bad.append(f"{name}: {b.union.note}")
        if "applied" in want and b.union.applied != want["applied"]:
            bad.append(f"{name}: applied = {b.union.applied}, "
                       f"pinned {want['applied']}")
        if "witness" in want and b.union.witness != want["witness"]:
            bad.append(f"{name}: witness {b.union.witness!r}, "
                       f"pinned {want['witness']!r}")
        applied += bool(b.union.applied)
    detail = f"{applied} witnessed words, rest exempt"
    return not bad, "; ".join(bad) if bad else detail


def _c_determinism(corpus, bundles):
    first = to_json(artifacts_from_bundles(bundles))
    second = to_json(collect_artifacts(corpus))
    if first == second:
        return True, f"two full runs agree byte for byte ({len(first)} bytes)"
    n = min(len(first), len(second))
    at = next((i for i in range(n) if first[i] != second[i]), n)
    return False, f"runs diverge at byte {at}"


_CRITERION_FUNCS = {
    "oracle-equivalence": _c_oracle_equivalence,
    "profile-identity": _c_profile_identity,
    "complexity-dichotomy": _c_complexity_dichotomy,
    "separator-radical": _c_separator_radical,
    "containment-floor": _c_containment_floor,
    "periodic-spectra": _c_periodic_spectra,
    "bound-suite": _c_bound_suite,
    "topology-axioms": _c_topology_axioms,
    "continuity-suite": _c_continuity_suite,
    "density-suite": _c_density_suite,
    "union-witness": _c_union_witness,
    "determinism": _c_determinism,
}


@dataclass(frozen=True)
class CriterionResult:
    criterion_id: str
    ok: bool
    details: str

    @property
    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.criterion_id}: {self.details}"


@dataclass(frozen=True)
class VerificationReport:
    results: tuple[CriterionResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self) -> list[str]:
        return [r.line for r in self.results]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "criteria": [
                {"id": r.criterion_id, "ok": r.ok, "details": r.details}
                for r in self.results
            ],
        }


def run_verification(corpus_path=None, *,
                     criteria: tuple[str, ...] | None = None) -> VerificationReport:
    """Evaluate the acceptance criteria against a corpus.

    Raises CorpusError when the corpus itself cannot be loaded; criterion
    failures are reported, not raised.
    """
    corpus = load_corpus(corpus_path)
    selected = CRITERIA if criteria is None else tuple(criteria)
    for cid in selected:
        if cid not in _CRITERION_FUNCS:
            raise ValueError(f"unknown criterion {cid!r}")
    bundles = build_bundles(corpus)
    results = []
    for cid in selected:
        try:
            ok, details = _CRITERION_FUNCS[cid](corpus, bundles)
        except Exception as exc:  # a crash is a failure, not an excuse
            ok, details = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CriterionResult(cid, ok, details))
    return VerificationReport(tuple(results))
