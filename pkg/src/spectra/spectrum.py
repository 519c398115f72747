"""Periodic content, recurrence verdicts, and containment posets.

The ordering used throughout: one class sits below another when its factor
family contains the other's. A word's spectrum is materialized here as a
finite poset of classes (the word itself when recurrent, periodic classes
found inside it, plus externally supplied candidate words), all truncated at
a common factor length h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .factors import FactorIndex
from .words import (
    APPROXIMATE,
    EXACT,
    MorphicSpec,
    PeriodicSpec,
    SpecError,
    SturmianSpec,
    WordSpec,
    is_primitive_morphism,
)


# ---------------------------------------------------------------------------
# Primitive roots and rotation classes

def is_primitive(u: str) -> bool:
    """True when u is not a power of a strictly shorter word."""
    if not u:
        return False
    return (u + u).find(u, 1) == len(u)


def primitive_root(u: str) -> str:
    return u[: (u + u).find(u, 1)]


def least_rotation(u: str) -> str:
    return min(u[i:] + u[:i] for i in range(len(u)))


def canonical_root(u: str) -> str:
    """Least rotation of the primitive root; names a periodic class."""
    return least_rotation(primitive_root(u))


def periodic_factors(root: str, n: int) -> list[str]:
    """Distinct length-n factors of the word obtained by repeating root."""
    if n == 0:
        return [""]
    s = root * (n // len(root) + 2)
    return sorted({s[i: i + n] for i in range(len(root))})


def periodic_spectrum(index: FactorIndex, *, max_period: int = 16,
                      power: int = 8) -> list[str]:
    """Canonical roots whose `power`-fold repetition appears in the word.

    Rotation-invariant: a class is reported once if any rotation of its root
    passes the repetition test. Sorted by (length, letters). Bounded-scale by
    construction: repetitions beyond the indexed prefix count as absent.
    """
    found: set[str] = set()
    for ell in range(1, max_period + 1):
        for u in index.factors_of_length(ell):
            if not is_primitive(u):
                continue
            canon = least_rotation(u)
            if canon not in found and index.is_factor(u * power):
                found.add(canon)
    return sorted(found, key=lambda r: (len(r), r))


# ---------------------------------------------------------------------------
# Recurrence verdicts

@dataclass(frozen=True)
class Flag:
    value: bool
    guarantee: str
    note: str = ""

    def __bool__(self) -> bool:
        return self.value

    def to_dict(self) -> dict:
        out: dict = {"value": self.value, "guarantee": self.guarantee}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class RecurrenceFlags:
    periodic: Flag
    recurrent: Flag
    uniformly_recurrent: Flag

    def to_dict(self) -> dict:
        return {
            "periodic": self.periodic.to_dict(),
            "recurrent": self.recurrent.to_dict(),
            "uniformly_recurrent": self.uniformly_recurrent.to_dict(),
        }


def appearance_bound(word: str, u: str) -> int | None:
    """Smallest L such that every length-L window of `word` contains u.

    None when u does not occur at all.
    """
    starts = []
    i = word.find(u)
    while i != -1:
        starts.append(i)
        i = word.find(u, i + 1)
    if not starts:
        return None
    gap = starts[0]
    for a, b in zip(starts, starts[1:]):
        gap = max(gap, b - a - 1)
    gap = max(gap, len(word) - len(u) - starts[-1])
    return gap + len(u)


def recurrence_flags(index: FactorIndex, h: int | None = None, *,
                     spec: WordSpec | None = None,
                     ur_scan_len: int = 8) -> RecurrenceFlags:
    """Periodicity and recurrence verdicts for the indexed word.

    Spec-level certificates are used where a family admits them (fixed
    periods, primitive substitutions, slope words); otherwise the verdicts
    come from prefix evidence and are labeled approximate: occurrence spread
    for recurrence, appearance-bound stability across a prefix doubling for
    uniform recurrence, and the complexity dichotomy for periodicity.
    """
    if h is None:
        h = index.horizon.n_max if index.horizon else max(1, len(index.word) // 4)
    base = index.horizon.guarantee if index.horizon else APPROXIMATE

    if isinstance(spec, PeriodicSpec):
        yes = Flag(True, EXACT, f"fixed period {len(spec.period)}")
        return RecurrenceFlags(periodic=yes, recurrent=yes, uniformly_recurrent=yes)

    # periodicity: bounded complexity forces a period, and that direction
    # is a theorem; the aperiodic direction only rules out short periods
    if index.complexity(h) <= h:
        periodic = Flag(True, base, f"complexity at {h} is {index.complexity(h)}")
    elif isinstance(spec, SturmianSpec):
        periodic = Flag(False, EXACT, "slope word with minimal growth")
    else:
        periodic = Flag(False, APPROXIMATE, f"no period visible through length {h}")

    certified = (
        isinstance(spec, SturmianSpec)
        or (isinstance(spec, MorphicSpec) and is_primitive_morphism(spec))
    )
    if certified:
        why = ("slope word" if isinstance(spec, SturmianSpec)
               else "primitive substitution")
        recurrent = Flag(True, EXACT, why)
        uniform = Flag(True, EXACT, why)
        return RecurrenceFlags(periodic=periodic, recurrent=recurrent,
                               uniformly_recurrent=uniform)

    witness = index.non_recurring_factor(h)
    if witness is None:
        recurrent = Flag(True, APPROXIMATE,
                         f"all factors through length {h} recur disjointly")
    else:
        recurrent = Flag(False, APPROXIMATE,
                         f"factor {witness!r} lacks disjoint occurrences")

    uniform = _uniform_proxy(index, recurrent, min(ur_scan_len, h))
    return RecurrenceFlags(periodic=periodic, recurrent=recurrent,
                           uniformly_recurrent=uniform)


def _uniform_proxy(index: FactorIndex, recurrent: Flag, scan: int) -> Flag:
    if not recurrent.value:
        return Flag(False, APPROXIMATE, "not recurrent at this scale")
    word = index.word
    half = word[: len(word) // 2]
    for n in range(1, scan + 1):
        for u in index.factors_of_length(n):
            if appearance_bound(half, u) != appearance_bound(word, u):
                return Flag(False, APPROXIMATE,
                            f"appearance bound of {u!r} still growing")
    return Flag(True, APPROXIMATE,
                f"appearance bounds stable through length {scan}")


# ---------------------------------------------------------------------------
# Classes and posets

@dataclass(frozen=True)
class SpectrumClass:
    """One node: a factor family truncated at length h, with verdicts."""

    name: str
    by_len: tuple[frozenset[str], ...]  # index = factor length, 0 through h
    recurrent: bool
    uniformly_recurrent: bool
    periodic: bool
    aliases: tuple[str, ...] = ()

    @property
    def h(self) -> int:
        return len(self.by_len) - 1

    def complexity(self, n: int) -> int:
        return len(self.by_len[n])

    def has(self, u: str) -> bool:
        return len(u) <= self.h and u in self.by_len[len(u)]


def class_from_index(name: str, index: FactorIndex, h: int,
                     flags: RecurrenceFlags) -> SpectrumClass:
    by_len = tuple(frozenset(index.factors_of_length(n)) for n in range(h + 1))
    return SpectrumClass(
        name=name,
        by_len=by_len,
        recurrent=flags.recurrent.value,
        uniformly_recurrent=flags.uniformly_recurrent.value,
        periodic=flags.periodic.value,
    )


def class_from_root(name: str, root: str, h: int) -> SpectrumClass:
    by_len = tuple(frozenset(periodic_factors(root, n)) for n in range(h + 1))
    return SpectrumClass(name=name, by_len=by_len, recurrent=True,
                         uniformly_recurrent=True, periodic=True)


def class_leq(a: SpectrumClass, b: SpectrumClass) -> bool:
    """a below b: every factor of b is a factor of a, at every length."""
    if a.h != b.h:
        raise SpecError("classes were truncated at different lengths")
    return all(a.by_len[n] >= b.by_len[n] for n in range(a.h + 1))


def class_equiv(a: SpectrumClass, b: SpectrumClass) -> bool:
    return a.by_len == b.by_len


@dataclass(frozen=True)
class Poset:
    h: int
    nodes: tuple[SpectrumClass, ...]  # name-sorted
    strict: frozenset[tuple[str, str]]  # (a, b) with a strictly below b

    def node(self, name: str) -> SpectrumClass | None:
        for nd in self.nodes:
            if nd.name == name or name in nd.aliases:
                return nd
        return None

    def leq(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.strict

    def minimal(self) -> list[str]:
        return [nd.name for nd in self.nodes
                if not any(x != nd.name for (x, y) in self.strict if y == nd.name)]

    def maximal(self) -> list[str]:
        return [nd.name for nd in self.nodes
                if not any(y != nd.name for (x, y) in self.strict if x == nd.name)]

    def covers(self) -> list[tuple[str, str]]:
        """Immediate relations: strict pairs with nothing in between."""
        out = []
        for (a, b) in sorted(self.strict):
            if not any((a, c) in self.strict and (c, b) in self.strict
                       for c in (nd.name for nd in self.nodes)
                       if c not in (a, b)):
                out.append((a, b))
        return out

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "nodes": [
                {
                    "name": nd.name,
                    "aliases": list(nd.aliases),
                    "recurrent": nd.recurrent,
                    "uniformly_recurrent": nd.uniformly_recurrent,
                    "periodic": nd.periodic,
                    "complexity_at_h": nd.complexity(nd.h),
                }
                for nd in self.nodes
            ],
            "strict_pairs": [list(p) for p in sorted(self.strict)],
            "covers": [list(p) for p in self.covers()],
            "minimal": self.minimal(),
            "maximal": self.maximal(),
        }


def build_poset(root: SpectrumClass, others: list[SpectrumClass]) -> Poset:
    """Materialize the spectrum of `root` over the supplied candidates.

    Candidates must be recurrent; the root joins as a node only when it is
    recurrent itself. Classes with identical factor families collapse into
    one node whose extra names become aliases.
    """
    for o in others:
        if o.h != root.h:
            raise SpecError(f"candidate {o.name!r} truncated at {o.h}, root at {root.h}")
        if not o.recurrent:
            raise SpecError(f"candidate {o.name!r} is not recurrent")

    members = [root] if root.recurrent else []
    members += [o for o in others if class_leq(root, o)]

    groups: dict[tuple[frozenset[str], ...], list[SpectrumClass]] = {}
    for m in members:
        groups.setdefault(m.by_len, []).append(m)
    nodes = []
    for family, group in groups.items():
        names = sorted({g.name for g in group} | {a for g in group for a in g.aliases})
        nodes.append(SpectrumClass(
            name=names[0],
            by_len=family,
            recurrent=any(g.recurrent for g in group),
            uniformly_recurrent=any(g.uniformly_recurrent for g in group),
            periodic=any(g.periodic for g in group),
            aliases=tuple(names[1:]),
        ))
    nodes.sort(key=lambda nd: nd.name)

    strict = frozenset(
        (a.name, b.name)
        for a in nodes for b in nodes
        if a.name != b.name and class_leq(a, b)
    )
    for (a, b) in strict:
        assert (b, a) not in strict, "equivalent families were not merged"
    for (a, b) in strict:
        for (c, d) in strict:
            if b == c:
                assert (a, d) in strict, "containment relation lost transitivity"
    return Poset(h=root.h, nodes=tuple(nodes), strict=strict)


# ---------------------------------------------------------------------------
# Poset reports

@dataclass(frozen=True)
class MinMaxReport:
    minimal: tuple[str, ...]
    maximal: tuple[str, ...]
    ur_mismatches: tuple[str, ...]  # maximality disagreeing with the UR verdict

    @property
    def ok(self) -> bool:
        return not self.ur_mismatches

    def to_dict(self) -> dict:
        return {
            "minimal": list(self.minimal),
            "maximal": list(self.maximal),
            "ur_mismatches": list(self.ur_mismatches),
            "ok": self.ok,
        }


def minimal_and_maximal(poset: Poset) -> MinMaxReport:
    maximal = set(poset.maximal())
    mismatches = tuple(sorted(
        nd.name for nd in poset.nodes
        if (nd.name in maximal) != nd.uniformly_recurrent
    ))
    return MinMaxReport(
        minimal=tuple(poset.minimal()),
        maximal=tuple(sorted(maximal)),
        ur_mismatches=mismatches,
    )


@dataclass(frozen=True)
class ChainReport:
    chain: tuple[str, ...]  # bottom to top
    node_count: int
    edge_count: int

    def to_dict(self) -> dict:
        return {
            "chain": list(self.chain),
            "node_count": self.node_count,
            "edge_count": self.edge_count,
        }


def longest_chain(poset: Poset) -> ChainReport:
    """A longest totally ordered run of nodes, reported both ways people
    count chains: by nodes and by steps."""
    best: dict[str, tuple[int, tuple[str, ...]]] = {}
    names = [nd.name for nd in poset.nodes]
    # below[b] = names strictly below b; process in an order compatible with it
    below = {b: sorted(a for (a, bb) in poset.strict if bb == b) for b in names}
    for name in sorted(names, key=lambda x: (len(below[x]), x)):
        candidates = [best[a] for a in below[name] if a in best]
        if candidates:
            length, chain = max(candidates)
            best[name] = (length + 1, chain + (name,))
        else:
            best[name] = (1, (name,))
    if not best:
        return ChainReport(chain=(), node_count=0, edge_count=0)
    length, chain = max(best.values())
    return ChainReport(chain=chain, node_count=length, edge_count=length - 1)


@dataclass(frozen=True)
class UnionWitness:
    applied: bool
    ok: bool
    witness: str | None
    note: str = ""

    def to_dict(self) -> dict:
        return {"applied": self.applied, "ok": self.ok,
                "witness": self.witness, "note": self.note}


def proper_union_check(poset: Poset, root_name: str) -> UnionWitness:
    """For a recurrent root: some factor of the root class lies in no other
    node, so the other families never union up to the root family."""
    root = poset.node(root_name)
    if root is None:
        return UnionWitness(applied=False, ok=True, witness=None,
                            note="root class absent: not recurrent at this scale")
    others = [nd for nd in poset.nodes if nd.name != root.name]
    for n in range(1, poset.h + 1):
        for u in sorted(root.by_len[n]):
            if all(u not in o.by_len[n] for o in others):
                return UnionWitness(applied=True, ok=True, witness=u,
                                    note=f"missing from {len(others)} other classes")
    return UnionWitness(applied=True, ok=False, witness=None,
                        note="every root factor reappears in another class")


# ---------------------------------------------------------------------------
# Bound suite

@dataclass(frozen=True)
class BoundCheck:
    check_id: str
    applied: bool
    ok: bool
    lhs: str
    rhs: str
    note: str = ""

    def to_dict(self) -> dict:
        out = {"check_id": self.check_id, "applied": self.applied,
               "ok": self.ok, "lhs": self.lhs, "rhs": self.rhs}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class BoundsReport:
    name: str
    h: int
    window: tuple[int, int]
    c_star: Fraction
    d_star: int
    rec_count: int
    urec_count: int
    per_count: int
    checks: tuple[BoundCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "h": self.h,
            "window": list(self.window),
            "c_star": str(self.c_star),
            "d_star": self.d_star,
            "rec_count": self.rec_count,
            "urec_count": self.urec_count,
            "per_count": self.per_count,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }


def slope_window(h: int) -> tuple[int, int]:
    return ((h + 1) // 2, h)


def bounds_report(name: str, profile: list[int], h: int, poset: Poset,
                  root_flags: RecurrenceFlags) -> BoundsReport:
    """Count-versus-growth inequalities for one word and its poset.

    profile[n] must be the word's complexity at n for n = 0..h. The observed
    counts come from the materialized poset, so they are lower bounds for
    the true spectrum counts; the inequalities bound those true counts from
    above, which makes every check here a genuine obligation.
    """
    lo, hi = slope_window(h)
    if hi > h or len(profile) <= h:
        raise SpecError("profile shorter than the requested scale")
    c_star = max(Fraction(profile[n], n) for n in range(lo, hi + 1))
    d_star = max(profile[n] - profile[n - 1] for n in range(lo, hi + 1))
    budget = math.factorial(math.ceil(c_star)) ** 2

    rec_count = len(poset.nodes)
    urec_count = sum(1 for nd in poset.nodes if nd.uniformly_recurrent)
    per_count = sum(1 for nd in poset.nodes if nd.periodic)
    minimal = set(poset.minimal())
    nonper_minimal = sum(
        1 for nd in poset.nodes if nd.name in minimal and not nd.periodic
    )
    chain = longest_chain(poset)

    checks = [
        _check("rec_count_vs_step_budget", rec_count, d_star + budget),
        _check("urec_count_vs_step_and_slope", urec_count,
               (d_star + 1) + c_star * c_star),
        _check("rec_count_vs_per_and_budget", rec_count,
               per_count + budget - 1),
        _check("per_count_vs_step", per_count, d_star + 1),
    ]

    aperiodic_recurrent = root_flags.recurrent.value and not root_flags.periodic.value
    if aperiodic_recurrent:
        checks.append(_check("per_count_vs_slope", per_count, c_star))
    else:
        checks.append(BoundCheck(
            check_id="per_count_vs_slope", applied=False, ok=True,
            lhs=str(per_count), rhs=str(c_star),
            note="needs an aperiodic recurrent root",
        ))

    checks.append(_check("chain_vs_slope_budget", chain.node_count, 1 + c_star))
    checks.append(_check("nonper_minimal_vs_slope", nonper_minimal, c_star))
    checks.append(_cover_drop_check(poset, lo, hi))

    return BoundsReport(
        name=name, h=h, window=(lo, hi), c_star=c_star, d_star=d_star,
        rec_count=rec_count, urec_count=urec_count, per_count=per_count,
        checks=tuple(checks),
    )


def _check(check_id: str, lhs, rhs, note: str = "") -> BoundCheck:
    return BoundCheck(check_id=check_id, applied=True, ok=bool(lhs <= rhs),
                      lhs=str(lhs), rhs=str(rhs), note=note)


def _cover_drop_check(poset: Poset, lo: int, hi: int) -> BoundCheck:
    """Across each immediate step up, the slope must drop by at least one:
    the upper class's largest slope stays below the lower class's smallest
    slope minus one, both read over the same window."""
    covers = poset.covers()
    if not covers:
        return BoundCheck(check_id="cover_slope_drop", applied=True, ok=True,
                          lhs="0", rhs="0", note="no cover pairs")
    worst: tuple[Fraction, Fraction, str] | None = None
    for (a, b) in covers:
        lower = poset.node(a)
        upper = poset.node(b)
        assert lower is not None and upper is not None
        up_slope = max(Fraction(upper.complexity(n), n) for n in range(lo, hi + 1))
        low_slope = min(Fraction(lower.complexity(n), n) for n in range(lo, hi + 1))
        margin = (low_slope - 1) - up_slope
        if worst is None or margin < worst[0]:
            worst = (margin, up_slope, f"{a} under {b}")
    assert worst is not None
    margin, up_slope, pair = worst
    return BoundCheck(
        check_id="cover_slope_drop", applied=True, ok=margin >= 0,
        lhs=str(up_slope), rhs=str(up_slope + margin),
        note=f"tightest at {pair}",
    )


# ---------------------------------------------------------------------------
# Export

def poset_to_dot(poset: Poset) -> str:
    """Graphviz rendering of the cover relation, bottom at the bottom."""
    lines = ["digraph spectrum {", "  rankdir=BT;", "  node [shape=box];"]
    for nd in poset.nodes:
        marks = []
        if nd.periodic:
            marks.append("periodic")
        if nd.uniformly_recurrent:
            marks.append("ur")
        label = nd.name if not marks else f"{nd.name}\\n({', '.join(marks)})"
        lines.append(f'  "{nd.name}" [label="{label}"];')
    for (a, b) in poset.covers():
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
