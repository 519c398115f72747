"""Closed sets, closures and density over a materialized spectrum poset.

Points are the poset's classes. A factor-closed collection S of finite words
cuts out the closed set of classes whose factor families sit inside S; the
principal open of a pattern z collects the classes that contain z. Because
every node in the poset is recurrent, finite unions of these closed sets are
again of the same shape, and that is checked here rather than assumed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from random import Random

from .radical import ComplementSet
from .spectrum import Poset, SpectrumClass
from .words import SpecError

_UNION_QUICK_SCAN = 40
_FAMILY_SPEC_BOUND = 12


@dataclass(frozen=True)
class ClosedSpec:
    """Finite description of a factor-closed word collection.

    kind "avoiding": the words avoiding every pattern in `words` (bound
    unused). kind "extensional": exactly the listed words, complete through
    length `bound`; comparisons stop there.
    """

    kind: str
    words: tuple[str, ...]
    bound: int
    label: str

    def validate(self) -> None:
        if self.kind == "avoiding":
            if any(not w for w in self.words):
                raise SpecError("avoided patterns must be nonempty")
            return
        if self.kind != "extensional":
            raise SpecError(f"unknown closed-set kind {self.kind!r}")
        members = set(self.words)
        for w in self.words:
            if not w or len(w) > self.bound:
                raise SpecError(
                    f"extensional member {w!r} outside lengths 1..{self.bound}")
            for k in range(1, len(w)):
                for i in range(len(w) - k + 1):
                    if w[i: i + k] not in members:
                        raise SpecError(
                            f"extensional family not factor-closed: {w!r} is "
                            f"listed but its subword {w[i:i + k]!r} is not")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "words": list(self.words),
                "bound": self.bound, "label": self.label}


def extensional_spec(label: str, families: dict[int, list[str]] | None = None,
                     *, node: SpectrumClass | None = None,
                     bound: int) -> ClosedSpec:
    """Build an extensional spec from explicit per-length lists or a node."""
    if node is not None:
        words = tuple(u for n in range(1, min(bound, node.h) + 1)
                      for u in sorted(node.by_len[n]))
        bound = min(bound, node.h)
    else:
        assert families is not None
        words = tuple(u for n in sorted(families) if 1 <= n <= bound
                      for u in sorted(families[n]))
    spec = ClosedSpec("extensional", words, bound, label)
    spec.validate()
    return spec


def closed_set(poset: Poset, spec: ClosedSpec) -> frozenset[str]:
    """Names of the classes whose factor families lie inside the spec."""
    spec.validate()
    if spec.kind == "avoiding":
        return frozenset(
            nd.name for nd in poset.nodes
            if not any(nd.has(z) for z in spec.words)
        )
    by_len: dict[int, set[str]] = {}
    for w in spec.words:
        by_len.setdefault(len(w), set()).add(w)
    top = min(spec.bound, poset.h)
    return frozenset(
        nd.name for nd in poset.nodes
        if all(nd.by_len[n] <= by_len.get(n, set()) for n in range(1, top + 1))
    )


def principal_open(poset: Poset, z: str) -> frozenset[str]:
    """Classes containing the pattern z."""
    if not z:
        raise SpecError("principal opens need a nonempty pattern")
    hit = frozenset(nd.name for nd in poset.nodes if nd.has(z))
    if not hit:
        warnings.warn(
            f"pattern {z!r} occurs in no class: principal open is empty",
            stacklevel=2,
        )
    return hit


def up_set(poset: Poset, name: str) -> frozenset[str]:
    nd = poset.node(name)
    if nd is None:
        raise SpecError(f"no class named {name!r}")
    return frozenset({nd.name} | {b for (a, b) in poset.strict if a == nd.name})


@dataclass(frozen=True)
class TopologyPoints:
    closures: tuple[tuple[str, tuple[str, ...]], ...]
    dense: tuple[str, ...]
    closed_points: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "closures": {name: list(cl) for name, cl in self.closures},
            "dense": list(self.dense),
            "closed_points": list(self.closed_points),
        }


def closure_and_points(poset: Poset) -> TopologyPoints:
    """Point closures (their up-sets), dense points, and closed points."""
    everything = {nd.name for nd in poset.nodes}
    closures = []
    dense = []
    closed_pts = []
    for nd in poset.nodes:
        cl = up_set(poset, nd.name)
        closures.append((nd.name, tuple(sorted(cl))))
        if cl == everything:
            dense.append(nd.name)
        if len(cl) == 1:
            closed_pts.append(nd.name)
    return TopologyPoints(
        closures=tuple(closures),
        dense=tuple(sorted(dense)),
        closed_points=tuple(sorted(closed_pts)),
    )


def sample_closed_specs(poset: Poset, rng: Random, *, count: int = 4,
                        pattern_len: int = 3) -> list[ClosedSpec]:
    """A spread of specs: the full space, the empty set, random avoiding
    specs over short patterns, and each node's own family."""
    specs = [
        ClosedSpec("avoiding", (), 0, "full"),
        ClosedSpec("extensional", (), 1, "empty"),
    ]
    pool = sorted({
        u for nd in poset.nodes
        for n in range(1, min(pattern_len, poset.h) + 1)
        for u in nd.by_len[n]
    })
    for i in range(count):
        if not pool:
            break
        k = 1 + rng.randrange(min(3, len(pool)))
        specs.append(ClosedSpec(
            "avoiding", tuple(sorted(rng.sample(pool, k))), 0, f"avoid-{i}"))
    for nd in poset.nodes:
        specs.append(extensional_spec(
            f"family-{nd.name}", node=nd, bound=_FAMILY_SPEC_BOUND))
    return specs


@dataclass(frozen=True)
class CheckReport:
    name: str
    ok: bool
    checks_run: int
    failures: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "checks_run": self.checks_run, "failures": list(self.failures)}


def _avoids_all(u: str, patterns: tuple[str, ...]) -> bool:
    return all(z not in u for z in patterns)


def _union_members(poset: Poset, a: ClosedSpec, b: ClosedSpec,
                   scan: int) -> frozenset[str]:
    # class whose every factor avoids one pattern list or the other
    top = min(scan, poset.h)
    out = set()
    for nd in poset.nodes:
        if all(_avoids_all(u, a.words) or _avoids_all(u, b.words)
               for n in range(1, top + 1) for u in nd.by_len[n]):
            out.add(nd.name)
    return frozenset(out)


def axiom_check(poset: Poset, specs: list[ClosedSpec]) -> CheckReport:
    """Exercise the closed-set algebra on concrete specs.

    Covers: up-closure of every closed set, intersection laws, the union law
    for avoiding pairs (which leans on every node being recurrent),
    complement-as-union-of-principal-opens, separation of distinct points by
    principal opens, and closure-versus-family cross-representation.
    """
    failures: list[str] = []
    run = 0
    sets = {spec.label: closed_set(poset, spec) for spec in specs}

    # closed sets are up-closed
    for spec in specs:
        run += 1
        members = sets[spec.label]
        for (a, b) in poset.strict:
            if a in members and b not in members:
                failures.append(f"{spec.label}: not up-closed at {a} under {b}")

    avoiding = [s for s in specs if s.kind == "avoiding"]
    extensional = [s for s in specs if s.kind == "extensional"]

    for i, a in enumerate(avoiding):
        for b in avoiding[i + 1:]:
            run += 2
            merged = ClosedSpec("avoiding", tuple(sorted(set(a.words + b.words))),
                                0, f"{a.label}&{b.label}")
            if closed_set(poset, merged) != (sets[a.label] & sets[b.label]):
                failures.append(f"intersection law broke on {merged.label}")
            union = _union_members(poset, a, b, _UNION_QUICK_SCAN)
            if union != (sets[a.label] | sets[b.label]):
                union = _union_members(poset, a, b, poset.h)
            if union != (sets[a.label] | sets[b.label]):
                failures.append(f"union law broke on {a.label}|{b.label}")

    for i, a in enumerate(extensional):
        for b in extensional[i + 1:]:
            if a.bound != b.bound:
                continue
            run += 1
            both = set(a.words) & set(b.words)
            merged = ClosedSpec("extensional", tuple(sorted(both, key=lambda w: (len(w), w))),
                                a.bound, f"{a.label}&{b.label}")
            if closed_set(poset, merged) != (sets[a.label] & sets[b.label]):
                failures.append(f"intersection law broke on {merged.label}")

    # complement of an avoiding set is the union of its patterns' opens
    for spec in avoiding:
        if not spec.words:
            continue
        run += 1
        complement = {nd.name for nd in poset.nodes} - sets[spec.label]
        opens: set[str] = set()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for z in spec.words:
                opens |= principal_open(poset, z)
        if opens != complement:
            failures.append(f"{spec.label}: complement is not the union of opens")

    # distinct points are separated by some principal open
    names = [nd.name for nd in poset.nodes]
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            run += 1
            nx = poset.node(x)
            ny = poset.node(y)
            assert nx is not None and ny is not None
            split = None
            for n in range(1, poset.h + 1):
                diff = nx.by_len[n] ^ ny.by_len[n]
                if diff:
                    split = min(diff)
                    break
            if split is None or (nx.has(split) == ny.has(split)):
                failures.append(f"no principal open separates {x} and {y}")

    # closure of a point matches the closed set of its own family
    for nd in poset.nodes:
        run += 1
        spec = extensional_spec(f"cross-{nd.name}", node=nd,
                                bound=_FAMILY_SPEC_BOUND)
        if closed_set(poset, spec) != up_set(poset, nd.name):
            failures.append(f"cross-representation broke at {nd.name}")

    return CheckReport(name="axioms", ok=not failures, checks_run=run,
                       failures=tuple(failures))


def order_reversing_check(poset: Poset, *, scan_len: int = 6) -> CheckReport:
    """Extending a pattern can only shrink its principal open: U(z') is
    inside U(z) whenever z sits inside z'. Exhaustive through scan_len."""
    failures = []
    run = 0
    top = min(scan_len, poset.h)
    pool = sorted({u for nd in poset.nodes for n in range(1, top + 1)
                   for u in nd.by_len[n]})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        opens = {z: principal_open(poset, z) for z in pool}
        for z_big in pool:
            for k in range(1, len(z_big)):
                for i in range(len(z_big) - k + 1):
                    sub = z_big[i: i + k]
                    run += 1
                    if not opens[z_big] <= opens.get(sub, principal_open(poset, sub)):
                        failures.append(f"U({z_big!r}) escapes U({sub!r})")
    return CheckReport(name="continuity", ok=not failures, checks_run=run,
                       failures=tuple(failures))


def sublevel_closed_check(poset: Poset) -> CheckReport:
    """Complexity never rises along the order, so its sublevel sets are
    closed; checked at every length and spot-checked as explicit sets."""
    failures = []
    run = 0
    for (a, b) in sorted(poset.strict):
        na = poset.node(a)
        nb = poset.node(b)
        assert na is not None and nb is not None
        for n in range(poset.h + 1):
            run += 1
            if na.complexity(n) < nb.complexity(n):
                failures.append(f"complexity at {n} rises from {a} to {b}")
                break
    for n in (1, poset.h // 2, poset.h):
        for cap in sorted({nd.complexity(n) for nd in poset.nodes}):
            run += 1
            inside = {nd.name for nd in poset.nodes if nd.complexity(n) <= cap}
            for (a, b) in poset.strict:
                if a in inside and b not in inside:
                    failures.append(f"sublevel {cap} at length {n} is not closed")
    return CheckReport(name="continuity", ok=not failures, checks_run=run,
                       failures=tuple(failures))


def urec_density_check(poset: Poset, essential: ComplementSet) -> CheckReport:
    """The classes built purely from non-negligible factors must be exactly
    the uniformly recurrent ones."""
    failures = []
    families: dict[int, list[str]] = {}
    for w in essential.words:
        families.setdefault(len(w), []).append(w)
    try:
        spec = extensional_spec("essential", families, bound=essential.bound)
        got = closed_set(poset, spec)
    except SpecError as exc:
        failures.append(f"essential factor set is not usable: {exc}")
    else:
        expected = frozenset(
            nd.name for nd in poset.nodes if nd.uniformly_recurrent)
        if got != expected:
            failures.append(
                f"essential-factor classes {sorted(got)} differ from the "
                f"uniformly recurrent ones {sorted(expected)}")
    if essential.unresolved:
        failures.append(
            f"unresolved classifications: {list(essential.unresolved)}")
    return CheckReport(name="density", ok=not failures, checks_run=2,
                       failures=tuple(failures))
