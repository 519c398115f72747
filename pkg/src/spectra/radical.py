"""Bounded-scale classification of negligible factors.

A factor z counts as negligible in w when, at every window length n at least
|z|, all sufficiently long factors of w contain a z-free window of length n.
Everything here works over a finite prefix and a finite range of n, so each
verdict is explicitly scale-qualified rather than a claim about the infinite
word: widening the budgets can flip an "in" verdict, never a "not in" one
backed by a saturated witness inside the prefix.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass

from .words import SpecError

IN = "in_radical"
NOT_IN = "not_in_radical"
INCONCLUSIVE = "inconclusive"

_EVIDENCE_DISPLAY = 72


@dataclass(frozen=True)
class RadicalVerdict:
    z: str
    kind: str  # in_radical / not_in_radical / inconclusive
    method: str  # window / combined
    scale: str  # always "bounded"
    n_range: tuple[int, int]
    n_cap: int  # largest factor length the uniformity scan may demand
    prefix_len: int
    table: tuple[tuple[int, int | None], ...]  # (n, minimal uniform scale)
    failing_n: int | None
    evidence: str | None  # saturated factor, display-truncated
    generators: tuple[str, ...]  # z-free windows covering every long factor
    max_concat_len: int | None  # None means cycles allow unbounded assembly
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "kind": self.kind,
            "method": self.method,
            "scale": self.scale,
            "n_range": list(self.n_range),
            "n_cap": self.n_cap,
            "prefix_len": self.prefix_len,
            "table": [[n, scale] for (n, scale) in self.table],
            "failing_n": self.failing_n,
            "evidence": self.evidence,
            "generators": list(self.generators),
            "max_concat_len": self.max_concat_len,
            "note": self.note,
        }


def occurrences(word: str, z: str) -> list[int]:
    out = []
    i = word.find(z)
    while i != -1:
        out.append(i)
        i = word.find(z, i + 1)
    return out


def _min_uniform_scale(word: str, occ: list[int], m: int, n: int,
                       n_cap: int) -> tuple[int | None, int | None]:
    """Smallest N in [n, n_cap] such that every length-N window of `word`
    contains a window of length n free of the length-m pattern.

    occ must list the pattern's occurrence starts. Returns (N, None) on
    success and (None, start_of_saturated_window) on failure.
    """
    L = len(word)
    last = L - n
    span = n - m  # occurrence starting in [i, i+span] lands inside window i
    cum = [0] * (L + 2)
    for p in occ:
        cum[p + 1] += 1
    for i in range(L + 1):
        cum[i + 1] += cum[i]
    inf = L + n + 1
    # distance from each start to its nearest z-free window, as prefix maxima
    next_free = inf
    reach = [0] * (last + 1)
    for i in range(last, -1, -1):
        if cum[i + span + 1] - cum[i] == 0:
            next_free = i
        reach[i] = next_free - i if next_free < inf else inf

    prefix_max = [0] * (last + 1)
    running = 0
    for i in range(last + 1):
        running = max(running, reach[i])
        prefix_max[i] = running

    def uniform(N: int) -> bool:
        top = L - N
        return prefix_max[top] <= N - n

    hi = min(n_cap, L)
    if not uniform(hi):
        # leftmost factor of length hi with no free window inside it
        top = L - hi
        worst = prefix_max[top]
        for s in range(top + 1):
            if reach[s] == worst:
                return None, s
        raise AssertionError("saturated window vanished")
    lo = n
    while lo < hi:
        mid = (lo + hi) // 2
        if uniform(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo, None


def saturated_assembly_bound(word: str, z: str, n: int) -> int | None:
    """Length cap for strings assembled from length-(n+1) factors of `word`
    whose every length-n window contains z.

    None signals a cycle: assembly can run forever. This over-approximates
    the actual saturated factors of the word, which is what makes it usable
    as an independent upper bound against the window scan.
    """
    L = len(word)
    sat = {u for u in (word[i: i + n] for i in range(L - n + 1)) if z in u}
    if not sat:
        return n - 1
    nodes = sorted(sat)
    idx = {u: i for i, u in enumerate(nodes)}
    adj: list[list[int]] = [[] for _ in nodes]
    indeg = [0] * len(nodes)
    seen: set[tuple[int, int]] = set()
    for i in range(L - n):
        u = word[i: i + n]
        v = word[i + 1: i + n + 1]
        iu = idx.get(u)
        iv = idx.get(v)
        if iu is None or iv is None or (iu, iv) in seen:
            continue
        seen.add((iu, iv))
        adj[iu].append(iv)
        indeg[iv] += 1
    queue = deque(i for i in range(len(nodes)) if indeg[i] == 0)
    dist = [0] * len(nodes)
    popped = 0
    while queue:
        u = queue.popleft()
        popped += 1
        for v in adj[u]:
            if dist[u] + 1 > dist[v]:
                dist[v] = dist[u] + 1
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if popped < len(nodes):
        return None
    return n + max(dist, default=0)


def _covering_generators(word: str, z: str, n: int, N: int) -> tuple[str, ...]:
    """Greedy stab of every length-N window with z-free length-n windows.

    Recomputes freeness with plain substring tests, deliberately bypassing
    the cumulative-count machinery, and asserts agreement along the way.
    """
    L = len(word)
    frees = [i for i in range(L - n + 1) if z not in word[i: i + n]]
    chosen = []
    s = 0
    while s <= L - N:
        j = bisect_right(frees, s + N - n) - 1
        assert j >= 0, "window scan accepted an uncoverable factor"
        p = frees[j]
        assert p >= s, "window scan accepted an uncoverable factor"
        chosen.append(p)
        s = p + 1
    return tuple(sorted({word[p: p + n] for p in chosen}))


def classify_radical(word: str, z: str, *, n_slack: int = 16,
                     n_cap: int | None = None) -> RadicalVerdict:
    """Scale-bounded verdict on whether z is negligible in `word`.

    The window scan runs n over [len(z), len(z) + n_slack]; a verdict of
    IN means every n in that range admits a uniform scale, NOT_IN means
    some n exhibits a saturated factor of length n_cap. Both get
    cross-checked against the assembly bound; disagreement is a bug and
    raises RuntimeError.
    """
    if not z:
        raise SpecError("the classified factor must be nonempty")
    if not word:
        raise SpecError("cannot classify against an empty word")
    n_cap = len(word) // 4 if n_cap is None else min(n_cap, len(word))
    n_lo, n_hi = len(z), len(z) + n_slack
    if n_cap < n_hi:
        return RadicalVerdict(
            z=z, kind=INCONCLUSIVE, method="window", scale="bounded",
            n_range=(n_lo, n_hi), n_cap=n_cap, prefix_len=len(word),
            table=(), failing_n=None, evidence=None, generators=(),
            max_concat_len=None,
            note=f"scale cap {n_cap} cannot exercise window length {n_hi}",
        )

    occ = occurrences(word, z)
    rows: list[tuple[int, int | None]] = []
    failing_n: int | None = None
    sat_start: int | None = None
    for n in range(n_lo, n_hi + 1):
        scale, start = _min_uniform_scale(word, occ, len(z), n, n_cap)
        rows.append((n, scale))
        if scale is None and failing_n is None:
            failing_n, sat_start = n, start
        if failing_n is not None:
            # a window saturated at n stays saturated at every larger n
            assert scale is None, "window verdicts lost monotonicity in n"

    deciding_n = failing_n if failing_n is not None else n_hi
    assembly = saturated_assembly_bound(word, z, deciding_n)

    if failing_n is not None:
        if assembly is not None and assembly < n_cap:
            raise RuntimeError(
                f"saturated witness of length {n_cap} for {z!r} exceeds the "
                f"assembly bound {assembly}; the two scans disagree"
            )
        factor = word[sat_start: sat_start + n_cap]
        shown = factor if len(factor) <= _EVIDENCE_DISPLAY else (
            factor[: _EVIDENCE_DISPLAY] + "...")
        return RadicalVerdict(
            z=z, kind=NOT_IN, method="combined", scale="bounded",
            n_range=(n_lo, n_hi), n_cap=n_cap, prefix_len=len(word),
            table=tuple(rows), failing_n=failing_n,
            evidence=shown, generators=(), max_concat_len=assembly,
            note=(f"factor at {sat_start} of length {n_cap} has no "
                  f"{z!r}-free window of length {failing_n}"),
        )

    top_scale = rows[-1][1]
    assert top_scale is not None
    if assembly is not None and top_scale > assembly + 1:
        raise RuntimeError(
            f"uniform scale {top_scale} for {z!r} overshoots the assembly "
            f"bound {assembly}; the two scans disagree"
        )
    gens = _covering_generators(word, z, n_hi, top_scale)
    note = "" if occ else "never occurs in the scanned prefix"
    return RadicalVerdict(
        z=z, kind=IN, method="combined", scale="bounded",
        n_range=(n_lo, n_hi), n_cap=n_cap, prefix_len=len(word),
        table=tuple(rows), failing_n=None, evidence=None,
        generators=gens, max_concat_len=assembly, note=note,
    )


@dataclass(frozen=True)
class ComplementSet:
    """Factors that resisted the negligibility scan, up to a length bound."""

    bound: int
    words: tuple[str, ...]  # not negligible at this scale
    in_radical: tuple[str, ...]
    unresolved: tuple[str, ...]
    approximate: bool
    scale: str = "bounded"

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "words": list(self.words),
            "in_radical": list(self.in_radical),
            "unresolved": list(self.unresolved),
            "approximate": self.approximate,
            "scale": self.scale,
        }


def radical_complement(word: str, bound: int, *, n_slack: int = 16,
                       n_cap: int | None = None) -> ComplementSet:
    """Classify every factor of length 1 through `bound`.

    The non-negligible side must be closed under taking subwords wherever
    the scales allow a comparison; a violation is an internal inconsistency
    and raises RuntimeError.
    """
    if bound < 1:
        raise SpecError("complement bound must be positive")
    factors: list[str] = []
    for k in range(1, bound + 1):
        factors.extend(sorted({word[i: i + k] for i in range(len(word) - k + 1)}))
    verdicts = {z: classify_radical(word, z, n_slack=n_slack, n_cap=n_cap)
                for z in factors}
    essential = [z for z in factors if verdicts[z].kind == NOT_IN]
    inside = [z for z in factors if verdicts[z].kind == IN]
    unresolved = [z for z in factors if verdicts[z].kind == INCONCLUSIVE]

    ess = set(essential)
    for w in essential:
        fail_at = verdicts[w].failing_n
        for k in range(1, len(w)):
            for i in range(len(w) - k + 1):
                sub = w[i: i + k]
                if sub in ess:
                    continue
                vs = verdicts[sub]
                if (vs.kind == IN and fail_at is not None
                        and fail_at <= vs.n_range[1]):
                    raise RuntimeError(
                        f"{w!r} is essential at window {fail_at} but its "
                        f"subword {sub!r} passed the same scale"
                    )
    return ComplementSet(
        bound=bound,
        words=tuple(essential),
        in_radical=tuple(inside),
        unresolved=tuple(unresolved),
        approximate=bool(unresolved),
    )
