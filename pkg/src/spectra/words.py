"""Finite descriptions of right-infinite words and prefix generation.

Every word handled by this package is given by a small spec value that can be
serialized to JSON. A spec describes an infinite word; the rest of the package
only ever sees finite prefixes of it, together with a Horizon record saying up
to which factor length the prefix is known to be faithful.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Union


class SpecError(ValueError):
    """Raised for structurally invalid or unusable word specs."""


class PrecisionError(SpecError):
    """Raised when a slope truncation cannot decide a requested letter."""


# Guarantee levels for horizons and derived flags, strongest first.
EXACT = "exact"
STABILIZED = "stabilized"
APPROXIMATE = "approximate"

_GUARANTEE_RANK = {EXACT: 2, STABILIZED: 1, APPROXIMATE: 0}


def weaker_guarantee(a: str, b: str) -> str:
    return a if _GUARANTEE_RANK[a] <= _GUARANTEE_RANK[b] else b


@dataclass(frozen=True)
class Horizon:
    """Faithfulness certificate for a generated prefix.

    Factor statements up to length n_max read off a prefix of length
    prefix_len hold for the infinite word under the stated guarantee:
    exact (proof-backed closed form), stabilized (factor sets identical
    across a prefix doubling), or approximate (prefix evidence only).
    """

    n_max: int
    guarantee: str
    prefix_len: int


@dataclass(frozen=True)
class PeriodicSpec:
    period: str


@dataclass(frozen=True)
class MorphicSpec:
    rules: tuple[tuple[str, str], ...]  # letter -> image, sorted by letter
    seed: str
    coding: tuple[tuple[str, str], ...] = ()  # empty means identity

    def rule_map(self) -> dict[str, str]:
        return dict(self.rules)

    def coding_map(self) -> dict[str, str]:
        if not self.coding:
            return {a: a for a, _ in self.rules}
        return dict(self.coding)


@dataclass(frozen=True)
class SturmianSpec:
    cf_terms: tuple[int, ...]
    intercept: str = "characteristic"  # or a fraction string like "1/3"


@dataclass(frozen=True)
class BlocksSpec:
    builder: str
    params: tuple[tuple[str, int], ...] = ()

    def param_map(self) -> dict[str, int]:
        return dict(self.params)


@dataclass(frozen=True)
class PrefixSpec:
    symbols: str


WordSpec = Union[PeriodicSpec, MorphicSpec, SturmianSpec, BlocksSpec, PrefixSpec]


# ---------------------------------------------------------------------------
# JSON schema. Field names are part of the external contract.

def parse_word_spec(data: Mapping) -> WordSpec:
    """Parse one spec object from decoded JSON. Raises SpecError."""
    if not isinstance(data, Mapping) or "type" not in data:
        raise SpecError("word spec must be an object with a 'type' field")
    kind = data["type"]
    try:
        if kind == "periodic":
            spec: WordSpec = PeriodicSpec(period=str(data["period"]))
        elif kind == "morphic":
            rules = tuple(sorted((str(k), str(v)) for k, v in data["rules"].items()))
            coding = tuple(sorted((str(k), str(v)) for k, v in data.get("coding", {}).items()))
            spec = MorphicSpec(rules=rules, seed=str(data["seed"]), coding=coding)
        elif kind == "sturmian":
            terms = tuple(int(t) for t in data["cf_terms"])
            spec = SturmianSpec(cf_terms=terms, intercept=str(data.get("intercept", "characteristic")))
        elif kind == "blocks":
            params = tuple(sorted((str(k), int(v)) for k, v in data.get("params", {}).items()))
            spec = BlocksSpec(builder=str(data["builder"]), params=params)
        elif kind == "prefix":
            spec = PrefixSpec(symbols=str(data["symbols"]))
        else:
            raise SpecError(f"unknown word spec type {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"malformed {kind!r} spec: {exc}") from exc
    validate_spec(spec)
    return spec


def word_spec_to_dict(spec: WordSpec) -> dict:
    if isinstance(spec, PeriodicSpec):
        return {"type": "periodic", "period": spec.period}
    if isinstance(spec, MorphicSpec):
        out: dict = {"type": "morphic", "rules": dict(spec.rules), "seed": spec.seed}
        if spec.coding:
            out["coding"] = dict(spec.coding)
        return out
    if isinstance(spec, SturmianSpec):
        return {"type": "sturmian", "cf_terms": list(spec.cf_terms), "intercept": spec.intercept}
    if isinstance(spec, BlocksSpec):
        out = {"type": "blocks", "builder": spec.builder}
        if spec.params:
            out["params"] = dict(spec.params)
        return out
    if isinstance(spec, PrefixSpec):
        return {"type": "prefix", "symbols": spec.symbols}
    raise SpecError(f"not a word spec: {spec!r}")


def spec_json(spec: WordSpec) -> str:
    """Canonical single-line JSON form; byte-stable for equal specs."""
    return json.dumps(word_spec_to_dict(spec), sort_keys=True, separators=(", ", ": "))


def loads_word_spec(text: str) -> WordSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from exc
    return parse_word_spec(data)


# ---------------------------------------------------------------------------
# Validation

def validate_spec(spec: WordSpec) -> None:
    if isinstance(spec, PeriodicSpec):
        if not spec.period:
            raise SpecError("periodic spec needs a nonempty period word")
    elif isinstance(spec, MorphicSpec):
        rules = spec.rule_map()
        if not rules:
            raise SpecError("morphic spec needs at least one rule")
        letters = set(rules)
        for a, img in rules.items():
            if len(a) != 1:
                raise SpecError(f"morphism domain must be single letters, got {a!r}")
            if not img:
                raise SpecError(f"erasing morphism: image of {a!r} is empty")
            extra = set(img) - letters
            if extra:
                raise SpecError(f"image of {a!r} uses letters {sorted(extra)} with no rule")
        if spec.seed not in rules:
            raise SpecError(f"seed {spec.seed!r} has no rule")
        img = rules[spec.seed]
        # prolongable: sigma(seed) = seed u with u nonempty, so iteration
        # extends the previous prefix and lengths grow strictly
        if img[0] != spec.seed or len(img) < 2:
            raise SpecError(
                f"morphism is not prolongable on seed {spec.seed!r}: image must start "
                f"with the seed and have length at least 2"
            )
        coding = spec.coding_map()
        missing = letters - set(coding)
        if missing:
            raise SpecError(f"coding is missing letters {sorted(missing)}")
        for a, b in coding.items():
            if len(a) != 1 or len(b) != 1:
                raise SpecError("coding must map single letters to single letters")
    elif isinstance(spec, SturmianSpec):
        if not spec.cf_terms:
            raise SpecError("sturmian spec needs at least one slope term")
        if any(t < 1 for t in spec.cf_terms):
            raise SpecError("slope terms must be positive integers")
        if spec.intercept != "characteristic":
            try:
                rho = Fraction(spec.intercept)
            except (ValueError, ZeroDivisionError) as exc:
                raise SpecError(f"intercept must be 'characteristic' or a fraction: {exc}") from exc
            if not (0 <= rho < 1):
                raise SpecError("intercept fraction must lie in [0, 1)")
    elif isinstance(spec, BlocksSpec):
        if spec.builder not in BLOCK_BUILDERS:
            raise SpecError(
                f"unknown block builder {spec.builder!r}; "
                f"available: {sorted(BLOCK_BUILDERS)}"
            )
    elif isinstance(spec, PrefixSpec):
        if not spec.symbols:
            raise SpecError("explicit prefix must be nonempty")
    else:
        raise SpecError(f"not a word spec: {spec!r}")


def alphabet_of(spec: WordSpec) -> str:
    """Sorted letters the generated word can use."""
    if isinstance(spec, PeriodicSpec):
        return "".join(sorted(set(spec.period)))
    if isinstance(spec, MorphicSpec):
        return "".join(sorted(set(spec.coding_map().values())))
    if isinstance(spec, SturmianSpec):
        return "01"
    if isinstance(spec, BlocksSpec):
        return BLOCK_BUILDERS[spec.builder].alphabet
    if isinstance(spec, PrefixSpec):
        return "".join(sorted(set(spec.symbols)))
    raise SpecError(f"not a word spec: {spec!r}")


# ---------------------------------------------------------------------------
# Block builders: run-length programs registered as data.

@dataclass(frozen=True)
class BlockBuilder:
    alphabet: str
    runs: Callable[[dict[str, int]], Iterator[tuple[str, int]]]
    exact_prefix_len: Callable[[int, dict[str, int]], int]


def _separator_runs(params: dict[str, int]) -> Iterator[tuple[str, int]]:
    # x y x^2 y x^4 y ... : the k-th maximal x-run has length base**(k-1)
    base = params.get("base", 2)
    run = 1
    while True:
        yield ("x", run)
        yield ("y", 1)
        run *= base


def _separator_exact_len(n: int, params: dict[str, int]) -> int:
    base = params.get("base", 2)
    total, run = 0, 1
    while run < 2 * n:
        total += run + 1
        run *= base
    return total + run + 1 + n


def _run_doubling_runs(params: dict[str, int]) -> Iterator[tuple[str, int]]:
    # 0 1 0^2 1^2 0^4 1^4 ...
    base = params.get("base", 2)
    run = 1
    while True:
        yield ("0", run)
        yield ("1", run)
        run *= base


def _run_doubling_exact_len(n: int, params: dict[str, int]) -> int:
    base = params.get("base", 2)
    total, run = 0, 1
    while run < 2 * n:
        total += 2 * run
        run *= base
    return total + 2 * run + n


def _sparse_ones_runs(params: dict[str, int]) -> Iterator[tuple[str, int]]:
    # 0^s 1 0^(s+1) 1 0^(s+2) 1 ... : isolated ones with linearly growing gaps
    run = params.get("start", 1)
    while True:
        yield ("0", run)
        yield ("1", 1)
        run += 1


def _sparse_ones_exact_len(n: int, params: dict[str, int]) -> int:
    run = params.get("start", 1)
    total = 0
    while run < 2 * n:
        total += run + 1
        run += 1
    return total + run + 1 + n


BLOCK_BUILDERS: dict[str, BlockBuilder] = {
    "radical_example": BlockBuilder("xy", _separator_runs, _separator_exact_len),
    "run_doubling": BlockBuilder("01", _run_doubling_runs, _run_doubling_exact_len),
    "sparse_ones": BlockBuilder("01", _sparse_ones_runs, _sparse_ones_exact_len),
}


# ---------------------------------------------------------------------------
# Generation

def generate_prefix(spec: WordSpec, length: int) -> str:
    """First `length` letters of the word described by `spec`.

    Deterministic, and extension-coherent: the result for a shorter length is
    always a prefix of the result for a longer one.
    """
    validate_spec(spec)
    if length < 1:
        raise SpecError("prefix length must be positive")
    if isinstance(spec, PeriodicSpec):
        u = spec.period
        reps = length // len(u) + 1
        return (u * reps)[:length]
    if isinstance(spec, MorphicSpec):
        return _morphic_prefix(spec, length)
    if isinstance(spec, SturmianSpec):
        return _sturmian_prefix(spec, length)
    if isinstance(spec, BlocksSpec):
        out: list[str] = []
        for letter, run in BLOCK_BUILDERS[spec.builder].runs(spec.param_map()):
            out.append(letter * run)
            if sum(map(len, out)) >= length:
                break
        return "".join(out)[:length]
    if isinstance(spec, PrefixSpec):
        if len(spec.symbols) < length:
            raise SpecError(
                f"explicit prefix has {len(spec.symbols)} symbols, {length} requested"
            )
        return spec.symbols[:length]
    raise SpecError(f"not a word spec: {spec!r}")


def _morphic_prefix(spec: MorphicSpec, length: int) -> str:
    rules = spec.rule_map()
    # online expansion of the fixed point: out stays a prefix of sigma(out)
    out = list(rules[spec.seed])
    i = 1
    while len(out) < length:
        out.extend(rules[out[i]])
        i += 1
    coding = spec.coding_map()
    return "".join(coding[a] for a in out[:length])


def _slope_interval(cf_terms: tuple[int, ...]) -> tuple[Fraction, Fraction]:
    """Open rational interval containing every irrational slope whose
    directive sequence starts with cf_terms.

    Terms follow the standard-word convention: terms (a1, a2, ...) describe
    the slope with continued fraction [0; a1+1, a2, ...], which is what makes
    the all-ones sequence give the golden-ratio word over 0 < 1.
    """
    effective = (cf_terms[0] + 1,) + cf_terms[1:]
    p_prev, q_prev = 1, 0
    p, q = 0, 1  # value after the leading integer part 0
    for term in effective:
        p, p_prev = term * p + p_prev, p
        q, q_prev = term * q + q_prev, q
    end_a = Fraction(p, q)
    end_b = Fraction(p + p_prev, q + q_prev)
    return (min(end_a, end_b), max(end_a, end_b))


def _floor_between(m: int, lo: Fraction, hi: Fraction, rho: Fraction, terms: int) -> int:
    a = (m * lo + rho).__floor__()
    b = (m * hi + rho).__floor__()
    if a != b:
        raise PrecisionError(
            f"{terms} slope terms pin the slope only to ({lo}, {hi}); "
            f"floor at multiple {m} is ambiguous, provide more terms"
        )
    return a


def sturmian_letter(cf_terms: tuple[int, ...] | list[int], intercept: str, n: int) -> str:
    """Letter at position n >= 0 of the coded rotation word.

    Uses exact rational endpoints of the slope interval; raises
    PrecisionError when the truncated term list cannot decide the letter.
    """
    terms = tuple(int(t) for t in cf_terms)
    spec = SturmianSpec(cf_terms=terms, intercept=intercept)
    validate_spec(spec)
    lo, hi = _slope_interval(terms)
    if intercept == "characteristic":
        shift, rho = 1, Fraction(0)
    else:
        shift, rho = 0, Fraction(intercept)
    hi_floor = _floor_between(n + 1 + shift, lo, hi, rho, len(terms))
    lo_floor = _floor_between(n + shift, lo, hi, rho, len(terms))
    return "01"[hi_floor - lo_floor]


def _sturmian_prefix(spec: SturmianSpec, length: int) -> str:
    lo, hi = _slope_interval(spec.cf_terms)
    if spec.intercept == "characteristic":
        shift, rho = 1, Fraction(0)
    else:
        shift, rho = 0, Fraction(spec.intercept)
    floors = [
        _floor_between(m + shift, lo, hi, rho, len(spec.cf_terms))
        for m in range(length + 1)
    ]
    return "".join("01"[floors[m + 1] - floors[m]] for m in range(length))


# ---------------------------------------------------------------------------
# Horizons

_STABILIZE_START = 64
_STABILIZE_CAP = 1 << 22


def _length_n_factors(word: str, n: int) -> set[str]:
    return {word[i : i + n] for i in range(len(word) - n + 1)}


def horizon_for(spec: WordSpec, n: int) -> Horizon:
    """Choose a prefix length whose factors of length <= n can be trusted.

    Never fails: families without an exactness argument fall back to the
    stabilization loop, and if even that cannot settle (precision limits,
    explicit prefixes) the horizon is reported as approximate.
    """
    validate_spec(spec)
    if n < 1:
        raise SpecError("horizon length must be positive")
    if isinstance(spec, PeriodicSpec):
        return Horizon(n, EXACT, len(spec.period) + n)
    if isinstance(spec, BlocksSpec):
        exact_len = BLOCK_BUILDERS[spec.builder].exact_prefix_len(n, spec.param_map())
        return Horizon(n, EXACT, exact_len)
    if isinstance(spec, PrefixSpec):
        avail = len(spec.symbols)
        return Horizon(min(n, avail), APPROXIMATE, avail)
    # morphic and sturmian: double the prefix until the length-n factor set
    # stops changing; equality at the top length implies equality below it,
    # because any shorter new factor would sit inside some length-n window
    length = max(4 * n, _STABILIZE_START)
    current = _safe_prefix(spec, length)
    while True:
        if len(current) >= 2 * length:
            doubled: str | None = current[: 2 * length]
        else:
            doubled = _try_prefix(spec, 2 * length)
        if doubled is None:
            return Horizon(n, APPROXIMATE, len(current))
        if len(current) >= n and _length_n_factors(current[:length], n) == _length_n_factors(doubled, n):
            return Horizon(n, STABILIZED, 2 * length)
        length *= 2
        current = doubled
        if length > _STABILIZE_CAP:
            return Horizon(n, APPROXIMATE, len(current))


def _safe_prefix(spec: WordSpec, length: int) -> str:
    got = _try_prefix(spec, length)
    if got is None:
        # walk back to the longest generable prefix
        lo, hi = 1, length
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _try_prefix(spec, mid) is None:
                hi = mid - 1
            else:
                lo = mid
        got = generate_prefix(spec, lo)
    return got


def _try_prefix(spec: WordSpec, length: int) -> str | None:
    try:
        return generate_prefix(spec, length)
    except PrecisionError:
        return None


def is_primitive_morphism(spec: MorphicSpec) -> bool:
    """True when some power of the substitution sends every letter to a word
    using the whole alphabet."""
    rules = spec.rule_map()
    letters = sorted(rules)
    reach = {a: frozenset(rules[a]) for a in letters}
    full = frozenset(letters)
    for _ in range(2 * len(letters) * len(letters) + 2):
        if all(reach[a] == full for a in letters):
            return True
        reach = {a: frozenset().union(*(reach[b] for b in reach[a])) for a in letters}
    return False
