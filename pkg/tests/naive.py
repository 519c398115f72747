"""Brute-force reference implementations, for cross-checking only.

Everything here is written directly from the definitions, with no sharing
of code or cleverness with the package. Quadratic is fine: tests keep the
inputs small.
"""


def windows(word: str, n: int) -> list[str]:
    return [word[i:i + n] for i in range(len(word) - n + 1)]


def factor_set(word: str, n: int) -> set[str]:
    return set(windows(word, n))


def complexity(word: str, n: int) -> int:
    return len(factor_set(word, n))


def factors_sorted(word: str, n: int) -> list[str]:
    return sorted(factor_set(word, n))


def count_containing(word: str, u: str, n: int) -> int:
    return sum(1 for f in factor_set(word, n) if u in f)


def end_positions(word: str, u: str) -> list[int]:
    out = []
    start = word.find(u)
    while start != -1:
        out.append(start + len(u))
        start = word.find(u, start + 1)
    return out


def end_spread(word: str, u: str):
    ends = end_positions(word, u)
    if not ends:
        return None
    return min(ends), max(ends)


def min_uniform_scale(word: str, z: str, n: int):
    """Smallest N so that every length-N window of `word` has a z-free
    length-n window inside it. None when even the whole word fails."""
    free = [z not in w for w in windows(word, n)]
    for big in range(n, len(word) + 1):
        span = big - n
        if all(any(free[i] for i in range(s, s + span + 1))
               for s in range(len(word) - big + 1)):
            return big
    return None


def appearance_scale(word: str, u: str):
    """Smallest A so that every length-A window of `word` contains u."""
    for a in range(len(u), len(word) + 1):
        if all(u in w for w in windows(word, a)):
            return a
    return None
