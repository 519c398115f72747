"""Factor queries over a finite prefix via a suffix automaton.

FactorIndex answers membership, counting and enumeration questions about the
factors (contiguous substrings) of one string. When built with a Horizon it
refuses length queries past the trusted range, so stale prefix artifacts do
not leak into statements about the infinite word.
"""

from __future__ import annotations

from functools import cached_property

from .words import Horizon, SpecError


class CapExceeded(RuntimeError):
    """An enumeration would materialize more factors than the configured cap."""


class FactorIndex:
    """Suffix automaton of one word with dense per-letter transitions.

    States are parallel arrays. Each state covers the factors of lengths
    [link_len + 1, len] sharing the same set of ending positions; that
    interval structure is what makes complexity counting and recurrence
    scanning linear.
    """

    def __init__(self, word: str, *, horizon: Horizon | None = None,
                 enumeration_cap: int = 10**6):
        if not word:
            raise SpecError("cannot index an empty word")
        if horizon is not None and horizon.prefix_len > len(word):
            raise SpecError(
                f"horizon expects a prefix of length {horizon.prefix_len}, "
                f"got {len(word)}"
            )
        self.word = word
        self.horizon = horizon
        self.enumeration_cap = enumeration_cap
        self.letters = sorted(set(word))
        self._code = {c: i for i, c in enumerate(self.letters)}
        k = len(self.letters)

        # online suffix automaton construction
        self._len = [0]
        self._link = [-1]
        self._trans = [[-1] * k]
        # end position of the prefix a state was created for; -1 on clones
        self._direct_end = [-1]
        last = 0
        for pos, ch in enumerate(word, start=1):
            c = self._code[ch]
            cur = self._new_state(self._len[last] + 1, pos)
            p = last
            while p != -1 and self._trans[p][c] == -1:
                self._trans[p][c] = cur
                p = self._link[p]
            if p == -1:
                self._link[cur] = 0
            else:
                q = self._trans[p][c]
                if self._len[p] + 1 == self._len[q]:
                    self._link[cur] = q
                else:
                    clone = self._new_state(self._len[p] + 1, -1)
                    self._trans[clone] = self._trans[q][:]
                    self._link[clone] = self._link[q]
                    while p != -1 and self._trans[p][c] == q:
                        self._trans[p][c] = clone
                        p = self._link[p]
                    self._link[q] = clone
                    self._link[cur] = clone
            last = cur

    def _new_state(self, length: int, direct_end: int) -> int:
        self._len.append(length)
        self._link.append(-1)
        self._trans.append([-1] * len(self.letters))
        self._direct_end.append(direct_end)
        return len(self._len) - 1

    # -- basic queries ------------------------------------------------------

    def walk(self, u: str) -> int:
        """State reached by reading u from the root, or -1 if u is no factor."""
        state = 0
        for ch in u:
            c = self._code.get(ch)
            if c is None:
                return -1
            state = self._trans[state][c]
            if state == -1:
                return -1
        return state

    def is_factor(self, u: str) -> bool:
        return self.walk(u) != -1

    def _check_n(self, n: int) -> None:
        if n < 0:
            raise SpecError("factor length must be nonnegative")
        if self.horizon is not None and n > self.horizon.n_max:
            raise SpecError(
                f"factor length {n} is past the trusted horizon "
                f"{self.horizon.n_max}"
            )

    @cached_property
    def _length_counts(self) -> list[int]:
        # distinct factors of length n = states whose interval covers n
        diff = [0] * (len(self.word) + 2)
        for v in range(1, len(self._len)):
            lo = self._len[self._link[v]] + 1
            hi = self._len[v]
            diff[lo] += 1
            diff[hi + 1] -= 1
        counts = [1]  # the empty factor
        running = 0
        for n in range(1, len(self.word) + 1):
            running += diff[n]
            counts.append(running)
        return counts

    def complexity(self, n: int) -> int:
        """Number of distinct factors of length n."""
        self._check_n(n)
        if n > len(self.word):
            return 0
        return self._length_counts[n]

    def complexity_profile(self, n_max: int) -> list[int]:
        self._check_n(n_max)
        return [self.complexity(n) for n in range(n_max + 1)]

    # -- enumeration --------------------------------------------------------

    def factors_of_length(self, n: int) -> list[str]:
        """All distinct factors of length n in lexicographic order."""
        self._check_n(n)
        if n == 0:
            return [""]
        if n > len(self.word):
            return []
        if self._length_counts[n] > self.enumeration_cap:
            raise CapExceeded(
                f"{self._length_counts[n]} factors of length {n} exceed the "
                f"cap of {self.enumeration_cap}"
            )
        out: list[str] = []
        path: list[str] = []
        stack: list[tuple[int, int, str]] = []
        codes_desc = range(len(self.letters) - 1, -1, -1)
        for c in codes_desc:
            child = self._trans[0][c]
            if child != -1:
                stack.append((child, 1, self.letters[c]))
        while stack:
            state, depth, letter = stack.pop()
            del path[depth - 1:]
            path.append(letter)
            if depth == n:
                out.append("".join(path))
                continue
            row = self._trans[state]
            for c in codes_desc:
                child = row[c]
                if child != -1:
                    stack.append((child, depth + 1, self.letters[c]))
        return out

    def factors_up_to(self, h: int) -> dict[int, list[str]]:
        """Factors grouped by length for every length from 0 through h."""
        self._check_n(h)
        total = sum(self.complexity(n) for n in range(h + 1))
        if total > self.enumeration_cap:
            raise CapExceeded(
                f"{total} factors up to length {h} exceed the cap of "
                f"{self.enumeration_cap}"
            )
        return {n: self.factors_of_length(n) for n in range(h + 1)}

    def right_special(self, n: int) -> list[str]:
        """Length-n factors with at least two distinct one-letter right
        extensions, lexicographically sorted."""
        out = []
        for u in self.factors_of_length(n):
            row = self._trans[self.walk(u)]
            if sum(1 for t in row if t != -1) >= 2:
                out.append(u)
        return out

    # -- containment counting -----------------------------------------------

    def count_containing(self, u: str, n: int) -> int:
        """Number of distinct length-n factors with u inside them.

        Zero when u is not a factor at all.
        """
        self._check_n(n)
        if not u or not self.is_factor(u) or n < len(u):
            return 0 if u else self.complexity(n)
        return sum(1 for f in self.factors_of_length(n) if u in f)

    def containing_counts(self, u: str, n_max: int) -> list[int]:
        """count_containing(u, n) for every n from 0 through n_max."""
        self._check_n(n_max)
        return [self.count_containing(u, n) for n in range(n_max + 1)]

    # -- occurrence spread ---------------------------------------------------

    @cached_property
    def _end_spread(self) -> tuple[list[int], list[int]]:
        """Per state: smallest and largest ending position of its factors."""
        size = len(self._len)
        big = len(self.word) + 1
        minend = [big] * size
        maxend = [-1] * size
        for v in range(size):
            if self._direct_end[v] != -1:
                minend[v] = maxend[v] = self._direct_end[v]
        # propagate up the link tree, deepest states first
        order = sorted(range(1, size), key=self._len.__getitem__, reverse=True)
        for v in order:
            p = self._link[v]
            if minend[v] < minend[p]:
                minend[p] = minend[v]
            if maxend[v] > maxend[p]:
                maxend[p] = maxend[v]
        return minend, maxend

    def occurrence_spread(self, u: str) -> tuple[int, int] | None:
        """(first, last) ending positions of u in the word, or None."""
        state = self.walk(u)
        if state == -1 or not u:
            return None
        minend, maxend = self._end_spread
        return minend[state], maxend[state]

    def non_recurring_factor(self, h: int) -> str | None:
        """A shortest factor of length <= h without two disjoint occurrences.

        Returns None when every factor up to length h occurs at least twice
        at distance allowing non-overlapping copies. Ties break toward the
        lexicographically least witness.
        """
        self._check_n(h)
        minend, maxend = self._end_spread
        best: tuple[int, str] | None = None
        for v in range(1, len(self._len)):
            lo = self._len[self._link[v]] + 1
            if lo > h:
                continue
            hi = min(self._len[v], h)
            spread = maxend[v] - minend[v]
            n_fail = max(lo, spread + 1)
            if n_fail > hi:
                continue
            witness = self.word[minend[v] - n_fail: minend[v]]
            key = (n_fail, witness)
            if best is None or key < best:
                best = key
        return None if best is None else best[1]
