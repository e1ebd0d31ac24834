"""Computable infinite words and morphism images.

Positions are 1-based throughout: ``W[1, n]`` is the length-n prefix and the
empty prefix is position 0.  Words are represented by a memoizing buffer fed
from either a symbol stream or a direct index formula, so repeated decisions
against the same word never recompute symbols.  Buffer extension is guarded
by a lock; concurrent readers are safe.

``factor-universal`` tags a word that provably contains every finite word
over its alphabet as a factor, together with a computable occurrence bound.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import count, product
from typing import Callable, Iterable, Iterator

from .automata import Alphabet, Automaton, Symbol, Word, as_word

FACTOR_UNIVERSAL = "factor-universal"
UNKNOWN = "unknown"


class MorphismStallError(RuntimeError):
    """Raised when resolving a morphism image consumes only erasing images."""


class _Buffered:
    """Shared memoizing machinery for infinite sequences."""

    def __init__(self, source: Callable[[], Iterator] | None, index_fn: Callable[[int], object] | None):
        if (source is None) == (index_fn is None):
            raise ValueError("exactly one of source/index_fn is required")
        self._index_fn = index_fn
        self._buf: list = []
        self._iter = source() if source is not None else None
        self._lock = threading.Lock()

    def _extend_to(self, n: int) -> None:
        if self._index_fn is not None:
            return
        with self._lock:
            while len(self._buf) < n:
                self._buf.append(next(self._iter))

    def _at(self, i: int):
        if i < 1:
            raise IndexError("positions are 1-based")
        if self._index_fn is not None:
            return self._index_fn(i)
        self._extend_to(i)
        return self._buf[i - 1]

    def _prefix(self, n: int) -> tuple:
        if n < 0:
            raise IndexError("prefix length must be non-negative")
        if self._index_fn is not None:
            return tuple(self._index_fn(i) for i in range(1, n + 1))
        self._extend_to(n)
        return tuple(self._buf[:n])

    def _iter_from(self, start: int = 1) -> Iterator:
        if start < 1:
            raise IndexError("positions are 1-based")
        i = start
        if self._index_fn is not None:
            while True:
                yield self._index_fn(i)
                i += 1
        buf = self._buf
        while True:
            if len(buf) < i:
                self._extend_to(i + 1023)
            yield buf[i - 1]
            i += 1


class InfiniteWord(_Buffered):
    """A computable infinite word over a finite alphabet."""

    def __init__(
        self,
        alphabet: Alphabet,
        source: Callable[[], Iterator[Symbol]] | None = None,
        index_fn: Callable[[int], Symbol] | None = None,
        universality: str = UNKNOWN,
        occurrence_bound: Callable[[Word], int] | None = None,
    ):
        super().__init__(source, index_fn)
        self.alphabet = alphabet
        self.universality = universality
        self.occurrence_bound = occurrence_bound

    def symbol_at(self, i: int) -> Symbol:
        return self._at(i)

    def prefix(self, n: int) -> Word:
        return self._prefix(n)

    def segment(self, lo: int, hi: int) -> Word:
        """Symbols at positions lo..hi inclusive."""
        if lo < 1 or hi < lo - 1:
            raise IndexError("bad segment bounds")
        return self.prefix(hi)[lo - 1 :]

    def iter_from(self, start: int = 1) -> Iterator[Symbol]:
        return self._iter_from(start)


class IndexedInfiniteWord(_Buffered):
    """An infinite word over the countable indexed alphabet a_1, a_2, ...

    Symbols are positive integers (the indices).
    """

    def __init__(
        self,
        source: Callable[[], Iterator[int]] | None = None,
        index_fn: Callable[[int], int] | None = None,
        universality: str = UNKNOWN,
        occurrence_bound: Callable[[tuple[int, ...]], int] | None = None,
    ):
        super().__init__(source, index_fn)
        self.universality = universality
        self.occurrence_bound = occurrence_bound

    def symbol_index_at(self, i: int) -> int:
        return self._at(i)

    def prefix(self, n: int) -> tuple[int, ...]:
        return self._prefix(n)

    def iter_from(self, start: int = 1) -> Iterator[int]:
        return self._iter_from(start)


@dataclass(frozen=True)
class EffectiveMorphism:
    """A computable map from indexed symbols to words over a finite alphabet.

    ``image(k)`` is the image of the k-th indexed symbol.  The optional
    ``image_language_oracle`` decides, for a regular language given as an
    automaton, whether it intersects the set of all images; reductions to
    automata over the indexed alphabet need it to decide transition
    existence.
    """

    alphabet: Alphabet
    image: Callable[[int], Word]
    image_language_oracle: Callable[[Automaton], bool] | None = None

    @classmethod
    def index_periodic(cls, images: Iterable[Word | str], alphabet: Alphabet) -> "EffectiveMorphism":
        """Images cycle through a finite list by index residue; oracle included."""
        from .automata import Nfa, is_empty, determinize, intersect, literal_dfa, union

        fixed = tuple(as_word(w) for w in images)
        if not fixed:
            raise ValueError("need at least one image")

        def image(k: int) -> Word:
            if k < 1:
                raise IndexError("indices are 1-based")
            return fixed[(k - 1) % len(fixed)]

        image_set = None
        for w in set(fixed):
            d = literal_dfa(w, alphabet)
            image_set = d if image_set is None else union(image_set, d)

        def oracle(r: Automaton) -> bool:
            d = r if not isinstance(r, Nfa) else determinize(r)
            return not is_empty(intersect(d, image_set))

        return cls(alphabet, image, oracle)


def champernowne(alphabet: Alphabet) -> InfiniteWord:
    """All non-empty words in shortlex order, concatenated.

    Factor-universal: every word w occurs no later than the end of its own
    enumeration block, which is what ``occurrence_bound`` computes.
    """
    k = len(alphabet)

    def source() -> Iterator[Symbol]:
        for length in count(1):
            for tup in product(alphabet.symbols, repeat=length):
                yield from tup

    def occurrence_bound(w: Word | str) -> int:
        word = as_word(w)
        m = len(word)
        if m == 0:
            return 1
        before = sum(length * k**length for length in range(1, m))
        rank = 0
        for s in word:
            rank = rank * k + alphabet.index(s)
        return before + (rank + 1) * m

    return InfiniteWord(
        alphabet, source=source, universality=FACTOR_UNIVERSAL, occurrence_bound=occurrence_bound
    )


def ultimately_periodic(u: Word | str, v: Word | str, alphabet: Alphabet | None = None) -> InfiniteWord:
    """The word ``u v^omega`` via direct index arithmetic (no buffering)."""
    stem, loop = as_word(u), as_word(v)
    if not loop:
        raise ValueError("periodic part must be non-empty")
    if alphabet is None:
        seen: list[Symbol] = []
        for s in stem + loop:
            if s not in seen:
                seen.append(s)
        alphabet = Alphabet(tuple(seen))

    def index_fn(i: int) -> Symbol:
        if i <= len(stem):
            return stem[i - 1]
        return loop[(i - len(stem) - 1) % len(loop)]

    return InfiniteWord(alphabet, index_fn=index_fn)


def _universal_round_words(n: int) -> Iterator[tuple[int, ...]]:
    """Words newly emitted in round n, in shortlex order of index sequences."""
    for length in range(1, n + 1):
        for tup in product(range(1, n + 1), repeat=length):
            if length == n or max(tup) == n:
                yield tup


def universal_round_length(n: int) -> int:
    """Number of symbols contributed by round n (closed form, no generation)."""
    total = n * n**n
    for length in range(1, n):
        total += length * (n**length - (n - 1) ** length)
    return total


def universal_round_end(r: int) -> int:
    """Position of the last symbol of round r."""
    return sum(universal_round_length(n) for n in range(1, r + 1))


def universal_indexed_word() -> IndexedInfiniteWord:
    """Factor-universal word over the indexed alphabet.

    Round n emits every index sequence of length <= n over indices <= n that
    no earlier round emitted, in shortlex order; a sequence s is therefore
    emitted in round max(len(s), max(s)), which gives the occurrence bound.
    """

    def source() -> Iterator[int]:
        for n in count(1):
            for tup in _universal_round_words(n):
                yield from tup

    def occurrence_bound(seq: tuple[int, ...]) -> int:
        seq = tuple(seq)
        if not seq:
            return 1
        if min(seq) < 1:
            raise IndexError("indices are 1-based")
        return universal_round_end(max(len(seq), max(seq)))

    return IndexedInfiniteWord(
        source=source, universality=FACTOR_UNIVERSAL, occurrence_bound=occurrence_bound
    )


def indexed_periodic(cycle: Iterable[int]) -> IndexedInfiniteWord:
    """The indexed word repeating the given finite index sequence forever."""
    seq = tuple(cycle)
    if not seq:
        raise ValueError("cycle must be non-empty")
    return IndexedInfiniteWord(index_fn=lambda i: seq[(i - 1) % len(seq)])


def apply_morphism(
    phi: EffectiveMorphism, w: IndexedInfiniteWord, stall_limit: int = 100_000
) -> InfiniteWord:
    """Symbol-wise image of an indexed word under a morphism.

    Erasing images are fine as long as non-erasing ones keep coming; a run of
    ``stall_limit`` consecutive erasing images aborts with MorphismStallError
    since the image would not be an infinite word within the budget.
    """

    def source() -> Iterator[Symbol]:
        erased = 0
        for idx in w.iter_from(1):
            img = phi.image(idx)
            if img:
                erased = 0
                yield from img
            else:
                erased += 1
                if erased > stall_limit:
                    raise MorphismStallError(
                        f"{stall_limit} consecutive erasing images; image word stalled"
                    )

    return InfiniteWord(phi.alphabet, source=source)


def factor_search(w: InfiniteWord, needle: Word | str, limit: int) -> int | None:
    """Least start position of ``needle`` inside ``W[1, limit]``, or None.

    The empty word occurs at position 1.
    """
    pattern = as_word(needle)
    if not pattern:
        return 1
    hay = w.prefix(limit)
    if all(len(s) == 1 for s in w.alphabet.symbols):
        pos = "".join(hay).find("".join(pattern))
        return pos + 1 if pos >= 0 else None
    m = len(pattern)
    for i in range(len(hay) - m + 1):
        if hay[i : i + m] == pattern:
            return i + 1
    return None


def indexed_factor_search(w: IndexedInfiniteWord, needle: Iterable[int], limit: int) -> int | None:
    """Least start position of an index sequence inside the indexed word's prefix."""
    pattern = tuple(needle)
    if not pattern:
        return 1
    hay = w.prefix(limit)
    if max(pattern) < 256 and (not hay or max(hay) < 256):
        pos = bytes(hay).find(bytes(pattern))
        return pos + 1 if pos >= 0 else None
    m = len(pattern)
    for i in range(len(hay) - m + 1):
        if hay[i : i + m] == pattern:
            return i + 1
    return None
