"""Bridges between language realizability and prefix realizability.

Three constructions live here:

* ``filter_to_word`` / ``rr_to_prefix`` / ``prefix_via_rr``: given a language
  L with a computable enumeration, the morphism sending the k-th indexed
  symbol to the k-th enumerated word followed by a separator turns the
  factor-universal indexed word into a word whose #-delimited chunks range
  over all of L.  Non-emptiness of L with a regular language R then
  coincides with prefix realizability of ``(Sigma* #)* R #`` along that
  word, and the converse direction is decided through the effective-automata
  reduction using an oracle for "does this regular language meet L".

* A total bijection between positive integers and canonical binary-alphabet
  deterministic automata, enumerated by state count and then by transition
  table and accepting mask.

* ``theorem1_word``: a diagonal word assembled in stages against that
  enumeration.  Stage n appends one block per machine of the supplied list
  that is still running after n steps, then a patch word chosen so that the
  n-th canonical automaton passes an accepting state if any block-disciplined
  continuation could ever make it do so.  Prefix realizability along this
  word is decided exactly by ``decide_prefix_theorem1`` without fuel.

Blocks are words ``1 0^m 1`` (m >= 1 is the rank); block concatenations are
self-delimiting, so a stage's discipline is checkable from the emitted
ranks alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import count
from typing import Callable

from .automata import (
    Alphabet,
    AlphabetMismatchError,
    Automaton,
    Dfa,
    Nfa,
    State,
    Symbol,
    Word,
    as_word,
    concatenate,
    dead_lock_states,
    determinize,
    intersect,
    is_empty,
    literal_dfa,
    relabel_bfs,
    shortlex_smallest,
    with_initial,
)
from .decide import Fuel, NO, Outcome, Verdict, YES
from .effective import decide_prefix_morphism
from .omega import absorbing_accepting
from .words import (
    EffectiveMorphism,
    IndexedInfiniteWord,
    InfiniteWord,
    apply_morphism,
    universal_indexed_word,
)

BINARY = Alphabet(("0", "1"))


# ---------------------------------------------------------------------------
# filter languages and the realizability correspondence


@dataclass
class FilterLanguage:
    """A language with decidable membership and a computable enumeration.

    ``enumeration(i)`` (1-based) must be injective and cover the language.
    ``rr`` decides, for a regular language given as an automaton over the
    same alphabet, whether it intersects this language.
    """

    alphabet: Alphabet
    membership: Callable[[Word], bool]
    enumeration: Callable[[int], Word]
    rr: Callable[[Automaton], bool] | None = None

    @classmethod
    def from_dfa(cls, d: Dfa) -> "FilterLanguage":
        """Regular filter: shortlex enumeration, product-emptiness rr decider."""
        cache: list[Word] = []
        lengths = count(0)
        # L is infinite iff it has a word of length >= |Q|; precompute the flag
        # so enumeration can fail loudly instead of scanning forever.
        pump = len(d.states)
        long_words = _min_length_dfa(d.alphabet, pump)
        finite = is_empty(intersect(d, long_words))

        def extend_to(i: int) -> None:
            from itertools import product

            while len(cache) < i:
                length = next(lengths)
                if finite and length > pump:
                    raise IndexError(f"language is finite with {len(cache)} words")
                for tup in product(d.alphabet.symbols, repeat=length):
                    if d.accepts(tup):
                        cache.append(tup)

        def enumeration(i: int) -> Word:
            if i < 1:
                raise IndexError("enumeration is 1-based")
            extend_to(i)
            return cache[i - 1]

        def rr(r: Automaton) -> bool:
            other = determinize(r) if isinstance(r, Nfa) else r
            return not is_empty(intersect(other, d))

        return cls(d.alphabet, lambda w: d.accepts(as_word(w)), enumeration, rr)


def _min_length_dfa(alphabet: Alphabet, n: int) -> Dfa:
    """Automaton for 'length at least n'."""
    states = tuple(range(n + 1))
    delta = {(i, s): min(i + 1, n) for i in states for s in alphabet}
    return Dfa(alphabet, states, delta, 0, frozenset({n}))


def filter_to_word(
    lang: FilterLanguage, hash_symbol: Symbol = "#"
) -> tuple[EffectiveMorphism, InfiniteWord]:
    """Morphism ``k -> w_k #`` plus its image of the universal indexed word.

    The image word's #-delimited chunks enumerate the filter language, so a
    regular language R over the extended alphabet meets the image set iff
    stripping a trailing # and restricting to the base alphabet yields a
    language meeting the filter language; that is exactly what the oracle
    asks the filter's rr decider.
    """
    if hash_symbol in lang.alphabet:
        raise ValueError(f"separator {hash_symbol!r} already in the filter alphabet")
    sigma_hash = Alphabet(lang.alphabet.symbols + (hash_symbol,))

    def image(k: int) -> Word:
        return lang.enumeration(k) + (hash_symbol,)

    def oracle(r: Automaton) -> bool:
        if lang.rr is None:
            raise ValueError("filter language carries no rr decider")
        d = determinize(r) if isinstance(r, Nfa) else r
        accepting = frozenset(q for q in d.states if d.delta[(q, hash_symbol)] in d.accepting)
        delta = {(q, s): d.delta[(q, s)] for q in d.states for s in lang.alphabet}
        stripped = Dfa(lang.alphabet, d.states, delta, d.initial, accepting)
        return lang.rr(stripped)

    phi = EffectiveMorphism(sigma_hash, image, oracle)
    return phi, apply_morphism(phi, universal_indexed_word())


def rr_to_prefix(r: Dfa, hash_symbol: Symbol = "#") -> Dfa:
    """Automaton for ``(Sigma* #)* L(r) #`` over the #-extended alphabet.

    A prefix of the enumerating word lies in this language iff one of its
    complete chunks is a word of L(r), which happens for some prefix iff the
    filter language meets L(r).
    """
    if hash_symbol in r.alphabet:
        raise ValueError(f"separator {hash_symbol!r} already in the automaton alphabet")
    sigma_hash = Alphabet(r.alphabet.symbols + (hash_symbol,))

    # (Sigma* #)*: empty or ending in #
    chunks = Dfa(
        sigma_hash,
        ("at_boundary", "mid_chunk"),
        {
            ("at_boundary", hash_symbol): "at_boundary",
            ("mid_chunk", hash_symbol): "at_boundary",
            **{("at_boundary", s): "mid_chunk" for s in r.alphabet},
            **{("mid_chunk", s): "mid_chunk" for s in r.alphabet},
        },
        "at_boundary",
        frozenset({"at_boundary"}),
    )

    sink = ("lifted_sink",)
    lifted_states = r.states + (sink,)
    lifted_delta = {(q, s): r.delta[(q, s)] for q in r.states for s in r.alphabet}
    for q in r.states:
        lifted_delta[(q, hash_symbol)] = sink
    for s in sigma_hash:
        lifted_delta[(sink, s)] = sink
    lifted = Dfa(sigma_hash, lifted_states, lifted_delta, r.initial, r.accepting)

    closing = literal_dfa((hash_symbol,), sigma_hash)
    return relabel_bfs(determinize(concatenate(concatenate(chunks, lifted), closing)))


def prefix_via_rr(
    a: Dfa,
    lang: FilterLanguage,
    fuel: Fuel | int | None = None,
    w: IndexedInfiniteWord | None = None,
) -> Outcome:
    """Decide prefix realizability along the filter's enumerating word.

    Runs the effective-automata reduction with the filter-backed oracle; the
    default fuel is derived from a definitive index sequence, so the call is
    total (on No instances the initial dead-lock check already answers).
    """
    phi, _image = filter_to_word(lang)
    if w is None:
        w = universal_indexed_word()
    return decide_prefix_morphism(a, phi, w, fuel)


def rr_pipeline(r: Dfa, lang: FilterLanguage, hash_symbol: Symbol = "#") -> Outcome:
    """End-to-end: does the filter language meet L(r)?

    Builds the prefix-realizability instance with ``rr_to_prefix`` and
    decides it with ``prefix_via_rr``.
    """
    return prefix_via_rr(rr_to_prefix(r, hash_symbol), lang)


# ---------------------------------------------------------------------------
# canonical enumeration of binary deterministic automata


def canonical_state_count_block(s: int) -> int:
    """How many canonical automata have exactly s states."""
    return s ** (2 * s) * 2**s


def _is_canonical(a: Dfa) -> bool:
    return (
        a.alphabet == BINARY
        and a.states == tuple(f"q{i}" for i in range(1, len(a.states) + 1))
        and a.initial == "q1"
    )


def decode_dfa(i: int) -> Dfa:
    """The i-th canonical automaton (1-based) over the binary alphabet.

    Within one state count the order is lexicographic on the transition
    table (row-major over states, symbol order 0 then 1) followed by the
    accepting bitmask (bit j set = state j+1 accepting).
    """
    if i < 1:
        raise IndexError("canonical indices are 1-based")
    s = 1
    offset = 0
    while i > offset + canonical_state_count_block(s):
        offset += canonical_state_count_block(s)
        s += 1
    rank = i - offset - 1
    mask = rank & ((1 << s) - 1)
    table_rank = rank >> s
    digits = []
    for _ in range(2 * s):
        digits.append(table_rank % s)
        table_rank //= s
    digits.reverse()
    states = tuple(f"q{j}" for j in range(1, s + 1))
    delta: dict[tuple[State, Symbol], State] = {}
    it = iter(digits)
    for q in states:
        for sym in BINARY:
            delta[(q, sym)] = states[next(it)]
    accepting = frozenset(states[j] for j in range(s) if mask >> j & 1)
    return Dfa(BINARY, states, delta, "q1", accepting)


def encode_dfa(a: Dfa) -> int:
    """Canonical index of a binary-alphabet automaton.

    Automata already in canonical shape (states q1..qs, initial q1) are read
    off directly, which makes decode/encode mutually inverse; anything else
    is first normalized by breadth-first relabeling of its reachable part
    (language-preserving).
    """
    if len(a.alphabet) != 2:
        raise ValueError("canonical enumeration covers binary alphabets only")
    canon = a if _is_canonical(a) else relabel_bfs(_as_binary(a))
    s = len(canon.states)
    position = {q: j for j, q in enumerate(canon.states)}
    table_rank = 0
    for q in canon.states:
        for sym in canon.alphabet:
            table_rank = table_rank * s + position[canon.delta[(q, sym)]]
    mask = 0
    for j, q in enumerate(canon.states):
        if q in canon.accepting:
            mask |= 1 << j
    offset = sum(canonical_state_count_block(k) for k in range(1, s))
    return offset + (table_rank << s) + mask + 1


def _as_binary(a: Dfa) -> Dfa:
    """Rename a two-symbol alphabet to 0/1 positionally (no-op when already 0/1)."""
    if a.alphabet == BINARY:
        return a
    rename = dict(zip(a.alphabet.symbols, BINARY.symbols))
    delta = {(q, rename[s]): a.delta[(q, s)] for q in a.states for s in a.alphabet}
    return Dfa(BINARY, a.states, delta, a.initial, a.accepting)


# ---------------------------------------------------------------------------
# step-simulable machines


@dataclass
class _MachineSim:
    """Incremental single-machine simulation with halt memoization."""

    start_state: str
    rules: dict[tuple[str, str], tuple[str, str, str]]  # (state, read) -> (write, move, next)
    state: str = ""
    head: int = 0
    tape: dict[int, str] = field(default_factory=dict)
    steps: int = 0
    halted_at: int | None = None

    def __post_init__(self) -> None:
        self.state = self.start_state

    def _has_move(self) -> bool:
        return (self.state, self.tape.get(self.head, "_")) in self.rules

    def _apply(self) -> None:
        write, move, nxt = self.rules[(self.state, self.tape.get(self.head, "_"))]
        self.tape[self.head] = write
        self.head += {"L": -1, "R": 1, "S": 0}[move]
        self.state = nxt

    def advance(self, n: int) -> None:
        """Simulate until halting or n steps, whichever first."""
        while self.halted_at is None:
            if not self._has_move():
                self.halted_at = self.steps
                return
            if self.steps >= n:
                return
            self._apply()
            self.steps += 1


class MachineList:
    """A finite list of deterministic step-simulable machines on empty input.

    Indices are 1-based; indices beyond the list are treated as machines
    that never halt, which keeps every stage of the diagonal word total.
    """

    def __init__(self, machines: list[_MachineSim], names: list[str] | None = None):
        self._machines = machines
        self.names = names or [f"m{i}" for i in range(1, len(machines) + 1)]

    def __len__(self) -> int:
        return len(self._machines)

    def halts_within(self, k: int, n: int) -> bool:
        """Has machine k (1-based) halted after at most n step applications?"""
        if k < 1:
            raise IndexError("machine indices are 1-based")
        if k > len(self._machines):
            return False
        sim = self._machines[k - 1]
        sim.advance(n)
        return sim.halted_at is not None and sim.halted_at <= n

    def alive_at(self, n: int) -> tuple[int, ...]:
        """Machine indices k <= n still running after n steps, ascending."""
        return tuple(k for k in range(1, n + 1) if not self.halts_within(k, n))


_MOVE = {"L", "R", "S"}


def parse_machines(text: str) -> MachineList:
    """Machine file format: one ``machine:`` section per machine.

        machine: halts-after-three
        start: s0
        trans: s0 _ x R s1
        trans: s1 _ x R s2
        trans: s2 _ x R s3

        machine: loops
        start: a
        trans: a _ _ R a

    A missing transition halts the machine; the blank tape symbol is ``_``.
    """
    machines: list[_MachineSim] = []
    names: list[str] = []
    current_rules: dict[tuple[str, str], tuple[str, str, str]] | None = None
    current_start: str | None = None

    def flush(line_no: int) -> None:
        nonlocal current_rules, current_start
        if current_rules is None:
            return
        if current_start is None:
            raise ValueError(f"line {line_no}: machine {names[-1]!r} has no start: line")
        machines.append(_MachineSim(current_start, current_rules))
        current_rules, current_start = None, None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        tokens = rest.split()
        if key == "machine":
            flush(line_no)
            names.append(tokens[0] if tokens else f"m{len(names) + 1}")
            current_rules = {}
        elif key == "start":
            if current_rules is None or len(tokens) != 1:
                raise ValueError(f"line {line_no}: start: outside machine or malformed")
            current_start = tokens[0]
        elif key == "trans":
            if current_rules is None or len(tokens) != 5:
                raise ValueError(f"line {line_no}: trans line needs: state read write move next")
            state, read, write, move, nxt = tokens
            if move not in _MOVE:
                raise ValueError(f"line {line_no}: move must be one of L R S")
            current_rules[(state, read)] = (write, move, nxt)
        else:
            raise ValueError(f"line {line_no}: unknown section {key!r}")
    flush(len(text.splitlines()) + 1)
    return MachineList(machines, names)


# ---------------------------------------------------------------------------
# blocks and the staged diagonal word


@dataclass(frozen=True)
class Block:
    """The word 1 0^rank 1."""

    rank: int

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("block ranks are non-negative")

    @property
    def word(self) -> Word:
        return ("1",) + ("0",) * self.rank + ("1",)


def block_word_dfa(forbidden_ranks: frozenset[int]) -> Dfa:
    """Automaton for concatenations of blocks whose ranks avoid the given set.

    Counting 0-runs saturates one past the largest forbidden rank; all
    longer runs are equivalent and allowed.
    """
    cap = max(forbidden_ranks, default=0) + 1
    states: tuple[State, ...] = ("b",) + tuple(f"r{i}" for i in range(cap + 1)) + ("x",)
    delta: dict[tuple[State, Symbol], State] = {
        ("b", "0"): "x",
        ("b", "1"): "r0",
        ("x", "0"): "x",
        ("x", "1"): "x",
    }
    for i in range(cap + 1):
        delta[(f"r{i}", "0")] = f"r{min(i + 1, cap)}"
        delta[(f"r{i}", "1")] = "b" if i >= 1 and i not in forbidden_ranks else "x"
    return Dfa(BINARY, states, delta, "b", frozenset({"b"}))


def split_blocks(w: Word) -> list[int]:
    """Ranks of a block-concatenation word; raises on ill-formed input."""
    text = "".join(w)
    if not re.fullmatch(r"(10+1)*", text):
        raise ValueError(f"not a block concatenation: {text!r}")
    return [len(zeros) for zeros in re.findall(r"1(0+)1", text)]


@dataclass(frozen=True)
class Stage:
    """Record of one generation stage of the diagonal word."""

    n: int
    alive: tuple[int, ...]  # machines still running after n steps
    machine_word: Word  # one block per alive machine, ranks ascending
    patch_word: Word  # accepting-passage patch for the n-th automaton
    patch_ranks: tuple[int, ...]
    end: int  # position of the stage's last symbol


class Theorem1Word(InfiniteWord):
    """Diagonal word with per-stage records; fully determined by the machine list."""

    def __init__(self, machines: MachineList):
        self.machines = machines
        self._stages: list[Stage] = []
        super().__init__(BINARY, source=self._generate)

    def _generate(self):
        machines = self.machines
        emitted = 0
        prefix: list[Symbol] = []
        for n in count(1):
            alive = machines.alive_at(n)
            machine_word: Word = tuple(s for k in alive for s in Block(k).word)
            automaton = decode_dfa(n)
            delta = automaton.delta
            q = automaton.initial
            for s in prefix:
                q = delta[(q, s)]
            for s in machine_word:
                q = delta[(q, s)]
            forbidden = frozenset(
                k for k in range(1, min(n, len(machines)) + 1) if machines.halts_within(k, n)
            )
            allowed_blocks = block_word_dfa(forbidden)
            passes = absorbing_accepting(with_initial(automaton, q))
            patch = shortlex_smallest(intersect(passes, allowed_blocks))
            patch_word: Word = patch if patch is not None else ()
            patch_ranks = tuple(split_blocks(patch_word))
            assert not (set(patch_ranks) & forbidden), "patch uses a forbidden block"
            emitted += len(machine_word) + len(patch_word)
            self._stages.append(Stage(n, alive, machine_word, patch_word, patch_ranks, emitted))
            prefix.extend(machine_word)
            prefix.extend(patch_word)
            yield from machine_word
            yield from patch_word

    def ensure_stage(self, n: int) -> Stage:
        while len(self._stages) < n:
            self._extend_to(len(self._buf) + 256)
        stage = self._stages[n - 1]
        self._extend_to(stage.end)
        return stage

    def stage(self, n: int) -> Stage:
        return self.ensure_stage(n)


def theorem1_word(machines: MachineList) -> Theorem1Word:
    """The staged diagonal word for a machine list (deterministic per list)."""
    return Theorem1Word(machines)


def decide_prefix_theorem1(a: Dfa, machines: MachineList, word: Theorem1Word | None = None) -> Verdict:
    """Fuel-free prefix realizability along the diagonal word.

    The word's stage for the automaton's own canonical index settles the
    question: every later symbol extends the prefix by blocks the stage's
    patch already accounted for, so if the run has not passed an accepting
    state by the end of that stage it never will.
    """
    if a.alphabet != BINARY:
        raise AlphabetMismatchError("the diagonal word is over the binary alphabet 0/1")
    w = word if word is not None else theorem1_word(machines)
    index = encode_dfa(a)
    stage = w.ensure_stage(index)
    prefix = w.prefix(stage.end)

    dead = dead_lock_states(a)
    q = a.initial
    if q in a.accepting:
        return Verdict(YES, 0, 0)
    if q in dead:
        return Verdict(NO, 0, 0)
    n = 0
    for s in prefix:
        n += 1
        q = a.delta[(q, s)]
        if q in a.accepting:
            return Verdict(YES, n, n)
        if q in dead:
            return Verdict(NO, n, n)
    return Verdict(NO, stage.end, stage.end)
