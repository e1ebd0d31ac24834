"""Fuel-bounded deciders for prefix membership along an infinite word.

``decide_prefix`` answers whether the language of a deterministic automaton
contains some prefix of the word: the run is simulated until it passes an
accepting state (Yes), enters a dead-lock state (No), or runs out of fuel.
Against a factor-universal word both resolutions are guaranteed to arrive no
later than the occurrence bound of a definitive word, so with that fuel the
decider is total.

``decide_buchi`` answers whether infinitely many prefixes are in the
language: it runs the prefix decider on the variant automaton whose
accepting set is the dead-lock set of the original and negates the answer.
A Yes there means the original run is trapped away from accepting states
(finitely many hits); a No means it never will be (infinitely many).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .automata import AlphabetMismatchError, Dfa, dead_lock_states
from .words import InfiniteWord

YES = "Yes"
NO = "No"


@dataclass(frozen=True)
class Fuel:
    """Positive simulation budget, counted in symbols read."""

    max_steps: int

    def __post_init__(self) -> None:
        if self.max_steps <= 0:
            raise ValueError("fuel must be positive")

    @classmethod
    def of(cls, fuel: "Fuel | int") -> "Fuel":
        return fuel if isinstance(fuel, Fuel) else cls(fuel)


@dataclass(frozen=True)
class Verdict:
    """Decision outcome with its evidence position.

    For Yes the evidence is the least prefix length at which the simulation
    visited an accepting state; for No it is the position at which it
    entered a dead-lock (0 means the initial state already decided it).
    """

    answer: str
    evidence: int
    steps_used: int


@dataclass(frozen=True)
class FuelExhausted:
    """The simulation consumed its budget without resolving."""

    steps_used: int


Outcome = Verdict | FuelExhausted


def _check_same_alphabet(a: Dfa, w: InfiniteWord) -> None:
    if a.alphabet != w.alphabet:
        raise AlphabetMismatchError(
            f"automaton alphabet {a.alphabet.symbols} differs from word alphabet {w.alphabet.symbols}"
        )


def decide_prefix(
    a: Dfa,
    w: InfiniteWord,
    fuel: Fuel | int,
    on_step: Callable[[int, object], None] | None = None,
) -> Outcome:
    """Does L(a) contain a prefix of w?  Resolution by accept or dead-lock.

    ``on_step(position, state)`` is called for position 0 (initial state)
    and after every symbol read, before the verdict checks.
    """
    _check_same_alphabet(a, w)
    budget = Fuel.of(fuel).max_steps
    dead = dead_lock_states(a)
    q = a.initial
    if on_step is not None:
        on_step(0, q)
    if q in a.accepting:
        return Verdict(YES, 0, 0)
    if q in dead:
        return Verdict(NO, 0, 0)
    delta = a.delta
    accepting = a.accepting
    n = 0
    for s in w.iter_from(1):
        n += 1
        q = delta[(q, s)]
        if on_step is not None:
            on_step(n, q)
        if q in accepting:
            return Verdict(YES, n, n)
        if q in dead:
            return Verdict(NO, n, n)
        if n >= budget:
            return FuelExhausted(n)
    raise AssertionError("unreachable: infinite words do not end")


def deadlock_accepting_variant(a: Dfa) -> Dfa:
    """Same transition structure, accepting exactly the dead-lock states of a."""
    return Dfa(a.alphabet, a.states, a.delta, a.initial, dead_lock_states(a))


def decide_buchi(
    a: Dfa,
    w: InfiniteWord,
    fuel: Fuel | int,
    on_step: Callable[[int, object], None] | None = None,
) -> Outcome:
    """Does L(a) contain infinitely many prefixes of w?

    The run of ``a`` eventually commits: either it enters a dead-lock of
    ``a`` (finitely many accepted prefixes from then on) or it reaches a
    state from which dead-locks are unreachable (accepting states stay
    reachable forever, and a factor-universal word realizes them forever).
    Both events are exactly the resolutions of the prefix decider on the
    dead-lock-accepting variant, so its answer is negated.
    """
    inner = decide_prefix(deadlock_accepting_variant(a), w, fuel, on_step)
    if isinstance(inner, FuelExhausted):
        return inner
    flipped = NO if inner.answer == YES else YES
    return Verdict(flipped, inner.evidence, inner.steps_used)


def brute_force_prefix_check(a: Dfa, w: InfiniteWord, upto: int) -> int | None:
    """Oracle: least n <= upto with W[1, n] accepted, by plain incremental scan."""
    _check_same_alphabet(a, w)
    q = a.initial
    if q in a.accepting:
        return 0
    delta = a.delta
    accepting = a.accepting
    n = 0
    for s in w.iter_from(1):
        if n >= upto:
            return None
        n += 1
        q = delta[(q, s)]
        if q in accepting:
            return n
    return None


def count_accepted_prefixes(a: Dfa, w: InfiniteWord, upto: int) -> int:
    """How many n in [0, upto] have W[1, n] accepted."""
    _check_same_alphabet(a, w)
    q = a.initial
    total = 1 if q in a.accepting else 0
    delta = a.delta
    accepting = a.accepting
    n = 0
    for s in w.iter_from(1):
        if n >= upto:
            break
        n += 1
        q = delta[(q, s)]
        if q in accepting:
            total += 1
    return total
