"""Definitive words and the definitive language of a deterministic automaton.

A word w is definitive for an automaton when, reading w from *any* state,
the run either passes through an accepting state (endpoints included) or
ends in a dead-lock state, i.e. a state from which no accepting state is
reachable.  After such a word the automaton's answer on every continuation
is already determined per start state, which is what makes fuel-free
decisions against sufficiently rich infinite words possible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import (
    Dfa,
    State,
    Symbol,
    Word,
    EPSILON,
    as_word,
    dead_lock_states,
    relabel_bfs,
    shortlex_smallest,
    with_initial,
)
from .omega import absorbing_accepting


@dataclass(frozen=True)
class PassedAccepting:
    """Outcome of one start state: an accepting state was visited at this position.

    Position counts symbols read; 0 means the start state itself is accepting.
    """

    position: int


@dataclass(frozen=True)
class EndedDeadLock:
    """Outcome of one start state: the run finished inside this dead-lock state."""

    state: State


Outcome = PassedAccepting | EndedDeadLock


@dataclass(frozen=True)
class DefinitiveCertificate:
    """A definitive word together with the per-start-state evidence."""

    word: Word
    outcomes: dict[State, Outcome]


@dataclass(frozen=True)
class Refutation:
    """A start state whose run neither passes accepting nor ends dead-locked."""

    state: State


def is_definitive(a: Dfa, w: Word | str) -> DefinitiveCertificate | Refutation:
    """Check the definitive-word condition from every start state.

    Returns a certificate on success and a ``Refutation`` naming a violating
    start state otherwise.
    """
    word = as_word(w)
    dead = dead_lock_states(a)
    outcomes: dict[State, Outcome] = {}
    for start in a.states:
        q = start
        hit = None
        if q in a.accepting:
            hit = 0
        else:
            for i, s in enumerate(word, start=1):
                q = a.step(q, s)
                if q in a.accepting:
                    hit = i
                    break
        if hit is not None:
            outcomes[start] = PassedAccepting(hit)
        elif q in dead:
            outcomes[start] = EndedDeadLock(q)
        else:
            return Refutation(start)
    return DefinitiveCertificate(word, outcomes)


def _witness_to_accepting(a: Dfa, start: State) -> Word | None:
    """Shortlex-least word driving ``start`` into an accepting state, if any."""
    return shortlex_smallest(with_initial(a, start))


def find_definitive_word(a: Dfa) -> Word:
    """Construct a definitive word by folding per-state accepting witnesses.

    Iterates over the states in declaration order.  At each step the word
    built so far is replayed from the next start state; the witness of the
    state it lands in is appended (dead-locked states contribute nothing).
    The result handles every start state by construction.
    """
    dead = dead_lock_states(a)
    witness: dict[State, Word] = {}
    for q in a.states:
        if q in dead:
            witness[q] = EPSILON
        else:
            w = _witness_to_accepting(a, q)
            assert w is not None  # q not dead-locked means an accepting state is reachable
            witness[q] = w
    word: Word = EPSILON
    for q in a.states:
        landing = a.run(word, start=q)
        word = word + witness[landing]
    return word


def _absorbed_vector_bfs(a: Dfa):
    """Breadth-first exploration of the product of accept-or-dead absorbed copies.

    One copy of the automaton runs from every state simultaneously; a
    component is absorbed (marked done) as soon as it touches an accepting or
    dead-lock state.  A fully absorbed vector corresponds to a definitive
    word.  Yields (vector, word, delta_dict_entry) in shortlex discovery
    order; the caller decides when to stop.
    """
    dead = dead_lock_states(a)
    done = object()  # absorption marker

    def absorb(q: State):
        return done if q in a.accepting or q in dead else q

    initial = tuple(absorb(q) for q in a.states)
    return initial, done, dead, absorb


def definitive_witness(a: Dfa) -> Word | None:
    """Shortlex-least definitive word, without materializing the language.

    Breadth-first search over absorption vectors; the first fully absorbed
    vector is reached by the shortlex-least definitive word.  Returns None
    only if no definitive word exists, which cannot happen for total
    automata (every automaton admits one), but the search is honest anyway.
    """
    initial, done, _dead, absorb = _absorbed_vector_bfs(a)
    if all(c is done for c in initial):
        return EPSILON
    seen = {initial}
    queue = deque([(initial, EPSILON)])
    while queue:
        vec, word = queue.popleft()
        for s in a.alphabet:
            nxt = tuple(c if c is done else absorb(a.delta[(c, s)]) for c in vec)
            if nxt in seen:
                continue
            seen.add(nxt)
            if all(c is done for c in nxt):
                return word + (s,)
            queue.append((nxt, word + (s,)))
    return None


def definitive_language(a: Dfa) -> Dfa:
    """Automaton accepting exactly the definitive words of ``a``.

    Built as the intersection over all start states q of the languages
    "the run from q passes accepting-or-dead-lock", each realized by making
    those states absorbing-accepting in a copy started at q.  The product is
    explored on reachable absorption vectors only and relabeled breadth-first.
    """
    dead = dead_lock_states(a)
    target = a.accepting | dead
    absorbed = absorbing_accepting(
        Dfa(a.alphabet, a.states, a.delta, a.initial, frozenset(target))
    )
    done = object()

    def absorb(q: State):
        return done if q in target else q

    initial = tuple(absorb(q) for q in a.states)
    seen = {initial}
    order = [initial]
    queue = deque([initial])
    delta: dict[tuple[State, Symbol], State] = {}
    while queue:
        vec = queue.popleft()
        for s in a.alphabet:
            nxt = tuple(c if c is done else absorb(absorbed.delta[(c, s)]) for c in vec)
            delta[(vec, s)] = nxt
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    accepting = frozenset(vec for vec in order if all(c is done for c in vec))
    product = Dfa(a.alphabet, tuple(order), delta, initial, accepting)
    return relabel_bfs(product, prefix="d", start=0)
