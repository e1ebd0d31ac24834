"""Acceptance of ultimately periodic words by omega-automata.

A Buchi automaton is an Nfa read with omega-semantics (some run visits an
accepting state infinitely often).  Muller automata are deterministic and
accept when the set of states visited infinitely often is a member of the
acceptance family.  On an ultimately periodic word ``u v^omega`` both
conditions reduce to finite cycle analysis, so the deciders here are exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping

from .automata import (
    Alphabet,
    Automaton,
    Dfa,
    Nfa,
    State,
    Symbol,
    Word,
    as_word,
    determinize,
    nfa_of,
    sigma_star_prefix,
)


@dataclass(frozen=True)
class MullerAutomaton:
    """Deterministic transition structure plus a family of macrostates.

    A macrostate is a set of states; the automaton accepts an infinite word
    when the limit set of its unique run equals one of the family members.
    """

    alphabet: Alphabet
    states: tuple[State, ...]
    delta: Mapping[tuple[State, Symbol], State]
    initial: State
    acceptance_family: frozenset[frozenset[State]]

    def __post_init__(self) -> None:
        state_set = set(self.states)
        for member in self.acceptance_family:
            if not member <= state_set:
                raise ValueError("acceptance family mentions unknown states")
        # reuse Dfa validation for the transition structure
        Dfa(self.alphabet, self.states, self.delta, self.initial, frozenset())

    def step(self, state: State, symbol: Symbol) -> State:
        return self.delta[(state, symbol)]

    def run(self, w: Word | str, start: State | None = None) -> State:
        q = self.initial if start is None else start
        for s in as_word(w):
            q = self.step(q, s)
        return q

    def as_dfa(self, accepting: frozenset[State]) -> Dfa:
        """The same transition structure read as a Dfa with the given accepting set."""
        return Dfa(self.alphabet, self.states, self.delta, self.initial, frozenset(accepting))


def _check_ultper(u: Word | str, v: Word | str) -> tuple[Word, Word]:
    stem, loop = as_word(u), as_word(v)
    if not loop:
        raise ValueError("periodic part must be non-empty")
    return stem, loop


def limit_set_ultper(m: MullerAutomaton | Dfa, u: Word | str, v: Word | str) -> frozenset[State]:
    """States visited infinitely often by the unique run on ``u v^omega``."""
    stem, loop = _check_ultper(u, v)
    q = m.run(stem)
    # iterate whole-period steps until a state repeats at period boundaries
    boundary_order = [q]
    first_seen = {q: 0}
    while True:
        q = m.run(loop, start=q)
        if q in first_seen:
            cycle_start = first_seen[q]
            break
        first_seen[q] = len(boundary_order)
        boundary_order.append(q)
    limit: set[State] = set()
    for b in boundary_order[cycle_start:]:
        r = b
        for s in loop:
            r = m.step(r, s)
            limit.add(r)
    return frozenset(limit)


def muller_accepts_ultper(m: MullerAutomaton, u: Word | str, v: Word | str) -> bool:
    return limit_set_ultper(m, u, v) in m.acceptance_family


def buchi_accepts_ultper(b: Automaton, u: Word | str, v: Word | str) -> bool:
    """Does some run on ``u v^omega`` visit an accepting state infinitely often?

    Works on the lasso graph whose nodes are (state, position in v): a node
    for an accepting state that is reachable from the stem and lies on a
    cycle witnesses acceptance.
    """
    stem, loop = _check_ultper(u, v)
    n = nfa_of(b)
    after_stem = n.run_set(stem)
    period = len(loop)

    by_symbol: dict[Symbol, dict[State, list[State]]] = {s: {} for s in n.alphabet}
    for (p, s, q) in n.transitions:
        by_symbol[s].setdefault(p, []).append(q)

    def successors(node: tuple[State, int]):
        q, i = node
        for r in by_symbol[loop[i]].get(q, ()):
            yield (r, (i + 1) % period)

    start_nodes = [(q, 0) for q in after_stem]
    reachable = set(start_nodes)
    queue = deque(start_nodes)
    while queue:
        node = queue.popleft()
        for nxt in successors(node):
            if nxt not in reachable:
                reachable.add(nxt)
                queue.append(nxt)

    candidates = [node for node in reachable if node[0] in n.accepting]
    for target in candidates:
        seen = set()
        queue = deque(successors(target))
        found = False
        while queue:
            node = queue.popleft()
            if node == target:
                found = True
                break
            if node in seen:
                continue
            seen.add(node)
            queue.extend(successors(node))
        if found:
            return True
    return False


def absorbing_accepting(a: Dfa) -> Dfa:
    """Make every accepting state absorbing; the result accepts L(a) Sigma*."""
    delta = dict(a.delta)
    for q in a.accepting:
        for s in a.alphabet:
            delta[(q, s)] = q
    return Dfa(a.alphabet, a.states, delta, a.initial, a.accepting)


def prepend_sigma_star(a: Automaton) -> Dfa:
    """Deterministic automaton for Sigma* L(a) (factor queries as prefix queries)."""
    return determinize(sigma_star_prefix(a))


def muller_acceptance_via_buchi_queries(
    m: MullerAutomaton, infinitely_often: Callable[[Dfa], bool]
) -> bool:
    """Decide Muller acceptance from per-state infinite-occurrence queries.

    ``infinitely_often(d)`` must answer whether the fixed infinite word under
    consideration has infinitely many prefixes in L(d).  Querying the
    transition structure once per state with that state as the only accepting
    one recovers the limit set exactly, which is then compared against the
    acceptance family.
    """
    limit = frozenset(q for q in m.states if infinitely_often(m.as_dfa(frozenset({q}))))
    return limit in m.acceptance_family


def macrostate_automaton(m: MullerAutomaton, macro: frozenset[State]) -> Dfa:
    """Deterministic image-set automaton over subsets of m.states.

    The step takes a subset to its image under the symbol.  The only
    accepting state is the macrostate itself.  This construction narrows a
    subset only when states merge, so it generally cannot observe the limit
    set of the run; it is kept for study and for the counterexample tests.
    """
    initial = frozenset({m.initial})
    seen = {initial}
    order = [initial]
    queue = deque([initial])
    delta: dict[tuple[State, Symbol], State] = {}
    while queue:
        current = queue.popleft()
        for s in m.alphabet:
            target = frozenset(m.delta[(q, s)] for q in current)
            delta[(current, s)] = target
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    accepting = frozenset({macro}) if macro in seen else frozenset()
    return Dfa(m.alphabet, tuple(order), delta, initial, accepting)
