"""Effective automata over the countable indexed alphabet a_1, a_2, ...

An effective automaton has finitely many states, a computable transition
function ``delta(index, state)``, and a decidable transition-existence
predicate ``exists_transition(p, q)`` ("is there some index moving p to
q?").  Existence decidability is what makes dead-lock analysis, and with it
prefix realizability along factor-universal indexed words, decidable even
though the alphabet is infinite.

The module also contains the reduction that turns a deterministic automaton
over a finite alphabet plus an effective morphism into an effective
automaton whose prefix decisions agree with prefix decisions of the
original automaton on the morphism image of the indexed word.  States are
augmented with one bit recording whether the last image crossed an
accepting state (endpoints included); the bit is not sticky, which is
enough because a Yes is declared at the first visit of a bit-1 state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .automata import (
    Alphabet,
    Automaton,
    Dfa,
    Nfa,
    State,
    Word,
    concatenate,
    determinize,
    difference,
    empty_language,
    intersect,
    is_empty,
    union,
)
from .decide import Fuel, FuelExhausted, NO, Outcome, Verdict, YES
from .words import EffectiveMorphism, IndexedInfiniteWord


@dataclass(frozen=True)
class EffectiveAutomaton:
    states: tuple[State, ...]
    delta: Callable[[int, State], State]
    exists_transition: Callable[[State, State], bool]
    initial: State
    accepting: frozenset[State]

    def __post_init__(self) -> None:
        state_set = set(self.states)
        if self.initial not in state_set:
            raise ValueError("initial state unknown")
        if not self.accepting <= state_set:
            raise ValueError("accepting set contains unknown states")

    def with_accepting(self, accepting: frozenset[State]) -> "EffectiveAutomaton":
        return EffectiveAutomaton(self.states, self.delta, self.exists_transition, self.initial, accepting)


def delta_relation(ea: EffectiveAutomaton, source: frozenset[State]) -> frozenset[State]:
    """One-step successor set under the transition-existence relation."""
    return frozenset(q for q in ea.states if any(ea.exists_transition(p, q) for p in source))


def reachable_closure(ea: EffectiveAutomaton, source: frozenset[State]) -> frozenset[State]:
    """Least superset of ``source`` closed under the successor relation."""
    closed = set(source)
    frontier = set(source)
    while frontier:
        step = {q for q in ea.states if q not in closed and any(ea.exists_transition(p, q) for p in frontier)}
        closed |= step
        frontier = step
    return frozenset(closed)


def effective_dead_locks(ea: EffectiveAutomaton) -> frozenset[State]:
    """States whose reachable closure avoids the accepting set entirely."""
    return frozenset(
        q for q in ea.states if not (reachable_closure(ea, frozenset({q})) & ea.accepting)
    )


def decide_prefix_infinite(
    ea: EffectiveAutomaton,
    w: IndexedInfiniteWord,
    fuel: Fuel | int,
    on_step: Callable[[int, State], None] | None = None,
) -> Outcome:
    """Prefix realizability of an effective automaton along an indexed word.

    Same resolution discipline as the finite-alphabet decider: accept visit
    means Yes, dead-lock entry means No, and dead-locks are computed up
    front from the existence predicate.
    """
    budget = Fuel.of(fuel).max_steps
    dead = effective_dead_locks(ea)
    q = ea.initial
    if on_step is not None:
        on_step(0, q)
    if q in ea.accepting:
        return Verdict(YES, 0, 0)
    if q in dead:
        return Verdict(NO, 0, 0)
    n = 0
    for idx in w.iter_from(1):
        n += 1
        q = ea.delta(idx, q)
        if on_step is not None:
            on_step(n, q)
        if q in ea.accepting:
            return Verdict(YES, n, n)
        if q in dead:
            return Verdict(NO, n, n)
        if n >= budget:
            return FuelExhausted(n)
    raise AssertionError("unreachable")


def decide_buchi_infinite(
    ea: EffectiveAutomaton,
    w: IndexedInfiniteWord,
    fuel: Fuel | int,
    on_step: Callable[[int, State], None] | None = None,
) -> Outcome:
    """Infinitely many accepted prefixes?  Dead-lock-accepting variant, negated."""
    variant = ea.with_accepting(effective_dead_locks(ea))
    inner = decide_prefix_infinite(variant, w, fuel, on_step)
    if isinstance(inner, FuelExhausted):
        return inner
    flipped = NO if inner.answer == YES else YES
    return Verdict(flipped, inner.evidence, inner.steps_used)


def find_transition_witness(
    ea: EffectiveAutomaton, p: State, q: State, search_limit: int = 1_000_000
) -> int:
    """Smallest index realizing an existing transition p -> q.

    The existence predicate guarantees termination of the index scan; the
    limit is a safety net against inconsistent inputs.
    """
    if not ea.exists_transition(p, q):
        raise ValueError(f"no transition from {p!r} to {q!r}")
    for k in range(1, search_limit + 1):
        if ea.delta(k, p) == q:
            return k
    raise RuntimeError(f"no witness index below {search_limit} for {p!r} -> {q!r}")


def definitive_index_sequence(ea: EffectiveAutomaton) -> tuple[int, ...]:
    """A definitive word (index sequence) for an effective automaton.

    Per-state witnesses come from breadth-first search over the existence
    relation realized by concrete witness indices; the same fold as in the
    finite-alphabet construction stitches them together.
    """
    dead = effective_dead_locks(ea)

    def witness(start: State) -> tuple[int, ...]:
        if start in ea.accepting:
            return ()
        parents: dict[State, tuple[State, int]] = {}
        seen = {start}
        queue = deque([start])
        goal = None
        while queue and goal is None:
            p = queue.popleft()
            for q in ea.states:
                if q in seen or not ea.exists_transition(p, q):
                    continue
                parents[q] = (p, find_transition_witness(ea, p, q))
                if q in ea.accepting:
                    goal = q
                    break
                seen.add(q)
                queue.append(q)
        assert goal is not None  # start was not dead-locked
        path: list[int] = []
        q = goal
        while q != start:
            p, k = parents[q]
            path.append(k)
            q = p
        return tuple(reversed(path))

    def run(word: tuple[int, ...], start: State) -> State:
        q = start
        for k in word:
            q = ea.delta(k, q)
        return q

    word: tuple[int, ...] = ()
    for q in ea.states:
        landing = run(word, q)
        if landing in dead:
            continue
        word = word + witness(landing)
    return word


def derived_fuel(ea: EffectiveAutomaton, w: IndexedInfiniteWord) -> Fuel:
    """Fuel sufficient for resolution: occurrence bound of a definitive sequence."""
    if w.occurrence_bound is None:
        raise ValueError("word carries no occurrence bound; pass fuel explicitly")
    seq = definitive_index_sequence(ea)
    return Fuel(max(1, w.occurrence_bound(seq)))


class AugmentedState(NamedTuple):
    """State of the reduced automaton: base state plus last-image accepting bit."""

    base: State
    bit: int


def reduce_morphism_automaton(a: Dfa, phi: EffectiveMorphism) -> EffectiveAutomaton:
    """Effective automaton tracking ``a`` across whole morphism images.

    ``delta(k, (q, _))`` runs ``a`` on the image of index k from q and sets
    the bit when the visited states (endpoints included) meet the accepting
    set.  ``exists_transition`` is decided through the morphism's image
    language oracle on path languages of ``a``: a bit-1 transition from q_i
    to q_j exists iff some image lies in the union over accepting f of
    R(i,f)R(f,j), and a bit-0 transition iff some image lies in R(i,j) minus
    that union, where R(x,y) is the language of paths from x to y.
    """
    if phi.image_language_oracle is None:
        raise ValueError("morphism carries no image language oracle")
    if phi.alphabet != a.alphabet:
        raise ValueError("morphism target alphabet differs from automaton alphabet")
    oracle = phi.image_language_oracle

    def path_dfa(src: State, dst: State) -> Dfa:
        return Dfa(a.alphabet, a.states, a.delta, src, frozenset({dst}))

    passing_cache: dict[tuple[State, State], Dfa] = {}

    def passing_dfa(src: State, dst: State) -> Dfa:
        """Determinized union over accepting f of R(src,f)R(f,dst)."""
        key = (src, dst)
        if key not in passing_cache:
            parts = [concatenate(path_dfa(src, f), path_dfa(f, dst)) for f in a.accepting]
            if not parts:
                passing_cache[key] = empty_language(a.alphabet)
            else:
                combined = determinize(parts[0])
                for part in parts[1:]:
                    combined = union(combined, determinize(part))
                passing_cache[key] = combined
        return passing_cache[key]

    exists_cache: dict[tuple[State, State, int], bool] = {}

    def exists(p: AugmentedState, q: AugmentedState) -> bool:
        key = (p.base, q.base, q.bit)
        if key not in exists_cache:
            passing = passing_dfa(p.base, q.base)
            if q.bit == 1:
                exists_cache[key] = oracle(passing)
            else:
                exists_cache[key] = oracle(difference(path_dfa(p.base, q.base), passing))
        return exists_cache[key]

    accepting_states = a.accepting

    def delta(k: int, p: AugmentedState) -> AugmentedState:
        image = phi.image(k)
        visited = a.visited(image, start=p.base)
        bit = 1 if any(v in accepting_states for v in visited) else 0
        return AugmentedState(visited[-1], bit)

    states = tuple(AugmentedState(q, b) for q in a.states for b in (0, 1))
    accepting = frozenset(s for s in states if s.bit == 1)
    return EffectiveAutomaton(states, delta, exists, AugmentedState(a.initial, 0), accepting)


def decide_prefix_morphism(
    a: Dfa, phi: EffectiveMorphism, w: IndexedInfiniteWord, fuel: Fuel | int | None = None
) -> Outcome:
    """Prefix realizability of L(a) along the morphism image of ``w``.

    Evidence positions count indexed symbols, not image symbols.
    """
    ea = reduce_morphism_automaton(a, phi)
    if fuel is None:
        fuel = derived_fuel(ea, w)
    return decide_prefix_infinite(ea, w, fuel)


def decide_buchi_morphism(
    a: Dfa, phi: EffectiveMorphism, w: IndexedInfiniteWord, fuel: Fuel | int | None = None
) -> Outcome:
    """Are infinitely many prefixes of the image realized?  Variant + negation."""
    ea = reduce_morphism_automaton(a, phi)
    variant = ea.with_accepting(effective_dead_locks(ea))
    if fuel is None:
        fuel = derived_fuel(variant, w)
    inner = decide_prefix_infinite(variant, w, fuel)
    if isinstance(inner, FuelExhausted):
        return inner
    flipped = NO if inner.answer == YES else YES
    return Verdict(flipped, inner.evidence, inner.steps_used)


# ---------------------------------------------------------------------------
# index sets and the textual fixture format


@dataclass(frozen=True)
class IndexSet:
    """Eventually periodic set of positive indices.

    Membership: listed residue classes (``residue mod modulus``) minus
    excluded indices, plus included indices.  Non-emptiness is decidable by
    inspection: any residue class survives finitely many exclusions.
    """

    progressions: tuple[tuple[int, int], ...] = ()
    include: frozenset[int] = frozenset()
    exclude: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        for residue, modulus in self.progressions:
            if modulus < 1 or not (0 <= residue < modulus):
                raise ValueError(f"bad progression ({residue} mod {modulus})")
        if self.include & self.exclude:
            raise ValueError("include and exclude overlap")

    def __contains__(self, k: int) -> bool:
        if k < 1:
            return False
        if k in self.include:
            return True
        if k in self.exclude:
            return False
        return any(k % modulus == residue for residue, modulus in self.progressions)

    def is_empty(self) -> bool:
        return not self.progressions and not self.include

    @classmethod
    def parse(cls, tokens: list[str]) -> "IndexSet":
        """Tokens: ``all``, ``R%M`` (residue class), ``+K`` include, ``-K`` exclude."""
        progressions: list[tuple[int, int]] = []
        include: set[int] = set()
        exclude: set[int] = set()
        for tok in tokens:
            if tok == "all":
                progressions.append((0, 1))
            elif tok.startswith("+"):
                include.add(int(tok[1:]))
            elif tok.startswith("-"):
                exclude.add(int(tok[1:]))
            elif "%" in tok:
                r_text, _, m_text = tok.partition("%")
                progressions.append((int(r_text), int(m_text)))
            else:
                raise ValueError(f"bad index-set token {tok!r}")
        return cls(tuple(progressions), frozenset(include), frozenset(exclude))


def effective_from_index_sets(
    states: tuple[State, ...],
    rules: dict[State, list[tuple[IndexSet, State]]],
    initial: State,
    accepting: frozenset[State],
) -> EffectiveAutomaton:
    """Build an effective automaton from per-state (index set -> target) rules.

    For each source state the first rule containing the index applies; the
    rule sets of one source are expected to be disjoint so that transition
    existence is the plain non-emptiness of each rule's set.
    """

    def delta(k: int, q: State) -> State:
        if k < 1:
            raise IndexError("indices are 1-based")
        for index_set, target in rules.get(q, ()):
            if k in index_set:
                return target
        raise ValueError(f"no transition rule for state {q!r} on index {k}")

    def exists(p: State, q: State) -> bool:
        return any(target == q and not index_set.is_empty() for index_set, target in rules.get(p, ()))

    return EffectiveAutomaton(states, delta, exists, initial, accepting)


class EffectiveFormatError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_effective(text: str) -> EffectiveAutomaton:
    """Textual fixture format for effective automata.

        states: q0 q1
        initial: q0
        accepting: q0
        etrans: q0 q0 0%2
        etrans: q0 q1 1%2
        etrans: q1 q1 all

    The third and later tokens of an ``etrans`` line form an index-set
    expression (see IndexSet.parse).
    """
    states: tuple[str, ...] | None = None
    initial = None
    accepting: frozenset[str] | None = None
    rules: dict[State, list[tuple[IndexSet, State]]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise EffectiveFormatError(line_no, f"expected 'key: values', got {raw.strip()!r}")
        key, _, rest = line.partition(":")
        key = key.strip()
        tokens = rest.split()
        if key == "states":
            states = tuple(tokens)
            if len(set(states)) != len(states):
                raise EffectiveFormatError(line_no, "duplicate state names")
        elif key == "initial":
            if len(tokens) != 1:
                raise EffectiveFormatError(line_no, "initial: expects one state")
            initial = tokens[0]
        elif key == "accepting":
            accepting = frozenset(tokens)
        elif key == "etrans":
            if len(tokens) < 3:
                raise EffectiveFormatError(line_no, "etrans line needs: source target index-set...")
            src, dst = tokens[0], tokens[1]
            if states is None or src not in states or dst not in states:
                raise EffectiveFormatError(line_no, f"unknown state in etrans line")
            try:
                index_set = IndexSet.parse(tokens[2:])
            except ValueError as exc:
                raise EffectiveFormatError(line_no, str(exc)) from None
            rules.setdefault(src, []).append((index_set, dst))
        else:
            raise EffectiveFormatError(line_no, f"unknown section {key!r}")
    if states is None:
        raise EffectiveFormatError(1, "missing states: line")
    if initial is None or initial not in states:
        raise EffectiveFormatError(1, "missing or unknown initial state")
    if accepting is None:
        accepting = frozenset()
    if not accepting <= set(states):
        raise EffectiveFormatError(1, "accepting set contains unknown states")
    return effective_from_index_sets(states, rules, initial, accepting)


# ---------------------------------------------------------------------------
# built-in morphisms over {0, 1}

_BINARY = Alphabet(("0", "1"))


def _regular_oracle(language: Dfa) -> Callable[[Automaton], bool]:
    def oracle(r: Automaton) -> bool:
        d = determinize(r) if isinstance(r, Nfa) else r
        return not is_empty(intersect(d, language))

    return oracle


def zero_one_runs() -> EffectiveMorphism:
    """Even index 2k maps to 0^k, odd index 2k+1 maps to 1^k (so index 1 erases).

    The image set is 0 0* plus 1*, a regular language, so the oracle is a
    plain product emptiness check.
    """

    def image(k: int) -> Word:
        if k < 1:
            raise IndexError("indices are 1-based")
        half, odd = divmod(k, 2)
        return ("1",) * half if odd else ("0",) * half

    # automaton for 00* | 1*
    states = ("e", "z", "o", "x")
    delta = {
        ("e", "0"): "z",
        ("e", "1"): "o",
        ("z", "0"): "z",
        ("z", "1"): "x",
        ("o", "0"): "x",
        ("o", "1"): "o",
        ("x", "0"): "x",
        ("x", "1"): "x",
    }
    image_set = Dfa(_BINARY, states, delta, "e", frozenset({"e", "z", "o"}))
    return EffectiveMorphism(_BINARY, image, _regular_oracle(image_set))


def _balanced_block_intersects(r: Dfa) -> bool:
    """Does L(r) contain some 0^k 1^k with k >= 1?

    The pair (state after 0^k, k-fold composition of the 1-step map) evolves
    by one deterministic function of itself, so it is eventually periodic;
    scanning k until the pair repeats covers all distinct acceptance
    behaviours.
    """
    zero_step = {q: r.delta[(q, "0")] for q in r.states}
    one_step = {q: r.delta[(q, "1")] for q in r.states}
    u = r.initial
    ones_power = {q: q for q in r.states}  # identity
    seen = set()
    k = 0
    while True:
        k += 1
        u = zero_step[u]
        ones_power = {q: one_step[ones_power[q]] for q in r.states}
        pair = (u, tuple(ones_power[q] for q in r.states))
        if pair in seen:
            return False
        seen.add(pair)
        if ones_power[u] in r.accepting:
            return True


def zero_one_blocks() -> EffectiveMorphism:
    """Even index 2k maps to 0^k 1^k, odd index 2k+1 maps to 1^k.

    The image set {0^k 1^k : k >= 1} union 1* is not regular, so the oracle
    combines a regular check for the 1* part with exact eventually-periodic
    analysis for the balanced part.
    """

    def image(k: int) -> Word:
        if k < 1:
            raise IndexError("indices are 1-based")
        half, odd = divmod(k, 2)
        return ("1",) * half if odd else ("0",) * half + ("1",) * half

    # 1* as a 2-state automaton
    ones_star_delta = {
        ("a", "0"): "x",
        ("a", "1"): "a",
        ("x", "0"): "x",
        ("x", "1"): "x",
    }
    ones_star = Dfa(_BINARY, ("a", "x"), ones_star_delta, "a", frozenset({"a"}))

    def oracle(r: Automaton) -> bool:
        d = determinize(r) if isinstance(r, Nfa) else r
        if not is_empty(intersect(d, ones_star)):
            return True
        return _balanced_block_intersects(d)

    return EffectiveMorphism(_BINARY, image, oracle)
