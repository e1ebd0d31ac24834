"""Finite automata over ordered finite alphabets.

Deterministic automata keep a total transition function; nondeterministic
ones are epsilon-free triples.  Symbol order (declaration order of the
alphabet) is significant: it fixes shortlex order and the visit order of
every breadth-first construction, so results are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping

State = Any
Symbol = str
Word = tuple[Symbol, ...]

EPSILON: Word = ()


class AlphabetMismatchError(ValueError):
    """Raised when an operation mixes automata or words over different alphabets."""


def as_word(w: str | Iterable[Symbol]) -> Word:
    """Coerce a string (one symbol per character) or symbol iterable to a Word."""
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def render_word(w: Word) -> str:
    """Human-readable form: plain join for single-char symbols, else space-separated."""
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free tuple of symbol tokens."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet contains duplicate symbols")

    @classmethod
    def of(cls, symbols: str | Iterable[Symbol]) -> "Alphabet":
        return cls(as_word(symbols))

    def index(self, symbol: Symbol) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise AlphabetMismatchError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


def _check_word(alphabet: Alphabet, w: Word) -> Word:
    for s in w:
        if s not in alphabet:
            raise AlphabetMismatchError(f"symbol {s!r} not in alphabet {alphabet.symbols}")
    return w


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton with a total transition function.

    ``states`` is an ordered tuple; the first state need not be the initial
    one.  ``delta`` maps ``(state, symbol)`` to a state and must be defined
    for every pair.
    """

    alphabet: Alphabet
    states: tuple[State, ...]
    delta: Mapping[tuple[State, Symbol], State]
    initial: State
    accepting: frozenset[State]

    def __post_init__(self) -> None:
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise ValueError("duplicate states")
        if self.initial not in state_set:
            raise ValueError(f"initial state {self.initial!r} not among states")
        if not self.accepting <= state_set:
            raise ValueError("accepting set contains unknown states")
        for q in self.states:
            for s in self.alphabet:
                target = self.delta.get((q, s))
                if target is None:
                    raise ValueError(f"transition function undefined on ({q!r}, {s!r})")
                if target not in state_set:
                    raise ValueError(f"transition ({q!r}, {s!r}) leads to unknown state {target!r}")

    def step(self, state: State, symbol: Symbol) -> State:
        try:
            return self.delta[(state, symbol)]
        except KeyError:
            raise AlphabetMismatchError(f"symbol {symbol!r} not in alphabet {self.alphabet.symbols}") from None

    def run(self, w: str | Word, start: State | None = None) -> State:
        """State reached from ``start`` (default: initial) after reading ``w``."""
        q = self.initial if start is None else start
        for s in as_word(w):
            q = self.step(q, s)
        return q

    def visited(self, w: str | Word, start: State | None = None) -> list[State]:
        """Full state sequence along ``w``, both endpoints included."""
        q = self.initial if start is None else start
        out = [q]
        for s in as_word(w):
            q = self.step(q, s)
            out.append(q)
        return out

    def accepts(self, w: str | Word) -> bool:
        return self.run(w) in self.accepting


@dataclass(frozen=True)
class Nfa:
    """Epsilon-free nondeterministic automaton with a set of initial states."""

    alphabet: Alphabet
    states: tuple[State, ...]
    transitions: frozenset[tuple[State, Symbol, State]]
    initials: frozenset[State]
    accepting: frozenset[State]

    def __post_init__(self) -> None:
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise ValueError("duplicate states")
        if not self.initials <= state_set:
            raise ValueError("initial set contains unknown states")
        if not self.accepting <= state_set:
            raise ValueError("accepting set contains unknown states")
        for p, s, q in self.transitions:
            if p not in state_set or q not in state_set:
                raise ValueError(f"transition ({p!r}, {s!r}, {q!r}) uses unknown states")
            if s not in self.alphabet:
                raise ValueError(f"transition symbol {s!r} not in alphabet")

    def step_set(self, current: frozenset[State], symbol: Symbol) -> frozenset[State]:
        if symbol not in self.alphabet:
            raise AlphabetMismatchError(f"symbol {symbol!r} not in alphabet {self.alphabet.symbols}")
        return frozenset(q for (p, s, q) in self.transitions if s == symbol and p in current)

    def run_set(self, w: str | Word) -> frozenset[State]:
        current = self.initials
        for s in as_word(w):
            current = self.step_set(current, s)
        return current

    def accepts(self, w: str | Word) -> bool:
        return bool(self.run_set(w) & self.accepting)


Automaton = Dfa | Nfa


def nfa_of(a: Automaton) -> Nfa:
    """View a Dfa as an Nfa (identity on Nfa inputs)."""
    if isinstance(a, Nfa):
        return a
    triples = frozenset((p, s, q) for (p, s), q in a.delta.items())
    return Nfa(a.alphabet, a.states, triples, frozenset({a.initial}), a.accepting)


def with_initial(a: Dfa, q: State) -> Dfa:
    if q not in a.states:
        raise ValueError(f"state {q!r} not among states")
    return Dfa(a.alphabet, a.states, a.delta, q, a.accepting)


def reachable_states(a: Dfa, start: State | None = None) -> list[State]:
    """States reachable from ``start`` in breadth-first symbol order."""
    q0 = a.initial if start is None else start
    seen = {q0}
    order = [q0]
    queue = deque([q0])
    while queue:
        q = queue.popleft()
        for s in a.alphabet:
            r = a.delta[(q, s)]
            if r not in seen:
                seen.add(r)
                order.append(r)
                queue.append(r)
    return order


def dead_lock_states(a: Dfa) -> frozenset[State]:
    """States from which no accepting state is reachable (including themselves)."""
    reverse: dict[State, set[State]] = {q: set() for q in a.states}
    for (p, _s), q in a.delta.items():
        reverse[q].add(p)
    alive: set[State] = set(a.accepting)
    queue = deque(a.accepting)
    while queue:
        q = queue.popleft()
        for p in reverse[q]:
            if p not in alive:
                alive.add(p)
                queue.append(p)
    return frozenset(set(a.states) - alive)


def relabel_bfs(a: Dfa, prefix: str = "q", start: int = 1) -> Dfa:
    """Rename reachable states ``q1, q2, ...`` in breadth-first symbol order.

    Unreachable states are dropped; the language is unchanged.
    """
    order = reachable_states(a)
    name = {q: f"{prefix}{start + i}" for i, q in enumerate(order)}
    delta = {(name[q], s): name[a.delta[(q, s)]] for q in order for s in a.alphabet}
    return Dfa(
        a.alphabet,
        tuple(name[q] for q in order),
        delta,
        name[a.initial],
        frozenset(name[q] for q in order if q in a.accepting),
    )


def _product(a: Dfa, b: Dfa, accept) -> Dfa:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("product of automata over different alphabets")
    initial = (a.initial, b.initial)
    seen = {initial}
    order = [initial]
    queue = deque([initial])
    delta: dict[tuple[State, Symbol], State] = {}
    while queue:
        (p, q) = queue.popleft()
        for s in a.alphabet:
            r = (a.delta[(p, s)], b.delta[(q, s)])
            delta[((p, q), s)] = r
            if r not in seen:
                seen.add(r)
                order.append(r)
                queue.append(r)
    accepting = frozenset((p, q) for (p, q) in order if accept(p in a.accepting, q in b.accepting))
    return Dfa(a.alphabet, tuple(order), delta, initial, accepting)


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and y)


def union(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x or y)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and not y)


def complement(a: Dfa) -> Dfa:
    return Dfa(a.alphabet, a.states, a.delta, a.initial, frozenset(a.states) - a.accepting)


def sigma_star(alphabet: Alphabet) -> Dfa:
    """One-state automaton accepting every word."""
    q = "all"
    return Dfa(alphabet, (q,), {(q, s): q for s in alphabet}, q, frozenset({q}))


def empty_language(alphabet: Alphabet) -> Dfa:
    q = "none"
    return Dfa(alphabet, (q,), {(q, s): q for s in alphabet}, q, frozenset())


def literal_dfa(w: str | Word, alphabet: Alphabet) -> Dfa:
    """Automaton accepting exactly the single word ``w``."""
    word = _check_word(alphabet, as_word(w))
    n = len(word)
    states = tuple(range(n + 1)) + ("sink",)
    delta: dict[tuple[State, Symbol], State] = {}
    for i in range(n + 1):
        for s in alphabet:
            if i < n and s == word[i]:
                delta[(i, s)] = i + 1
            else:
                delta[(i, s)] = "sink"
    for s in alphabet:
        delta[("sink", s)] = "sink"
    return Dfa(alphabet, states, delta, 0, frozenset({n}))


def _tagged(tag: str, nfa: Nfa) -> Nfa:
    states = tuple((tag, q) for q in nfa.states)
    triples = frozenset(((tag, p), s, (tag, q)) for (p, s, q) in nfa.transitions)
    return Nfa(
        nfa.alphabet,
        states,
        triples,
        frozenset((tag, q) for q in nfa.initials),
        frozenset((tag, q) for q in nfa.accepting),
    )


def concatenate(a: Automaton, b: Automaton) -> Nfa:
    """Epsilon-free automaton for L(a)L(b)."""
    left = _tagged("L", nfa_of(a))
    right = _tagged("R", nfa_of(b))
    if left.alphabet != right.alphabet:
        raise AlphabetMismatchError("concatenation of automata over different alphabets")
    transitions = set(left.transitions) | set(right.transitions)
    # glue: from a final state of the left part, mirror the right part's initial moves
    for f in left.accepting:
        for (p, s, q) in right.transitions:
            if p in right.initials:
                transitions.add((f, s, q))
    initials = set(left.initials)
    if left.initials & left.accepting:  # epsilon in L(a)
        initials |= right.initials
    accepting = set(right.accepting)
    if right.initials & right.accepting:  # epsilon in L(b)
        accepting |= left.accepting
    return Nfa(
        left.alphabet,
        left.states + right.states,
        frozenset(transitions),
        frozenset(initials),
        frozenset(accepting),
    )


def star(a: Automaton) -> Nfa:
    """Epsilon-free automaton for L(a)*."""
    inner = _tagged("S", nfa_of(a))
    fresh = ("star", 0)
    transitions = set(inner.transitions)
    entry_moves = [(s, q) for (p, s, q) in inner.transitions if p in inner.initials]
    for s, q in entry_moves:
        transitions.add((fresh, s, q))
    for f in inner.accepting:
        for s, q in entry_moves:
            transitions.add((f, s, q))
    return Nfa(
        inner.alphabet,
        (fresh,) + inner.states,
        frozenset(transitions),
        frozenset({fresh}),
        inner.accepting | {fresh},
    )


def sigma_star_prefix(a: Automaton) -> Nfa:
    """Automaton for the factor closure Sigma* L(a)."""
    alph = a.alphabet
    return concatenate(sigma_star(alph), a)


def determinize(n: Nfa) -> Dfa:
    """Subset construction restricted to reachable subsets; the empty subset is the sink."""
    initial = n.initials
    by_symbol: dict[Symbol, dict[State, set[State]]] = {s: {} for s in n.alphabet}
    for (p, s, q) in n.transitions:
        by_symbol[s].setdefault(p, set()).add(q)
    seen = {initial}
    order = [initial]
    queue = deque([initial])
    delta: dict[tuple[State, Symbol], State] = {}
    while queue:
        current = queue.popleft()
        for s in n.alphabet:
            step = by_symbol[s]
            target = frozenset(q for p in current for q in step.get(p, ()))
            delta[(current, s)] = target
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    accepting = frozenset(S for S in order if S & n.accepting)
    return Dfa(n.alphabet, tuple(order), delta, initial, accepting)


def shortlex_smallest(a: Automaton) -> Word | None:
    """Shortlex-least accepted word, or None when the language is empty.

    Breadth-first search expanding symbols in alphabet order visits words in
    shortlex order, so the first accepting hit is the answer.
    """
    if isinstance(a, Nfa):
        start: Any = a.initials
        is_accepting = lambda S: bool(S & a.accepting)
        by_symbol: dict[Symbol, dict[State, set[State]]] = {s: {} for s in a.alphabet}
        for (p, s, q) in a.transitions:
            by_symbol[s].setdefault(p, set()).add(q)

        def step(S, s):
            m = by_symbol[s]
            return frozenset(q for p in S for q in m.get(p, ()))
    else:
        start = a.initial
        is_accepting = lambda q: q in a.accepting
        step = lambda q, s: a.delta[(q, s)]

    if is_accepting(start):
        return EPSILON
    seen = {start}
    queue = deque([(start, EPSILON)])
    while queue:
        q, w = queue.popleft()
        for s in a.alphabet:
            r = step(q, s)
            if r in seen:
                continue
            seen.add(r)
            if is_accepting(r):
                return w + (s,)
            queue.append((r, w + (s,)))
    return None


def is_empty(a: Automaton) -> bool:
    return shortlex_smallest(a) is None


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality via emptiness of both set differences."""
    return is_empty(difference(a, b)) and is_empty(difference(b, a))


def words_upto(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    """All words of length 0..max_len in shortlex order."""
    from itertools import product

    for length in range(max_len + 1):
        for tup in product(alphabet.symbols, repeat=length):
            yield tup


def regex_dfa(pattern: str, alphabet: Alphabet) -> Dfa:
    """Compile a small regular expression to an automaton over the alphabet.

    Supported syntax: single-character literals (which must be alphabet
    symbols), ``.`` for any symbol, concatenation, ``|``, ``*``, ``+``,
    ``?``, and parentheses.  No escapes or character classes.
    """
    pos = 0

    def peek() -> str | None:
        return pattern[pos] if pos < len(pattern) else None

    def take() -> str:
        nonlocal pos
        c = pattern[pos]
        pos += 1
        return c

    def as_dfa(a: Automaton) -> Dfa:
        return a if isinstance(a, Dfa) else determinize(a)

    def parse_expr() -> Dfa:
        branches = [parse_term()]
        while peek() == "|":
            take()
            branches.append(parse_term())
        out = branches[0]
        for b in branches[1:]:
            out = union(out, b)
        return out

    def parse_term() -> Dfa:
        out = literal_dfa((), alphabet)  # empty word
        while peek() not in (None, "|", ")"):
            out = as_dfa(concatenate(out, parse_factor()))
        return out

    def parse_factor() -> Dfa:
        atom = parse_atom()
        while peek() in ("*", "+", "?"):
            op = take()
            if op == "*":
                atom = as_dfa(star(atom))
            elif op == "+":
                atom = as_dfa(concatenate(atom, star(atom)))
            else:
                atom = union(atom, literal_dfa((), alphabet))
        return atom

    def parse_atom() -> Dfa:
        c = peek()
        if c is None:
            raise ValueError(f"regex {pattern!r}: unexpected end of pattern")
        if c == "(":
            take()
            inner = parse_expr()
            if peek() != ")":
                raise ValueError(f"regex {pattern!r}: unmatched '('")
            take()
            return inner
        if c in ("*", "+", "?", ")"):
            raise ValueError(f"regex {pattern!r}: unexpected {c!r} at position {pos}")
        take()
        if c == ".":
            out = None
            for s in alphabet:
                d = literal_dfa((s,), alphabet)
                out = d if out is None else union(out, d)
            return out
        if c not in alphabet:
            raise ValueError(f"regex {pattern!r}: {c!r} is not an alphabet symbol")
        return literal_dfa((c,), alphabet)

    out = parse_expr()
    if pos != len(pattern):
        raise ValueError(f"regex {pattern!r}: unexpected {pattern[pos]!r} at position {pos}")
    return relabel_bfs(out, prefix="r", start=0)
