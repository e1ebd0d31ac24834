"""Shared fixtures: the small reference automata used throughout."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from realizability import Alphabet, Dfa, MullerAutomaton, parse_machines

BINARY = Alphabet(("0", "1"))
AB = Alphabet(("a", "b"))


@pytest.fixture
def a_contains1() -> Dfa:
    """Accepts words containing at least one 1; accepting state absorbing."""
    return Dfa(
        BINARY,
        ("s0", "s1"),
        {("s0", "0"): "s0", ("s0", "1"): "s1", ("s1", "0"): "s1", ("s1", "1"): "s1"},
        "s0",
        frozenset({"s1"}),
    )


@pytest.fixture
def a_only0() -> Dfa:
    """Accepts exactly the word 0; everything else traps in s2."""
    return Dfa(
        BINARY,
        ("s0", "s1", "s2"),
        {
            ("s0", "0"): "s1",
            ("s0", "1"): "s2",
            ("s1", "0"): "s2",
            ("s1", "1"): "s2",
            ("s2", "0"): "s2",
            ("s2", "1"): "s2",
        },
        "s0",
        frozenset({"s1"}),
    )


@pytest.fixture
def m2_muller() -> MullerAutomaton:
    """Two-state Muller automaton accepting words whose run visits both states forever."""
    return MullerAutomaton(
        AB,
        ("q0", "q1"),
        {("q0", "a"): "q0", ("q0", "b"): "q1", ("q1", "a"): "q0", ("q1", "b"): "q1"},
        "q0",
        frozenset({frozenset({"q0", "q1"})}),
    )


MACHINES_TEXT = """\
machine: halts-after-three
start: s0
trans: s0 _ x R s1
trans: s1 _ x R s2
trans: s2 _ x R s3

machine: loops-forever
start: a
trans: a _ _ R a
"""


@pytest.fixture
def machine_list():
    return parse_machines(MACHINES_TEXT)
