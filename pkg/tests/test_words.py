"""Computable infinite words: generators, factor search, occurrence bounds."""

from __future__ import annotations

import random

import pytest

from helpers import ABC, BINARY, random_word
from realizability import (
    FACTOR_UNIVERSAL,
    MorphismStallError,
    apply_morphism,
    as_word,
    champernowne,
    factor_search,
    indexed_factor_search,
    indexed_periodic,
    ultimately_periodic,
    universal_indexed_word,
    universal_round_end,
    universal_round_length,
    zero_one_runs,
)
from realizability.words import _universal_round_words


class TestChampernowne:
    def test_first_ten_symbols(self):
        w = champernowne(BINARY)
        assert "".join(w.prefix(10)) == "0100011011"

    def test_symbol_at_is_one_based(self):
        w = champernowne(BINARY)
        assert w.symbol_at(1) == "0"
        assert w.symbol_at(2) == "1"
        assert w.symbol_at(6) == "1"

    def test_three_symbol_prefix(self):
        w = champernowne(ABC)
        assert "".join(w.prefix(6)) == "abcaaa"

    def test_declared_factor_universal(self):
        assert champernowne(BINARY).universality == FACTOR_UNIVERSAL

    def test_factor_search_finds_least_position(self):
        w = champernowne(BINARY)
        # "11" first occurs across the blocks "01" and "10" (positions 6-7),
        # earlier than the enumeration block "11" itself at positions 9-10.
        assert factor_search(w, "11", 10) == 6

    def test_factor_search_respects_limit(self):
        w = champernowne(BINARY)
        assert factor_search(w, "11", 5) is None

    def test_factor_search_empty_needle(self):
        assert factor_search(champernowne(BINARY), "", 3) == 1

    def test_occurrence_bound_examples(self):
        bound = champernowne(BINARY).occurrence_bound
        assert bound("") == 1
        assert bound("0") == 1
        assert bound("1") == 2
        # length-1 block occupies 2 symbols; "11" is the 4th length-2 word,
        # so its enumeration copy ends at 2 + 4*2 = 10.
        assert bound("11") == 10

    def test_occurrence_bound_is_sound(self):
        rng = random.Random(211)
        for alphabet in (BINARY, ABC):
            w = champernowne(alphabet)
            for _ in range(100):
                needle = random_word(rng, alphabet, 6, min_len=1)
                limit = w.occurrence_bound(needle)
                pos = factor_search(w, needle, limit)
                assert pos is not None
                assert pos + len(needle) - 1 <= limit

    def test_buffering_is_order_independent(self):
        w = champernowne(BINARY)
        late = w.symbol_at(50)
        early = w.prefix(10)
        fresh = champernowne(BINARY)
        assert fresh.prefix(10) == early
        assert fresh.symbol_at(50) == late

    def test_segment_endpoints_inclusive(self):
        w = champernowne(BINARY)
        assert "".join(w.segment(6, 7)) == "11"
        assert w.segment(3, 2) == ()


class TestUltimatelyPeriodic:
    def test_index_arithmetic(self):
        w = ultimately_periodic("01", "10")
        assert "".join(w.prefix(8)) == "01101010"
        assert w.symbol_at(5) == "1"

    def test_pure_periodic(self):
        w = ultimately_periodic("", "ab")
        assert "".join(w.prefix(5)) == "ababa"

    def test_empty_loop_rejected(self):
        with pytest.raises(ValueError):
            ultimately_periodic("01", "")

    def test_alphabet_inference_and_override(self):
        assert ultimately_periodic("0", "1").alphabet.symbols == ("0", "1")
        w = ultimately_periodic("", "1", alphabet=BINARY)
        assert w.alphabet is BINARY


class TestUniversalIndexedWord:
    def test_round_one_and_two(self):
        w = universal_indexed_word()
        assert w.prefix(10) == (1, 2, 1, 1, 1, 2, 2, 1, 2, 2)

    def test_round_three_opens_with_index_three(self):
        w = universal_indexed_word()
        assert w.symbol_index_at(11) == 3

    def test_round_length_closed_form_matches_generation(self):
        for n in range(1, 6):
            generated = sum(len(t) for t in _universal_round_words(n))
            assert universal_round_length(n) == generated

    def test_round_ends(self):
        assert universal_round_end(1) == 1
        assert universal_round_end(2) == 10
        assert universal_round_end(3) == 102

    def test_declared_factor_universal(self):
        assert universal_indexed_word().universality == FACTOR_UNIVERSAL

    def test_every_index_sequence_occurs_within_bound(self):
        rng = random.Random(223)
        w = universal_indexed_word()
        for _ in range(60):
            length = rng.randint(1, 3)
            seq = tuple(rng.randint(1, 4) for _ in range(length))
            limit = w.occurrence_bound(seq)
            pos = indexed_factor_search(w, seq, limit)
            assert pos is not None, seq
            assert pos + len(seq) - 1 <= limit

    def test_specific_pair_occurs_in_its_round(self):
        w = universal_indexed_word()
        assert indexed_factor_search(w, (3, 1), universal_round_end(3)) is not None

    def test_indexed_factor_search_limit(self):
        w = universal_indexed_word()
        assert indexed_factor_search(w, (3,), 10) is None
        assert indexed_factor_search(w, (), 1) == 1


class TestIndexedPeriodic:
    def test_cycle(self):
        w = indexed_periodic((2, 3))
        assert w.prefix(5) == (2, 3, 2, 3, 2)

    def test_empty_cycle_rejected(self):
        with pytest.raises(ValueError):
            indexed_periodic(())


class TestApplyMorphism:
    def test_simple_cycle_image(self):
        # images: 2 -> "0", 3 -> "1"
        image = apply_morphism(zero_one_runs(), indexed_periodic((2, 3)))
        assert "".join(image.prefix(6)) == "010101"

    def test_image_of_universal_word(self):
        image = apply_morphism(zero_one_runs(), universal_indexed_word())
        # round 1 erases; round 2 contributes "00000"; round 3 opens with "1"
        assert "".join(image.prefix(6)) == "000001"

    def test_prefix_is_concatenation_of_images(self):
        phi = zero_one_runs()
        w = universal_indexed_word()
        image = apply_morphism(phi, w)
        expected: list[str] = []
        for idx in w.prefix(40):
            expected.extend(phi.image(idx))
        got = image.prefix(len(expected))
        assert "".join(got) == "".join(expected)

    def test_stalling_morphism_raises(self):
        image = apply_morphism(zero_one_runs(), indexed_periodic((1,)), stall_limit=50)
        with pytest.raises(MorphismStallError):
            image.prefix(1)


class TestAsWord:
    def test_string_and_tuple_forms(self):
        assert as_word("011") == ("0", "1", "1")
        assert as_word(("0", "1")) == ("0", "1")
        assert as_word("") == ()
