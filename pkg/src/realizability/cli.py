"""Command-line interface.

Subcommands:

* ``definitive <automaton-file> [--language]`` — print a definitive word
  (``DEFINITIVE=<word>``) and optionally the definitive-language automaton.
* ``decide-prefix`` / ``decide-buchi`` — run the fuel-bounded deciders for
  an automaton file against a generated infinite word.
* ``decide-infinite`` — prefix/Büchi decisions for an effective automaton
  over the indexed alphabet along the universal indexed word.
* ``rr`` — does a regular language meet a filter language?  Runs the full
  reduction through prefix realizability along the filter's enumeration
  word.
* ``word dump`` — print a prefix of a generated word.

Decision subcommands print ``ANSWER=<Yes|No|FuelExhausted> EVIDENCE=<n>``
as their first stdout line and encode the verdict in the exit status:
0 Yes, 1 No, 2 FuelExhausted, 3 usage or input errors.  ``--trace`` streams
``position state`` pairs to stderr so stdout stays machine-parseable.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from .automata import Alphabet, Dfa, regex_dfa, render_word
from .bridge import (
    FilterLanguage,
    parse_machines,
    rr_to_prefix,
    prefix_via_rr,
    theorem1_word,
)
from .decide import (
    Fuel,
    FuelExhausted,
    Outcome,
    YES,
    deadlock_accepting_variant,
    decide_buchi,
    decide_prefix,
)
from .definitive import definitive_language, find_definitive_word
from .effective import (
    decide_buchi_infinite,
    decide_prefix_infinite,
    derived_fuel,
    parse_effective,
    zero_one_blocks,
    zero_one_runs,
)
from .textio import parse_dfa, serialize_dfa
from .words import (
    EffectiveMorphism,
    FACTOR_UNIVERSAL,
    InfiniteWord,
    IndexedInfiniteWord,
    apply_morphism,
    champernowne,
    ultimately_periodic,
    universal_indexed_word,
)


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 3.

    The default argparse exit status (2) is taken by the FuelExhausted
    verdict, and the contract reserves everything above 2 for errors.
    """

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _add_generator_flags(p: argparse.ArgumentParser, names: list[str]) -> None:
    p.add_argument("--gen", required=True, choices=names, help="word generator")
    p.add_argument(
        "--alphabet",
        default=None,
        help="alphabet characters (champernowne default 01; ultper default inferred)",
    )
    p.add_argument("--stem", default="", help="finite stem (ultper)")
    p.add_argument("--loop", default=None, help="repeated loop (ultper)")
    p.add_argument(
        "--morphism",
        default=None,
        help="morphism name: zero-one-runs, zero-one-blocks, or cyclic:<img>,<img>,…",
    )
    p.add_argument("--machines", default=None, help="machine list file (theorem1)")


def _build_morphism(spec: str) -> EffectiveMorphism:
    if spec == "zero-one-runs":
        return zero_one_runs()
    if spec == "zero-one-blocks":
        return zero_one_blocks()
    if spec.startswith("cyclic:"):
        images = spec[len("cyclic:") :].split(",")
        seen: dict[str, None] = {}
        for img in images:
            for c in img:
                seen.setdefault(c)
        if not seen:
            raise ValueError("cyclic morphism needs at least one non-empty image")
        return EffectiveMorphism.index_periodic(images, Alphabet(tuple(seen)))
    raise ValueError(f"unknown morphism {spec!r}")


def _build_generator(args: argparse.Namespace) -> InfiniteWord | IndexedInfiniteWord:
    name = args.gen
    explicit = Alphabet(tuple(args.alphabet)) if args.alphabet else None
    if name == "champernowne":
        return champernowne(explicit or Alphabet(("0", "1")))
    if name == "ultper":
        if args.loop is None:
            raise ValueError("ultper needs --loop (and optionally --stem)")
        return ultimately_periodic(args.stem, args.loop, explicit)
    if name == "universal-indexed":
        return universal_indexed_word()
    if name == "morphism":
        if args.morphism is None:
            raise ValueError("morphism generator needs --morphism")
        phi = _build_morphism(args.morphism)
        return apply_morphism(phi, universal_indexed_word())
    if name == "theorem1":
        if args.machines is None:
            raise ValueError("theorem1 generator needs --machines <file>")
        return theorem1_word(parse_machines(_read(args.machines)))
    raise ValueError(f"unknown generator {name!r}")


def _default_fuel(a: Dfa, w: InfiniteWord) -> Fuel:
    if w.universality != FACTOR_UNIVERSAL or w.occurrence_bound is None:
        raise ValueError("--fuel is required: the generator does not advertise factor-universality")
    return Fuel(max(1, w.occurrence_bound(find_definitive_word(a))))


def _tracer(enabled: bool) -> Callable[[int, object], None] | None:
    if not enabled:
        return None

    def on_step(position: int, state: object) -> None:
        print(f"{position} {state}", file=sys.stderr)

    return on_step


def _report(outcome: Outcome) -> int:
    if isinstance(outcome, FuelExhausted):
        print(f"ANSWER=FuelExhausted EVIDENCE={outcome.steps_used}")
        return 2
    print(f"ANSWER={outcome.answer} EVIDENCE={outcome.evidence}")
    return 0 if outcome.answer == YES else 1


def _cmd_definitive(args: argparse.Namespace) -> int:
    a = parse_dfa(_read(args.automaton))
    word = find_definitive_word(a)
    print(f"DEFINITIVE={render_word(word)}")
    if args.language:
        print(serialize_dfa(definitive_language(a)), end="")
    return 0


def _cmd_decide(args: argparse.Namespace) -> int:
    a = parse_dfa(_read(args.automaton))
    w = _build_generator(args)
    if isinstance(w, IndexedInfiniteWord):
        raise ValueError("this generator yields symbol indices; use decide-infinite")
    if args.fuel is not None:
        fuel = Fuel(args.fuel)
    else:
        # The Büchi decider runs the prefix decider on the dead-lock-accepting
        # variant; the resolution bound is that automaton's definitive word.
        fuel = _default_fuel(deadlock_accepting_variant(a) if args.buchi else a, w)
    decider = decide_buchi if args.buchi else decide_prefix
    return _report(decider(a, w, fuel, _tracer(args.trace)))


def _cmd_decide_infinite(args: argparse.Namespace) -> int:
    ea = parse_effective(_read(args.effective))
    w = universal_indexed_word()
    fuel = Fuel(args.fuel) if args.fuel is not None else derived_fuel(ea, w)
    decider = decide_buchi_infinite if args.buchi else decide_prefix_infinite
    return _report(decider(ea, w, fuel, _tracer(args.trace)))


def _cmd_rr(args: argparse.Namespace) -> int:
    lang = FilterLanguage.from_dfa(parse_dfa(_read(args.filter)))
    if args.automaton is not None:
        r = parse_dfa(_read(args.automaton))
    else:
        r = regex_dfa(args.regex, lang.alphabet)
    if args.show_reduction:
        print(serialize_dfa(rr_to_prefix(r)), end="", file=sys.stderr)
    outcome = prefix_via_rr(rr_to_prefix(r), lang)
    return _report(outcome)


def _cmd_word(args: argparse.Namespace) -> int:
    w = _build_generator(args)
    prefix = w.prefix(args.upto)
    if isinstance(w, IndexedInfiniteWord):
        print(" ".join(str(i) for i in prefix))
    else:
        print(render_word(prefix))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realizability", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("definitive", help="definitive word (and language) of an automaton")
    p.add_argument("automaton", help="automaton file")
    p.add_argument("--language", action="store_true", help="also print the definitive-language automaton")
    p.set_defaults(handler=_cmd_definitive)

    for name, buchi in (("decide-prefix", False), ("decide-buchi", True)):
        p = sub.add_parser(name, help=f"{'Büchi' if buchi else 'prefix'} realizability decision")
        p.add_argument("--automaton", required=True, help="automaton file")
        _add_generator_flags(p, ["champernowne", "ultper", "morphism", "theorem1"])
        p.add_argument("--fuel", type=int, default=None, help="simulation budget in symbols")
        p.add_argument("--trace", action="store_true", help="stream position/state pairs to stderr")
        p.set_defaults(handler=_cmd_decide, buchi=buchi)

    p = sub.add_parser("decide-infinite", help="decisions for an effective automaton (indexed alphabet)")
    p.add_argument("--effective", required=True, help="effective-automaton file")
    p.add_argument("--buchi", action="store_true", help="decide Büchi instead of prefix realizability")
    p.add_argument("--fuel", type=int, default=None, help="simulation budget in symbols")
    p.add_argument("--trace", action="store_true", help="stream position/state pairs to stderr")
    p.set_defaults(handler=_cmd_decide_infinite)

    p = sub.add_parser("rr", help="does a regular language meet the filter language?")
    p.add_argument("--filter", required=True, help="filter-language automaton file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--automaton", help="automaton file for the regular language")
    group.add_argument("--regex", help="regular expression for the regular language")
    p.add_argument("--show-reduction", action="store_true", help="print the reduced automaton to stderr")
    p.set_defaults(handler=_cmd_rr)

    p = sub.add_parser("word", help="word utilities")
    p.add_argument("action", choices=["dump"], help="what to do")
    _add_generator_flags(
        p, ["champernowne", "ultper", "universal-indexed", "morphism", "theorem1"]
    )
    p.add_argument("--upto", type=int, required=True, help="prefix length to print")
    p.set_defaults(handler=_cmd_word)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
