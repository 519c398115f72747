"""Command line front end.

Every subcommand works against a corpus directory: the packaged one by
default, or the one named by --corpus or the SPECTRA_CORPUS environment
variable. JSON output is canonical (sorted keys, two-space indent) so that
identical inputs give byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 corpus or usage error.
"""

from __future__ import annotations

import argparse
import sys

from .checks import CRITERIA, build_bundle, run_verification, to_json
from .corpus import CorpusError, load_corpus
from .factors import FactorIndex
from .radical import classify_radical, radical_complement
from .spectrum import periodic_spectrum, poset_to_dot
from .words import SpecError, generate_prefix, horizon_for


def _corpus(args):
    return load_corpus(args.corpus)


def _entry(corpus, name: str):
    try:
        return corpus.words[name]
    except KeyError:
        raise CorpusError(f"unknown corpus word {name!r}; available: "
                          + ", ".join(sorted(corpus.words)))


def _emit(payload) -> None:
    print(to_json(payload))


def cmd_gen(args) -> int:
    corpus = _corpus(args)
    entry = _entry(corpus, args.word)
    print(generate_prefix(entry.spec, args.length))
    return 0


def cmd_complexity(args) -> int:
    corpus = _corpus(args)
    entry = _entry(corpus, args.word)
    n_max = args.up_to if args.up_to is not None else corpus.h
    horizon = horizon_for(entry.spec, n_max)
    index = FactorIndex(generate_prefix(entry.spec, horizon.prefix_len),
                        horizon=horizon)
    _emit({
        "word": args.word,
        "n_max": n_max,
        "guarantee": horizon.guarantee,
        "profile": index.complexity_profile(n_max),
    })
    return 0


def cmd_per(args) -> int:
    corpus = _corpus(args)
    entry = _entry(corpus, args.word)
    horizon = horizon_for(entry.spec, corpus.h)
    index = FactorIndex(generate_prefix(entry.spec, horizon.prefix_len),
                        horizon=horizon)
    roots = periodic_spectrum(index,
                              max_period=corpus.defaults["max_period"],
                              power=corpus.defaults["power"])
    _emit({
        "word": args.word,
        "max_period": corpus.defaults["max_period"],
        "power": corpus.defaults["power"],
        "roots": roots,
    })
    return 0


def cmd_radical(args) -> int:
    corpus = _corpus(args)
    entry = _entry(corpus, args.word)
    job = entry.radical
    prefix_len = args.prefix if args.prefix is not None else job.prefix
    slack = args.slack if args.slack is not None else job.n_slack
    word = generate_prefix(entry.spec, prefix_len)
    if args.complement:
        bound = (args.bound if args.bound is not None
                 else job.complement_bound)
        _emit({"word": args.word,
               "complement": radical_complement(word, bound,
                                                n_slack=slack).to_dict()})
        return 0
    if args.z is None:
        print("spectra radical: a pattern is required unless --complement "
              "is given", file=sys.stderr)
        return 2
    _emit({"word": args.word,
           "verdict": classify_radical(word, args.z, n_slack=slack).to_dict()})
    return 0


def cmd_poset(args) -> int:
    corpus = _corpus(args)
    _entry(corpus, args.word)
    bundle = build_bundle(corpus, args.word)
    if args.dot:
        print(poset_to_dot(bundle.poset))
        return 0
    _emit({"word": args.word, "poset": bundle.poset.to_dict()})
    return 0


def cmd_topology(args) -> int:
    corpus = _corpus(args)
    _entry(corpus, args.word)
    bundle = build_bundle(corpus, args.word)
    _emit({
        "word": args.word,
        "points": bundle.points.to_dict(),
        "axioms": bundle.topo_axioms.to_dict(),
        "order": bundle.topo_order.to_dict(),
        "sublevel": bundle.topo_sublevel.to_dict(),
        "density": bundle.topo_density.to_dict(),
    })
    return 0


def cmd_bounds(args) -> int:
    corpus = _corpus(args)
    _entry(corpus, args.word)
    bundle = build_bundle(corpus, args.word)
    _emit({
        "word": args.word,
        "bounds": bundle.bounds.to_dict(),
        "minmax": bundle.minmax.to_dict(),
        "chain": bundle.chain.to_dict(),
        "union": bundle.union.to_dict(),
    })
    return 0


def cmd_verify(args) -> int:
    criteria = tuple(args.criterion) if args.criterion else None
    report = run_verification(args.corpus, criteria=criteria)
    if args.json:
        _emit(report.to_dict())
    else:
        for line in report.lines():
            print(line)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra",
        description="Factor complexity, spectrum posets, and negligible "
                    "patterns of infinite words.")
    parser.add_argument("--corpus", metavar="DIR", default=None,
                        help="corpus directory (default: packaged corpus, "
                             "or SPECTRA_CORPUS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print a prefix of a corpus word")
    p.add_argument("word")
    p.add_argument("-n", "--length", type=int, default=64)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("complexity", help="factor counts by length")
    p.add_argument("word")
    p.add_argument("--up-to", type=int, default=None, metavar="N")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("per", help="periodic spectrum roots")
    p.add_argument("word")
    p.set_defaults(func=cmd_per)

    p = sub.add_parser("radical", help="negligibility verdict for a pattern")
    p.add_argument("word")
    p.add_argument("z", nargs="?", default=None,
                   help="pattern to classify")
    p.add_argument("--complement", action="store_true",
                   help="classify every short factor instead")
    p.add_argument("--bound", type=int, default=None,
                   help="length bound for --complement")
    p.add_argument("--prefix", type=int, default=None,
                   help="prefix length to scan")
    p.add_argument("--slack", type=int, default=None,
                   help="window lengths beyond the pattern to test")
    p.set_defaults(func=cmd_radical)

    p = sub.add_parser("poset", help="spectrum poset of a word")
    p.add_argument("word")
    p.add_argument("--dot", action="store_true", help="emit Graphviz")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("topology", help="point structure and axiom checks")
    p.add_argument("word")
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("bounds", help="count bounds and poset reports")
    p.add_argument("word")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--criterion", action="append", choices=CRITERIA,
                   metavar="ID", help="run only this criterion (repeatable)")
    p.add_argument("--json", action="store_true",
                   help="emit the report as JSON instead of lines")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CorpusError as exc:
        print(f"spectra: {exc}", file=sys.stderr)
        return 2
    except SpecError as exc:
        print(f"spectra: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
