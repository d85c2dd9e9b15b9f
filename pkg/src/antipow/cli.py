"""Command-line surface. Every operation is exposed with deterministic,
machine-readable output: identical invocations produce byte-identical bytes
on stdout. Errors map to distinct exit codes:

    1 usage   2 horizon   3 cap-exceeded   4 unsupported-class   5 theorem-violation

A verify run that finds violations exits 5 as well: a failed replay of a
proved statement is a theorem-violation by definition.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .antipower import verify_witness
from .construct import (
    build_morphic_anti_power,
    five_anti_power,
    recurrence_constant,
)
from .errors import (
    AntipowError,
    InvalidGeneratorError,
    TheoremViolationError,
    UsageError,
)
from .morphism import UniformMorphism, classify, fixed_point, parse_morphism
from .verify import (
    PROP_COROLLARY7,
    PROP_GAMMA_RATIOS,
    PROP_LEMMA5,
    PROP_PROP3,
    check_corollary7,
    check_lemma5,
    check_prop3_battery,
    gamma_ratio_table,
)
from .word import DEFAULT_HORIZON


@dataclass(frozen=True)
class RunConfig:
    morphism_text: str
    horizon_cap: int
    output_format: str


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; usage errors must exit 1
    def error(self, message):
        raise UsageError(message)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, indent=2))


def _load_morphism(text: str) -> UniformMorphism:
    """Parse, normalizing a 1-starting generator by swapping the letters."""
    mu = parse_morphism(text)
    if mu.is_prolongable():
        return mu
    swapped = mu.swapped()
    if swapped.is_prolongable():
        print(
            "note: letters swapped to make the morphism prolongable at 0",
            file=sys.stderr,
        )
        return swapped
    raise InvalidGeneratorError(
        f"morphism {mu.text} is prolongable at neither letter"
    )


def _config(args) -> RunConfig:
    return RunConfig(
        morphism_text=getattr(args, "morphism", "") or "",
        horizon_cap=args.horizon,
        output_format=getattr(args, "format", "json"),
    )


def cmd_prefix(args) -> int:
    cfg = _config(args)
    if args.length < 1:
        raise UsageError(f"--length must be >= 1, got {args.length}")
    mu = _load_morphism(cfg.morphism_text)
    stream = fixed_point(mu, horizon_cap=cfg.horizon_cap)
    _emit(stream.factor(1, args.length).text)
    return 0


def cmd_classify(args) -> int:
    cfg = _config(args)
    cls = classify(_load_morphism(cfg.morphism_text))
    if cfg.output_format == "plain":
        _emit(
            f"aperiodic: {str(cls.aperiodic).lower()}\n"
            f"uniformly_recurrent: {str(cls.uniformly_recurrent).lower()}\n"
            f"reason: {cls.reason}"
        )
    else:
        _emit_json(cls.to_json())
    return 0


def cmd_gamma(args) -> int:
    cfg = _config(args)
    mu = _load_morphism(cfg.morphism_text)
    _, csv = gamma_ratio_table(
        mu, args.start, args.k_max, horizon_cap=cfg.horizon_cap
    )
    _emit(csv)
    return 0


def cmd_ap5(args) -> int:
    cfg = _config(args)
    mu = _load_morphism(cfg.morphism_text)
    stream = fixed_point(mu, horizon_cap=cfg.horizon_cap)
    result = five_anti_power(stream)
    if not verify_witness(stream, result.witness):
        raise TheoremViolationError("witness failed re-verification before printing")
    _emit_json(result.to_json())
    return 0


def cmd_apk(args) -> int:
    cfg = _config(args)
    mu = _load_morphism(cfg.morphism_text)
    stream = fixed_point(mu, horizon_cap=cfg.horizon_cap)
    witness = build_morphic_anti_power(mu, args.start, args.k, stream=stream)
    if not verify_witness(stream, witness):
        raise TheoremViolationError("witness failed re-verification before printing")
    _emit_json(witness.to_json())
    return 0


def cmd_c1(args) -> int:
    cfg = _config(args)
    _emit_json(recurrence_constant(_load_morphism(cfg.morphism_text)).to_json())
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    prop = args.property
    if prop == PROP_PROP3:
        report = check_prop3_battery(args.r)
    else:
        if not cfg.morphism_text:
            raise UsageError(f"--morphism is required for property {prop}")
        mu = _load_morphism(cfg.morphism_text)
        if prop == PROP_LEMMA5:
            prefix_len = args.prefix_len or 10**6
            report = check_lemma5(mu, prefix_len, horizon_cap=cfg.horizon_cap)
        elif prop == PROP_COROLLARY7:
            prefix_len = args.prefix_len or 10**5
            report = check_corollary7(
                mu, args.alpha, prefix_len, horizon_cap=cfg.horizon_cap
            )
        else:
            report, csv = gamma_ratio_table(
                mu, args.start, args.k_max, horizon_cap=cfg.horizon_cap
            )
            if cfg.output_format == "csv":
                _emit(csv)
                return 0 if not report.violations else 5
    _emit_json(report.to_json())
    return 0 if not report.violations else 5


def build_parser() -> _Parser:
    parser = _Parser(prog="antipow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, fmt_default="json"):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON,
                       help="maximum prefix length any search may force")
        p.add_argument("--format", choices=("json", "csv", "plain"),
                       default=fmt_default)
        return p

    p = add("prefix", cmd_prefix, "print a prefix of the fixed point", "plain")
    p.add_argument("--morphism", required=True, help='image map, e.g. "0:01,1:10"')
    p.add_argument("--length", type=int, required=True)

    p = add("classify", cmd_classify, "aperiodicity and uniform recurrence")
    p.add_argument("--morphism", required=True)

    p = add("gamma", cmd_gamma, "CSV table of gamma(k) and gamma(k)/k", "csv")
    p.add_argument("--morphism", required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--k-max", dest="k_max", type=int, required=True)

    p = add("ap5", cmd_ap5, "five-anti-power witness with its frame")
    p.add_argument("--morphism", required=True)

    p = add("apk", cmd_apk, "k-anti-power witness with linear block length")
    p.add_argument("--morphism", required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--k", type=int, required=True)

    p = add("c1", cmd_c1, "recurrence constant, marker, and C = (c1+2)r")
    p.add_argument("--morphism", required=True)

    p = add("verify", cmd_verify, "run a property scanner, exit 0 iff clean")
    p.add_argument(
        "property",
        choices=(PROP_LEMMA5, PROP_COROLLARY7, PROP_PROP3, PROP_GAMMA_RATIOS),
    )
    p.add_argument("--morphism")
    p.add_argument("--prefix-len", dest="prefix_len", type=int, default=0)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--k-max", dest="k_max", type=int, default=20)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except AntipowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
