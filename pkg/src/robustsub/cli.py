"""Command-line entry point: ``robustsub --config sweep.cfg [overrides]``.

Exit codes: 0 after a full sweep (skipped cells included), 1 on a
configuration error, 2 on an I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .errors import ConfigError, DomainError, ParseError
from .experiment import emit_bound_report, emit_csv, load_config, run_experiment

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="robustsub", description="Robust submodular maximization sweeps.")
    p.add_argument("--config", required=True, help="flat key=value config file")
    p.add_argument("--k", help="comma-separated k values (overrides config)")
    p.add_argument("--tau", help="comma-separated tau values (overrides config)")
    p.add_argument("--eta", help="bucket-size base for PRo")
    p.add_argument("--seed", help="experiment seed")
    p.add_argument("--adversary", choices=["optimal", "greedy"])
    p.add_argument("--output", help="CSV output path")
    p.add_argument("--bounds", action="store_true", help="print the guarantee report and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    overrides = {key: getattr(args, key) for key in ("k", "tau", "eta", "seed", "adversary", "output")
                 if getattr(args, key) is not None}
    try:
        cfg = load_config(args.config, overrides)
    except OSError as exc:
        print(f"robustsub: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"robustsub: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.bounds:
        sys.stdout.write(emit_bound_report(cfg))
        return EXIT_OK
    try:
        records = run_experiment(cfg)
    except OSError as exc:
        print(f"robustsub: cannot load dataset: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, DomainError, ConfigError) as exc:
        print(f"robustsub: dataset error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        emit_csv(records, cfg.output)
    except OSError as exc:
        print(f"robustsub: cannot write {cfg.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    ok = sum(r.status == "ok" for r in records)
    print(f"wrote {len(records)} rows ({ok} ok) to {cfg.output}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
