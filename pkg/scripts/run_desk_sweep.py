"""Desk-scale comparison of greedy, PRo and OSU on a random graph.

Prints the guarantee report, runs the sweep and prints robust values as a
k x tau table per algorithm. Usage: python scripts/run_desk_sweep.py [out.csv]
"""
import sys
from collections import defaultdict
from pathlib import Path

from robustsub.experiment import emit_bound_report, emit_csv, load_config, run_experiment

ROOT = Path(__file__).resolve().parents[1]


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "desk_domset.csv"
    cfg = load_config(ROOT / "configs" / "desk_domset.cfg", {"output": out})
    print(emit_bound_report(cfg))
    records = run_experiment(cfg)
    emit_csv(records, cfg.output)

    table = defaultdict(dict)
    for r in records:
        table[r.algorithm][(r.k, r.tau)] = "-" if r.robust_value is None else f"{r.robust_value:.0f}/{r.raw_value:.0f}"
    for alg, cells in table.items():
        print(f"\n{alg} (robust/raw)")
        print("k\\tau " + " ".join(f"{t:>8}" for t in cfg.tau_values))
        for k in cfg.k_values:
            print(f"{k:>5} " + " ".join(f"{cells[(k, t)]:>8}" for t in cfg.tau_values))
    print(f"\nwrote {cfg.output}")


if __name__ == "__main__":
    main()
