#!/usr/bin/env python3
"""Plot CSV artifacts produced by the experiment runner.

Usage: plot_results.py OUT_DIR [PLOT_DIR]

Reads rl_history_*.csv (per-iteration Q-cost) and retrain_history_*.csv
(per-window held-out q-error) from OUT_DIR and writes PNG plots next to
them. Requires matplotlib; everything else in the artifact is plot-free.
"""
import csv
import glob
import os
import sys


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def main():
    if len(sys.argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    out_dir = sys.argv[1]
    plot_dir = sys.argv[2] if len(sys.argv) > 2 else out_dir

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; nothing plotted", file=sys.stderr)
        return 1

    os.makedirs(plot_dir, exist_ok=True)

    rl = sorted(glob.glob(os.path.join(out_dir, "rl_history_*.csv")))
    if rl:
        fig, ax = plt.subplots()
        for path in rl:
            rows = read_csv(path)
            label = os.path.basename(path)[len("rl_history_"):-len(".csv")]
            ax.plot([int(r["iter"]) for r in rows],
                    [float(r["q_cost"]) for r in rows],
                    label=label, linewidth=0.7)
        ax.set_xlabel("iteration")
        ax.set_ylabel("Q-cost")
        ax.legend(fontsize=6)
        fig.savefig(os.path.join(plot_dir, "q_cost.png"), dpi=150)
        print("wrote q_cost.png")

    hist = sorted(glob.glob(os.path.join(out_dir, "retrain_history_*.csv")))
    if hist:
        fig, ax = plt.subplots()
        for path in hist:
            rows = read_csv(path)
            label = os.path.basename(path)[len("retrain_history_"):-len(".csv")]
            ax.plot([int(r["window"]) for r in rows],
                    [float(r["median_q_error"]) for r in rows],
                    marker="o", label=label)
        ax.set_xlabel("retrain window")
        ax.set_ylabel("median held-out q-error")
        ax.legend(fontsize=6)
        fig.savefig(os.path.join(plot_dir, "q_error.png"), dpi=150)
        print("wrote q_error.png")

    if not rl and not hist:
        print("no plottable CSVs found in " + out_dir, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
