#!/usr/bin/env python3
"""Plot a convergence trace written by `tabutruss optimise`.

Usage: plot_trace.py TRACE.csv [OUT.png]
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    trace = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else trace.rsplit(".", 1)[0] + ".png"

    evals, best = [], []
    events = {}
    with open(trace, newline="") as fh:
        for row in csv.DictReader(fh):
            e = int(row["evaluations"])
            evals.append(e)
            best.append(float(row["best_objective"]))
            if row["event"] != "move":
                events.setdefault(row["event"], []).append((e, float(row["best_objective"])))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.step(evals, best, where="post", lw=1.2, label="best objective")
    markers = {"intensify": "^", "diversify": "v", "reduce": "s"}
    for name, points in sorted(events.items()):
        xs, ys = zip(*points)
        ax.plot(xs, ys, markers.get(name, "o"), ms=4, ls="none", label=name)
    ax.set_xlabel("objective evaluations")
    ax.set_ylabel("best objective value")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main()
