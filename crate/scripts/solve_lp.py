#!/usr/bin/env python3
"""Solve an exported LP file with HiGHS and print the optimal objective.

Usage: squares ilp --n 8 --variant mod8 --out mod8.lp && python3 scripts/solve_lp.py mod8.lp
Requires the `highspy` package.
"""
import argparse
import sys

import highspy


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lp")
    ap.add_argument("--time-limit", type=float, default=3600.0)
    args = ap.parse_args()
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", args.time_limit)
    if h.readModel(args.lp) != highspy.HighsStatus.kOk:
        sys.exit(f"cannot read {args.lp}")
    h.run()
    status = h.modelStatusToString(h.getModelStatus())
    print(f"{args.lp}\t{status}\t{h.getInfo().objective_function_value:.6g}")
    return 0 if status == "Optimal" else 1


if __name__ == "__main__":
    sys.exit(main())
