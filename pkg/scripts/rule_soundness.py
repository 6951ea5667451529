"""Randomised soundness sweep of every rewrite rule against the dense evaluator."""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from zxcss.selfcheck import SAMPLERS, check_normalize, check_rule


@dataclass
class SweepConfig:
    seed: int = 0
    trials: int = 500
    max_open: int = 5


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--max-open", type=int, default=5)
    args = ap.parse_args()
    cfg = SweepConfig(args.seed, args.trials, args.max_open)

    rng = random.Random(cfg.seed)
    failed = 0
    for rule in SAMPLERS:
        t0 = time.perf_counter()
        r = check_rule(rule, rng, cfg.trials, cfg.max_open)
        failed += r.failures
        print(f"{rule:10} {r.applied:5d} sites  {r.failures} failures  {time.perf_counter() - t0:.2f}s")
    t0 = time.perf_counter()
    bad = check_normalize(rng, cfg.trials // 5, cfg.max_open + 1)
    failed += bad
    print(f"{'normalize':10} {cfg.trials // 5:5d} diagrams  {bad} failures  {time.perf_counter() - t0:.2f}s")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
