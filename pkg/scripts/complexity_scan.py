"""Compare comparison counts and wall time of exhaustive vs blocked detection.

    python scripts/complexity_scan.py --sizes 200 400 800 --attrs 8 --epsilon 2
"""

import argparse
import random
import time

from multidedup.dedup import BlockScheme, DetectionStats, Record, detect_blocked, detect_exhaustive
from multidedup.multimetric import ABS
from multidedup.multireal import MultiReal
from multidedup.multiset import Multiset


def synthetic(n, m, max_count, rng, dup_rate=0.1):
    attrs = [f"x{i}" for i in range(m)]
    out = []
    for i in range(n):
        if out and rng.random() < dup_rate:
            src = rng.choice(out).attrs
            counts = {a: src[a] for a in attrs}
            tweak = rng.choice(attrs)
            counts[tweak] = max(0, counts[tweak] + rng.choice((-1, 1)))
        else:
            counts = {a: rng.randint(0, max_count) for a in attrs}
        out.append(Record(f"r{i:06d}", Multiset(counts)))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000])
    ap.add_argument("--attrs", type=int, default=8)
    ap.add_argument("--max-count", type=int, default=5)
    ap.add_argument("--epsilon", type=int, default=2)
    ap.add_argument("--width", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    eps = MultiReal(0, args.epsilon)
    print(f"{'n':>6} {'exh cmp':>10} {'exh s':>7} {'blk cmp':>10} {'pruned':>8} {'blk s':>7} {'pairs':>6}")
    for n in args.sizes:
        records = synthetic(n, args.attrs, args.max_count, rng)
        full, blk = DetectionStats(), DetectionStats()
        t0 = time.perf_counter()
        a = detect_exhaustive(records, eps, ABS, full)
        t1 = time.perf_counter()
        b = detect_blocked(records, eps, ABS, BlockScheme("card_band", args.width), blk)
        t2 = time.perf_counter()
        assert a == b
        print(f"{n:>6} {full.comparisons:>10} {t1 - t0:>7.2f} {blk.comparisons:>10} "
              f"{blk.pruned:>8} {t2 - t1:>7.2f} {len(a):>6}")


if __name__ == "__main__":
    main()
