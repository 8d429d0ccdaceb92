"""Replay a synthetic stream with temporally local near-duplicates.

Reports how many injected duplicates each window size catches.

    python scripts/stream_replay.py --length 5000 --windows 1 8 64 512
"""

import argparse
import random

from multidedup.dedup import BlockScheme, Record
from multidedup.multireal import MultiReal
from multidedup.multiset import Multiset
from multidedup.stream import stream_init


def make_stream(length, m, lag, rng):
    attrs = [f"x{i}" for i in range(m)]
    records, injected = [], set()
    for i in range(length):
        if i > lag and rng.random() < 0.2:
            src = records[i - rng.randint(1, lag)].attrs
            counts = {a: src[a] for a in attrs}
            tweak = rng.choice(attrs)
            counts[tweak] = max(0, counts[tweak] + rng.choice((-1, 1)))
            injected.add(f"e{i:06d}")
        else:
            counts = {a: rng.randint(0, 6) for a in attrs}
        records.append(Record(f"e{i:06d}", Multiset(counts)))
    return records, injected


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=5000)
    ap.add_argument("--attrs", type=int, default=10)
    ap.add_argument("--lag", type=int, default=50, help="max distance of an injected duplicate")
    ap.add_argument("--epsilon", type=int, default=2)
    ap.add_argument("--windows", type=int, nargs="+", default=[1, 8, 64, 512])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    records, injected = make_stream(args.length, args.attrs, args.lag, random.Random(args.seed))
    print(f"{len(injected)} injected near-duplicates, lag <= {args.lag}")
    for W in args.windows:
        state = stream_init(W, MultiReal(0, args.epsilon), scheme=BlockScheme("card_band", 1))
        flagged = {r.id for r in records if state.process(r).status == "duplicate"}
        hit = len(flagged & injected)
        print(f"W={W:>5}: flagged={len(flagged):>5} injected caught={hit:>5} "
              f"comparisons={state.stats.comparisons:>8} pruned={state.stats.pruned:>8}")


if __name__ == "__main__":
    main()
