"""Exploratory: do non-arranged word choices without the bad pattern still give a basis?

Prints one line per sample; nothing here is a theorem check.
"""

import argparse

from fflvb.rootsys import weight_from_fundamental
from fflvb.verify import conjecture_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--weight", default="1,1")
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    w = weight_from_fundamental(args.n, [int(x) for x in args.weight.split(",")])
    rep = conjecture_scan(w, args.max_len, seed=args.seed, samples=args.samples)
    fails = 0
    for s in rep["samples"]:
        fails += not s["basis"]
        print(f"sample {s['sample']:>3}  non-arranged {s['non_arranged']:>3}  rank {s['rank']}/{s['dim']}")
    print(f"{w}: {len(rep['samples']) - fails}/{len(rep['samples'])} samples gave a basis")


if __name__ == "__main__":
    main()
