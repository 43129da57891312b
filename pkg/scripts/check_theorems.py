"""Run every certificate over a grid of small weights and print a table.

    python scripts/check_theorems.py --n 2 --max-sum 3
"""

import argparse
import itertools
import time

from fflvb.patterns import enumerate_pi
from fflvb.gtbij import enumerate_gt
from fflvb.rootsys import fundamental, weight_from_fundamental, weyl_dim
from fflvb.verify import (
    BasisPolicy,
    degeneration_basis_check,
    graded_dims,
    minkowski_certificate,
    verify_basis,
)


def row(w, seeds):
    t0 = time.perf_counter()
    d = weyl_dim(w)
    counts = (len(enumerate_pi(w)), len(enumerate_gt(w)))
    basis = verify_basis(w).ok and all(verify_basis(w, BasisPolicy("random-arranged", seed=s)).ok for s in seeds)
    degen = graded_dims(w)[1].ok and degeneration_basis_check(w).ok
    mink = "-"
    if sum(w.a) > 1 and w.a != fundamental(w.n, w.n, 2).a:
        c = minkowski_certificate(w)
        mink = f"ok/{c.witness['fallback_count']}fb" if c.ok else "FAIL"
    return d, counts, basis, degen, mink, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-sum", type=int, default=2)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    print(f"{'weight':<14}{'dim':>6}{'|Pi|':>6}{'|Gamma|':>8}  basis  degen  minkowski   secs")
    for a in itertools.product(range(args.max_sum + 1), repeat=args.n):
        if not 0 < sum(a) <= args.max_sum:
            continue
        w = weight_from_fundamental(args.n, a)
        d, (p, g), basis, degen, mink, dt = row(w, range(args.seeds))
        print(f"{str(w):<14}{d:>6}{p:>6}{g:>8}  {'ok' if basis else 'FAIL':<5}  {'ok' if degen else 'FAIL':<5}  {mink:<10}{dt:>6.2f}")


if __name__ == "__main__":
    main()
