"""Time grounded resolution on synthetic review trees of growing size.

    python3 scripts/bench_linear.py --sizes 10000 100000 200000 --repeat 5
"""

import argparse
import timeit

from reviewaf.analytics import SynthParams, generate_synthetic
from reviewaf.review_model import ReviewFramework, resolve


def tree(n: int, seed: int) -> ReviewFramework:
    return generate_synthetic(
        SynthParams(
            seed=seed,
            reviewer_count_range=(10, 10),
            reviewer_args_range=(n, n),
            response_probability=0.9,
            counter_response_probability=0.5,
            max_rounds=5,
            max_arguments=n,
        )
    )


def best_time(rf: ReviewFramework, repeat: int) -> float:
    holder = []

    def setup():
        holder[:] = [ReviewFramework(rf.parties, rf.attack_pairs, rf.root)]

    return min(timeit.Timer(lambda: resolve(holder[0]), setup=setup).repeat(repeat=repeat, number=1))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10_000, 100_000, 200_000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'|A|':>8} {'|R|':>8} {'best s':>9} {'us/elem':>8} {'ratio':>6}")
    prev = None
    for n in args.sizes:
        rf = tree(n, args.seed)
        t = best_time(rf, args.repeat)
        elems = len(rf.ids) + len(rf.attack_pairs)
        ratio = f"{t / prev:6.2f}" if prev else "     -"
        print(f"{len(rf.ids):>8} {len(rf.attack_pairs):>8} {t:9.4f} {1e6 * t / elems:8.3f} {ratio}")
        prev = t


if __name__ == "__main__":
    main()
