"""Generate a seeded synthetic corpus and print its feature table (mean ± sample std).

    python3 scripts/synthetic_corpus_stats.py --count 88 --seed 0 --out DIR
"""

import argparse
from pathlib import Path

from reviewaf.analytics import (
    FEATURES,
    SynthParams,
    corpus_stats,
    generate_synthetic,
    process_corpus,
)
from reviewaf.review_model import serialize_review_json


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=88)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-rounds", type=int, default=3)
    ap.add_argument("--response-prob", type=float, default=0.8)
    ap.add_argument("--counter-prob", type=float, default=0.2)
    ap.add_argument("--out", type=Path, default=Path("synthetic_corpus"), help="directory the corpus is written to and read back from")
    args = ap.parse_args()

    frameworks = [
        generate_synthetic(
            SynthParams(
                seed=args.seed + k,
                max_rounds=args.max_rounds,
                response_probability=args.response_prob,
                counter_response_probability=args.counter_prob,
            )
        )
        for k in range(args.count)
    ]
    args.out.mkdir(parents=True, exist_ok=True)
    for k, rf in enumerate(frameworks):
        (args.out / f"synth_{k:04d}.json").write_text(serialize_review_json(rf), encoding="utf-8")

    results = process_corpus(sorted(args.out.glob("synth_*.json")))
    summary = corpus_stats([r.record for r in results if r.record is not None])
    print(f"frameworks: {summary.count}")
    print(f"acceptable: {summary.acceptability_rate:.1%}")
    for name in FEATURES:
        f = summary.features[name]
        print(f"{name:<26} {f.mean:10.4f} ± {f.std:.4f}")


if __name__ == "__main__":
    main()
