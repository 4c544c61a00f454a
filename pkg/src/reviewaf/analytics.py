"""Per-framework feature records, corpus aggregation, and a seeded generator
of synthetic peer-review frameworks."""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ConsistencyError, ParameterError, ReviewAFError, ValidationGateError
from .review_model import (
    ReviewArgument,
    ReviewArgumentId,
    ReviewFramework,
    Resolution,
    parse_review_json,
    resolve,
)


@dataclass(frozen=True)
class StatsRecord:
    acceptable: bool
    parties: int
    author_args_incl_root: int
    author_args_excl_root: int
    reviewer_args_total: int
    reviewer_args_avg: float
    chain_len_avg: float
    author_accepted: int
    reviewer_accepted_total: int
    reviewer_accepted_avg: float
    solve_seconds: float = 0.0


FEATURES = tuple(f.name for f in fields(StatsRecord) if f.name != "acceptable")
CSV_COLUMNS = ("file", "acceptable") + FEATURES


def chain_lengths(rf: ReviewFramework) -> tuple[int, int]:
    """(number of maximal root-terminating attack paths, sum of their node counts).

    A maximal path starts at an unattacked argument and follows attack edges
    to the root.  Counted by dynamic programming over a topological order, so
    DAGs with many paths stay cheap.
    """
    targets = {i: [] for i in rf.ids}
    indeg = {i: 0 for i in rf.ids}
    for a, b in dict.fromkeys(rf.attack_pairs):
        targets[a].append(b)
        indeg[b] += 1
    sources = [i for i in rf.ids if indeg[i] == 0]
    order = []
    pending = dict(indeg)
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        order.append(x)
        for t in targets[x]:
            pending[t] -= 1
            if pending[t] == 0:
                queue.append(t)
    if len(order) != len(rf.ids):
        raise ConsistencyError("attack graph is cyclic; chain lengths are undefined")

    paths = {i: 0 for i in rf.ids}  # paths from i to the root
    nodes = {i: 0 for i in rf.ids}  # summed node counts of those paths
    paths[rf.root], nodes[rf.root] = 1, 1
    for x in reversed(order):
        if x == rf.root:
            continue
        for t in targets[x]:
            paths[x] += paths[t]
            nodes[x] += nodes[t] + paths[t]
    return sum(paths[s] for s in sources), sum(nodes[s] for s in sources)


def framework_stats(rf: ReviewFramework, res: Resolution, t: float = 0.0) -> StatsRecord:
    if set(res.per_party_accepted) != set(rf.party_names) or not res.grounded <= set(rf.ids):
        raise ConsistencyError("resolution does not belong to this framework")
    author = rf.author_party
    sizes = {name: len(args) for name, args in rf.parties}
    reviewers = [p for p in rf.party_names if p != author]
    n_rev = len(reviewers)
    rev_total = sum(sizes[p] for p in reviewers)
    rev_acc = sum(res.per_party_accepted[p] for p in reviewers)

    if not rf.attack_pairs:
        chain_avg = 1.0
    else:
        count, total = chain_lengths(rf)
        chain_avg = total / count if count else 1.0

    return StatsRecord(
        acceptable=res.acceptable,
        parties=len(rf.parties),
        author_args_incl_root=sizes[author],
        author_args_excl_root=sizes[author] - 1,
        reviewer_args_total=rev_total,
        reviewer_args_avg=rev_total / n_rev if n_rev else 0.0,
        chain_len_avg=chain_avg,
        author_accepted=res.per_party_accepted[author],
        reviewer_accepted_total=rev_acc,
        reviewer_accepted_avg=rev_acc / n_rev if n_rev else 0.0,
        solve_seconds=t,
    )


@dataclass(frozen=True)
class FeatureSummary:
    mean: float
    std: float


@dataclass(frozen=True)
class CorpusStats:
    count: int
    acceptability_rate: float
    features: dict[str, FeatureSummary] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "acceptability_rate": self.acceptability_rate,
            "features": {k: asdict(v) for k, v in self.features.items()},
        }


def corpus_stats(records: Sequence[StatsRecord]) -> CorpusStats:
    """Mean and sample standard deviation (n - 1) of every feature.

    A single record gets std 0.
    """
    if not records:
        raise ReviewAFError("corpus_stats needs at least one record")
    features = {}
    for name in FEATURES:
        values = [float(getattr(r, name)) for r in records]
        std = statistics.stdev(values) if len(values) > 1 else 0.0
        features[name] = FeatureSummary(statistics.fmean(values), std)
    rate = sum(r.acceptable for r in records) / len(records)
    return CorpusStats(len(records), rate, features)


# ---------------------------------------------------------------------------
# Batch processing


@dataclass(frozen=True)
class FileResult:
    name: str
    record: StatsRecord | None = None
    error: str | None = None
    kind: str | None = None  # "parse" or "validation"


def process_file(path: Path) -> FileResult:
    """Parse and resolve one file, timing parse -> resolve."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        return FileResult(Path(path).name, error=str(e), kind="parse")
    start = time.perf_counter()
    try:
        rf = parse_review_json(text)
        res = resolve(rf)
    except ValidationGateError as e:
        return FileResult(Path(path).name, error=str(e), kind="validation")
    except ReviewAFError as e:
        return FileResult(Path(path).name, error=str(e), kind="parse")
    elapsed = time.perf_counter() - start
    return FileResult(Path(path).name, framework_stats(rf, res, elapsed))


def process_corpus(paths: Iterable[Path], jobs: int = 1) -> list[FileResult]:
    """Process files (concurrently when ``jobs > 1``); results sorted by name."""
    paths = sorted(paths, key=lambda p: Path(p).name)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(process_file, paths))
    else:
        results = [process_file(p) for p in paths]
    return sorted(results, key=lambda r: r.name)


def stats_csv(results: Iterable[FileResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        if r.record is None:
            continue
        row = asdict(r.record)
        writer.writerow([r.name, str(row["acceptable"]).lower()] + [_fmt(row[k]) for k in FEATURES])
    return buf.getvalue()


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(round(value, 6)) if value != int(value) else f"{value:.1f}"
    return str(value)


# ---------------------------------------------------------------------------
# Synthetic frameworks


@dataclass(frozen=True)
class SynthParams:
    """Knobs for :func:`generate_synthetic`.

    Round 1 holds reviewer comments on the manuscript; even rounds hold author
    responses (drawn with ``response_probability``), odd rounds from 3 on hold
    reviewer counters (``counter_response_probability``).  ``max_arguments``
    caps the framework size, root included.
    """

    seed: int = 0
    reviewer_count_range: tuple[int, int] = (1, 3)
    reviewer_args_range: tuple[int, int] = (1, 4)
    response_probability: float = 0.8
    counter_response_probability: float = 0.2
    max_rounds: int = 3
    max_arguments: int | None = None
    author_party: str = "Author"

    def check(self) -> None:
        for name in ("reviewer_count_range", "reviewer_args_range"):
            lo, hi = getattr(self, name)
            if not (isinstance(lo, int) and isinstance(hi, int)) or lo < 0 or lo > hi:
                raise ParameterError(f"{name} must be 0 <= lo <= hi, got {(lo, hi)}")
        for name in ("response_probability", "counter_response_probability"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ParameterError(f"{name} must lie in [0, 1], got {p}")
        if self.max_rounds < 1:
            raise ParameterError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if self.max_arguments is not None and self.max_arguments < 1:
            raise ParameterError(f"max_arguments must be >= 1, got {self.max_arguments}")
        if not self.author_party or "." in self.author_party:
            raise ParameterError(f"bad author party name {self.author_party!r}")


def generate_synthetic(p: SynthParams) -> ReviewFramework:
    """Build a random review framework that satisfies every structural check.

    Each reviewer comment starts a thread of alternating author responses and
    reviewer counters, every argument attacking the previous one in its
    thread, so the result is a tree rooted at the manuscript.
    """
    p.check()
    rng = random.Random(p.seed)
    author = p.author_party
    root = ReviewArgumentId(author, 0, 0)
    parties: dict[str, list[ReviewArgument]] = {author: [ReviewArgument(root, "")]}
    attacks: list[tuple[ReviewArgumentId, ReviewArgumentId]] = []
    numbers: dict[tuple[str, int], int] = {}
    cap = p.max_arguments
    size = 1

    def new_arg(party: str, rnd: int, target: ReviewArgumentId):
        nonlocal size
        n = numbers.get((party, rnd), 0) + 1
        numbers[(party, rnd)] = n
        arg_id = ReviewArgumentId(party, rnd, n)
        kind = "comment" if rnd == 1 else ("response" if party == author else "counter")
        parties[party].append(ReviewArgument(arg_id, f"{party} {kind} {n} in round {rnd}"))
        attacks.append((arg_id, target))
        size += 1
        return arg_id

    for r in range(1, rng.randint(*p.reviewer_count_range) + 1):
        reviewer = f"Reviewer_{r}"
        parties[reviewer] = []
        for _ in range(rng.randint(*p.reviewer_args_range)):
            if cap is not None and size >= cap:
                break
            prev = new_arg(reviewer, 1, root)
            for rnd in range(2, p.max_rounds + 1):
                chance = p.response_probability if rnd % 2 == 0 else p.counter_response_probability
                if rng.random() >= chance or (cap is not None and size >= cap):
                    break
                prev = new_arg(author if rnd % 2 == 0 else reviewer, rnd, prev)

    return ReviewFramework(
        tuple((name, tuple(args)) for name, args in parties.items()),
        tuple(attacks),
        root,
    )
