"""ICCMA ``p af <n>`` text format.

Arguments are numbered 1..n; each following line ``i j`` says argument i
attacks argument j.  Blank lines and ``#`` comments are accepted on input and
never produced on output.
"""

from __future__ import annotations

import json

from .af_core import Framework
from .errors import IccmaParseError, ReviewParseError
from .review_model import (
    ReviewArgument,
    ReviewFramework,
    check_valid,
    parse_argument_id,
    to_framework,
)


def parse_iccma(text: str) -> tuple[Framework, dict[int, str]]:
    """Parse ICCMA text into a framework keyed ``"1"``..``"n"``.

    Returns the framework and the index map ``{i: key}``.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise IccmaParseError(lineno, "duplicate 'p af' header")
            if len(tokens) != 3 or tokens[1] != "af":
                raise IccmaParseError(lineno, f"malformed header {line!r}, expected 'p af <n>'")
            n = _int(tokens[2], lineno)
            continue
        if n is None:
            raise IccmaParseError(lineno, "attack line before the 'p af <n>' header")
        if len(tokens) != 2:
            raise IccmaParseError(lineno, f"expected two indices, got {line!r}")
        i, j = (_int(t, lineno) for t in tokens)
        for x in (i, j):
            if not 1 <= x <= n:
                raise IccmaParseError(lineno, f"index {x} out of range 1..{n}")
        edges.append((str(i), str(j)))
    if n is None:
        raise IccmaParseError(max(1, len(text.splitlines())), "missing 'p af <n>' header")
    keys = tuple(str(i) for i in range(1, n + 1))
    return Framework(keys, tuple(edges)), {i: str(i) for i in range(1, n + 1)}


def _int(token: str, lineno: int) -> int:
    if not token.isascii() or not token.isdigit():
        raise IccmaParseError(lineno, f"{token!r} is not a non-negative integer")
    return int(token)


def index_map(f: Framework) -> dict[str, int]:
    """1-based ICCMA index of each key, by insertion order."""
    return {key: i for i, key in enumerate(f.arguments, start=1)}


def emit_iccma(f: Framework) -> str:
    idx = index_map(f)
    lines = [f"p af {len(f)}"]
    lines += [f"{idx[a]} {idx[b]}" for a, b in f.attacks]
    return "\n".join(lines) + "\n"


def review_to_iccma(rf: ReviewFramework) -> tuple[str, dict[str, str]]:
    """ICCMA text plus the sidecar ``{"1": "Author.0.0", ...}``.

    Argument texts and parties without arguments are not carried over.
    """
    check_valid(rf)
    f, _ = to_framework(rf)
    sidecar = {str(i): key for key, i in index_map(f).items()}
    return emit_iccma(f), sidecar


def iccma_to_review(text: str, sidecar: dict[str, str]) -> ReviewFramework:
    """Rebuild a review framework from ICCMA text and its sidecar map.

    Parties appear in order of their first argument; texts come back empty.
    """
    f, indices = parse_iccma(text)
    if set(sidecar) != {str(i) for i in indices}:
        raise ReviewParseError("sidecar keys do not match the ICCMA indices 1..n")
    ids = {k: parse_argument_id(sidecar[k]) for k in f.arguments}
    parties: dict[str, list[ReviewArgument]] = {}
    for key in f.arguments:
        i = ids[key]
        parties.setdefault(i.party, []).append(ReviewArgument(i, ""))
    pairs = [(ids[a], ids[b]) for a, b in f.attacks]
    return ReviewFramework.build({p: tuple(v) for p, v in parties.items()}, pairs)


def dump_sidecar(sidecar: dict[str, str]) -> str:
    return json.dumps(sidecar, indent=2, ensure_ascii=False) + "\n"
