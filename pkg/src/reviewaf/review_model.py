"""Peer-review argumentation frameworks.

Arguments carry ``<party>.<round>.<number>`` identifiers; the unique round-0
argument is the root and stands for the manuscript itself.  The JSON layout is

    {"argument_sets": {party: {id: text, ...}, ...},
     "attack_pairs": [[attacker_id, target_id], ...]}
"""

from __future__ import annotations

import json
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .af_core import Framework, Label, grounded_labelling, is_well_founded
from .errors import IdParseError, ReviewParseError, ValidationGateError

_DIGITS = re.compile(r"[0-9]+")


class ReviewArgumentId(NamedTuple):
    party: str
    round: int
    number: int

    def __str__(self) -> str:
        return f"{self.party}.{self.round}.{self.number}"


def parse_argument_id(s: str) -> ReviewArgumentId:
    """Parse ``"Reviewer_1.1.1"`` into its party, round and number."""
    if not isinstance(s, str):
        raise IdParseError(repr(s), 0, "identifier must be a string")
    parts = s.rsplit(".", 2)
    if len(parts) < 3:
        raise IdParseError(s, len(s), "expected <party>.<round>.<number>")
    party, rnd, num = parts
    round_pos = len(party) + 1
    number_pos = round_pos + len(rnd) + 1
    if not party:
        raise IdParseError(s, 0, "empty party name")
    if "." in party:
        raise IdParseError(s, party.index("."), "party names may not contain dots")
    if not _DIGITS.fullmatch(rnd):
        raise IdParseError(s, round_pos, f"round {rnd!r} is not a decimal integer")
    if not _DIGITS.fullmatch(num):
        raise IdParseError(s, number_pos, f"number {num!r} is not a decimal integer")
    return ReviewArgumentId(party, int(rnd), int(num))


@dataclass(frozen=True)
class ReviewArgument:
    id: ReviewArgumentId
    text: str = ""


@dataclass(frozen=True)
class ReviewFramework:
    """Parties (in document order) with their arguments, attacks, and the root.

    ``parties`` is a tuple of ``(name, arguments)`` pairs so that equality is
    order-sensitive, which is what the JSON round trip promises.
    """

    parties: tuple[tuple[str, tuple[ReviewArgument, ...]], ...]
    attack_pairs: tuple[tuple[ReviewArgumentId, ReviewArgumentId], ...]
    root: ReviewArgumentId

    @classmethod
    def build(cls, parties, attack_pairs, root=None) -> ReviewFramework:
        """Convenience constructor from plain mappings/iterables.

        ``parties`` maps a party name to ``{id: text}`` or a list of
        ReviewArgument; ids may be strings.  ``root`` defaults to the unique
        round-0 argument.
        """
        items = parties.items() if hasattr(parties, "items") else parties
        norm = []
        for name, args in items:
            if hasattr(args, "items"):
                args = [ReviewArgument(_as_id(k), v) for k, v in args.items()]
            norm.append((name, tuple(args)))
        pairs = tuple((_as_id(a), _as_id(b)) for a, b in attack_pairs)
        if root is None:
            zero = [a.id for _, args in norm for a in args if a.id.round == 0]
            if len(zero) != 1:
                raise ReviewParseError(f"expected exactly one round-0 argument, found {len(zero)}")
            root = zero[0]
        return cls(tuple(norm), pairs, _as_id(root))

    @cached_property
    def arguments(self) -> tuple[ReviewArgument, ...]:
        return tuple(a for _, args in self.parties for a in args)

    @cached_property
    def ids(self) -> tuple[ReviewArgumentId, ...]:
        return tuple(a.id for a in self.arguments)

    @cached_property
    def party_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.parties)

    @cached_property
    def party_of(self) -> dict[ReviewArgumentId, str]:
        """Party map entry each argument was declared under."""
        return {a.id: name for name, args in self.parties for a in args}

    @cached_property
    def author_party(self) -> str | None:
        return self.party_of.get(self.root)

    @cached_property
    def _edges(self) -> _EdgeTable:
        ids = self.ids
        index = dict(zip(ids, range(len(ids))))
        dangling = []
        try:
            src = [index[a] for a, _ in self.attack_pairs]
            dst = [index[b] for _, b in self.attack_pairs]
        except KeyError:
            src, dst = [], []
            for a, b in self.attack_pairs:
                if a in index and b in index:
                    src.append(index[a])
                    dst.append(index[b])
                else:
                    dangling.append((a, b))
        src = np.array(src, dtype=np.int64)
        dst = np.array(dst, dtype=np.int64)
        _, first, counts = np.unique(src * max(len(ids), 1) + dst, return_index=True, return_counts=True)
        keep = np.sort(first)
        return _EdgeTable(index, src[keep], dst[keep], dangling, src[first[counts > 1]], dst[first[counts > 1]])

    @cached_property
    def _generic(self) -> tuple[Framework, dict[str, ReviewArgumentId]]:
        keys = [f"{p}.{r}.{n}" for p, r, n in self.ids]
        e = self._edges
        if len(e.index) == len(keys) and not e.dangling:
            f = Framework.from_indexed(tuple(keys), e.src, e.dst)
        else:
            f = Framework(tuple(keys), tuple((str(a), str(b)) for a, b in self.attack_pairs))
        return f, dict(zip(keys, self.ids))

    def text_of(self, arg_id: ReviewArgumentId) -> str:
        for a in self.arguments:
            if a.id == arg_id:
                return a.text
        raise KeyError(str(arg_id))


class _EdgeTable(NamedTuple):
    index: dict  # ReviewArgumentId -> position in ReviewFramework.ids
    src: np.ndarray  # distinct attacks, first-seen order
    dst: np.ndarray
    dangling: list  # attack pairs with an undeclared endpoint
    dup_src: np.ndarray  # attacks listed more than once
    dup_dst: np.ndarray


def _as_id(x) -> ReviewArgumentId:
    return x if isinstance(x, ReviewArgumentId) else parse_argument_id(x)


# ---------------------------------------------------------------------------
# JSON


def parse_review_json(text: str) -> ReviewFramework:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ReviewParseError(f"malformed JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ReviewParseError("top level must be a JSON object")
    for key in ("argument_sets", "attack_pairs"):
        if key not in doc:
            raise ReviewParseError(f"missing top-level key {key!r}")
    sets, pairs = doc["argument_sets"], doc["attack_pairs"]
    if not isinstance(sets, dict):
        raise ReviewParseError("'argument_sets' must be an object")
    if not isinstance(pairs, list):
        raise ReviewParseError("'attack_pairs' must be an array")

    parties = []
    declared: set[ReviewArgumentId] = set()
    for name, members in sets.items():
        if not isinstance(members, dict):
            raise ReviewParseError(f"argument set {name!r} must be an object of id -> text")
        args = []
        for raw_id, arg_text in members.items():
            try:
                arg_id = parse_argument_id(raw_id)
            except IdParseError as e:
                raise ReviewParseError(str(e)) from e
            if arg_id in declared:
                raise ReviewParseError(f"duplicate argument id {raw_id!r}")
            if not isinstance(arg_text, str):
                raise ReviewParseError(f"text of {raw_id!r} must be a string")
            declared.add(arg_id)
            args.append(ReviewArgument(arg_id, arg_text))
        parties.append((name, tuple(args)))

    attack_pairs = []
    for i, pair in enumerate(pairs):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ReviewParseError(f"attack_pairs[{i}] must be a two-element array")
        ids = []
        for raw_id in pair:
            try:
                arg_id = parse_argument_id(raw_id)
            except IdParseError as e:
                raise ReviewParseError(f"attack_pairs[{i}]: {e}") from e
            if arg_id not in declared:
                raise ReviewParseError(f"attack_pairs[{i}]: undeclared argument {raw_id!r}")
            ids.append(arg_id)
        attack_pairs.append(tuple(ids))

    roots = [a.id for _, args in parties for a in args if a.id.round == 0]
    if len(roots) != 1:
        found = ", ".join(map(str, roots)) or "none"
        raise ReviewParseError(f"expected exactly one round-0 (root) argument, found {found}")
    return ReviewFramework(tuple(parties), tuple(attack_pairs), roots[0])


def review_to_dict(rf: ReviewFramework) -> dict:
    return {
        "argument_sets": {
            name: {str(a.id): a.text for a in args} for name, args in rf.parties
        },
        "attack_pairs": [[str(a), str(b)] for a, b in rf.attack_pairs],
    }


def serialize_review_json(rf: ReviewFramework) -> str:
    return json.dumps(review_to_dict(rf), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Validation

ERROR_CODES = (
    "V1_ID_GRAMMAR",
    "V2_REFERENTIAL",
    "V3_ROOT",
    "V4_ASYMMETRY",
    "V5_ISOLATED",
    "V6_ROUND_ORDER",
    "V7_INTRA_PARTY",
    "V8_ACYCLIC",
    "V9_ROOT_REACHABILITY",
)
WARNING_CODES = ("W1_EMPTY_TEXT", "W2_MULTI_TARGET")
NOTE_CODES = ("N1_CROSS_REVIEWER",)


@dataclass(frozen=True)
class Finding:
    code: str
    message: str
    ids: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "ids": list(self.ids)}


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Finding, ...] = ()
    warnings: tuple[Finding, ...] = ()
    notes: tuple[Finding, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.errors

    def codes(self) -> set[str]:
        return {f.code for f in (*self.errors, *self.warnings, *self.notes)}

    def as_dict(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "errors": [f.as_dict() for f in self.errors],
            "warnings": [f.as_dict() for f in self.warnings],
            "notes": [f.as_dict() for f in self.notes],
        }


def validate(rf: ReviewFramework) -> ValidationReport:
    """Run every structural check and collect all findings.

    Per-edge checks run vectorised over integer indices so that validation
    stays linear and cheap on large frameworks.
    """
    errors: list[Finding] = []
    warnings: list[Finding] = []
    notes: list[Finding] = []

    def err(code, msg, *ids):
        errors.append(Finding(code, msg, tuple(str(i) for i in ids)))

    ids = rf.ids
    n = len(ids)

    # V1: identifier grammar and party consistency
    for name, args in rf.parties:
        for a in args:
            i = a.id
            if not i.party or "." in i.party:
                err("V1_ID_GRAMMAR", f"party component {i.party!r} is empty or dotted", i)
            if i.round < 0 or i.number < 0:
                err("V1_ID_GRAMMAR", "round and number must be non-negative", i)
            if i.party != name:
                err("V1_ID_GRAMMAR", f"{i} is declared under party {name!r}", i)

    # V2: uniqueness and referential integrity
    e = rf._edges
    index = e.index
    referential_ok = len(index) == n and not e.dangling
    if len(index) != n:
        for i, c in Counter(ids).items():
            if c > 1:
                err("V2_REFERENTIAL", f"{i} is declared {c} times", i)
    for a, b in e.dangling:
        for end in (a, b):
            if end not in index:
                err("V2_REFERENTIAL", f"attack ({a}, {b}) references undeclared {end}", end)
    for ia, ib in zip(e.dup_src.tolist(), e.dup_dst.tolist()):
        a, b = ids[ia], ids[ib]
        count = rf.attack_pairs.count((a, b))
        err("V2_REFERENTIAL", f"attack ({a}, {b}) listed {count} times", a, b)
    src, dst = e.src, e.dst
    codes = src * max(n, 1) + dst

    # V3: root
    rounds = np.fromiter((i.round for i in ids), dtype=np.int64, count=n)
    zero = np.flatnonzero(rounds == 0)
    if rf.root not in index:
        err("V3_ROOT", f"root {rf.root} is not a declared argument", rf.root)
    if rf.root.round != 0:
        err("V3_ROOT", f"root {rf.root} is not a round-0 argument", rf.root)
    if len(zero) != 1:
        err("V3_ROOT", f"expected exactly one round-0 argument, found {len(zero)}", *(ids[k] for k in zero))

    names = {name: k for k, name in enumerate(rf.party_names)}
    party = np.fromiter(
        (names[name] for name, args in rf.parties for _ in args), dtype=np.int64, count=n
    )
    author = names.get(rf.author_party, -1)

    # V4: a pair whose reverse is also present (self-attacks included)
    reverse = dst * max(n, 1) + src
    for j in np.flatnonzero(np.isin(reverse, codes) & (src <= dst)):
        a, b = ids[src[j]], ids[dst[j]]
        err("V4_ASYMMETRY", f"{a} and {b} attack each other", a, b)
    # V6
    for j in np.flatnonzero(rounds[src] <= rounds[dst]):
        a, b = ids[src[j]], ids[dst[j]]
        err("V6_ROUND_ORDER", f"{a} (round {a.round}) attacks {b} (round {b.round})", a, b)
    # V7, plus a note for attacks between two reviewers
    for j in np.flatnonzero(party[src] == party[dst]):
        a, b = ids[src[j]], ids[dst[j]]
        err("V7_INTRA_PARTY", f"{a} attacks {b} of its own party {rf.party_names[party[src[j]]]!r}", a, b)
    if author >= 0:
        cross = (party[src] != party[dst]) & (party[src] != author) & (party[dst] != author)
        for j in np.flatnonzero(cross):
            a, b = ids[src[j]], ids[dst[j]]
            notes.append(Finding("N1_CROSS_REVIEWER", f"{a} attacks another reviewer's {b}", (str(a), str(b))))

    # V5
    outdeg = np.bincount(src, minlength=n)
    root_k = index.get(rf.root, -1)
    for k in np.flatnonzero(outdeg == 0):
        if k != root_k:
            err("V5_ISOLATED", f"{ids[k]} attacks no argument", ids[k])

    # V8 / V9 need a well-formed graph
    if referential_ok:
        f, _ = rf._generic
        if not is_well_founded(f):
            err("V8_ACYCLIC", "the attack graph contains a cycle", *_cycle_members(f))
        reaches = _reaching_root(n, src, dst, root_k)
        for k in np.flatnonzero(~reaches):
            err("V9_ROOT_REACHABILITY", f"{ids[k]} has no attack path to the root", ids[k])

    for k, a in enumerate(rf.arguments):
        if not a.text and k != root_k:
            warnings.append(Finding("W1_EMPTY_TEXT", f"{a.id} has empty text", (str(a.id),)))
    for k in np.flatnonzero(outdeg > 1):
        ts = [ids[t] for t in dst[src == k]]
        warnings.append(
            Finding("W2_MULTI_TARGET", f"{ids[k]} attacks {len(ts)} arguments", (str(ids[k]), *map(str, ts)))
        )

    return ValidationReport(tuple(errors), tuple(warnings), tuple(notes))


def _reaching_root(n: int, src: np.ndarray, dst: np.ndarray, root: int) -> np.ndarray:
    """Boolean mask of arguments with a directed attack path to ``root``."""
    seen = [False] * n
    if root < 0:
        return np.zeros(n, dtype=bool)
    order = np.argsort(dst, kind="stable")
    flat = src[order].tolist()
    bounds = np.searchsorted(dst[order], np.arange(n + 1)).tolist()
    seen[root] = True
    stack = [root]
    while stack:
        x = stack.pop()
        for y in flat[bounds[x] : bounds[x + 1]]:
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return np.array(seen, dtype=bool)


def _cycle_members(f: Framework) -> list[str]:
    """Arguments left after repeatedly stripping sources and sinks."""
    indeg = {k: len(v) for k, v in f.attackers.items()}
    outdeg = {k: len(v) for k, v in f.targets.items()}
    alive = set(f.arguments)
    queue = deque(k for k in f.arguments if indeg[k] == 0 or outdeg[k] == 0)
    while queue:
        k = queue.popleft()
        if k not in alive:
            continue
        alive.discard(k)
        for t in f.targets[k]:
            indeg[t] -= 1
            if t in alive and indeg[t] == 0:
                queue.append(t)
        for s in f.attackers[k]:
            outdeg[s] -= 1
            if s in alive and outdeg[s] == 0:
                queue.append(s)
    return [k for k in f.arguments if k in alive]


# ---------------------------------------------------------------------------
# Resolution


def to_framework(rf: ReviewFramework) -> tuple[Framework, dict[str, ReviewArgumentId]]:
    """Generic framework keyed by canonical id strings, plus the key map."""
    f, key_map = rf._generic
    return f, dict(key_map)


@dataclass(frozen=True)
class Resolution:
    grounded: frozenset[ReviewArgumentId]
    acceptable: bool
    per_party_accepted: dict[str, int] = field(default_factory=dict)
    undecided: frozenset[ReviewArgumentId] = frozenset()

    def as_dict(self, order: Iterable[ReviewArgumentId] | None = None) -> dict:
        grounded = [i for i in order if i in self.grounded] if order else sorted(self.grounded)
        undecided = [i for i in order if i in self.undecided] if order else sorted(self.undecided)
        return {
            "acceptable": self.acceptable,
            "grounded": [str(i) for i in grounded],
            "per_party_accepted": dict(self.per_party_accepted),
            "undecided": [str(i) for i in undecided],
        }


def resolve(rf: ReviewFramework, force: bool = False) -> Resolution:
    """Grounded resolution; the manuscript is acceptable iff the root is IN.

    Invalid frameworks raise ValidationGateError unless ``force`` is set, in
    which case arguments may come out UNDEC.
    """
    report = validate(rf)
    if not report.is_valid and not force:
        raise ValidationGateError(report)
    f, _ = rf._generic
    labels = list(grounded_labelling(f).assignment.values())  # same order as rf.ids
    ids = rf.ids
    grounded = frozenset(i for i, v in zip(ids, labels) if v is Label.IN)
    undecided = frozenset(i for i, v in zip(ids, labels) if v is Label.UNDEC)
    tally = {}
    start = 0
    for name, args in rf.parties:
        stop = start + len(args)
        tally[name] = tally.get(name, 0) + labels[start:stop].count(Label.IN)
        start = stop
    return Resolution(grounded, rf.root in grounded, tally, undecided)


def check_valid(rf: ReviewFramework) -> ValidationReport:
    report = validate(rf)
    if not report.is_valid:
        raise ValidationGateError(report)
    return report
