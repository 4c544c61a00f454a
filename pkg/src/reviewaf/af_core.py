"""Generic Dung-style abstract argumentation frameworks.

A :class:`Framework` is an ordered set of opaque argument keys plus an attack
relation.  This module provides the semantic predicates (conflict-freeness,
acceptability, admissibility), a linear-time grounded labelling solver, and a
brute-force extension enumerator that serves as the oracle for everything else.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

import numpy as np

from .errors import FrameworkError, PartitionError, SizeLimitError, UnknownArgumentError

ArgumentSet = frozenset  # frozenset[str]; members must belong to one framework

DEFAULT_MAX_ARGS = 20
# int64 bitmasks over subsets
_HARD_MAX_ARGS = 62


class Label(str, enum.Enum):
    IN = "IN"
    OUT = "OUT"
    UNDEC = "UNDEC"


class Semantics(str, enum.Enum):
    CONFLICT_FREE = "conflict_free"
    ADMISSIBLE = "admissible"
    COMPLETE = "complete"
    PREFERRED = "preferred"
    STABLE = "stable"
    GROUNDED = "grounded"


@dataclass(frozen=True)
class Framework:
    """An argumentation framework ``<A, R>``.

    ``arguments`` keeps insertion order, ``attacks`` keeps first-seen order with
    duplicates dropped.  Self-attacks are allowed.
    """

    arguments: tuple[str, ...]
    attacks: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        args = tuple(self.arguments)
        seen = set()
        for key in args:
            if not isinstance(key, str) or not key:
                raise FrameworkError(f"argument keys must be non-empty strings, got {key!r}")
            if key in seen:
                raise FrameworkError(f"duplicate argument key {key!r}")
            seen.add(key)
        pairs = tuple(dict.fromkeys((a, b) for a, b in self.attacks))
        for a, b in pairs:
            if a not in seen:
                raise FrameworkError(f"attack ({a!r}, {b!r}): attacker is not an argument")
            if b not in seen:
                raise FrameworkError(f"attack ({a!r}, {b!r}): target is not an argument")
        object.__setattr__(self, "arguments", args)
        object.__setattr__(self, "attacks", pairs)

    @classmethod
    def from_indexed(cls, keys: tuple[str, ...], src: np.ndarray, dst: np.ndarray) -> Framework:
        """Construct from distinct keys and deduplicated integer edge arrays.

        The caller vouches for the inputs; no validation is repeated, and the
        integer adjacency is seeded directly from the arrays.
        """
        f = object.__new__(cls)
        s, d = src.tolist(), dst.tolist()
        object.__setattr__(f, "arguments", tuple(keys))
        object.__setattr__(f, "attacks", tuple(zip([keys[i] for i in s], [keys[j] for j in d])))
        f.__dict__["adjacency"] = _adjacency(len(keys), src, dst)
        return f

    @classmethod
    def build(cls, arguments: Iterable[str], attacks: Iterable[tuple[str, str]] = ()) -> Framework:
        return cls(tuple(arguments), tuple(tuple(p) for p in attacks))

    def __len__(self) -> int:
        return len(self.arguments)

    @cached_property
    def index(self) -> dict[str, int]:
        return {key: i for i, key in enumerate(self.arguments)}

    @cached_property
    def attackers(self) -> dict[str, tuple[str, ...]]:
        result: dict[str, list[str]] = {key: [] for key in self.arguments}
        for a, b in self.attacks:
            result[b].append(a)
        return {key: tuple(v) for key, v in result.items()}

    @cached_property
    def targets(self) -> dict[str, tuple[str, ...]]:
        result: dict[str, list[str]] = {key: [] for key in self.arguments}
        for a, b in self.attacks:
            result[a].append(b)
        return {key: tuple(v) for key, v in result.items()}

    @cached_property
    def adjacency(self) -> tuple[list[list[int]], list[int]]:
        """Integer adjacency: per-index target lists and attacker counts."""
        idx = self.index
        m = len(self.attacks)
        src = np.fromiter((idx[a] for a, _ in self.attacks), dtype=np.int64, count=m)
        dst = np.fromiter((idx[b] for _, b in self.attacks), dtype=np.int64, count=m)
        return _adjacency(len(self.arguments), src, dst)

    @cached_property
    def _attack_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.attacks)

    def has_attack(self, attacker: str, target: str) -> bool:
        return (attacker, target) in self._attack_set

    def check_key(self, key: str) -> None:
        if key not in self.index:
            raise UnknownArgumentError(key)

    def check_set(self, s: Iterable[str]) -> frozenset[str]:
        s = frozenset(s)
        for key in s:
            self.check_key(key)
        return s


def _adjacency(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[list[list[int]], list[int]]:
    if not len(src):
        return [[] for _ in range(n)], [0] * n
    order = np.argsort(src, kind="stable")
    flat = dst[order].tolist()
    bounds = np.searchsorted(src[order], np.arange(n + 1)).tolist()
    targets = [flat[i:j] for i, j in zip(bounds, bounds[1:])]
    return targets, np.bincount(dst, minlength=n).tolist()


@dataclass(frozen=True)
class Labelling:
    """Total IN/OUT/UNDEC assignment over a framework's arguments."""

    assignment: Mapping[str, Label] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Label:
        return self.assignment[key]

    def with_label(self, label: Label) -> frozenset[str]:
        return frozenset(k for k, v in self.assignment.items() if v is label)

    @property
    def in_set(self) -> frozenset[str]:
        return self.with_label(Label.IN)

    @property
    def out_set(self) -> frozenset[str]:
        return self.with_label(Label.OUT)

    @property
    def undec_set(self) -> frozenset[str]:
        return self.with_label(Label.UNDEC)


# ---------------------------------------------------------------------------
# Semantic predicates


def set_attacks(f: Framework, s: Iterable[str], a: str) -> bool:
    """True iff some member of ``s`` attacks ``a``."""
    f.check_key(a)
    s = f.check_set(s)
    return any(b in s for b in f.attackers[a])


def is_conflict_free(f: Framework, s: Iterable[str]) -> bool:
    s = f.check_set(s)
    return not any(a in s and b in s for a, b in f.attacks)


def is_acceptable(f: Framework, a: str, s: Iterable[str]) -> bool:
    """True iff every attacker of ``a`` is itself attacked by ``s``."""
    f.check_key(a)
    s = f.check_set(s)
    return all(set_attacks(f, s, b) for b in f.attackers[a])


def is_admissible(f: Framework, s: Iterable[str]) -> bool:
    s = f.check_set(s)
    return is_conflict_free(f, s) and all(is_acceptable(f, a, s) for a in s)


# ---------------------------------------------------------------------------
# Grounded semantics


def grounded_labelling(f: Framework) -> Labelling:
    """Least-fixpoint labelling in O(|A| + |R|).

    Each argument carries a counter of attackers not yet labelled OUT.  An
    argument whose counter reaches zero goes IN; everything it attacks goes
    OUT, which in turn decrements the counters of the OUT argument's targets.
    Whatever is left when the queue drains is UNDEC.
    """
    targets, pending = f.adjacency
    pending = list(pending)
    labels = [Label.UNDEC] * len(f)
    labelled = [False] * len(f)
    queue = deque(i for i, c in enumerate(pending) if c == 0)
    for i in queue:
        labels[i] = Label.IN
        labelled[i] = True

    while queue:
        a = queue.popleft()
        for b in targets[a]:
            if labelled[b]:
                continue
            labels[b] = Label.OUT
            labelled[b] = True
            for c in targets[b]:
                pending[c] -= 1
                if pending[c] == 0 and not labelled[c]:
                    labels[c] = Label.IN
                    labelled[c] = True
                    queue.append(c)

    return Labelling(dict(zip(f.arguments, labels)))


def grounded_extension(f: Framework) -> frozenset[str]:
    return grounded_labelling(f).in_set


def is_legal_labelling(f: Framework, lab: Labelling) -> bool:
    """Check the per-label conditions of a complete labelling."""
    if set(lab.assignment) != set(f.arguments):
        return False
    for key in f.arguments:
        att = [lab[b] for b in f.attackers[key]]
        label = lab[key]
        if label is Label.IN and not all(x is Label.OUT for x in att):
            return False
        if label is Label.OUT and Label.IN not in att:
            return False
        if label is Label.UNDEC and (Label.IN in att or all(x is Label.OUT for x in att)):
            return False
    return True


# ---------------------------------------------------------------------------
# Brute-force oracle


def _sort_extensions(sets: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


@lru_cache(maxsize=64)
def _subset_tables(f: Framework) -> dict[str, np.ndarray]:
    """Evaluate every definition on all 2^n subsets at once.

    Subsets are int64 bitmasks over the argument insertion order.
    """
    n = len(f)
    idx = f.index
    attacks_mask = [0] * n  # targets of i
    attacked_by = [0] * n  # attackers of i
    for a, b in f.attacks:
        attacks_mask[idx[a]] |= 1 << idx[b]
        attacked_by[idx[b]] |= 1 << idx[a]
    full = (1 << n) - 1

    masks = np.arange(1 << n, dtype=np.int64)
    hit = np.zeros_like(masks)  # arguments attacked by S
    for i in range(n):
        hit |= np.where((masks >> i) & 1, np.int64(attacks_mask[i]), np.int64(0))
    defended = np.zeros_like(masks)  # arguments acceptable w.r.t. S
    for i in range(n):
        ok = (np.int64(attacked_by[i]) & ~hit) == 0
        defended |= np.where(ok, np.int64(1 << i), np.int64(0))

    cf = (masks & hit) == 0
    adm = cf & ((masks & ~defended) == 0)
    complete = adm & (defended == masks)
    stable = cf & (((~masks) & np.int64(full) & ~hit) == 0)

    def has_strict_superset(flags):
        sup = flags.copy()
        for i in range(n):
            low = masks[((masks >> i) & 1) == 0]
            sup[low] |= sup[low | (1 << i)]
        strict = np.zeros_like(flags)
        for i in range(n):
            low = masks[((masks >> i) & 1) == 0]
            strict[low] |= sup[low | (1 << i)]
        return strict

    def has_strict_subset(flags):
        sub = flags.copy()
        for i in range(n):
            high = masks[((masks >> i) & 1) == 1]
            sub[high] |= sub[high & ~np.int64(1 << i)]
        strict = np.zeros_like(flags)
        for i in range(n):
            high = masks[((masks >> i) & 1) == 1]
            strict[high] |= sub[high & ~np.int64(1 << i)]
        return strict

    return {
        Semantics.CONFLICT_FREE: cf,
        Semantics.ADMISSIBLE: adm,
        Semantics.COMPLETE: complete,
        Semantics.STABLE: stable,
        Semantics.PREFERRED: adm & ~has_strict_superset(adm),
        Semantics.GROUNDED: complete & ~has_strict_subset(complete),
    }


def enumerate_extensions(
    f: Framework, sem: Semantics | str, max_args: int = DEFAULT_MAX_ARGS
) -> list[frozenset[str]]:
    """All subsets of the arguments satisfying ``sem``, found by exhaustion.

    Results are ordered by size, then lexicographically on the sorted keys.
    """
    sem = Semantics(sem)
    bound = min(max_args, _HARD_MAX_ARGS)
    if len(f) > bound:
        raise SizeLimitError(len(f), bound)
    flags = _subset_tables(f)[sem]
    keys = f.arguments
    found = []
    for mask in np.flatnonzero(flags):
        mask = int(mask)
        found.append(frozenset(keys[i] for i in range(len(keys)) if mask >> i & 1))
    return _sort_extensions(found)


# ---------------------------------------------------------------------------
# Graph properties


def is_well_founded(f: Framework) -> bool:
    """Acyclicity of the attack graph (self-attacks count as cycles).

    Kahn-style source elimination; on finite frameworks this is equivalent to
    the absence of infinite attack-descending sequences.
    """
    targets, indeg = f.adjacency
    indeg = list(indeg)
    queue = deque(i for i, d in enumerate(indeg) if d == 0)
    removed = 0
    while queue:
        a = queue.popleft()
        removed += 1
        for b in targets[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    return removed == len(f)


def is_k_partite(f: Framework, partition: Iterable[Iterable[str]]) -> bool:
    """True iff no attack stays inside one block of ``partition``."""
    block_of: dict[str, int] = {}
    duplicated, unknown = [], []
    for i, block in enumerate(partition):
        for key in block:
            if key not in f.index:
                unknown.append(key)
            elif key in block_of:
                duplicated.append(key)
            else:
                block_of[key] = i
    missing = [key for key in f.arguments if key not in block_of]
    if duplicated or unknown or missing:
        raise PartitionError(sorted(set(duplicated)), sorted(set(unknown)), missing)
    return all(block_of[a] != block_of[b] for a, b in f.attacks)
