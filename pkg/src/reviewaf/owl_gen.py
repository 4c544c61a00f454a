"""OWL DL (Manchester syntax) rendering of review frameworks, and a native
emulation of the classification a DL reasoner derives from it.

Each party becomes a class, each argument a closed individual, and each party
gets two defined classes::

    <P>ConflictFree  ==  P and (attacks only (<other parties>))
    <P>Admissible    ==  <P>ConflictFree
                         and (isAttackedBy only (isAttackedBy some <P>ConflictFree))

The admissible class only asks that attackers be countered by *conflict-free*
arguments of the same party, so it is a one-step defence check.  On attack
chains longer than three nodes this disagrees with grounded semantics;
:func:`compare_with_grounded` reports that gap instead of hiding it.
"""

from __future__ import annotations

import os
import re
from collections import Counter
from dataclasses import dataclass, field
from urllib.parse import quote

from .review_model import ReviewArgumentId, ReviewFramework, check_valid, resolve

BASE_ENV_VAR = "REVIEWAF_ONTOLOGY_BASE"


def default_base() -> str:
    return os.environ.get(BASE_ENV_VAR, "onto")


_PREFIXES = (
    ("owl", "http://www.w3.org/2002/07/owl#"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("xsd", "http://www.w3.org/2001/XMLSchema#"),
)


@dataclass(frozen=True)
class OwlDocument:
    text: str
    iri_map: dict[ReviewArgumentId, str] = field(default_factory=dict)


def local_names(rf: ReviewFramework) -> dict[ReviewArgumentId, str]:
    """Map each id to a collision-free local IRI name, e.g. ``author_0_0``.

    Ids that only differ by letter case would collide after lowercasing; later
    ones get a ``__<k>`` suffix in document order.
    """
    names: dict[ReviewArgumentId, str] = {}
    used: Counter[str] = Counter()
    for i in rf.ids:
        base = quote(str(i).lower().replace(".", "_"), safe="_-")
        used[base] += 1
        name = base if used[base] == 1 else f"{base}__{used[base]}"
        while name in names.values():
            used[base] += 1
            name = f"{base}__{used[base]}"
        names[i] = name
    return names


def _literal(value: str) -> str:
    value = value.replace("\r\n", "\n").replace("\r", "\n")
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"^^xsd:string'


def emit_owl(rf: ReviewFramework, base: str | None = None) -> OwlDocument:
    check_valid(rf)
    base = default_base() if base is None else base

    def iri(name: str) -> str:
        return f"<{base}#{name}>"

    def cls(party: str) -> str:
        return iri(quote(party, safe="_-"))

    names = local_names(rf)
    targets = {i: [] for i in rf.ids}
    attackers = {i: [] for i in rf.ids}
    for a, b in rf.attack_pairs:
        targets[a].append(b)
        attackers[b].append(a)

    blocks: list[list[str]] = []
    blocks.append([f"Prefix: {p}: <{u}>" for p, u in _PREFIXES])
    blocks.append([f"Ontology: <{base}>"])
    for prop in ("text", "round", "number", "id"):
        blocks.append([f"AnnotationProperty: {iri(prop)}"])
    blocks.append(["ObjectProperty: " + iri("attacks")])
    blocks.append(["ObjectProperty: " + iri("isAttackedBy"), "", "  InverseOf:", "    " + iri("attacks")])

    for party in rf.party_names:
        blocks.append([f"Class: {cls(party)}", "", "  SubClassOf:", "    owl:Thing"])

    for party in rf.party_names:
        others = [cls(p) for p in rf.party_names if p != party]
        if not others:
            allowed = "owl:Nothing"
        elif len(others) == 1:
            allowed = others[0]
        else:
            allowed = "(" + " or ".join(others) + ")"
        cf = cls(party + "ConflictFree")
        blocks.append([
            f"Class: {cf}",
            "",
            "  EquivalentTo:",
            f"    {cls(party)}",
            f"    and ({iri('attacks')} only {allowed})",
        ])
        blocks.append([
            f"Class: {cls(party + 'Admissible')}",
            "",
            "  EquivalentTo:",
            f"    {cf}",
            f"    and ({iri('isAttackedBy')} only ({iri('isAttackedBy')} some {cf}))",
        ])

    def closure(prop: str, ids: list[ReviewArgumentId]) -> str:
        if not ids:
            return f"{iri(prop)} only owl:Nothing"
        return f"{iri(prop)} only ({{{', '.join(iri(names[x]) for x in ids)}}})"

    for party, args in rf.parties:
        for a in args:
            i = a.id
            block = [
                f"Individual: {iri(names[i])}",
                "",
                "  Annotations:",
                f"    {iri('id')} {_literal(str(i))},",
                f"    {iri('number')} {_literal(str(i.number))},",
                f"    {iri('round')} {_literal(str(i.round))},",
                f"    {iri('text')} {_literal(a.text)}",
                "",
                "  Types:",
                f"    {cls(party)},",
                f"    {closure('attacks', targets[i])},",
                f"    {closure('isAttackedBy', attackers[i])}",
            ]
            facts = [f"{iri('attacks')} {iri(names[t])}" for t in targets[i]]
            facts += [f"{iri('isAttackedBy')} {iri(names[s])}" for s in attackers[i]]
            if facts:
                block += ["", "  Facts:"]
                block += [f"    {x}," for x in facts[:-1]] + [f"    {facts[-1]}"]
            blocks.append(block)

    text = "\n\n".join("\n".join(b) for b in blocks) + "\n"
    return OwlDocument(text, names)


_HEADER = re.compile(r"^(Prefix|Ontology|AnnotationProperty|ObjectProperty|Class|Individual): ?(.*)$")
_IRI = re.compile(r"<([^<>\s]+)>")
_STRING = re.compile(r'"(?:[^"\\]|\\.)*"')
_SECTION = re.compile(r"[A-Z][A-Za-z]*:")


def lint_manchester(text: str) -> list[str]:
    """Cheap structural checks on emitted documents.

    Verifies frame headers appear at column 0, section keywords sit at two
    spaces and their content at four, brackets balance inside each frame, and every class or property IRI used in a frame body is declared by
    a frame header earlier in the document (or by the frame itself).
    Individuals may be referenced before their own frame, but must have one.
    Returns a list of problems; empty means the document looks well formed.
    """
    problems = []
    declared: set[str] = set()
    text = _STRING.sub('""', text)
    frames = [f for f in text.split("\n\n") if f.strip()]
    # frame bodies may continue after a blank line; regroup by header lines
    grouped: list[list[str]] = []
    for chunk in frames:
        lines = chunk.split("\n")
        if _HEADER.match(lines[0]):
            grouped.append(lines)
        elif grouped:
            grouped[-1].extend(lines)
        else:
            problems.append(f"text before the first frame: {lines[0]!r}")
    individuals = set()
    for lines in grouped:
        head = _HEADER.match(lines[0])
        m = _IRI.search(head.group(2))
        if head.group(1) == "Individual" and m:
            individuals.add(m.group(1))
    for lines in grouped:
        head = _HEADER.match(lines[0])
        kind, subject = head.group(1), head.group(2)
        body = "\n".join(lines[1:])
        for opener, closer in ("()", "{}", "<>"):
            if body.count(opener) != body.count(closer):
                problems.append(f"unbalanced {opener}{closer} in frame {lines[0]!r}")
        if kind == "Prefix":
            continue
        m = _IRI.search(subject)
        if m:
            declared.add(m.group(1))
        for ref in _IRI.findall(body):
            if ref.startswith("http") or "#" not in ref or ref in individuals:
                continue
            if ref not in declared:
                problems.append(f"{ref} used in {lines[0]!r} before declaration")
        for line in lines[1:]:
            if not line:
                continue
            content = line.lstrip(" ")
            want = 2 if _SECTION.fullmatch(content) else 4
            if len(line) - len(content) != want:
                problems.append(f"expected {want}-space indent in frame {lines[0]!r}: {line!r}")
    return problems


# ---------------------------------------------------------------------------
# Native classification


@dataclass(frozen=True)
class PartyClassification:
    conflict_free: frozenset[ReviewArgumentId]
    admissible: frozenset[ReviewArgumentId]


@dataclass(frozen=True)
class ClassificationResult:
    parties: dict[str, PartyClassification]

    def __getitem__(self, party: str) -> PartyClassification:
        return self.parties[party]

    def admissible_union(self) -> frozenset[ReviewArgumentId]:
        out: frozenset[ReviewArgumentId] = frozenset()
        for pc in self.parties.values():
            out |= pc.admissible
        return out


def classify_parties(rf: ReviewFramework) -> ClassificationResult:
    """What a reasoner infers for the closed individuals of :func:`emit_owl`."""
    check_valid(rf)
    party = rf.party_of
    targets = {i: [] for i in rf.ids}
    attackers = {i: [] for i in rf.ids}
    for a, b in rf.attack_pairs:
        targets[a].append(b)
        attackers[b].append(a)

    cf = {i for i in rf.ids if all(party[t] != party[i] for t in targets[i])}
    result = {}
    for name, args in rf.parties:
        members = [a.id for a in args]
        own_cf = {i for i in members if i in cf}
        adm = {
            i
            for i in own_cf
            if all(any(d in own_cf for d in attackers[b]) for b in attackers[i])
        }
        result[name] = PartyClassification(frozenset(own_cf), frozenset(adm))
    return ClassificationResult(result)


@dataclass(frozen=True)
class DivergenceReport:
    owl_union: frozenset[ReviewArgumentId]
    grounded: frozenset[ReviewArgumentId]
    only_owl: frozenset[ReviewArgumentId]
    only_grounded: frozenset[ReviewArgumentId]

    @property
    def diverges(self) -> bool:
        return bool(self.only_owl or self.only_grounded)

    def as_dict(self) -> dict:
        def ids(s):
            return sorted(str(i) for i in s)

        return {
            "diverges": self.diverges,
            "owl_union": ids(self.owl_union),
            "grounded": ids(self.grounded),
            "only_owl": ids(self.only_owl),
            "only_grounded": ids(self.only_grounded),
        }


def compare_with_grounded(rf: ReviewFramework) -> DivergenceReport:
    owl = classify_parties(rf).admissible_union()
    grounded = resolve(rf).grounded
    return DivergenceReport(owl, grounded, owl - grounded, grounded - owl)
