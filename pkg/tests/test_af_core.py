import itertools
import json
from pathlib import Path

import pytest
from hypothesis import given

from reviewaf.af_core import (
    Framework,
    Label,
    Labelling,
    Semantics,
    enumerate_extensions,
    grounded_extension,
    grounded_labelling,
    is_acceptable,
    is_admissible,
    is_conflict_free,
    is_k_partite,
    is_legal_labelling,
    is_well_founded,
    set_attacks,
)
from reviewaf.errors import FrameworkError, PartitionError, SizeLimitError, UnknownArgumentError

from conftest import acyclic_frameworks, frameworks, load_fixture

EXAMPLES = json.loads((Path(__file__).parent / "fixtures" / "dung_examples.json").read_text(encoding="utf-8"))


def example(name):
    ex = EXAMPLES[name]
    return Framework.build(ex["arguments"], ex["attacks"])


SIMPLE, CYCLE, ICCMA = example("simple"), example("cycle"), example("iccma")


def as_sets(lists):
    return [frozenset(x) for x in lists]


# -- predicates ---------------------------------------------------------------


def test_set_attacks_examples():
    assert set_attacks(SIMPLE, {"γ"}, "α")
    assert not set_attacks(SIMPLE, set(), "α")
    assert set_attacks(ICCMA, {"e"}, "e")


def test_conflict_free_examples():
    assert is_conflict_free(CYCLE, {"β", "γ"})
    assert is_conflict_free(CYCLE, set())
    assert not is_conflict_free(ICCMA, {"e"})


def test_acceptable_examples():
    assert is_acceptable(SIMPLE, "β", {"γ"})
    assert is_acceptable(SIMPLE, "γ", set())
    assert not is_acceptable(SIMPLE, "α", {"β", "γ"})


def test_admissible_examples():
    assert is_admissible(SIMPLE, {"β", "γ"})
    assert is_admissible(SIMPLE, set())
    # β's attacker α is not counter-attacked by {β}
    assert not is_admissible(SIMPLE, {"β"})


@pytest.mark.parametrize(
    "call",
    [
        lambda: set_attacks(SIMPLE, {"zeta"}, "α"),
        lambda: set_attacks(SIMPLE, {"α"}, "zeta"),
        lambda: is_conflict_free(SIMPLE, {"zeta"}),
        lambda: is_acceptable(SIMPLE, "zeta", set()),
        lambda: is_admissible(SIMPLE, {"α", "zeta"}),
    ],
)
def test_unknown_key_is_named(call):
    with pytest.raises(UnknownArgumentError, match="zeta"):
        call()


def test_framework_rejects_bad_input():
    with pytest.raises(FrameworkError):
        Framework(("a", "a"), ())
    with pytest.raises(FrameworkError):
        Framework(("a",), (("a", "b"),))
    with pytest.raises(FrameworkError):
        Framework(("",), ())


def test_framework_dedupes_attacks_in_order():
    f = Framework(("a", "b"), (("b", "a"), ("a", "b"), ("b", "a")))
    assert f.attacks == (("b", "a"), ("a", "b"))
    assert f.attackers["a"] == ("b",)


# -- grounded labelling -------------------------------------------------------


@pytest.mark.parametrize("name", ["simple", "cycle", "iccma"])
def test_grounded_labelling_examples(name):
    lab = grounded_labelling(example(name))
    assert {k: lab[k].name for k in EXAMPLES[name]["labels"]} == EXAMPLES[name]["labels"]


def test_single_argument_is_in():
    f = Framework(("x",), ())
    assert grounded_labelling(f)["x"] is Label.IN
    assert grounded_extension(f) == {"x"}


def test_grounded_extension_examples():
    assert grounded_extension(SIMPLE) == {"β", "γ"}
    assert grounded_extension(CYCLE) == frozenset()
    assert grounded_extension(ICCMA) == {"a", "c"}


def test_empty_framework():
    f = Framework((), ())
    assert grounded_extension(f) == frozenset()
    assert enumerate_extensions(f, Semantics.PREFERRED) == [frozenset()]
    assert is_well_founded(f)


def test_labelling_set_views():
    lab = grounded_labelling(ICCMA)
    assert lab.in_set == {"a", "c"}
    assert lab.out_set == {"b"}
    assert lab.undec_set == {"d", "e"}


def test_illegal_labelling_detected():
    bad = Labelling({"α": Label.IN, "β": Label.IN, "γ": Label.IN})
    assert not is_legal_labelling(SIMPLE, bad)
    assert is_legal_labelling(SIMPLE, grounded_labelling(SIMPLE))


# -- enumeration ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["simple", "cycle", "iccma"])
@pytest.mark.parametrize("sem", list(Semantics))
def test_enumeration_matches_hand_results(name, sem):
    expected = as_sets(EXAMPLES[name]["extensions"][sem.value])
    assert enumerate_extensions(example(name), sem) == expected


def test_enumeration_accepts_string_semantics():
    assert enumerate_extensions(CYCLE, "preferred") == [{"β", "γ"}, {"β", "δ"}]


def test_size_limit_names_bound():
    keys = tuple(f"x{i}" for i in range(6))
    with pytest.raises(SizeLimitError, match="5"):
        enumerate_extensions(Framework(keys, ()), Semantics.GROUNDED, max_args=5)


# -- graph properties -----------------------------------------------------------


def test_well_founded_examples():
    assert is_well_founded(SIMPLE)
    assert not is_well_founded(CYCLE)
    assert not is_well_founded(ICCMA)
    assert not is_well_founded(Framework(("x",), (("x", "x"),)))


def test_k_partite_examples(sample_review):
    from reviewaf.review_model import to_framework

    f, _ = to_framework(sample_review)
    blocks = [[str(a.id) for a in args] for _, args in sample_review.parties]
    assert is_k_partite(f, blocks)
    assert not is_k_partite(SIMPLE, [["α", "β", "γ"]])
    assert is_k_partite(SIMPLE, [["α"], ["β", "γ"]])


def test_k_partite_rejects_non_partition():
    with pytest.raises(PartitionError) as e:
        is_k_partite(SIMPLE, [["α", "β"], ["β", "ω"]])
    msg = str(e.value)
    assert "β" in msg and "ω" in msg and "γ" in msg


# -- independent checks -------------------------------------------------------------


def legal_by_definition(f, lab):
    for a in f.arguments:
        attackers = [lab[b] for b in f.attackers[a]]
        if lab[a] is Label.IN and any(x is not Label.OUT for x in attackers):
            return False
        if lab[a] is Label.OUT and Label.IN not in attackers:
            return False
        if lab[a] is Label.UNDEC and (Label.IN in attackers or all(x is Label.OUT for x in attackers)):
            return False
    return True


def subsets(keys):
    for r in range(len(keys) + 1):
        yield from (frozenset(c) for c in itertools.combinations(keys, r))


def naive_extensions(f, sem):
    """Straight transcription of the definitions onto the predicates."""

    def complete(s):
        return is_admissible(f, s) and all(a in s for a in f.arguments if is_acceptable(f, a, s))

    def stable(s):
        return is_conflict_free(f, s) and all(a in s or set_attacks(f, s, a) for a in f.arguments)

    every = list(subsets(f.arguments))
    if sem is Semantics.CONFLICT_FREE:
        found = [s for s in every if is_conflict_free(f, s)]
    elif sem is Semantics.ADMISSIBLE:
        found = [s for s in every if is_admissible(f, s)]
    elif sem is Semantics.COMPLETE:
        found = [s for s in every if complete(s)]
    elif sem is Semantics.STABLE:
        found = [s for s in every if stable(s)]
    elif sem is Semantics.PREFERRED:
        adm = [s for s in every if is_admissible(f, s)]
        found = [s for s in adm if not any(s < t for t in adm)]
    else:
        comp = [s for s in every if complete(s)]
        found = [s for s in comp if not any(t < s for t in comp)]
    return sorted(found, key=lambda s: (len(s), sorted(s)))


@given(frameworks(max_size=6))
def test_numpy_oracle_matches_naive_definitions(f):
    for sem in Semantics:
        assert enumerate_extensions(f, sem) == naive_extensions(f, sem)


@given(frameworks())
def test_labelling_is_legal(f):
    lab = grounded_labelling(f)
    assert set(lab.assignment) == set(f.arguments)
    assert legal_by_definition(f, lab)
    assert is_legal_labelling(f, lab)


@given(frameworks())
def test_grounded_agrees_with_oracle(f):
    assert enumerate_extensions(f, Semantics.GROUNDED) == [grounded_extension(f)]


@given(acyclic_frameworks())
def test_well_founded_frameworks_have_one_extension(f):
    assert is_well_founded(f)
    complete = enumerate_extensions(f, Semantics.COMPLETE)
    assert len(complete) == 1
    for sem in (Semantics.PREFERRED, Semantics.STABLE, Semantics.GROUNDED):
        assert enumerate_extensions(f, sem) == complete


@given(frameworks(max_size=10))
def test_containment_chain(f):
    g = grounded_extension(f)
    preferred = enumerate_extensions(f, Semantics.PREFERRED)
    for c in enumerate_extensions(f, Semantics.COMPLETE):
        assert g <= c
        assert any(c <= p for p in preferred)


@given(frameworks(max_size=10))
def test_semantics_hierarchy(f):
    adm = set(enumerate_extensions(f, Semantics.ADMISSIBLE))
    cf = set(enumerate_extensions(f, Semantics.CONFLICT_FREE))
    for sem in (Semantics.PREFERRED, Semantics.STABLE, Semantics.COMPLETE):
        assert set(enumerate_extensions(f, sem)) <= adm
    assert adm <= cf


@given(acyclic_frameworks(max_size=30))
def test_acyclic_means_no_undec(f):
    assert not grounded_labelling(f).undec_set


@given(frameworks())
def test_well_founded_means_no_cycle(f):
    # a framework is acyclic iff repeatedly removing unattacked arguments empties it
    remaining = set(f.arguments)
    while True:
        free = {a for a in remaining if not any(b in remaining for b in f.attackers[a])}
        if not free:
            break
        remaining -= free
    assert is_well_founded(f) == (not remaining)


def test_sample_review_framework_is_well_founded():
    from reviewaf.review_model import to_framework

    f, _ = to_framework(load_fixture("corpus/sample_review.json"))
    assert is_well_founded(f)
