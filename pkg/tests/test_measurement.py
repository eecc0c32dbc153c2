"""Tests for partial labelings, orders, and partition codes."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finobs.enumeration import all_partial_functions, set_partitions
from finobs.errors import (
    InsufficientLabels,
    NonIdealFamily,
    UnorderedLabels,
    ValidationError,
)
from finobs.measurement import (
    LabelSet,
    ObjectSet,
    PartialLabeling,
    PartitionPlus,
    Scale,
    common_coarsening,
    common_refinement,
    ideal_contains,
    is_observable,
    le,
    partition_of_family,
    pref_le,
    pushforward_partition,
    scale_to_partition,
)

X3 = ObjectSet(("x", "y", "z"), "a")
Y2 = LabelSet((0, 1), ordered=True)
Y3 = LabelSet((0, 1, 2), ordered=True)


def lab(entries, objects=X3, labels=Y2):
    return PartialLabeling(objects, labels, entries)


def test_object_set_rejects_duplicates_and_inside_distinguished():
    with pytest.raises(ValidationError):
        ObjectSet(("x", "x"), "a")
    with pytest.raises(ValidationError):
        ObjectSet(("x", "a"), "a")


def test_labeling_validation():
    with pytest.raises(ValidationError):
        PartialLabeling(X3, Y2, [("x", 0), ("x", 1)])
    with pytest.raises(ValidationError):
        lab({"w": 0})
    with pytest.raises(ValidationError):
        lab({"x": 7})


def test_labeling_entries_sorted_by_object():
    f = lab({"z": 1, "x": 0})
    assert f.entries == (("x", 0), ("z", 1))
    assert f.domain() == ("x", "z")


def test_le_basics():
    empty = lab({})
    f = lab({"x": 0, "y": 0})
    g = lab({"x": 0, "y": 1})
    assert le(empty, f)
    assert le(f, f)
    assert le(f, g)  # g refines f, so f is a relabeling of g
    assert not le(g, f)  # f merges x and y, cannot recover g
    assert not le(lab({"z": 0}), f)  # domain not included


def test_le_rejects_mixed_contexts():
    other = ObjectSet(("x", "y"), "a")
    with pytest.raises(ValidationError):
        le(lab({}), PartialLabeling(other, Y2, {}))


def test_pref_le_needs_ordered_labels():
    plain = LabelSet(("u", "v"))
    f = PartialLabeling(X3, plain, {"x": "u"})
    with pytest.raises(UnorderedLabels):
        pref_le(f, f)


def test_pref_le_is_the_monotone_restriction():
    f = lab({"x": 1, "y": 0}, labels=Y3)
    g = lab({"x": 0, "y": 2}, labels=Y3)
    # any relabeling works, but a nondecreasing one would have to send
    # 0 below 2 while f wants 1 above 0 reversed
    assert le(f, g)
    assert not pref_le(f, g)
    h = lab({"x": 0, "y": 1}, labels=Y3)
    assert pref_le(h, g)


@st.composite
def labelings(draw):
    entries = {}
    for x in ("x", "y", "z"):
        value = draw(st.sampled_from([None, 0, 1]))
        if value is not None:
            entries[x] = value
    return lab(entries)


@settings(max_examples=200, deadline=None)
@given(labelings(), labelings(), labelings())
def test_le_is_a_quasiorder(f, g, h):
    assert le(f, f)
    if le(f, g) and le(g, h):
        assert le(f, h)


@settings(max_examples=200, deadline=None)
@given(labelings(), labelings())
def test_pref_le_implies_le(f, g):
    if pref_le(f, g):
        assert le(f, g)


def test_partition_canonical_block_order():
    p = PartitionPlus(X3, (("z",), ("y", "x"), ("a",)))
    assert p.blocks == (("a",), ("x", "y"), ("z",))
    assert p.distinguished_index() == 0


def test_partition_must_cover_without_overlap():
    with pytest.raises(ValidationError):
        PartitionPlus(X3, (("a", "x"), ("y",)))
    with pytest.raises(ValidationError):
        PartitionPlus(X3, (("a", "x"), ("x", "y"), ("z",)))


def test_family_partition_collects_separations():
    family = [lab({"x": 0, "y": 1}), lab({"y": 0})]
    p = partition_of_family(X3, Y2, family)
    # z is never measured, so it joins the distinguished block
    assert p.blocks == (("a", "z"), ("x",), ("y",))


def test_family_partition_vacuous_family_collapses():
    p = partition_of_family(X3, Y2, [])
    assert p.blocks == (("a", "x", "y", "z"),)


def test_non_ideal_family_has_witness():
    family = [
        lab({"x": 0, "y": 0}),
        lab({"y": 0, "z": 0}),
        lab({"x": 0, "z": 1}),
    ]
    with pytest.raises(NonIdealFamily) as info:
        partition_of_family(X3, Y2, family)
    x, y, z = info.value.witness
    assert {x, y, z} == {"x", "y", "z"}


def test_family_needs_enough_labels():
    family = [
        lab({"x": 0, "y": 1}),
        lab({"y": 0, "z": 1}),
        lab({"x": 0, "z": 1}),
    ]
    with pytest.raises(InsufficientLabels):
        partition_of_family(X3, Y2, family)


def test_ideal_contains():
    p = PartitionPlus(X3, (("a", "z"), ("x", "y")))
    assert ideal_contains(p, lab({"x": 0, "y": 0}))
    assert not ideal_contains(p, lab({"x": 0, "y": 1}))  # splits a block
    assert not ideal_contains(p, lab({"z": 0}))  # touches the a block
    assert ideal_contains(p, lab({}))


def test_roundtrip_exhaustive_three_objects():
    # the acceptance suite pushes this to five objects
    labels = LabelSet((0, 1, 2))
    labelings = [
        PartialLabeling(X3, labels, d)
        for d in all_partial_functions(X3.elements, labels.values)
    ]
    for blocks in set_partitions(X3.universe()):
        p = PartitionPlus(X3, tuple(tuple(b) for b in blocks))
        members = [f for f in labelings if ideal_contains(p, f)]
        assert partition_of_family(X3, labels, members) == p


def all_partitions(objects):
    return [
        PartitionPlus(objects, tuple(tuple(b) for b in blocks))
        for blocks in set_partitions(objects.universe())
    ]


def test_refinement_is_the_meet():
    parts = all_partitions(X3)
    for p in parts:
        for q in parts:
            r = common_refinement(p, q)
            assert r.refines(p) and r.refines(q)
            for s in parts:
                if s.refines(p) and s.refines(q):
                    assert s.refines(r)


def test_coarsening_is_the_join():
    parts = all_partitions(X3)
    for p in parts:
        for q in parts:
            r = common_coarsening(p, q)
            assert p.refines(r) and q.refines(r)
            for s in parts:
                if p.refines(s) and q.refines(s):
                    assert r.refines(s)


def test_scale_partition_and_observability():
    scale = Scale(X3, Y3, {"x": 0, "y": 1, "z": 0})
    p = scale_to_partition(scale)
    assert p.blocks == (("a",), ("x", "z"), ("y",))
    assert not is_observable(p, Y3)
    sharp = Scale(X3, Y3, {"x": 0, "y": 1, "z": 2})
    assert is_observable(scale_to_partition(sharp), Y3)
    with pytest.raises(InsufficientLabels):
        is_observable(p, Y2)


def test_scale_must_be_total():
    with pytest.raises(ValidationError):
        Scale(X3, Y2, {"x": 0})


def test_pushforward_identity_and_constant():
    scale = Scale(X3, Y2, {"x": 0, "y": 1, "z": 0})
    identity = {0: 0, 1: 1}
    assert pushforward_partition(identity, scale) == scale_to_partition(scale)
    constant = {0: 1, 1: 1}
    collapsed = pushforward_partition(constant, scale)
    assert collapsed.blocks == (("a",), ("x", "y", "z"))


def test_pushforward_validates_the_relabeling():
    scale = Scale(X3, Y2, {"x": 0, "y": 1, "z": 0})
    with pytest.raises(ValidationError):
        pushforward_partition({0: 0}, scale)
    with pytest.raises(ValidationError):
        pushforward_partition({0: 7, 1: 1}, scale)
