"""Partial measurements, information order, and partition codes.

A measurement assigns labels to some of the objects; comparing two
measurements asks whether one is a relabeling of the other.  Families
of mutually compatible measurements are coded by a single partition of
the objects plus one distinguished absorber element.
"""

from finobs import (
    InsufficientLabels,
    LabelSet,
    NonIdealFamily,
    ObjectSet,
    PartialLabeling,
    Scale,
    ideal_contains,
    is_observable,
    le,
    partition_of_family,
    pref_le,
    pushforward_partition,
    scale_to_partition,
)

objects = ObjectSet(("north", "south", "east", "west"), distinguished="rest")
labels = LabelSet((0, 1, 2), ordered=True)


def labeling(entries):
    return PartialLabeling(objects, labels, entries)


print("== information order ==")
coarse = labeling({"north": 0, "south": 0})
fine = labeling({"north": 0, "south": 1, "east": 2})
print(f"coarse entries: {coarse.as_dict()}")
print(f"fine entries:   {fine.as_dict()}")
print(f"coarse <= fine (relabeling exists): {le(coarse, fine)}")
print(f"fine <= coarse: {le(fine, coarse)}")

# the preference variant demands a nondecreasing relabeling
reversed_labels = labeling({"north": 2, "south": 0})
print(f"reversed <= fine plainly:     {le(reversed_labels, fine)}")
print(f"reversed <= fine monotonely:  {pref_le(reversed_labels, fine)}")

print()
print("== a compatible family and its partition code ==")
family = [
    labeling({"north": 0, "south": 1}),
    labeling({"south": 0, "east": 0}),
    labeling({"north": 0, "east": 1}),
]
partition = partition_of_family(objects, labels, family)
print(f"blocks: {partition.blocks}")
print("  (unmeasured objects share the block of the absorber)")
for f in family:
    print(f"  family member {f.as_dict()} in coded ideal: {ideal_contains(partition, f)}")
splitter = labeling({"south": 0, "east": 1})
print(f"  block splitter {splitter.as_dict()} in coded ideal: {ideal_contains(partition, splitter)}")
absorbed = labeling({"west": 0})
print(f"  absorber toucher {absorbed.as_dict()} in coded ideal: {ideal_contains(partition, absorbed)}")

print()
print("== families that fail to be compatible ==")
tangled = [
    labeling({"north": 0, "south": 0}),
    labeling({"south": 0, "east": 0}),
    labeling({"north": 0, "east": 1}),
]
try:
    partition_of_family(objects, labels, tangled)
except NonIdealFamily as exc:
    print(f"rejected: {exc}")
    print(f"witness triple: {exc.witness}")

print()
print("== scales and maximality ==")
sharp = Scale(objects, LabelSet((0, 1, 2, 3)), {"north": 0, "south": 1, "east": 2, "west": 3})
sharp_partition = scale_to_partition(sharp)
print(f"sharp scale fibers: {sharp_partition.blocks}")
print(f"maximal (an observable): {is_observable(sharp_partition, sharp.labels)}")

blurred = Scale(objects, labels, {"north": 0, "south": 0, "east": 1, "west": 2})
print(f"blurred scale fibers: {scale_to_partition(blurred).blocks}")
try:
    is_observable(scale_to_partition(blurred), labels)
except InsufficientLabels as exc:
    print(f"maximality undecidable with 3 labels: {exc}")

print()
print("== pushing a scale through a relabeling ==")
# the pushforward describes the ideal generated by every composition
# h(k(s(x))): as long as h is non-constant, some composition recovers
# each separation the scale makes, so merging labels changes nothing
merge = {0: 0, 1: 0, 2: 1}
print(f"non-constant relabeling {merge}")
print(f"pushforward blocks: {pushforward_partition(merge, blurred).blocks}")
collapse = {0: 1, 1: 1, 2: 1}
print(f"constant relabeling collapses everything: {pushforward_partition(collapse, blurred).blocks}")
