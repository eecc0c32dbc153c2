"""Partial labelings, information order, and partition-coded ideals.

A measurement over a finite object set X assigns labels to some of the
objects.  Labelings are quasiordered by information content: f <= g when
f can be recovered from g by relabeling on dom f.  Order ideals of that
quasiorder are coded losslessly by partitions of X extended with one
distinguished element `a` whose block absorbs the unmeasured objects.
All ideal-level operations below work on that partition code.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .errors import (
    InsufficientLabels,
    NonIdealFamily,
    UnorderedLabels,
    ValidationError,
)


@dataclass(frozen=True)
class ObjectSet:
    """Finite object set X plus a distinguished absorber not in X."""

    elements: tuple
    distinguished: object = "a"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValidationError("object set has repeated elements")
        if self.distinguished in self.elements:
            raise ValidationError("distinguished element must lie outside X")

    def sort_key(self, x):
        # distinguished element sorts before every object of X
        if x == self.distinguished:
            return -1
        try:
            return self.elements.index(x)
        except ValueError:
            raise ValidationError(f"unknown object {x!r}") from None

    def universe(self):
        return (self.distinguished,) + self.elements


@dataclass(frozen=True)
class LabelSet:
    """Finite label set Y; `ordered` enables the preference variant."""

    values: tuple
    ordered: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(set(self.values)) != len(self.values):
            raise ValidationError("label set has repeated values")
        if self.ordered:
            try:
                ranked = sorted(self.values)
            except TypeError:
                raise UnorderedLabels("labels do not support a total order") from None
            if any(ranked[i] >= ranked[i + 1] for i in range(len(ranked) - 1)):
                raise UnorderedLabels("labels are not strictly ordered")


@dataclass(frozen=True)
class PartialLabeling:
    """Partial map from X to Y, stored as entries sorted by object."""

    objects: ObjectSet
    labels: LabelSet
    entries: tuple

    def __post_init__(self):
        raw = self.entries.items() if isinstance(self.entries, dict) else self.entries
        pairs = []
        seen = set()
        label_pool = set(self.labels.values)
        for x, y in raw:
            if x in seen:
                raise ValidationError(f"object {x!r} labeled twice")
            if x not in self.objects.elements:
                raise ValidationError(f"entry for {x!r} outside the object set")
            if y not in label_pool:
                raise ValidationError(f"label {y!r} outside the label set")
            seen.add(x)
            pairs.append((x, y))
        pairs.sort(key=lambda p: self.objects.sort_key(p[0]))
        object.__setattr__(self, "entries", tuple(pairs))

    def as_dict(self):
        return dict(self.entries)

    def domain(self):
        return tuple(x for x, _ in self.entries)


@dataclass(frozen=True)
class Scale:
    """Total labeling of X; the generating datum of a scalable ideal."""

    objects: ObjectSet
    labels: LabelSet
    assignment: tuple

    def __post_init__(self):
        raw = (
            self.assignment.items()
            if isinstance(self.assignment, dict)
            else self.assignment
        )
        mapping = dict(raw)
        if set(mapping) != set(self.objects.elements):
            raise ValidationError("scale must label every object exactly once")
        if any(y not in self.labels.values for y in mapping.values()):
            raise ValidationError("scale uses a label outside the label set")
        pairs = tuple(
            (x, mapping[x])
            for x in sorted(mapping, key=self.objects.sort_key)
        )
        object.__setattr__(self, "assignment", pairs)

    def as_dict(self):
        return dict(self.assignment)


@dataclass(frozen=True)
class PartitionPlus:
    """Partition of X union {a}; canonical block order by least element."""

    objects: ObjectSet
    blocks: tuple

    def __post_init__(self):
        key = self.objects.sort_key
        norm = []
        covered = []
        for block in self.blocks:
            block = tuple(sorted(block, key=key))
            if not block:
                raise ValidationError("empty block")
            norm.append(block)
            covered.extend(block)
        if len(covered) != len(set(covered)):
            raise ValidationError("blocks overlap")
        if set(covered) != set(self.objects.universe()):
            raise ValidationError("blocks do not cover X plus the distinguished element")
        norm.sort(key=lambda b: key(b[0]))
        object.__setattr__(self, "blocks", tuple(norm))

    def block_index(self):
        """Map each element to the index of its block."""
        out = {}
        for i, block in enumerate(self.blocks):
            for x in block:
                out[x] = i
        return out

    def distinguished_index(self):
        return self.block_index()[self.objects.distinguished]

    def refines(self, other):
        """True when every block here sits inside a block of `other`."""
        if self.objects != other.objects:
            raise ValidationError("partitions over different object sets")
        where = other.block_index()
        return all(len({where[x] for x in block}) == 1 for block in self.blocks)


def _same_context(f, g):
    if f.objects != g.objects or f.labels != g.labels:
        raise ValidationError("labelings live over different object or label sets")


def le(f, g):
    """Information order: f <= g iff f is a relabeling of g on dom f.

    Equivalent test on finite data: dom f inside dom g, and g never
    separates two objects that f separates.
    """
    _same_context(f, g)
    fd = f.as_dict()
    gd = g.as_dict()
    if any(x not in gd for x in fd):
        return False
    seen = {}
    for x, fy in fd.items():
        gy = gd[x]
        if gy in seen:
            if seen[gy] != fy:
                return False
        else:
            seen[gy] = fy
    return True


def pref_le(f, g):
    """Preference order: as `le` but the relabeling must be nondecreasing.

    Needs an ordered label set.  On finite data this reduces to:
    g(x) <= g(y) implies f(x) <= f(y) for x, y in dom f, since any
    monotone partial map on the g-values extends to a monotone total one.
    """
    _same_context(f, g)
    if not f.labels.ordered:
        raise UnorderedLabels("pref_le needs an ordered label set")
    fd = f.as_dict()
    gd = g.as_dict()
    if any(x not in gd for x in fd):
        return False
    for x, y in permutations(fd, 2):
        if gd[x] <= gd[y] and not fd[x] <= fd[y]:
            return False
    return True


def partition_of_family(objects, labels, family):
    """Partition coded by a family of labelings, if the family is ideal-like.

    Objects outside every domain join the distinguished block; two
    measured objects share a block iff no member separates them.  Raises
    NonIdealFamily with a witness triple when that relation is not
    transitive, and InsufficientLabels when the family would need more
    labels than Y offers to stay directed.
    """
    family = list(family)
    for f in family:
        if f.objects != objects or f.labels != labels:
            raise ValidationError("family member over a different object or label set")
    dom = sorted(
        {x for f in family for x in f.domain()}, key=objects.sort_key
    )
    separated = set()
    for f in family:
        for (x, fx), (y, fy) in combinations(f.entries, 2):
            if fx != fy:
                separated.add((x, y))
                separated.add((y, x))

    def related(x, y):
        return (x, y) not in separated

    for x, y, z in permutations(dom, 3):
        if related(x, y) and related(y, z) and not related(x, z):
            raise NonIdealFamily(
                f"family separates {x!r} from {z!r} but links both to {y!r}",
                witness=(x, y, z),
            )

    blocks = []
    placed = set()
    for x in dom:
        if x in placed:
            continue
        block = [y for y in dom if related(x, y)]
        placed.update(block)
        blocks.append(block)
    if len(blocks) > len(labels.values):
        raise InsufficientLabels(
            f"{len(blocks)} blocks need at least {len(blocks)} labels, "
            f"have {len(labels.values)}"
        )
    absorber = [objects.distinguished] + [
        x for x in objects.elements if x not in set(dom)
    ]
    return PartitionPlus(objects, tuple(blocks) + (tuple(absorber),))


@lru_cache(maxsize=1024)
def _block_index_cached(partition):
    # read-only share across the many membership queries a sweep makes
    return partition.block_index()


def ideal_contains(partition, f):
    """Membership of a labeling in the ideal coded by `partition`.

    True iff dom f avoids the distinguished block and f is constant on
    each block it meets.
    """
    if partition.objects != f.objects:
        raise ValidationError("partition and labeling over different object sets")
    where = _block_index_cached(partition)
    a_block = where[partition.objects.distinguished]
    taken = {}
    for x, y in f.entries:
        i = where[x]
        if i == a_block:
            return False
        if i in taken:
            if taken[i] != y:
                return False
        else:
            taken[i] = y
    return True


def common_refinement(p, q):
    """Meet of two partition codes: nonempty pairwise block intersections."""
    if p.objects != q.objects:
        raise ValidationError("partitions over different object sets")
    wp = p.block_index()
    wq = q.block_index()
    cells = {}
    for x in p.objects.universe():
        cells.setdefault((wp[x], wq[x]), []).append(x)
    return PartitionPlus(p.objects, tuple(tuple(c) for c in cells.values()))


def common_coarsening(p, q):
    """Join of two partition codes: transitive closure of block overlap."""
    if p.objects != q.objects:
        raise ValidationError("partitions over different object sets")
    parent = {x: x for x in p.objects.universe()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for part in (p, q):
        for block in part.blocks:
            for x in block[1:]:
                union(block[0], x)
    groups = {}
    for x in p.objects.universe():
        groups.setdefault(find(x), []).append(x)
    return PartitionPlus(p.objects, tuple(tuple(g) for g in groups.values()))


def scale_to_partition(scale):
    """Partition induced by a total labeling: its fibers, plus {a} alone."""
    fibers = {}
    for x, y in scale.assignment:
        fibers.setdefault(y, []).append(x)
    blocks = [tuple(b) for b in fibers.values()]
    blocks.append((scale.objects.distinguished,))
    return PartitionPlus(scale.objects, tuple(blocks))


def is_observable(partition, labels):
    """Maximality test: every block a singleton.

    Demands enough labels to realize a maximal ideal at all; raises
    InsufficientLabels when |Y| < |X|.
    """
    if len(labels.values) < len(partition.objects.elements):
        raise InsufficientLabels(
            f"need at least {len(partition.objects.elements)} labels, "
            f"have {len(labels.values)}"
        )
    return all(len(block) == 1 for block in partition.blocks)


def pushforward_partition(h, scale):
    """Partition of the ideal generated by all relabelings h(k(s(x))).

    For non-constant h the compositions recover every separation the
    scale makes, so the code is the scale's fiber partition.  A constant
    h collapses everything measurable into one block.
    """
    labels = scale.labels
    if set(h) != set(labels.values):
        raise ValidationError("h must be total on the label set")
    if any(v not in labels.values for v in h.values()):
        raise ValidationError("h maps outside the label set")
    if len(set(h.values())) > 1:
        return scale_to_partition(scale)
    objects = scale.objects
    blocks = [(objects.distinguished,)]
    if objects.elements:
        blocks.append(tuple(objects.elements))
    return PartitionPlus(objects, tuple(blocks))
