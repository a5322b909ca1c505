"""Functions between block-partitioned finite sets, with exhaustive oracles.

The constraint here is again a relation, now between the blocks of the
partitions: every element of block i must land in one of the blocks related
to i. Because everything is tiny and discrete, this module can enumerate the
full satisfying set and serve as ground truth for laxity and
intersectability claims made elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BoundaryMismatch, ExplosionError, LabelCollision
from .relations import FiniteRelation, check_labels, related_set, relation

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class PartitionedFinSet:
    """An ordered list of (label, size >= 1) blocks; elements are globally
    indexed with block boundaries cumulative."""

    blocks: tuple[tuple[str, int], ...]

    def __post_init__(self):
        blocks = tuple((str(lab), int(size)) for lab, size in self.blocks)
        check_labels(lab for lab, _ in blocks)
        for lab, size in blocks:
            if size < 1:
                raise ValueError(f"block {lab!r} has non-positive size {size}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.blocks)

    @property
    def total(self) -> int:
        return sum(size for _, size in self.blocks)

    def offset(self, k: int) -> int:
        return sum(size for _, size in self.blocks[:k])

    def block_of(self, element: int) -> int:
        if not 0 <= element < self.total:
            raise IndexError(f"element {element} out of range")
        acc = 0
        for k, (_, size) in enumerate(self.blocks):
            acc += size
            if element < acc:
                return k
        raise AssertionError("unreachable")

    def elements_of(self, k: int) -> range:
        return range(self.offset(k), self.offset(k) + self.blocks[k][1])


def partitioned_set(pairs) -> PartitionedFinSet:
    return PartitionedFinSet(tuple((lab, size) for lab, size in pairs))


@dataclass(frozen=True)
class PartitionedFunction:
    """A total map between the element sets, stored as a flat image array."""

    dom: PartitionedFinSet
    cod: PartitionedFinSet
    map: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.map)
        if len(images) != self.dom.total:
            raise ValueError(f"expected {self.dom.total} images, got {len(images)}")
        for v in images:
            if not 0 <= v < self.cod.total:
                raise IndexError(f"image {v} out of range")
        object.__setattr__(self, "map", images)

    def __call__(self, element: int) -> int:
        return self.map[element]


def partitioned_function(dom, cod, images) -> PartitionedFunction:
    return PartitionedFunction(dom, cod, tuple(images))


def identity_function(s: PartitionedFinSet) -> PartitionedFunction:
    return PartitionedFunction(s, s, tuple(range(s.total)))


def compose(g: PartitionedFunction, f: PartitionedFunction) -> PartitionedFunction:
    if f.cod != g.dom:
        raise BoundaryMismatch("compose: middle partitioned sets differ")
    return PartitionedFunction(f.dom, g.cod, tuple(g.map[v] for v in f.map))


def tensor(f: PartitionedFunction, g: PartitionedFunction) -> PartitionedFunction:
    """Disjoint union: block lists concatenate, images shift."""
    dom_labels = f.dom.labels + g.dom.labels
    cod_labels = f.cod.labels + g.cod.labels
    if len(set(dom_labels)) != len(dom_labels) or len(set(cod_labels)) != len(cod_labels):
        raise LabelCollision("duplicate block labels in disjoint union")
    dom = PartitionedFinSet(f.dom.blocks + g.dom.blocks)
    cod = PartitionedFinSet(f.cod.blocks + g.cod.blocks)
    shift = f.cod.total
    return PartitionedFunction(dom, cod, f.map + tuple(v + shift for v in g.map))


def _require_boundary(f: PartitionedFunction, tau: FiniteRelation):
    if tau.src != f.dom.labels or tau.dst != f.cod.labels:
        raise BoundaryMismatch(
            f"relation boundary ({list(tau.src)}->{list(tau.dst)}) does not match "
            f"partition blocks ({list(f.dom.labels)}->{list(f.cod.labels)})"
        )


def check_funcrel(f: PartitionedFunction, tau: FiniteRelation) -> bool:
    return funcrel_witness(f, tau) is None


def funcrel_witness(f: PartitionedFunction, tau: FiniteRelation):
    """None if every element of block i maps into a block related to i,
    else a dict naming the first stray element."""
    _require_boundary(f, tau)
    for i in range(len(f.dom.blocks)):
        allowed = related_set(tau, i)
        for x in f.dom.elements_of(i):
            j = f.cod.block_of(f.map[x])
            if j not in allowed:
                return {
                    "element": x,
                    "dom_block": f.dom.labels[i],
                    "cod_block": f.cod.labels[j],
                }
    return None


def funcrel_support(f: PartitionedFunction) -> FiniteRelation:
    """The least relation f satisfies: (i, j) present iff some element of
    block i maps into block j."""
    pairs = {
        (f.dom.block_of(x), f.cod.block_of(f.map[x])) for x in range(f.dom.total)
    }
    return relation(f.dom.labels, f.cod.labels, pairs)


def enumerate_satisfying(
    dom: PartitionedFinSet,
    cod: PartitionedFinSet,
    tau: FiniteRelation,
    cap: int = DEFAULT_CAP,
) -> list[PartitionedFunction]:
    """Exactly the functions satisfying tau, in lexicographic image order.

    Refuses (never truncates) when the ambient function space exceeds `cap`.
    """
    if tau.src != dom.labels or tau.dst != cod.labels:
        raise BoundaryMismatch("relation boundary does not match partitions")
    if cod.total ** dom.total > cap:
        raise ExplosionError(
            f"{cod.total}^{dom.total} functions exceeds cap {cap}"
        )
    candidates = []
    for i in range(len(dom.blocks)):
        allowed = sorted(
            v for j in related_set(tau, i) for v in cod.elements_of(j)
        )
        for _ in dom.elements_of(i):
            candidates.append(allowed)
    return [
        PartitionedFunction(dom, cod, images) for images in product(*candidates)
    ]


def oracle_laxity(
    dom_a: PartitionedFinSet,
    dom_b: PartitionedFinSet,
    dom_c: PartitionedFinSet,
    tau: FiniteRelation,
    sigma: FiniteRelation,
    cap: int = DEFAULT_CAP,
) -> bool:
    """Ground truth for composition soundness: every composite of a
    tau-satisfying and a sigma-satisfying function lies in the extension of
    the composed relation."""
    from .relations import compose as rel_compose

    lhs = enumerate_satisfying(dom_a, dom_b, tau, cap)
    rhs = enumerate_satisfying(dom_b, dom_c, sigma, cap)
    composed_ext = {
        f.map for f in enumerate_satisfying(dom_a, dom_c, rel_compose(sigma, tau), cap)
    }
    for f in lhs:
        for g in rhs:
            if compose(g, f).map not in composed_ext:
                return False
    return True


def oracle_intersectability(
    dom: PartitionedFinSet,
    cod: PartitionedFinSet,
    tau: FiniteRelation,
    sigma: FiniteRelation,
    cap: int = DEFAULT_CAP,
) -> bool:
    """Extensional test that satisfying the meet is the same as satisfying
    both."""
    from .relations import meet

    both = {f.map for f in enumerate_satisfying(dom, cod, tau, cap)} & {
        f.map for f in enumerate_satisfying(dom, cod, sigma, cap)
    }
    met = {f.map for f in enumerate_satisfying(dom, cod, meet(tau, sigma), cap)}
    return both == met
