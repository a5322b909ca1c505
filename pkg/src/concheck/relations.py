"""Finite relations between ordered label lists.

Relations are the constraints everything else in this package checks against:
they compose, tensor (two ways), meet, and carry a converse, forming a
dagger-compact category enriched with a meet-semilattice order on each
hom-set.

Conventions fixed here and relied on everywhere else:

- labels are distinct strings and their order is significant;
- pairs are zero-based (source index, destination index);
- tensor_disjoint concatenates label lists; tensor_product forms the
  cartesian product with the FIRST factor most significant (row-major);
- empty label lists are legal (they are the tensor_disjoint unit).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BoundaryMismatch, LabelCollision

Labels = tuple[str, ...]

UNIT_LABEL = "I"


def check_labels(labels) -> Labels:
    out = tuple(labels)
    for lab in out:
        if not isinstance(lab, str) or not lab:
            raise ValueError(f"labels must be non-empty strings, got {lab!r}")
    if len(set(out)) != len(out):
        raise LabelCollision(f"duplicate labels in {list(out)}")
    return out


@dataclass(frozen=True)
class FiniteRelation:
    """A relation between two label lists, stored as a canonical pair set."""

    src: Labels
    dst: Labels
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "src", check_labels(self.src))
        object.__setattr__(self, "dst", check_labels(self.dst))
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in self.pairs))
        for i, j in self.pairs:
            if not (0 <= i < len(self.src) and 0 <= j < len(self.dst)):
                raise IndexError(f"pair ({i},{j}) out of bounds for {len(self.src)}x{len(self.dst)}")

    @property
    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __repr__(self):
        return f"FiniteRelation({list(self.src)} -> {list(self.dst)}, {self.sorted_pairs})"


def relation(src, dst, pairs) -> FiniteRelation:
    return FiniteRelation(tuple(src), tuple(dst), frozenset(pairs))


def identity(labels) -> FiniteRelation:
    labs = tuple(labels)
    return FiniteRelation(labs, labs, frozenset((i, i) for i in range(len(labs))))


def full(src, dst) -> FiniteRelation:
    src, dst = tuple(src), tuple(dst)
    return FiniteRelation(src, dst, frozenset(product(range(len(src)), range(len(dst)))))


def empty(src, dst) -> FiniteRelation:
    return FiniteRelation(tuple(src), tuple(dst), frozenset())


def rename(rel: FiniteRelation, src=None, dst=None) -> FiniteRelation:
    """Replace boundary labels (same lengths); the explicit rewiring step."""
    new_src = tuple(src) if src is not None else rel.src
    new_dst = tuple(dst) if dst is not None else rel.dst
    if len(new_src) != len(rel.src) or len(new_dst) != len(rel.dst):
        raise BoundaryMismatch("rename must preserve the number of labels")
    return FiniteRelation(new_src, new_dst, rel.pairs)


def _require_boundary(got: Labels, want: Labels, what: str):
    if got != want:
        raise BoundaryMismatch(f"{what}: expected {list(want)}, got {list(got)}")


def to_bool_matrix(rel: FiniteRelation) -> list[list[bool]]:
    """len(src) x len(dst) boolean adjacency matrix."""
    m = [[False] * len(rel.dst) for _ in rel.src]
    for i, j in rel.pairs:
        m[i][j] = True
    return m


def compose(second: FiniteRelation, first: FiniteRelation) -> FiniteRelation:
    """Relational composition second∘first (first is applied first).

    Computed as a boolean matrix product; all instances here are small.
    """
    if first.dst != second.src:
        raise BoundaryMismatch(
            f"compose: middle boundary {list(first.dst)} != {list(second.src)}"
        )
    a, b = to_bool_matrix(first), to_bool_matrix(second)
    n, m, k = len(first.src), len(first.dst), len(second.dst)
    pairs = set()
    for i in range(n):
        row = a[i]
        for c in range(k):
            if any(row[j] and b[j][c] for j in range(m)):
                pairs.add((i, c))
    return FiniteRelation(first.src, second.dst, frozenset(pairs))


def converse(rel: FiniteRelation) -> FiniteRelation:
    return FiniteRelation(rel.dst, rel.src, frozenset((j, i) for i, j in rel.pairs))


def tensor_disjoint(a: FiniteRelation, b: FiniteRelation) -> FiniteRelation:
    """Side-by-side juxtaposition: label lists concatenate, indices shift."""
    src = check_labels(a.src + b.src)
    dst = check_labels(a.dst + b.dst)
    ns, nd = len(a.src), len(a.dst)
    pairs = set(a.pairs)
    pairs.update((i + ns, j + nd) for i, j in b.pairs)
    return FiniteRelation(src, dst, frozenset(pairs))


def product_labels(a: Labels, b: Labels) -> Labels:
    return check_labels(tuple(f"({x},{y})" for x in a for y in b))


def tensor_product(a: FiniteRelation, b: FiniteRelation) -> FiniteRelation:
    """Cartesian product of relations, flattened row-major (first factor
    most significant)."""
    src = product_labels(a.src, b.src)
    dst = product_labels(a.dst, b.dst)
    nb_src, nb_dst = len(b.src), len(b.dst)
    pairs = frozenset(
        (i * nb_src + ip, j * nb_dst + jp)
        for i, j in a.pairs
        for ip, jp in b.pairs
    )
    return FiniteRelation(src, dst, pairs)


def _same_boundary(a: FiniteRelation, b: FiniteRelation, what: str):
    if a.src != b.src or a.dst != b.dst:
        raise BoundaryMismatch(
            f"{what}: boundaries differ "
            f"({list(a.src)}->{list(a.dst)} vs {list(b.src)}->{list(b.dst)})"
        )


def meet(a: FiniteRelation, b: FiniteRelation) -> FiniteRelation:
    _same_boundary(a, b, "meet")
    return FiniteRelation(a.src, a.dst, a.pairs & b.pairs)


def leq(a: FiniteRelation, b: FiniteRelation) -> bool:
    """a is a stronger constraint than b (fewer permitted links)."""
    _same_boundary(a, b, "leq")
    return a.pairs <= b.pairs


def meet_generators(src, dst) -> list[FiniteRelation]:
    """All one-pair-removed relations, ordered lexicographically by the
    removed (src, dst) index pair. Their meets generate every relation."""
    src, dst = check_labels(src), check_labels(dst)
    everything = frozenset(product(range(len(src)), range(len(dst))))
    return [
        FiniteRelation(src, dst, everything - {(a, b)})
        for a, b in sorted(everything)
    ]


def related_set(rel: FiniteRelation, i: int) -> frozenset[int]:
    """Destination indices reachable from source index i."""
    if not 0 <= i < len(rel.src):
        raise IndexError(f"source index {i} out of range")
    return frozenset(j for x, j in rel.pairs if x == i)


def pre_image(rel: FiniteRelation, targets) -> frozenset[int]:
    """Source indices whose entire related set lies inside `targets`."""
    targets = frozenset(targets)
    for j in targets:
        if not 0 <= j < len(rel.dst):
            raise IndexError(f"destination index {j} out of range")
    return frozenset(
        i for i in range(len(rel.src)) if related_set(rel, i) <= targets
    )


def cup(labels, unit_label: str = UNIT_LABEL) -> FiniteRelation:
    """Relation from the singleton unit to A x A relating the unit to every
    diagonal pair, under the tensor_product flattening."""
    labs = check_labels(labels)
    n = len(labs)
    dst = product_labels(labs, labs)
    return FiniteRelation((unit_label,), dst, frozenset((0, i * n + i) for i in range(n)))


def cap(labels, unit_label: str = UNIT_LABEL) -> FiniteRelation:
    return converse(cup(labels, unit_label))
