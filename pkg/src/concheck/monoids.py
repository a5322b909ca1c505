"""Relational constraints over finite monoids.

A labeling assigns a monoid element f(x) to each point x of a finite set S.
An endorelation tau on S then constrains a monoid element m: for every
related pair x ~ y there must exist some m' with f(y)·m = m'·f(x). The
existential is decided by exhaustive search, which is exact for the finite
monoids in scope.

Multiplication convention: table[a][b] is a·b, read left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BoundaryMismatch
from .relations import FiniteRelation, Labels, check_labels, relation


@dataclass(frozen=True)
class FiniteMonoid:
    table: tuple[tuple[int, ...], ...]
    identity: int

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        n = len(table)
        for row in table:
            if len(row) != n:
                raise ValueError("multiplication table must be square")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"table entry {v} out of range")
        e = int(self.identity)
        if not 0 <= e < n:
            raise ValueError(f"identity index {e} out of range")
        for a in range(n):
            if table[e][a] != a or table[a][e] != a:
                raise ValueError(f"element {e} is not a two-sided identity")
        for a in range(n):
            for b in range(n):
                tab = table[a][b]
                for c in range(n):
                    if table[tab][c] != table[a][table[b][c]]:
                        raise ValueError(
                            f"not associative at ({a},{b},{c})"
                        )
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "identity", e)

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]


def is_group(m: FiniteMonoid) -> bool:
    e = m.identity
    return all(
        any(m.mul(a, b) == e and m.mul(b, a) == e for b in range(m.size))
        for a in range(m.size)
    )


@dataclass(frozen=True)
class MonoidLabeling:
    """A function from the points of S into a monoid, by element index."""

    labels: Labels
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", check_labels(self.labels))
        object.__setattr__(self, "assignment", tuple(int(v) for v in self.assignment))
        if len(self.assignment) != len(self.labels):
            raise ValueError("one monoid element per label required")


def _require_endorelation(tau: FiniteRelation, lab: MonoidLabeling):
    if tau.src != lab.labels or tau.dst != lab.labels:
        raise BoundaryMismatch(
            f"expected an endorelation on {list(lab.labels)}, "
            f"got {list(tau.src)} -> {list(tau.dst)}"
        )
    for v in lab.assignment:
        if v < 0:
            raise IndexError("negative element index")


def check_monoid_constraint(
    monoid: FiniteMonoid, lab: MonoidLabeling, m: int, tau: FiniteRelation
) -> bool:
    return monoid_witness(monoid, lab, m, tau) is None


def monoid_witness(
    monoid: FiniteMonoid, lab: MonoidLabeling, m: int, tau: FiniteRelation
):
    """None if m satisfies tau, else the first related pair with no solving
    m'."""
    _require_endorelation(tau, lab)
    f = lab.assignment
    for x, y in sorted(tau.pairs):
        target = monoid.mul(f[y], m)
        if not any(monoid.mul(mp, f[x]) == target for mp in range(monoid.size)):
            return {"pair": (lab.labels[x], lab.labels[y])}
    return None


def constraint_set(
    monoid: FiniteMonoid, lab: MonoidLabeling, tau: FiniteRelation
) -> frozenset[int]:
    """Extensional constraint set: all elements satisfying tau."""
    return frozenset(
        m for m in range(monoid.size) if check_monoid_constraint(monoid, lab, m, tau)
    )


def commutation_relation(
    monoid: FiniteMonoid, lab: MonoidLabeling, m: int
) -> FiniteRelation:
    """The largest endorelation m satisfies: all pairs (x, y) for which some
    m' solves f(y)·m = m'·f(x). Satisfaction of any tau is tau <= this."""
    f = lab.assignment
    n = len(lab.labels)
    pairs = set()
    for x in range(n):
        for y in range(n):
            target = monoid.mul(f[y], m)
            if any(monoid.mul(mp, f[x]) == target for mp in range(monoid.size)):
                pairs.add((x, y))
    return relation(lab.labels, lab.labels, pairs)


def all_monoids(max_order: int):
    """Every monoid of order <= max_order, identity fixed at element 0.

    Up to renaming elements this loses nothing, and every property checked in
    this package is invariant under renaming. Tables are generated cell by
    cell with the identity row/column forced.
    """
    for n in range(1, max_order + 1):
        free = [(a, b) for a in range(1, n) for b in range(1, n)]
        for values in product(range(n), repeat=len(free)):
            table = [[0] * n for _ in range(n)]
            for a in range(n):
                table[0][a] = a
                table[a][0] = a
            for (a, b), v in zip(free, values):
                table[a][b] = v
            if _associative(table, n):
                yield FiniteMonoid(tuple(tuple(row) for row in table), 0)


def _associative(table, n) -> bool:
    for a in range(n):
        ta = table[a]
        for b in range(n):
            tab = table[ta[b]]
            tb = table[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return False
    return True
