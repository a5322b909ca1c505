"""Exact-rational block matrices between sector-partitioned spaces.

A sectorial constraint is a relation between the sector labels of the domain
and codomain: it is satisfied exactly when every block between unrelated
sectors is identically zero. "Zero" means literally zero: scalars are
Fractions and no epsilon is ever involved. The checks only ever ask whether
entries vanish, so nothing here depends on the scalar field; rationals keep
every test decidable and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryMismatch, LabelCollision
from .rational import ONE, ZERO
from .relations import FiniteRelation, UNIT_LABEL, check_labels, relation

Entries = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SectorSpace:
    """An ordered list of (label, dimension >= 1) sectors."""

    sectors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        sectors = tuple((str(lab), int(dim)) for lab, dim in self.sectors)
        check_labels(lab for lab, _ in sectors)
        for lab, dim in sectors:
            if dim < 1:
                raise ValueError(f"sector {lab!r} has non-positive dimension {dim}")
        object.__setattr__(self, "sectors", sectors)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.sectors)

    @property
    def total_dim(self) -> int:
        return sum(dim for _, dim in self.sectors)

    def offset(self, k: int) -> int:
        return sum(dim for _, dim in self.sectors[:k])

    def dim(self, k: int) -> int:
        return self.sectors[k][1]


def sector_space(pairs) -> SectorSpace:
    return SectorSpace(tuple((lab, dim) for lab, dim in pairs))


UNIT_SPACE = SectorSpace(((UNIT_LABEL, 1),))


@dataclass(frozen=True)
class BlockMatrix:
    """A total_dim(cod) x total_dim(dom) matrix of Fractions; block (l, k)
    is the sub-array at cod sector l rows x dom sector k columns."""

    dom: SectorSpace
    cod: SectorSpace
    entries: Entries

    def __post_init__(self):
        rows = tuple(tuple(Fraction(e) for e in row) for row in self.entries)
        if len(rows) != self.cod.total_dim:
            raise ValueError(f"expected {self.cod.total_dim} rows, got {len(rows)}")
        for row in rows:
            if len(row) != self.dom.total_dim:
                raise ValueError(
                    f"expected {self.dom.total_dim} columns, got {len(row)}"
                )
        object.__setattr__(self, "entries", rows)

    def block(self, l: int, k: int) -> list[list[Fraction]]:
        r0, nr = self.cod.offset(l), self.cod.dim(l)
        c0, nc = self.dom.offset(k), self.dom.dim(k)
        return [list(self.entries[r0 + r][c0 : c0 + nc]) for r in range(nr)]

    def __repr__(self):
        return f"BlockMatrix({self.dom.sectors} -> {self.cod.sectors})"


def block_matrix(dom: SectorSpace, cod: SectorSpace, entries) -> BlockMatrix:
    return BlockMatrix(dom, cod, tuple(tuple(row) for row in entries))


def zero_matrix(dom: SectorSpace, cod: SectorSpace) -> BlockMatrix:
    return block_matrix(dom, cod, [[ZERO] * dom.total_dim for _ in range(cod.total_dim)])


def identity_matrix(space: SectorSpace) -> BlockMatrix:
    n = space.total_dim
    return block_matrix(
        space, space, [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    )


def compose(g: BlockMatrix, f: BlockMatrix) -> BlockMatrix:
    """Matrix product g∘f (f applied first)."""
    if f.cod != g.dom:
        raise BoundaryMismatch(
            f"compose: middle space {f.cod.sectors} != {g.dom.sectors}"
        )
    n, m, k = g.cod.total_dim, g.dom.total_dim, f.dom.total_dim
    fe, ge = f.entries, g.entries
    rows = [
        tuple(sum((ge[r][j] * fe[j][c] for j in range(m)), ZERO) for c in range(k))
        for r in range(n)
    ]
    return BlockMatrix(f.dom, g.cod, tuple(rows))


def transpose(f: BlockMatrix) -> BlockMatrix:
    rows = tuple(
        tuple(f.entries[r][c] for r in range(f.cod.total_dim))
        for c in range(f.dom.total_dim)
    )
    return BlockMatrix(f.cod, f.dom, rows)


def sum_space(a: SectorSpace, b: SectorSpace) -> SectorSpace:
    labels = tuple(lab for lab, _ in a.sectors) + tuple(lab for lab, _ in b.sectors)
    if len(set(labels)) != len(labels):
        raise LabelCollision(f"duplicate sector labels in direct sum: {labels}")
    return SectorSpace(a.sectors + b.sectors)


def direct_sum(f: BlockMatrix, g: BlockMatrix) -> BlockMatrix:
    dom = sum_space(f.dom, g.dom)
    cod = sum_space(f.cod, g.cod)
    out = [[ZERO] * dom.total_dim for _ in range(cod.total_dim)]
    for r in range(f.cod.total_dim):
        for c in range(f.dom.total_dim):
            out[r][c] = f.entries[r][c]
    r0, c0 = f.cod.total_dim, f.dom.total_dim
    for r in range(g.cod.total_dim):
        for c in range(g.dom.total_dim):
            out[r0 + r][c0 + c] = g.entries[r][c]
    return block_matrix(dom, cod, out)


def product_space(a: SectorSpace, b: SectorSpace) -> SectorSpace:
    sectors = tuple(
        (f"({la},{lb})", da * db) for la, da in a.sectors for lb, db in b.sectors
    )
    return SectorSpace(sectors)


def _product_index_map(a: SectorSpace, b: SectorSpace) -> list[tuple[int, int]]:
    # Global index of product_space(a, b) -> (a global index, b global index),
    # grouped sector-pair by sector-pair so blocks stay contiguous.
    out = []
    for k, (_, da) in enumerate(a.sectors):
        for l, (_, db) in enumerate(b.sectors):
            for u in range(da):
                for v in range(db):
                    out.append((a.offset(k) + u, b.offset(l) + v))
    return out


def tensor(f: BlockMatrix, g: BlockMatrix) -> BlockMatrix:
    """Kronecker product with sector pairs flattened row-major, matching the
    tensor_product convention on relations."""
    dom = product_space(f.dom, g.dom)
    cod = product_space(f.cod, g.cod)
    col_map = _product_index_map(f.dom, g.dom)
    row_map = _product_index_map(f.cod, g.cod)
    rows = tuple(
        tuple(f.entries[ra][ca] * g.entries[rb][cb] for ca, cb in col_map)
        for ra, rb in row_map
    )
    return BlockMatrix(dom, cod, rows)


def relabel(f: BlockMatrix, dom: SectorSpace | None = None,
            cod: SectorSpace | None = None) -> BlockMatrix:
    """Swap in equal-shape sector spaces (the explicit rewiring step)."""
    new_dom = dom if dom is not None else f.dom
    new_cod = cod if cod is not None else f.cod
    for new, old, side in ((new_dom, f.dom, "dom"), (new_cod, f.cod, "cod")):
        if tuple(d for _, d in new.sectors) != tuple(d for _, d in old.sectors):
            raise BoundaryMismatch(f"relabel must preserve {side} sector dimensions")
    return BlockMatrix(new_dom, new_cod, f.entries)


def _require_labels(f: BlockMatrix, lam: FiniteRelation):
    if lam.src != f.dom.labels or lam.dst != f.cod.labels:
        raise BoundaryMismatch(
            f"relation boundary ({list(lam.src)}->{list(lam.dst)}) does not match "
            f"matrix sectors ({list(f.dom.labels)}->{list(f.cod.labels)})"
        )


def check_sectorial(f: BlockMatrix, lam: FiniteRelation) -> bool:
    """True iff every block between sectors not related by `lam` is all-zero."""
    return sectorial_witness(f, lam) is None


def sectorial_witness(f: BlockMatrix, lam: FiniteRelation):
    """None if satisfied, else a dict locating the first nonzero entry in a
    forbidden block."""
    _require_labels(f, lam)
    for k in range(len(f.dom.sectors)):
        for l in range(len(f.cod.sectors)):
            if (k, l) in lam.pairs:
                continue
            blk = f.block(l, k)
            for r, row in enumerate(blk):
                for c, val in enumerate(row):
                    if val != 0:
                        return {
                            "dom_sector": f.dom.labels[k],
                            "cod_sector": f.cod.labels[l],
                            "entry": (r, c),
                            "value": str(val),
                        }
    return None


def support_relation(f: BlockMatrix) -> FiniteRelation:
    """The least relation f satisfies: (k, l) present iff block (l, k) has a
    nonzero entry."""
    pairs = set()
    for k in range(len(f.dom.sectors)):
        for l in range(len(f.cod.sectors)):
            if any(val != 0 for row in f.block(l, k) for val in row):
                pairs.add((k, l))
    return relation(f.dom.labels, f.cod.labels, pairs)


def sector_cup(space: SectorSpace, unit_label: str = UNIT_LABEL) -> BlockMatrix:
    """The unnormalized maximal pairing on A⊗A as a single-column matrix."""
    cod = product_space(space, space)
    col_entries = [
        [ONE if ra == rb else ZERO] for ra, rb in _product_index_map(space, space)
    ]
    return block_matrix(SectorSpace(((unit_label, 1),)), cod, col_entries)


def sector_cap(space: SectorSpace, unit_label: str = UNIT_LABEL) -> BlockMatrix:
    return transpose(sector_cup(space, unit_label))
