"""Exact column-stochastic channels on factored finite spaces.

A signalling constraint is a relation between input factors and output
factors of a channel: input factor i may only influence the output factors
it is related to. The check is a constancy-of-marginals test, decided
exactly over Fractions.

Index convention: a point of a factor space is a tuple of per-factor values,
flattened row-major with the first factor most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryMismatch, PreconditionViolated, StochasticityError
from .rational import ONE, ZERO
from .relations import FiniteRelation, check_labels, pre_image, related_set, relation

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class FactorSpace:
    """An ordered list of (label, cardinality >= 1) factors."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        factors = tuple((str(lab), int(size)) for lab, size in self.factors)
        check_labels(lab for lab, _ in factors)
        for lab, size in factors:
            if size < 1:
                raise ValueError(f"factor {lab!r} has non-positive size {size}")
        object.__setattr__(self, "factors", factors)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.factors)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(size for _, size in self.factors)

    @property
    def total(self) -> int:
        n = 1
        for _, size in self.factors:
            n *= size
        return n

    @property
    def strides(self) -> tuple[int, ...]:
        out, acc = [], 1
        for _, size in reversed(self.factors):
            out.append(acc)
            acc *= size
        return tuple(reversed(out))

    def index(self, coords) -> int:
        return sum(c * s for c, s in zip(coords, self.strides))

    def coords(self, index: int) -> tuple[int, ...]:
        out = []
        for stride in self.strides:
            out.append(index // stride)
            index %= stride
        return tuple(out)

    def drop(self, which) -> "FactorSpace":
        which = frozenset(which)
        return FactorSpace(
            tuple(f for k, f in enumerate(self.factors) if k not in which)
        )


def factor_space(pairs) -> FactorSpace:
    return FactorSpace(tuple((lab, size) for lab, size in pairs))


UNIT_FACTORS = FactorSpace(())


@dataclass(frozen=True)
class StochChannel:
    """cod.total x dom.total matrix; entries >= 0, every column sums to 1."""

    dom: FactorSpace
    cod: FactorSpace
    matrix: Matrix

    def __post_init__(self):
        rows = tuple(tuple(Fraction(e) for e in row) for row in self.matrix)
        if len(rows) != self.cod.total:
            raise ValueError(f"expected {self.cod.total} rows, got {len(rows)}")
        for row in rows:
            if len(row) != self.dom.total:
                raise ValueError(f"expected {self.dom.total} columns, got {len(row)}")
        for row in rows:
            for e in row:
                if e < 0:
                    raise StochasticityError(f"negative entry {e}")
        for c in range(self.dom.total):
            s = sum((rows[r][c] for r in range(self.cod.total)), ZERO)
            if s != 1:
                raise StochasticityError(f"column {c} sums to {s}, not 1")
        object.__setattr__(self, "matrix", rows)

    def column(self, c: int) -> tuple[Fraction, ...]:
        return tuple(row[c] for row in self.matrix)

    def __repr__(self):
        return f"StochChannel({self.dom.factors} -> {self.cod.factors})"


def channel(dom: FactorSpace, cod: FactorSpace, matrix) -> StochChannel:
    return StochChannel(dom, cod, tuple(tuple(row) for row in matrix))


def identity_channel(space: FactorSpace) -> StochChannel:
    n = space.total
    return channel(
        space, space, [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    )


def _check_factor_indices(space: FactorSpace, which):
    which = frozenset(int(k) for k in which)
    for k in which:
        if not 0 <= k < len(space.factors):
            raise IndexError(f"factor index {k} out of range")
    return which


def discard(space: FactorSpace, which) -> StochChannel:
    """Marginalize out exactly the factors in `which`; discard(∅) = identity."""
    which = _check_factor_indices(space, which)
    cod = space.drop(which)
    keep = [k for k in range(len(space.factors)) if k not in which]
    rows = [[ZERO] * space.total for _ in range(cod.total)]
    for x in range(space.total):
        coords = space.coords(x)
        y = cod.index(tuple(coords[k] for k in keep))
        rows[y][x] = ONE
    return channel(space, cod, rows)


def prepare_uniform(space: FactorSpace, which) -> StochChannel:
    """Insert the uniform distribution on each factor in `which`; the domain
    drops those factors. Inverse-on-the-left of discard(which)."""
    which = _check_factor_indices(space, which)
    dom = space.drop(which)
    keep = [k for k in range(len(space.factors)) if k not in which]
    weight = ONE
    for k in which:
        weight /= space.sizes[k]
    rows = [[ZERO] * dom.total for _ in range(space.total)]
    for y in range(space.total):
        coords = space.coords(y)
        x = dom.index(tuple(coords[k] for k in keep))
        rows[y][x] = weight
    return channel(dom, space, rows)


def compose(g: StochChannel, f: StochChannel) -> StochChannel:
    """Matrix product g∘f (f applied first)."""
    if f.cod != g.dom:
        raise BoundaryMismatch(
            f"compose: middle space {f.cod.factors} != {g.dom.factors}"
        )
    n, m, k = g.cod.total, g.dom.total, f.dom.total
    fe, ge = f.matrix, g.matrix
    rows = tuple(
        tuple(sum((ge[r][j] * fe[j][c] for j in range(m)), ZERO) for c in range(k))
        for r in range(n)
    )
    return StochChannel(f.dom, g.cod, rows)


def tensor(f: StochChannel, g: StochChannel) -> StochChannel:
    """Kronecker product; factor lists concatenate (tensor_disjoint side)."""
    dom = FactorSpace(f.dom.factors + g.dom.factors)
    cod = FactorSpace(f.cod.factors + g.cod.factors)
    fg_rows = []
    for ra in range(f.cod.total):
        for rb in range(g.cod.total):
            fg_rows.append(
                tuple(
                    f.matrix[ra][ca] * g.matrix[rb][cb]
                    for ca in range(f.dom.total)
                    for cb in range(g.dom.total)
                )
            )
    return StochChannel(dom, cod, tuple(fg_rows))


def relabel(f: StochChannel, dom: FactorSpace | None = None,
            cod: FactorSpace | None = None) -> StochChannel:
    new_dom = dom if dom is not None else f.dom
    new_cod = cod if cod is not None else f.cod
    for new, old, side in ((new_dom, f.dom, "dom"), (new_cod, f.cod, "cod")):
        if new.sizes != old.sizes:
            raise BoundaryMismatch(f"relabel must preserve {side} factor sizes")
    return StochChannel(new_dom, new_cod, f.matrix)


def _marginal_columns(f: StochChannel, discarded) -> tuple[FactorSpace, list]:
    """Columns of discard(discarded)∘f, computed by direct summation."""
    discarded = frozenset(discarded)
    cod = f.cod.drop(discarded)
    keep = [k for k in range(len(f.cod.factors)) if k not in discarded]
    group = [0] * f.cod.total
    for y in range(f.cod.total):
        coords = f.cod.coords(y)
        group[y] = cod.index(tuple(coords[k] for k in keep))
    cols = []
    for x in range(f.dom.total):
        acc = [ZERO] * cod.total
        for y in range(f.cod.total):
            acc[group[y]] += f.matrix[y][x]
        cols.append(tuple(acc))
    return cod, cols


def _constancy_witness(f_dom: FactorSpace, cols, joint) -> tuple | None:
    """First pair of inputs differing only on `joint` whose columns differ."""
    joint = frozenset(joint)
    if not joint:
        return None
    for x in range(f_dom.total):
        coords = list(f_dom.coords(x))
        if all(coords[k] == 0 for k in joint):
            continue
        for k in joint:
            coords[k] = 0
        base = f_dom.index(tuple(coords))
        if cols[x] != cols[base]:
            return (base, x)
    return None


def _require_channel_boundary(f: StochChannel, tau: FiniteRelation):
    if tau.src != f.dom.labels or tau.dst != f.cod.labels:
        raise BoundaryMismatch(
            f"relation boundary ({list(tau.src)}->{list(tau.dst)}) does not match "
            f"channel factors ({list(f.dom.labels)}->{list(f.cod.labels)})"
        )


def check_signalling(f: StochChannel, tau: FiniteRelation) -> bool:
    """True iff, for every input factor i, the marginal over the outputs NOT
    related to i is constant in i. The factoring channel then exists and is
    the marginal composed with prepare_uniform({i})."""
    return signalling_witness(f, tau) is None


def signalling_witness(f: StochChannel, tau: FiniteRelation):
    """None if satisfied, else a dict naming the offending input factor and
    two inputs (differing only there) with distinct forbidden marginals."""
    _require_channel_boundary(f, tau)
    for i in range(len(f.dom.factors)):
        _, cols = _marginal_columns(f, related_set(tau, i))
        bad = _constancy_witness(f.dom, cols, {i})
        if bad is not None:
            return {
                "input_factor": f.dom.labels[i],
                "inputs": bad,
                "detail": "marginal outside the related outputs depends on this input",
            }
    return None


def check_signalling_atomic(f: StochChannel, tau: FiniteRelation) -> bool:
    """Arrow-by-arrow criterion: for every absent (i, j), the single-output-j
    marginal is constant in input factor i. Implied by check_signalling;
    equivalent to it only in time-symmetric sub-theories."""
    _require_channel_boundary(f, tau)
    n_in, n_out = len(f.dom.factors), len(f.cod.factors)
    for j in range(n_out):
        discarded = frozenset(range(n_out)) - {j}
        _, cols = _marginal_columns(f, discarded)
        for i in range(n_in):
            if (i, j) in tau.pairs:
                continue
            if _constancy_witness(f.dom, cols, {i}) is not None:
                return False
    return True


def signalling_support(f: StochChannel) -> FiniteRelation:
    """The least relation f satisfies under the atomic criterion: (i, j)
    present iff the marginal on output j genuinely depends on input i."""
    n_in, n_out = len(f.dom.factors), len(f.cod.factors)
    pairs = set()
    for j in range(n_out):
        discarded = frozenset(range(n_out)) - {j}
        _, cols = _marginal_columns(f, discarded)
        for i in range(n_in):
            if _constancy_witness(f.dom, cols, {i}) is not None:
                pairs.add((i, j))
    return relation(f.dom.labels, f.cod.labels, pairs)


def is_uniform_preserving(f: StochChannel) -> bool:
    """Does f send the full uniform state to the full uniform state?"""
    target = Fraction(1, f.cod.total)
    for r in range(f.cod.total):
        if sum(f.matrix[r], ZERO) != target * f.dom.total:
            return False
    return True


def check_cosignalling(f: StochChannel, tau: FiniteRelation) -> bool:
    """Backward-direction check, with the unique state fixed to uniform.

    For each output factor j, feeding uniform noise into the inputs related
    to j must leave output j exactly uniform and independent of the other
    outputs. Channels that do not preserve the full uniform state are outside
    the doubly-stochastic-style sub-theory and are rejected with an error.
    """
    _require_channel_boundary(f, tau)
    if not is_uniform_preserving(f):
        raise PreconditionViolated(
            "check_cosignalling requires a uniform-preserving channel"
        )
    conv = FiniteRelation(tau.dst, tau.src, frozenset((j, i) for i, j in tau.pairs))
    n_out = len(f.cod.factors)
    for j in range(n_out):
        sources = related_set(conv, j)
        cols = _uniform_input_columns(f, sources)
        size_j = f.cod.sizes[j]
        share = Fraction(1, size_j)
        rest = f.cod.drop({j})
        keep = [k for k in range(n_out) if k != j]
        for col in cols:
            rest_marg = [ZERO] * rest.total
            for y in range(f.cod.total):
                coords = f.cod.coords(y)
                rest_marg[rest.index(tuple(coords[k] for k in keep))] += col[y]
            for y in range(f.cod.total):
                coords = f.cod.coords(y)
                expected = share * rest_marg[rest.index(tuple(coords[k] for k in keep))]
                if col[y] != expected:
                    return False
    return True


def _uniform_input_columns(f: StochChannel, which) -> list:
    """Columns of f ∘ prepare_uniform(which): average over the given input
    factors, indexed by the remaining inputs."""
    which = frozenset(which)
    dom = f.dom.drop(which)
    keep = [k for k in range(len(f.dom.factors)) if k not in which]
    weight = ONE
    for k in which:
        weight /= f.dom.sizes[k]
    cols = [[ZERO] * f.cod.total for _ in range(dom.total)]
    for x in range(f.dom.total):
        coords = f.dom.coords(x)
        xr = dom.index(tuple(coords[k] for k in keep))
        col = cols[xr]
        for y in range(f.cod.total):
            col[y] += weight * f.matrix[y][x]
    return [tuple(col) for col in cols]


def check_domain_atomicity(f: StochChannel, tau: FiniteRelation, targets) -> bool:
    """Given f already satisfying tau, discarding the outputs in `targets`
    must make f jointly constant in every input whose related set lies inside
    `targets`."""
    _require_channel_boundary(f, tau)
    targets = _check_factor_indices(f.cod, targets)
    if not check_signalling(f, tau):
        raise PreconditionViolated("channel does not satisfy the relation")
    _, cols = _marginal_columns(f, targets)
    joint = pre_image(tau, targets)
    return _constancy_witness(f.dom, cols, joint) is None


def parity_counterexample() -> StochChannel:
    """One input bit, two output bits, output uniform over the pairs whose
    parity equals the input. Satisfies each one-arrow-removed relation but
    not their meet."""
    dom = factor_space([("A", 2)])
    cod = factor_space([("B1", 2), ("B2", 2)])
    half = Fraction(1, 2)
    cols = {0: {(0, 0): half, (1, 1): half}, 1: {(0, 1): half, (1, 0): half}}
    rows = [
        [cols[x].get(cod.coords(y), ZERO) for x in range(2)]
        for y in range(cod.total)
    ]
    return channel(dom, cod, rows)
