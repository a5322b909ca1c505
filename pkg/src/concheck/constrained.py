"""Pairs of (constraint, morphism) with certificate-checked construction.

An encoding is registered extensionally: a satisfaction predicate plus the
operations its target supports. A certified pair witnesses that its morphism
satisfies its constraint; composition, tensor and dagger act component-wise
and PROPAGATE the certificate by the soundness of constraint composition
rather than re-deriving it. A debug re-check mode (always on in the test
suite) re-evaluates the predicate after every propagation and aborts on any
mismatch, making that soundness itself a falsifiable claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import cspcat, funcrel, monoids, relations, sectorial, signalling
from .errors import (
    NotARelaxation,
    UncertifiedPair,
    UnsatisfiedConstraint,
    UnsupportedStructure,
)

_DEBUG_RECHECK = False


def set_debug_recheck(enabled: bool) -> None:
    global _DEBUG_RECHECK
    _DEBUG_RECHECK = bool(enabled)


def debug_recheck_enabled() -> bool:
    return _DEBUG_RECHECK


@dataclass(frozen=True)
class Encoding:
    """Extensional description of one constraint target.

    `satisfies` decides the predicate; `witness` explains a failure.
    Structure the target lacks is left as None.
    """

    name: str
    satisfies: Callable[[Any, Any], bool]
    witness: Callable[[Any, Any], Any]
    compose_constraint: Callable[[Any, Any], Any]
    compose_morphism: Callable[[Any, Any], Any]
    constraint_leq: Callable[[Any, Any], bool]
    morphism_summary: Callable[[Any], str]
    tensor_constraint: Callable[[Any, Any], Any] | None = None
    tensor_morphism: Callable[[Any, Any], Any] | None = None
    dagger_constraint: Callable[[Any], Any] | None = None
    dagger_morphism: Callable[[Any], Any] | None = None
    supports_compact: bool = False
    params: dict = field(default_factory=dict, compare=False)

    @property
    def supports_tensor(self) -> bool:
        return self.tensor_constraint is not None

    @property
    def supports_dagger(self) -> bool:
        return self.dagger_constraint is not None


@dataclass(frozen=True)
class ConstrainedMorphism:
    encoding: Encoding
    constraint: Any
    morphism: Any
    certified: bool

    def __repr__(self):
        tag = "certified" if self.certified else "UNCHECKED"
        return f"ConstrainedMorphism[{self.encoding.name}, {tag}]"


def pair(constraint, morphism, encoding: Encoding) -> ConstrainedMorphism:
    """Checked constructor: runs the predicate, raises with a counter-witness
    when the morphism does not satisfy the constraint."""
    if not encoding.satisfies(morphism, constraint):
        raise UnsatisfiedConstraint(
            f"morphism does not satisfy its constraint under {encoding.name}",
            witness=encoding.witness(morphism, constraint),
        )
    return ConstrainedMorphism(encoding, constraint, morphism, True)


def pair_unchecked(constraint, morphism, encoding: Encoding) -> ConstrainedMorphism:
    """Escape hatch for oracles; the result is marked and refuses to compose."""
    return ConstrainedMorphism(encoding, constraint, morphism, False)


def _require_certified(*ps: ConstrainedMorphism):
    for p in ps:
        if not p.certified:
            raise UncertifiedPair("operation requires certified pairs")


def _require_same_encoding(a: ConstrainedMorphism, b: ConstrainedMorphism):
    if a.encoding is not b.encoding:
        raise UnsupportedStructure(
            f"cannot mix encodings {a.encoding.name} and {b.encoding.name}"
        )


def _propagate(encoding: Encoding, constraint, morphism) -> ConstrainedMorphism:
    if _DEBUG_RECHECK and not encoding.satisfies(morphism, constraint):
        raise AssertionError(
            f"constraint propagation is unsound for {encoding.name}: "
            f"derived pair fails its own predicate "
            f"(witness: {encoding.witness(morphism, constraint)})"
        )
    return ConstrainedMorphism(encoding, constraint, morphism, True)


def compose(q: ConstrainedMorphism, p: ConstrainedMorphism) -> ConstrainedMorphism:
    """Component-wise composition q∘p (p first); certificate carried by the
    soundness of constraint composition."""
    _require_same_encoding(q, p)
    _require_certified(q, p)
    enc = q.encoding
    constraint = enc.compose_constraint(q.constraint, p.constraint)
    morphism = enc.compose_morphism(q.morphism, p.morphism)
    return _propagate(enc, constraint, morphism)


def tensor(p: ConstrainedMorphism, q: ConstrainedMorphism) -> ConstrainedMorphism:
    _require_same_encoding(p, q)
    _require_certified(p, q)
    enc = p.encoding
    if not enc.supports_tensor:
        raise UnsupportedStructure(f"{enc.name} has no tensor")
    constraint = enc.tensor_constraint(p.constraint, q.constraint)
    morphism = enc.tensor_morphism(p.morphism, q.morphism)
    return _propagate(enc, constraint, morphism)


def dagger(p: ConstrainedMorphism) -> ConstrainedMorphism:
    _require_certified(p)
    enc = p.encoding
    if not enc.supports_dagger:
        raise UnsupportedStructure(f"{enc.name} has no dagger")
    return _propagate(
        enc, enc.dagger_constraint(p.constraint), enc.dagger_morphism(p.morphism)
    )


def relax(p: ConstrainedMorphism, weaker) -> ConstrainedMorphism:
    """Keep the morphism, weaken the constraint; the certificate carries over
    without re-checking (satisfaction is monotone along the order)."""
    _require_certified(p)
    if not p.encoding.constraint_leq(p.constraint, weaker):
        raise NotARelaxation("target constraint is not weaker than the current one")
    return ConstrainedMorphism(p.encoding, weaker, p.morphism, True)


def recheck(p: ConstrainedMorphism) -> bool:
    """From-scratch predicate evaluation, ignoring the certificate."""
    return p.encoding.satisfies(p.morphism, p.constraint)


def _sectorial_encoding(name: str, tensor_c, tensor_m, compact: bool) -> Encoding:
    return Encoding(
        name=name,
        satisfies=lambda m, c: sectorial.check_sectorial(m, c),
        witness=lambda m, c: sectorial.sectorial_witness(m, c),
        compose_constraint=relations.compose,
        compose_morphism=sectorial.compose,
        constraint_leq=relations.leq,
        morphism_summary=lambda m: (
            f"block matrix {m.cod.total_dim}x{m.dom.total_dim}, "
            f"sectors {list(m.dom.labels)} -> {list(m.cod.labels)}"
        ),
        tensor_constraint=tensor_c,
        tensor_morphism=tensor_m,
        dagger_constraint=relations.converse,
        dagger_morphism=sectorial.transpose,
        supports_compact=compact,
    )


SECTORIAL_SUM = _sectorial_encoding(
    "sectorial_sum", relations.tensor_disjoint, sectorial.direct_sum, compact=False
)
SECTORIAL_PROD = _sectorial_encoding(
    "sectorial_prod", relations.tensor_product, sectorial.tensor, compact=True
)

SIGNALLING = Encoding(
    name="signalling",
    satisfies=lambda m, c: signalling.check_signalling(m, c),
    witness=lambda m, c: signalling.signalling_witness(m, c),
    compose_constraint=relations.compose,
    compose_morphism=signalling.compose,
    constraint_leq=relations.leq,
    morphism_summary=lambda m: (
        f"stochastic channel {m.cod.total}x{m.dom.total}, "
        f"factors {list(m.dom.labels)} -> {list(m.cod.labels)}"
    ),
    tensor_constraint=relations.tensor_disjoint,
    tensor_morphism=signalling.tensor,
)

FUNCREL = Encoding(
    name="funcrel",
    satisfies=lambda m, c: funcrel.check_funcrel(m, c),
    witness=lambda m, c: funcrel.funcrel_witness(m, c),
    compose_constraint=relations.compose,
    compose_morphism=funcrel.compose,
    constraint_leq=relations.leq,
    morphism_summary=lambda m: (
        f"function on {m.dom.total} points, "
        f"blocks {list(m.dom.labels)} -> {list(m.cod.labels)}"
    ),
    tensor_constraint=relations.tensor_disjoint,
    tensor_morphism=funcrel.tensor,
)

CSP = Encoding(
    name="csp",
    satisfies=lambda m, c: cspcat.satisfies(m, c),
    witness=lambda m, c: cspcat.violation_witness(m, c),
    compose_constraint=cspcat.compose_csp,
    compose_morphism=lambda g, f: tuple(g[v] for v in f),
    constraint_leq=cspcat.csp_leq,
    morphism_summary=lambda m: f"function {list(m)}",
)


def monoid_encoding(
    monoid: monoids.FiniteMonoid, labeling: monoids.MonoidLabeling
) -> Encoding:
    """Encoding for one monoid and labeling; morphisms are element indices.

    Every pair in the relation is one more commutation condition, so the
    constraint order is reversed here: relaxing means REMOVING pairs.
    Pairs only compose with pairs built against the same encoding instance,
    so build the encoding once and share it.
    """
    return Encoding(
        name="monoid",
        satisfies=lambda m, c: monoids.check_monoid_constraint(monoid, labeling, m, c),
        witness=lambda m, c: monoids.monoid_witness(monoid, labeling, m, c),
        compose_constraint=relations.compose,
        compose_morphism=monoid.mul,
        constraint_leq=lambda stronger, weaker: relations.leq(weaker, stronger),
        morphism_summary=lambda m: f"monoid element {m}",
        params={"monoid": monoid, "labeling": labeling},
    )


_STATIC_ENCODINGS = {
    e.name: e for e in (SECTORIAL_SUM, SECTORIAL_PROD, SIGNALLING, FUNCREL, CSP)
}


def get_encoding(name: str, **params) -> Encoding:
    if name == "monoid":
        try:
            return monoid_encoding(params["monoid"], params["labeling"])
        except KeyError:
            raise UnsupportedStructure(
                "monoid encoding needs 'monoid' and 'labeling' parameters"
            ) from None
    try:
        return _STATIC_ENCODINGS[name]
    except KeyError:
        raise UnsupportedStructure(f"unknown encoding {name!r}") from None


def encoding_names() -> list[str]:
    return sorted(_STATIC_ENCODINGS) + ["monoid"]
