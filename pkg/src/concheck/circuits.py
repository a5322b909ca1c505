"""Circuit descriptions: declared objects plus a composition tree.

A circuit file declares named relations/morphisms/pairs and an expression
tree over the pairs with nodes `seq` (left to right), `par`, `dagger` and
`relax`. The tree is boundary-checked before any pair is verified, so type
errors surface with a node path and no partial evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import constrained, serialize
from .cspcat import CSPProblem
from .errors import BoundaryMismatch, ConcheckError, UnsatisfiedConstraint
from .funcrel import PartitionedFunction
from .monoids import FiniteMonoid, MonoidLabeling
from .relations import FiniteRelation
from .sectorial import BlockMatrix
from .signalling import StochChannel


class CircuitError(ConcheckError):
    """Malformed circuit description (parse or type-check failure)."""


_MORPHISM_TYPES = {
    "sectorial_sum": BlockMatrix,
    "sectorial_prod": BlockMatrix,
    "signalling": StochChannel,
    "funcrel": PartitionedFunction,
    "monoid": int,
    "csp": tuple,
}


@dataclass(frozen=True)
class DeclaredPair:
    constraint_name: str
    morphism_name: str


@dataclass
class CircuitDescription:
    encoding: constrained.Encoding
    objects: dict[str, Any]
    pairs: dict[str, DeclaredPair]
    tree: dict


def parse_circuit(obj: dict) -> CircuitDescription:
    if not isinstance(obj, dict) or obj.get("kind") != "circuit":
        raise CircuitError("expected an object with kind 'circuit'")
    objects: dict[str, Any] = {}
    pairs: dict[str, DeclaredPair] = {}
    declarations = obj.get("declarations")
    if not isinstance(declarations, dict):
        raise CircuitError("missing 'declarations' object")
    for name, raw in declarations.items():
        if not isinstance(raw, dict):
            raise CircuitError(f"declaration {name!r} is not an object")
        if raw.get("kind") == "pair":
            try:
                pairs[name] = DeclaredPair(raw["constraint"], raw["morphism"])
            except KeyError as exc:
                raise CircuitError(f"pair {name!r} is missing {exc}") from None
        elif raw.get("kind") == "monoid_element":
            objects[name] = _monoid_element(raw, name)
        else:
            try:
                objects[name] = serialize.load_any(raw)
            except ValueError as exc:
                raise CircuitError(f"declaration {name!r}: {exc}") from None
    encoding = _resolve_encoding(obj.get("encoding"), objects)
    for name, decl in pairs.items():
        _check_pair_decl(name, decl, objects, encoding)
    tree = obj.get("circuit")
    if not isinstance(tree, dict):
        raise CircuitError("missing 'circuit' tree")
    return CircuitDescription(encoding, objects, pairs, tree)


def _monoid_element(raw: dict, name: str) -> int:
    try:
        return int(raw["element"])
    except KeyError:
        raise CircuitError(f"monoid_element {name!r} needs an 'element' index") from None


def _resolve_encoding(spec, objects) -> constrained.Encoding:
    if isinstance(spec, str):
        if spec == "monoid":
            raise CircuitError(
                "the monoid encoding must name its monoid and labeling, e.g. "
                '{"name": "monoid", "monoid": "M", "labeling": "L"}'
            )
        try:
            return constrained.get_encoding(spec)
        except ConcheckError as exc:
            raise CircuitError(str(exc)) from None
    if isinstance(spec, dict) and spec.get("name") == "monoid":
        try:
            monoid = objects[spec["monoid"]]
            labeling = objects[spec["labeling"]]
        except KeyError as exc:
            raise CircuitError(f"encoding references undeclared {exc}") from None
        if not isinstance(monoid, FiniteMonoid) or not isinstance(labeling, MonoidLabeling):
            raise CircuitError("monoid encoding parameters have the wrong kinds")
        return constrained.monoid_encoding(monoid, labeling)
    raise CircuitError(f"unrecognized encoding {spec!r}")


def _check_pair_decl(name, decl, objects, encoding):
    for ref in (decl.constraint_name, decl.morphism_name):
        if ref not in objects:
            raise CircuitError(f"pair {name!r} references undeclared {ref!r}")
    constraint = objects[decl.constraint_name]
    want = CSPProblem if encoding.name == "csp" else FiniteRelation
    if not isinstance(constraint, want):
        raise CircuitError(
            f"pair {name!r}: constraint {decl.constraint_name!r} is not a {want.__name__}"
        )
    morphism = objects[decl.morphism_name]
    mtype = _MORPHISM_TYPES[encoding.name]
    if mtype is tuple:
        if not isinstance(morphism, PartitionedFunction):
            raise CircuitError(f"pair {name!r}: csp morphisms are declared as functions")
    elif not isinstance(morphism, mtype):
        raise CircuitError(
            f"pair {name!r}: morphism {decl.morphism_name!r} is not a {mtype.__name__}"
        )


def _pair_boundary(desc: CircuitDescription, name: str):
    decl = desc.pairs[name]
    m = desc.objects[decl.morphism_name]
    enc = desc.encoding.name
    if enc in ("sectorial_sum", "sectorial_prod"):
        return (m.dom, m.cod)
    if enc == "signalling":
        return (m.dom, m.cod)
    if enc == "funcrel":
        return (m.dom, m.cod)
    if enc == "csp":
        return (m.dom.total, m.cod.total)
    if enc == "monoid":
        labels = desc.encoding.params["labeling"].labels
        return (labels, labels)
    raise AssertionError(enc)


def _tensor_boundary(enc: str, a: tuple, b: tuple) -> tuple:
    from .funcrel import PartitionedFinSet as PSet
    from .sectorial import product_space, sum_space
    from .signalling import FactorSpace as FSpace

    if enc == "sectorial_sum":
        return (sum_space(a[0], b[0]), sum_space(a[1], b[1]))
    if enc == "sectorial_prod":
        return (product_space(a[0], b[0]), product_space(a[1], b[1]))
    if enc == "signalling":
        return (FSpace(a[0].factors + b[0].factors), FSpace(a[1].factors + b[1].factors))
    if enc == "funcrel":
        return (PSet(a[0].blocks + b[0].blocks), PSet(a[1].blocks + b[1].blocks))
    raise AssertionError(enc)


def type_check(desc: CircuitDescription) -> tuple:
    """Walk the tree and return its (dom, cod) boundary; raise CircuitError
    with a node path on any mismatch."""
    return _check_node(desc, desc.tree, "circuit")


def _check_node(desc, node, path) -> tuple:
    if not isinstance(node, dict) or "op" not in node:
        raise CircuitError(f"{path}: node must be an object with an 'op'")
    op = node["op"]
    if op == "ref":
        name = node.get("name")
        if name not in desc.pairs:
            raise CircuitError(f"{path}: unknown pair {name!r}")
        return _pair_boundary(desc, name)
    if op == "seq":
        steps = node.get("steps")
        if not isinstance(steps, list) or not steps:
            raise CircuitError(f"{path}: 'seq' needs a non-empty step list")
        bounds = [
            _check_node(desc, s, f"{path}.seq[{i}]") for i, s in enumerate(steps)
        ]
        for i in range(len(bounds) - 1):
            if bounds[i][1] != bounds[i + 1][0]:
                raise CircuitError(
                    f"{path}.seq[{i + 1}]: boundary mismatch with previous step"
                )
        return (bounds[0][0], bounds[-1][1])
    if op == "par":
        factors = node.get("factors")
        if not isinstance(factors, list) or not factors:
            raise CircuitError(f"{path}: 'par' needs a non-empty factor list")
        if not desc.encoding.supports_tensor:
            raise CircuitError(f"{path}: encoding {desc.encoding.name} has no 'par'")
        bound = None
        for i, f in enumerate(factors):
            b = _check_node(desc, f, f"{path}.par[{i}]")
            try:
                bound = b if bound is None else _tensor_boundary(desc.encoding.name, bound, b)
            except ConcheckError as exc:
                raise CircuitError(f"{path}.par[{i}]: {exc}") from None
        return bound
    if op == "dagger":
        if not desc.encoding.supports_dagger:
            raise CircuitError(f"{path}: encoding {desc.encoding.name} has no 'dagger'")
        dom, cod = _check_node(desc, node.get("arg"), f"{path}.dagger")
        return (cod, dom)
    if op == "relax":
        target = node.get("to")
        if target not in desc.objects or not isinstance(
            desc.objects[target], (FiniteRelation, CSPProblem)
        ):
            raise CircuitError(f"{path}: relax target {target!r} is not declared")
        return _check_node(desc, node.get("arg"), f"{path}.relax")
    raise CircuitError(f"{path}: unknown op {op!r}")


def evaluate(desc: CircuitDescription) -> constrained.ConstrainedMorphism:
    """Verify every referenced pair and fold the tree; failures carry the
    node path in the witness."""
    type_check(desc)
    cache: dict[str, constrained.ConstrainedMorphism] = {}
    return _eval_node(desc, desc.tree, "circuit", cache)


def _eval_node(desc, node, path, cache):
    op = node["op"]
    if op == "ref":
        name = node["name"]
        if name not in cache:
            decl = desc.pairs[name]
            constraint = desc.objects[decl.constraint_name]
            morphism = desc.objects[decl.morphism_name]
            if desc.encoding.name == "csp" and isinstance(morphism, PartitionedFunction):
                morphism = morphism.map
            try:
                cache[name] = constrained.pair(constraint, morphism, desc.encoding)
            except UnsatisfiedConstraint as exc:
                raise UnsatisfiedConstraint(
                    f"{path}: pair {name!r} fails its constraint",
                    witness={"node": path, "pair": name, "detail": exc.witness},
                ) from None
        return cache[name]
    if op == "seq":
        acc = None
        for i, step in enumerate(node["steps"]):
            value = _eval_node(desc, step, f"{path}.seq[{i}]", cache)
            try:
                acc = value if acc is None else constrained.compose(value, acc)
            except BoundaryMismatch as exc:
                raise CircuitError(f"{path}.seq[{i}]: {exc}") from None
        return acc
    if op == "par":
        acc = None
        for i, factor in enumerate(node["factors"]):
            value = _eval_node(desc, factor, f"{path}.par[{i}]", cache)
            acc = value if acc is None else constrained.tensor(acc, value)
        return acc
    if op == "dagger":
        return constrained.dagger(_eval_node(desc, node["arg"], f"{path}.dagger", cache))
    if op == "relax":
        inner = _eval_node(desc, node["arg"], f"{path}.relax", cache)
        return constrained.relax(inner, desc.objects[node["to"]])
    raise AssertionError(op)


def check_circuit(obj: dict) -> dict:
    """Full pipeline behind `cmd check`: parse, type-check, evaluate.

    Returns a report dict; a constraint violation is a report with status
    "violation", not an exception (input errors still raise).
    """
    desc = parse_circuit(obj)
    try:
        result = evaluate(desc)
    except UnsatisfiedConstraint as exc:
        return {
            "status": "violation",
            "encoding": desc.encoding.name,
            "witness": exc.witness,
        }
    constraint = result.constraint
    serialized = (
        serialize.csp_to_obj(constraint)
        if isinstance(constraint, CSPProblem)
        else serialize.relation_to_obj(constraint)
    )
    return {
        "status": "ok",
        "encoding": desc.encoding.name,
        "constraint": serialized,
        "morphism": desc.encoding.morphism_summary(result.morphism),
    }
