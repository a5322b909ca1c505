"""One textual container format for every object kind.

Each object is a JSON dict with a "kind" tag; rationals travel as "p/q"
strings so exactness survives serialization. Relations are the one
exception: they are accepted and emitted in the bare
{"src": [...], "dst": [...], "pairs": [[i, j], ...]} form (a "kind" tag is
tolerated on input), with zero-based indices and pairs sorted row-major so
round trips are bit-exact.
"""

from __future__ import annotations

import json

from .cspcat import CSPProblem, csp_constraint, csp_problem
from .funcrel import PartitionedFinSet, PartitionedFunction
from .monoids import FiniteMonoid, MonoidLabeling
from .rational import format_rational, parse_rational
from .relations import FiniteRelation, relation
from .sectorial import BlockMatrix, SectorSpace
from .signalling import FactorSpace, StochChannel


def _expect(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise ValueError(f"{what}: missing field {key!r}")
    return obj[key]


def _labelled_sizes(raw, what) -> tuple[tuple[str, int], ...]:
    if not isinstance(raw, list):
        raise ValueError(f"{what}: expected a list of [label, size] pairs")
    out = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ValueError(f"{what}: bad [label, size] pair {item!r}")
        out.append((str(item[0]), int(item[1])))
    return tuple(out)


def relation_to_obj(rel: FiniteRelation) -> dict:
    return {
        "src": list(rel.src),
        "dst": list(rel.dst),
        "pairs": [list(p) for p in rel.sorted_pairs],
    }


def relation_from_obj(obj) -> FiniteRelation:
    src = _expect(obj, "src", "relation")
    dst = _expect(obj, "dst", "relation")
    pairs = _expect(obj, "pairs", "relation")
    return relation(
        [str(s) for s in src],
        [str(s) for s in dst],
        [(int(i), int(j)) for i, j in pairs],
    )


def block_matrix_to_obj(f: BlockMatrix) -> dict:
    return {
        "kind": "block_matrix",
        "dom": [list(s) for s in f.dom.sectors],
        "cod": [list(s) for s in f.cod.sectors],
        "entries": [[format_rational(e) for e in row] for row in f.entries],
    }


def block_matrix_from_obj(obj) -> BlockMatrix:
    dom = SectorSpace(_labelled_sizes(_expect(obj, "dom", "block_matrix"), "dom sectors"))
    cod = SectorSpace(_labelled_sizes(_expect(obj, "cod", "block_matrix"), "cod sectors"))
    entries = [
        [parse_rational(e) for e in row]
        for row in _expect(obj, "entries", "block_matrix")
    ]
    return BlockMatrix(dom, cod, tuple(tuple(row) for row in entries))


def channel_to_obj(f: StochChannel) -> dict:
    return {
        "kind": "channel",
        "dom": [list(s) for s in f.dom.factors],
        "cod": [list(s) for s in f.cod.factors],
        "matrix": [[format_rational(e) for e in row] for row in f.matrix],
    }


def channel_from_obj(obj) -> StochChannel:
    dom = FactorSpace(_labelled_sizes(_expect(obj, "dom", "channel"), "dom factors"))
    cod = FactorSpace(_labelled_sizes(_expect(obj, "cod", "channel"), "cod factors"))
    matrix = [
        [parse_rational(e) for e in row] for row in _expect(obj, "matrix", "channel")
    ]
    # The StochChannel constructor enforces exact column-stochasticity.
    return StochChannel(dom, cod, tuple(tuple(row) for row in matrix))


def function_to_obj(f: PartitionedFunction) -> dict:
    return {
        "kind": "function",
        "dom": [list(b) for b in f.dom.blocks],
        "cod": [list(b) for b in f.cod.blocks],
        "map": list(f.map),
    }


def function_from_obj(obj) -> PartitionedFunction:
    dom = PartitionedFinSet(_labelled_sizes(_expect(obj, "dom", "function"), "dom blocks"))
    cod = PartitionedFinSet(_labelled_sizes(_expect(obj, "cod", "function"), "cod blocks"))
    images = [int(v) for v in _expect(obj, "map", "function")]
    return PartitionedFunction(dom, cod, tuple(images))


def monoid_to_obj(m: FiniteMonoid) -> dict:
    return {
        "kind": "monoid",
        "size": m.size,
        "table": [v for row in m.table for v in row],
        "identity": m.identity,
    }


def monoid_from_obj(obj) -> FiniteMonoid:
    n = int(_expect(obj, "size", "monoid"))
    flat = [int(v) for v in _expect(obj, "table", "monoid")]
    if len(flat) != n * n:
        raise ValueError(f"monoid: table has {len(flat)} entries, expected {n * n}")
    table = tuple(tuple(flat[r * n : (r + 1) * n]) for r in range(n))
    return FiniteMonoid(table, int(_expect(obj, "identity", "monoid")))


def labeling_to_obj(lab: MonoidLabeling) -> dict:
    return {
        "kind": "monoid_labeling",
        "labels": list(lab.labels),
        "assignment": list(lab.assignment),
    }


def labeling_from_obj(obj) -> MonoidLabeling:
    return MonoidLabeling(
        tuple(str(s) for s in _expect(obj, "labels", "monoid_labeling")),
        tuple(int(v) for v in _expect(obj, "assignment", "monoid_labeling")),
    )


def csp_to_obj(problem: CSPProblem) -> dict:
    constraints = sorted(
        problem.constraints, key=lambda c: (c.arity, c.scope, sorted(c.allowed))
    )
    return {
        "kind": "csp",
        "dom": problem.dom_size,
        "cod": problem.cod_size,
        "constraints": [
            {
                "arity": c.arity,
                "scope": list(c.scope),
                "allowed": [list(t) for t in sorted(c.allowed)],
            }
            for c in constraints
        ],
    }


def csp_from_obj(obj) -> CSPProblem:
    constraints = []
    for raw in _expect(obj, "constraints", "csp"):
        constraints.append(
            csp_constraint(
                int(_expect(raw, "arity", "csp constraint")),
                [int(v) for v in _expect(raw, "scope", "csp constraint")],
                [tuple(int(v) for v in t) for t in _expect(raw, "allowed", "csp constraint")],
            )
        )
    return csp_problem(
        int(_expect(obj, "dom", "csp")), int(_expect(obj, "cod", "csp")), constraints
    )


_LOADERS = {
    "relation": relation_from_obj,
    "block_matrix": block_matrix_from_obj,
    "channel": channel_from_obj,
    "function": function_from_obj,
    "monoid": monoid_from_obj,
    "monoid_labeling": labeling_from_obj,
    "csp": csp_from_obj,
}

_WRITERS = {
    FiniteRelation: relation_to_obj,
    BlockMatrix: block_matrix_to_obj,
    StochChannel: channel_to_obj,
    PartitionedFunction: function_to_obj,
    FiniteMonoid: monoid_to_obj,
    MonoidLabeling: labeling_to_obj,
    CSPProblem: csp_to_obj,
}


def load_any(obj):
    """Dispatch on the "kind" tag; bare relations are recognized by shape."""
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object")
    kind = obj.get("kind")
    if kind is None:
        if {"src", "dst", "pairs"} <= obj.keys():
            kind = "relation"
        else:
            raise ValueError("object has no 'kind' tag")
    try:
        loader = _LOADERS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None
    return loader(obj)


def dump_any(value) -> dict:
    try:
        writer = _WRITERS[type(value)]
    except KeyError:
        raise ValueError(f"cannot serialize {type(value).__name__}") from None
    return writer(value)


def dumps(value, pretty: bool = False) -> str:
    obj = dump_any(value) if not isinstance(value, dict) else value
    if pretty:
        return json.dumps(obj, indent=2)
    return json.dumps(obj, separators=(",", ":"))


def loads(text: str):
    return load_any(json.loads(text))
