import pytest

from concheck import circuits, relations as R, serialize
from concheck.circuits import CircuitError
from concheck.relations import relation
from concheck.signalling import parity_counterexample


def identity_circuit():
    return {
        "kind": "circuit",
        "encoding": "sectorial_sum",
        "declarations": {
            "idr": {"src": ["a"], "dst": ["a"], "pairs": [[0, 0]]},
            "idm": {
                "kind": "block_matrix",
                "dom": [["a", 2]],
                "cod": [["a", 2]],
                "entries": [["1/1", "0/1"], ["0/1", "1/1"]],
            },
            "p": {"kind": "pair", "constraint": "idr", "morphism": "idm"},
        },
        "circuit": {"op": "ref", "name": "p"},
    }


def sectorial_seq_circuit():
    return {
        "kind": "circuit",
        "encoding": "sectorial_sum",
        "declarations": {
            "t1": {"src": ["m"], "dst": ["p", "q"], "pairs": [[0, 0], [0, 1]]},
            "t2": {"src": ["p", "q"], "dst": ["m"], "pairs": [[0, 0]]},
            "column": {
                "kind": "block_matrix",
                "dom": [["m", 1]],
                "cod": [["p", 1], ["q", 1]],
                "entries": [["1/1"], ["2/1"]],
            },
            "proj": {
                "kind": "block_matrix",
                "dom": [["p", 1], ["q", 1]],
                "cod": [["m", 1]],
                "entries": [["3/1", "0/1"]],
            },
            "p1": {"kind": "pair", "constraint": "t1", "morphism": "column"},
            "p2": {"kind": "pair", "constraint": "t2", "morphism": "proj"},
        },
        "circuit": {"op": "seq", "steps": [{"op": "ref", "name": "p1"}, {"op": "ref", "name": "p2"}]},
    }


def parity_violation_circuit():
    chan = parity_counterexample()
    gens = R.meet_generators(chan.dom.labels, chan.cod.labels)
    met = R.meet(gens[0], gens[1])
    return {
        "kind": "circuit",
        "encoding": "signalling",
        "declarations": {
            "met": serialize.relation_to_obj(met),
            "parity": serialize.channel_to_obj(chan),
            "bad": {"kind": "pair", "constraint": "met", "morphism": "parity"},
        },
        "circuit": {"op": "seq", "steps": [{"op": "ref", "name": "bad"}]},
    }


class TestCheck:
    def test_identity_pair_ok(self):
        report = circuits.check_circuit(identity_circuit())
        assert report["status"] == "ok"
        assert report["constraint"] == {"src": ["a"], "dst": ["a"], "pairs": [[0, 0]]}
        assert "2x2" in report["morphism"]

    def test_seq_constraint_matches_relation_compose(self):
        spec = sectorial_seq_circuit()
        report = circuits.check_circuit(spec)
        assert report["status"] == "ok"
        t1 = serialize.relation_from_obj(spec["declarations"]["t1"])
        t2 = serialize.relation_from_obj(spec["declarations"]["t2"])
        assert report["constraint"] == serialize.relation_to_obj(R.compose(t2, t1))

    def test_parity_violation_names_node(self):
        report = circuits.check_circuit(parity_violation_circuit())
        assert report["status"] == "violation"
        assert report["witness"]["node"] == "circuit.seq[0]"
        assert report["witness"]["pair"] == "bad"
        assert report["witness"]["detail"]["input_factor"] == "A"

    def test_parity_satisfied_on_generator(self):
        spec = parity_violation_circuit()
        chan = parity_counterexample()
        sigma1 = R.meet_generators(chan.dom.labels, chan.cod.labels)[0]
        spec["declarations"]["met"] = serialize.relation_to_obj(sigma1)
        report = circuits.check_circuit(spec)
        assert report["status"] == "ok"


class TestTreeOps:
    def test_par_and_relax(self):
        spec = identity_circuit()
        spec["declarations"]["other"] = {"src": ["b"], "dst": ["b"], "pairs": [[0, 0]]}
        spec["declarations"]["otherm"] = {
            "kind": "block_matrix",
            "dom": [["b", 1]],
            "cod": [["b", 1]],
            "entries": [["1/1"]],
        }
        spec["declarations"]["q"] = {
            "kind": "pair", "constraint": "other", "morphism": "otherm",
        }
        spec["declarations"]["goal"] = {
            "src": ["a", "b"], "dst": ["a", "b"],
            "pairs": [[0, 0], [0, 1], [1, 1]],
        }
        spec["circuit"] = {
            "op": "relax",
            "arg": {"op": "par", "factors": [
                {"op": "ref", "name": "p"}, {"op": "ref", "name": "q"},
            ]},
            "to": "goal",
        }
        report = circuits.check_circuit(spec)
        assert report["status"] == "ok"
        assert report["constraint"]["pairs"] == [[0, 0], [0, 1], [1, 1]]

    def test_dagger(self):
        spec = sectorial_seq_circuit()
        spec["circuit"] = {"op": "dagger", "arg": {"op": "ref", "name": "p1"}}
        report = circuits.check_circuit(spec)
        assert report["status"] == "ok"
        assert report["constraint"]["src"] == ["p", "q"]

    def test_monoid_circuit(self):
        spec = {
            "kind": "circuit",
            "encoding": {"name": "monoid", "monoid": "M", "labeling": "L"},
            "declarations": {
                "M": {"kind": "monoid", "size": 2, "table": [0, 1, 1, 1], "identity": 0},
                "L": {"kind": "monoid_labeling", "labels": ["s0", "s1"], "assignment": [1, 0]},
                "tau": {"src": ["s0", "s1"], "dst": ["s0", "s1"], "pairs": [[0, 1]]},
                "z": {"kind": "monoid_element", "element": 1},
                "p": {"kind": "pair", "constraint": "tau", "morphism": "z"},
            },
            "circuit": {"op": "seq", "steps": [{"op": "ref", "name": "p"}, {"op": "ref", "name": "p"}]},
        }
        report = circuits.check_circuit(spec)
        assert report["status"] == "ok"
        assert report["morphism"] == "monoid element 1"

    def test_csp_circuit(self):
        spec = {
            "kind": "circuit",
            "encoding": "csp",
            "declarations": {
                "c1": {"kind": "csp", "dom": 1, "cod": 2,
                       "constraints": [{"arity": 1, "scope": [0], "allowed": [[0], [1]]}]},
                "f": {"kind": "function", "dom": [["x", 1]], "cod": [["y", 2]], "map": [0]},
                "p": {"kind": "pair", "constraint": "c1", "morphism": "f"},
            },
            "circuit": {"op": "ref", "name": "p"},
        }
        report = circuits.check_circuit(spec)
        assert report["status"] == "ok"
        assert report["constraint"]["kind"] == "csp"


class TestTypeErrors:
    def test_unknown_pair_name(self):
        spec = identity_circuit()
        spec["circuit"] = {"op": "ref", "name": "nope"}
        with pytest.raises(CircuitError, match="unknown pair"):
            circuits.check_circuit(spec)

    def test_seq_boundary_mismatch(self):
        spec = identity_circuit()
        spec["declarations"]["wide"] = {"src": ["w"], "dst": ["w"], "pairs": []}
        spec["declarations"]["widem"] = {
            "kind": "block_matrix", "dom": [["w", 3]], "cod": [["w", 3]],
            "entries": [["0/1"] * 3 for _ in range(3)],
        }
        spec["declarations"]["q"] = {"kind": "pair", "constraint": "wide", "morphism": "widem"}
        spec["circuit"] = {
            "op": "seq",
            "steps": [{"op": "ref", "name": "p"}, {"op": "ref", "name": "q"}],
        }
        with pytest.raises(CircuitError, match=r"seq\[1\]"):
            circuits.check_circuit(spec)

    def test_relax_to_stronger_fails(self):
        spec = identity_circuit()
        spec["declarations"]["nothing"] = {"src": ["a"], "dst": ["a"], "pairs": []}
        spec["circuit"] = {"op": "relax", "arg": {"op": "ref", "name": "p"}, "to": "nothing"}
        from concheck.errors import NotARelaxation

        with pytest.raises(NotARelaxation):
            circuits.check_circuit(spec)

    def test_par_unsupported_for_csp(self):
        spec = {
            "kind": "circuit",
            "encoding": "csp",
            "declarations": {
                "c1": {"kind": "csp", "dom": 1, "cod": 1, "constraints": []},
                "f": {"kind": "function", "dom": [["x", 1]], "cod": [["y", 1]], "map": [0]},
                "p": {"kind": "pair", "constraint": "c1", "morphism": "f"},
            },
            "circuit": {"op": "par", "factors": [{"op": "ref", "name": "p"}] * 2},
        }
        with pytest.raises(CircuitError, match="no 'par'"):
            circuits.check_circuit(spec)

    def test_undeclared_reference_in_pair(self):
        spec = identity_circuit()
        spec["declarations"]["p"] = {"kind": "pair", "constraint": "idr", "morphism": "ghost"}
        with pytest.raises(CircuitError, match="undeclared"):
            circuits.check_circuit(spec)

    def test_wrong_kind_document(self):
        with pytest.raises(CircuitError):
            circuits.check_circuit({"kind": "relation"})

    def test_pair_constraint_kind_mismatch(self):
        spec = identity_circuit()
        spec["declarations"]["p"] = {"kind": "pair", "constraint": "idm", "morphism": "idm"}
        with pytest.raises(CircuitError, match="not a FiniteRelation"):
            circuits.check_circuit(spec)
