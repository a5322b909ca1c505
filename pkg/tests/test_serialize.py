import json
import random
from fractions import Fraction

import pytest

from concheck import monoids, serialize
from concheck.errors import StochasticityError
from concheck.oracles import (
    random_block_matrix,
    random_csp,
    random_function,
    random_partition,
    random_relation,
    random_sector_space,
)
from concheck.rational import format_rational, parse_rational
from concheck.relations import relation
from concheck.signalling import parity_counterexample


class TestRational:
    def test_parse_forms(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-6/8") == Fraction(-3, 4)
        assert parse_rational("5") == Fraction(5)
        assert parse_rational(" 0/1 ") == 0

    def test_canonical_format(self):
        assert format_rational(Fraction(1, 2)) == "1/2"
        assert format_rational(Fraction(0)) == "0/1"
        assert format_rational(Fraction(-4, 6)) == "-2/3"

    def test_rejects_garbage(self):
        for bad in ("a/b", "1/0", "", "1.5", None):
            with pytest.raises(ValueError):
                parse_rational(bad)


class TestRelationFormat:
    def test_exact_shape(self):
        rel = relation(["a1", "a2"], ["b1"], {(0, 0), (1, 0)})
        obj = serialize.relation_to_obj(rel)
        assert obj == {"src": ["a1", "a2"], "dst": ["b1"], "pairs": [[0, 0], [1, 0]]}

    def test_bit_exact_roundtrip(self):
        rng = random.Random(0)
        for _ in range(100):
            rel = random_relation(
                rng,
                [f"a{i}" for i in range(rng.randint(1, 4))],
                [f"b{i}" for i in range(rng.randint(1, 4))],
            )
            text = serialize.dumps(rel)
            again = serialize.loads(text)
            assert again == rel
            assert serialize.dumps(again) == text

    def test_kind_tag_tolerated(self):
        obj = {"kind": "relation", "src": ["a"], "dst": ["b"], "pairs": [[0, 0]]}
        assert serialize.load_any(obj) == relation(["a"], ["b"], {(0, 0)})


class TestObjectRoundtrips:
    def test_block_matrix(self):
        rng = random.Random(1)
        for _ in range(50):
            f = random_block_matrix(
                rng, random_sector_space(rng, "a"), random_sector_space(rng, "b")
            )
            assert serialize.loads(serialize.dumps(f)) == f

    def test_channel(self):
        chan = parity_counterexample()
        text = serialize.dumps(chan)
        assert serialize.loads(text) == chan
        assert '"1/2"' in text

    def test_channel_loader_rejects_non_stochastic(self):
        obj = {
            "kind": "channel",
            "dom": [["A", 2]],
            "cod": [["B", 2]],
            "matrix": [["1/2", "0/1"], ["1/3", "1/1"]],
        }
        with pytest.raises(StochasticityError):
            serialize.load_any(obj)

    def test_function(self):
        rng = random.Random(2)
        for _ in range(50):
            f = random_function(
                rng, random_partition(rng, "a"), random_partition(rng, "b")
            )
            assert serialize.loads(serialize.dumps(f)) == f

    def test_monoid_and_labeling(self):
        monoid = monoids.FiniteMonoid(((0, 1), (1, 0)), 0)
        assert serialize.loads(serialize.dumps(monoid)) == monoid
        lab = monoids.MonoidLabeling(("s0", "s1"), (1, 0))
        assert serialize.loads(serialize.dumps(lab)) == lab

    def test_csp(self):
        rng = random.Random(3)
        for _ in range(50):
            p = random_csp(rng, rng.randint(1, 3), rng.randint(1, 3))
            assert serialize.loads(serialize.dumps(p)) == p

    def test_monoid_loader_checks_associativity(self):
        obj = {"kind": "monoid", "size": 3, "identity": 0,
               "table": [0, 1, 2, 1, 2, 2, 2, 2, 1]}
        with pytest.raises(ValueError, match="associative"):
            serialize.load_any(obj)


class TestDispatch:
    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown kind"):
            serialize.load_any({"kind": "mystery"})

    def test_missing_kind(self):
        with pytest.raises(ValueError, match="kind"):
            serialize.load_any({"rows": []})

    def test_not_an_object(self):
        with pytest.raises(ValueError):
            serialize.load_any([1, 2, 3])

    def test_pretty_dumps_is_valid_json(self):
        rel = relation(["a"], ["b"], {(0, 0)})
        assert json.loads(serialize.dumps(rel, pretty=True)) == serialize.relation_to_obj(rel)
