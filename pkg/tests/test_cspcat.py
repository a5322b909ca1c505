import random
from itertools import product

import pytest

from concheck import cspcat as C
from concheck.errors import BoundaryMismatch
from concheck.oracles import random_csp


def problem(dom, cod, *cons):
    return C.csp_problem(dom, cod, [C.csp_constraint(*c) for c in cons])


class TestSatisfies:
    def test_empty_problem(self):
        p = problem(2, 2)
        for f in C.all_functions(2, 2):
            assert C.satisfies(f, p)

    def test_allowed_everything(self):
        p = problem(2, 2, (2, (0, 1), list(product(range(2), repeat=2))))
        for f in C.all_functions(2, 2):
            assert C.satisfies(f, p)

    def test_difference_constraint_selects_bijections(self):
        p = problem(2, 2, (2, (0, 1), [(0, 1), (1, 0)]))
        sols = C.satisfying_functions(p)
        assert sols == [(0, 1), (1, 0)]

    def test_scope_with_repeats(self):
        p = problem(2, 3, (2, (0, 0), [(1, 1)]))
        assert C.satisfying_functions(p) == [(1, 0), (1, 1), (1, 2)]

    def test_witness(self):
        p = problem(2, 2, (1, (0,), [(1,)]))
        assert C.violation_witness((0, 0), p) == {"scope": (0,), "image": (0,)}

    def test_range_errors(self):
        p = problem(2, 2)
        with pytest.raises(IndexError):
            C.satisfies((0, 5), p)
        with pytest.raises(ValueError):
            C.satisfies((0,), p)


class TestCompose:
    def test_worked_example(self):
        # dom {x}, mid {a,b}, cod {p}: both branches covered -> composite
        c1 = problem(1, 2, (1, (0,), [(0,), (1,)]))
        c2 = problem(2, 1, (1, (0,), [(0,)]), (1, (1,), [(0,)]))
        out = C.compose_csp(c2, c1)
        assert out.constraints == frozenset(
            {C.csp_constraint(1, (0,), [(0,)])}
        )

    def test_uncovered_branch_gives_nothing(self):
        c1 = problem(1, 2, (1, (0,), [(0,), (1,)]))
        c2 = problem(2, 1, (1, (0,), [(0,)]))
        assert C.compose_csp(c2, c1).constraints == frozenset()

    def test_total_problem_degrades_bodies(self):
        full = list(product(range(2), repeat=1))
        c1 = problem(2, 2, (1, (0,), [(0,)]), (1, (1,), [(0,), (1,)]))
        c2 = problem(2, 2, (1, (0,), full), (1, (1,), full))
        out = C.compose_csp(c2, c1)
        assert out.constraints == frozenset(
            {
                C.csp_constraint(1, (0,), full),
                C.csp_constraint(1, (1,), full),
            }
        )

    def test_boundary_mismatch(self):
        with pytest.raises(BoundaryMismatch):
            C.compose_csp(problem(3, 2), problem(2, 2))

    def test_empty_body_composes_with_everything(self):
        # a never-satisfiable instance covers every candidate body vacuously
        c1 = problem(1, 2, (1, (0,), []))
        c2 = problem(2, 2, (1, (0,), [(1,)]))
        out = C.compose_csp(c2, c1)
        assert C.csp_constraint(1, (0,), [(1,)]) in out.constraints


class TestLaxity:
    def test_randomized(self):
        rng = random.Random(0)
        for _ in range(300):
            nv, nvp, nvpp = (rng.randint(1, 3) for _ in range(3))
            c1 = random_csp(rng, nv, nvp)
            c2 = random_csp(rng, nvp, nvpp)
            composed = C.compose_csp(c2, c1)
            for f in C.satisfying_functions(c1):
                for g in C.satisfying_functions(c2):
                    h = tuple(g[v] for v in f)
                    assert C.satisfies(h, composed)

    def test_monotone_in_extra_constraints(self):
        rng = random.Random(1)
        for _ in range(200):
            nv, nvp, nvpp = (rng.randint(1, 3) for _ in range(3))
            c1 = random_csp(rng, nv, nvp)
            c2 = random_csp(rng, nvp, nvpp)
            extra = random_csp(rng, nv, nvp, max_constraints=1)
            bigger = C.csp_problem(
                nv, nvp, c1.constraints | extra.constraints
            )
            assert C.csp_leq(bigger, c1)
            composed_small = C.compose_csp(c2, c1)
            composed_big = C.compose_csp(c2, bigger)
            # composites only grow, and survivors still solve them
            assert composed_small.constraints <= composed_big.constraints
            for f in C.satisfying_functions(bigger):
                for g in C.satisfying_functions(c2):
                    h = tuple(g[v] for v in f)
                    assert C.satisfies(h, composed_big)


class TestReductionSoundness:
    """The two quotienting steps behind the exhaustive laxity sweep."""

    def test_left_problem_decomposes_into_singletons(self):
        rng = random.Random(2)
        for _ in range(300):
            nv, nvp, nvpp = (rng.randint(1, 3) for _ in range(3))
            c1 = random_csp(rng, nv, nvp, max_constraints=3)
            c2 = random_csp(rng, nvp, nvpp, max_constraints=3)
            union = set()
            for con in c1.constraints:
                single = C.csp_problem(nv, nvp, [con])
                union |= C.compose_csp(c2, single).constraints
            assert C.compose_csp(c2, c1).constraints == frozenset(union)

    def test_right_problem_decomposes_by_body(self):
        rng = random.Random(3)
        for _ in range(300):
            nv, nvp, nvpp = (rng.randint(1, 3) for _ in range(3))
            c1 = random_csp(rng, nv, nvp, max_constraints=2)
            c2 = random_csp(rng, nvp, nvpp, max_constraints=3)
            by_body = {}
            for con in c2.constraints:
                by_body.setdefault((con.arity, con.allowed), set()).add(con)
            union = set()
            for group in by_body.values():
                sub = C.csp_problem(nvp, nvpp, group)
                union |= C.compose_csp(sub, c1).constraints
            assert C.compose_csp(c2, c1).constraints == frozenset(union)


def test_composition_is_order_sensitive():
    """Three problems where the two bracketings disagree: the composite of
    composites can see scope coverage that no single right-hand body covers.
    Only laxity is guaranteed by the composition rule, and the engine
    therefore never relies on associativity for this encoding."""
    c1 = problem(1, 2, (1, (0,), [(0,), (1,)]))
    c2 = problem(2, 2, (1, (0,), [(0,)]), (1, (1,), [(1,)]))
    c3 = problem(2, 1, (1, (0,), [(0,)]), (1, (1,), [(0,)]))
    left = C.compose_csp(C.compose_csp(c3, c2), c1)
    right = C.compose_csp(c3, C.compose_csp(c2, c1))
    assert left.constraints != right.constraints
    assert C.csp_constraint(1, (0,), [(0,)]) in left.constraints
    assert right.constraints == frozenset()
    # both bracketings still enjoy laxity for the actual solution sets
    for f in C.satisfying_functions(c1):
        for g in C.satisfying_functions(c2):
            for h in C.satisfying_functions(c3):
                hh = tuple(h[g[v]] for v in f)
                assert C.satisfies(hh, left)
                assert C.satisfies(hh, right)
