"""Constraint satisfaction problems as composable morphisms.

A problem between two finite sets is a set of constraint instances
(arity k, scope tuple, allowed tuple set). A function satisfies the problem
when its image of every scope lies in the corresponding allowed set.
Problems compose: a composite instance (k, a, sigma) exists when some
(k, a, rho) in the first problem has every tuple of rho covered by an
instance (k, m, sigma) of the second.

Only the set-based case is implemented (the endofunctor is (-)^k and scopes
are single tuples), and only instances of matching arity interact; the
composite body candidates are exactly the bodies listed in the second
problem, never synthesized.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BoundaryMismatch


@dataclass(frozen=True)
class CSPConstraint:
    arity: int
    scope: tuple[int, ...]
    allowed: frozenset[tuple[int, ...]]

    def __post_init__(self):
        k = int(self.arity)
        if k < 1:
            raise ValueError(f"arity must be >= 1, got {k}")
        scope = tuple(int(v) for v in self.scope)
        if len(scope) != k:
            raise ValueError(f"scope length {len(scope)} != arity {k}")
        allowed = frozenset(tuple(int(v) for v in t) for t in self.allowed)
        for t in allowed:
            if len(t) != k:
                raise ValueError(f"allowed tuple {t} has wrong arity")
        object.__setattr__(self, "arity", k)
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "allowed", allowed)


@dataclass(frozen=True)
class CSPProblem:
    dom_size: int
    cod_size: int
    constraints: frozenset[CSPConstraint]

    def __post_init__(self):
        if self.dom_size < 1 or self.cod_size < 1:
            raise ValueError("set sizes must be >= 1")
        for c in self.constraints:
            for v in c.scope:
                if not 0 <= v < self.dom_size:
                    raise IndexError(f"scope element {v} out of range")
            for t in c.allowed:
                for v in t:
                    if not 0 <= v < self.cod_size:
                        raise IndexError(f"allowed element {v} out of range")


def csp_constraint(arity, scope, allowed) -> CSPConstraint:
    return CSPConstraint(arity, tuple(scope), frozenset(tuple(t) for t in allowed))


def csp_problem(dom_size, cod_size, constraints) -> CSPProblem:
    return CSPProblem(int(dom_size), int(cod_size), frozenset(constraints))


def satisfies(f, problem: CSPProblem) -> bool:
    return violation_witness(f, problem) is None


def violation_witness(f, problem: CSPProblem):
    """None if f satisfies every instance, else the first violated one."""
    f = tuple(int(v) for v in f)
    if len(f) != problem.dom_size:
        raise ValueError(f"expected a map on {problem.dom_size} points")
    for v in f:
        if not 0 <= v < problem.cod_size:
            raise IndexError(f"image {v} out of range")
    for c in sorted(problem.constraints, key=lambda c: (c.arity, c.scope)):
        image = tuple(f[v] for v in c.scope)
        if image not in c.allowed:
            return {"scope": c.scope, "image": image}
    return None


def compose_csp(second: CSPProblem, first: CSPProblem) -> CSPProblem:
    """Composite problem: (k, a, sigma) is included iff some (k, a, rho) of
    `first` has, for every tuple m in rho, the instance (k, m, sigma) in
    `second`."""
    if first.cod_size != second.dom_size:
        raise BoundaryMismatch(
            f"compose: middle sizes {first.cod_size} != {second.dom_size}"
        )
    by_body: dict[tuple[int, frozenset], set] = {}
    for c in second.constraints:
        by_body.setdefault((c.arity, c.allowed), set()).add(c.scope)
    out = set()
    for c1 in first.constraints:
        for (k, sigma), scopes in by_body.items():
            if k != c1.arity:
                continue
            if all(m in scopes for m in c1.allowed):
                out.add(CSPConstraint(k, c1.scope, sigma))
    return CSPProblem(first.dom_size, second.cod_size, frozenset(out))


def arity_skips(second: CSPProblem, first: CSPProblem) -> int:
    """How many (instance, candidate-body) combinations the composition rule
    never considered because their arities differ. Mixed-arity problems are
    legal; the rule simply composes nothing across arities."""
    bodies = {(c.arity, c.allowed) for c in second.constraints}
    return sum(
        1 for c1 in first.constraints for (k, _) in bodies if k != c1.arity
    )


def csp_leq(stronger: CSPProblem, weaker: CSPProblem) -> bool:
    """More instances means a stronger problem; order by reverse inclusion."""
    if (stronger.dom_size, stronger.cod_size) != (weaker.dom_size, weaker.cod_size):
        raise BoundaryMismatch("problems have different boundaries")
    return weaker.constraints <= stronger.constraints


def all_functions(dom_size: int, cod_size: int):
    return product(range(cod_size), repeat=dom_size)


def satisfying_functions(problem: CSPProblem) -> list[tuple[int, ...]]:
    return [
        f for f in all_functions(problem.dom_size, problem.cod_size)
        if satisfies(f, problem)
    ]
