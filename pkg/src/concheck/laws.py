"""Law harness: categorical structure checks on certified pairs.

Every law is exercised on randomly generated certified pairs for every
encoding that supports the structure in question: associativity and identity
of composition, interchange of tensor with composition, dagger
contravariance, snake identities for the compact encoding, and certificate
soundness (every certificate produced by any path agrees with a from-scratch
predicate evaluation).

The CSP encoding is deliberately absent from the associativity and identity
laws: its composition is order-sensitive (see test_cspcat for a concrete
three-problem witness) and it has no identity problem; only soundness of
single compositions is claimed for it, and checked here.
"""

from __future__ import annotations

import random
from itertools import product

from . import constrained, cspcat, funcrel, monoids, oracles, relations, sectorial, signalling

DEFAULT_TRIALS = 1000


def _pairs_equal(a: constrained.ConstrainedMorphism, b) -> bool:
    return a.constraint == b.constraint and a.morphism == b.morphism


# ---------------------------------------------------------------------------
# random certified chains per encoding


def _sectorial_chain(rng, encoding, n, max_sectors=2, max_dim=2):
    spaces = [
        oracles.random_sector_space(rng, f"s{k}x", max_sectors, max_dim)
        for k in range(n + 1)
    ]
    out = []
    for k in range(n):
        m = oracles.random_block_matrix(rng, spaces[k], spaces[k + 1])
        out.append(constrained.pair(sectorial.support_relation(m), m, encoding))
    return out


def _signalling_chain(rng, n, max_factors=3, max_size=2):
    builder = oracles._WordBuilder(rng, max_factors, max_size)
    out = []
    start = None
    for _ in range(n):
        word = builder.word(length=rng.randint(1, 3), start=start)
        start = word.morphism.cod
        out.append(word)
    return out


def _funcrel_chain(rng, n, max_blocks=3, max_size=2):
    parts = [
        oracles.random_partition(rng, f"p{k}x", max_blocks, max_size)
        for k in range(n + 1)
    ]
    out = []
    for k in range(n):
        f = oracles.random_function(rng, parts[k], parts[k + 1])
        out.append(
            constrained.pair(funcrel.funcrel_support(f), f, constrained.FUNCREL)
        )
    return out


_SMALL_MONOIDS = None


def _small_monoids():
    global _SMALL_MONOIDS
    if _SMALL_MONOIDS is None:
        _SMALL_MONOIDS = list(monoids.all_monoids(3))
    return _SMALL_MONOIDS


def _monoid_chain(rng, n):
    monoid = rng.choice(_small_monoids())
    npts = rng.randint(1, 3)
    lab = monoids.MonoidLabeling(
        tuple(f"s{i}" for i in range(npts)),
        tuple(rng.randrange(monoid.size) for _ in range(npts)),
    )
    enc = constrained.monoid_encoding(monoid, lab)
    out = []
    for _ in range(n):
        m = rng.randrange(monoid.size)
        out.append(
            constrained.pair(monoids.commutation_relation(monoid, lab, m), m, enc)
        )
    return out


def _csp_chain(rng, n, max_size=3):
    sizes = [rng.randint(1, max_size) for _ in range(n + 1)]
    out = []
    for k in range(n):
        f = tuple(rng.randrange(sizes[k + 1]) for _ in range(sizes[k]))
        cons = []
        for _ in range(rng.randint(0, 2)):
            arity = rng.randint(1, 2)
            scope = tuple(rng.randrange(sizes[k]) for _ in range(arity))
            image = tuple(f[v] for v in scope)
            tuples = list(product(range(sizes[k + 1]), repeat=arity))
            allowed = {t for t in tuples if rng.random() < 0.4} | {image}
            cons.append(cspcat.csp_constraint(arity, scope, allowed))
        problem = cspcat.csp_problem(sizes[k], sizes[k + 1], cons)
        out.append(constrained.pair(problem, f, constrained.CSP))
    return out


_CHAINS = {
    "sectorial_sum": lambda rng, n: _sectorial_chain(rng, constrained.SECTORIAL_SUM, n),
    "sectorial_prod": lambda rng, n: _sectorial_chain(rng, constrained.SECTORIAL_PROD, n),
    "signalling": _signalling_chain,
    "funcrel": _funcrel_chain,
    "monoid": _monoid_chain,
}

_IDENTITY_BUILDERS = {
    "sectorial_sum": lambda p: (
        relations.identity(p.morphism.dom.labels),
        sectorial.identity_matrix(p.morphism.dom),
        relations.identity(p.morphism.cod.labels),
        sectorial.identity_matrix(p.morphism.cod),
    ),
    "sectorial_prod": lambda p: _IDENTITY_BUILDERS["sectorial_sum"](p),
    "signalling": lambda p: (
        relations.identity(p.morphism.dom.labels),
        signalling.identity_channel(p.morphism.dom),
        relations.identity(p.morphism.cod.labels),
        signalling.identity_channel(p.morphism.cod),
    ),
    "funcrel": lambda p: (
        relations.identity(p.morphism.dom.labels),
        funcrel.identity_function(p.morphism.dom),
        relations.identity(p.morphism.cod.labels),
        funcrel.identity_function(p.morphism.cod),
    ),
    "monoid": lambda p: (
        relations.identity(p.encoding.params["labeling"].labels),
        p.encoding.params["monoid"].identity,
        relations.identity(p.encoding.params["labeling"].labels),
        p.encoding.params["monoid"].identity,
    ),
}

LAW_ENCODINGS = tuple(_CHAINS)
TENSOR_ENCODINGS = ("sectorial_sum", "sectorial_prod", "signalling", "funcrel")


def law_associativity(trials=DEFAULT_TRIALS, seed=oracles.DEFAULT_SEED) -> dict:
    rng = random.Random(seed)
    failures = []
    cases = 0
    for t in range(trials):
        name = rng.choice(LAW_ENCODINGS)
        p, q, r = _CHAINS[name](rng, 3)
        cases += 1
        lhs = constrained.compose(r, constrained.compose(q, p))
        rhs = constrained.compose(constrained.compose(r, q), p)
        if not _pairs_equal(lhs, rhs):
            failures.append({"trial": t, "encoding": name})
    return {"cases": cases, "failures": failures}


def law_identity(trials=DEFAULT_TRIALS, seed=oracles.DEFAULT_SEED) -> dict:
    rng = random.Random(seed)
    failures = []
    cases = 0
    for t in range(trials):
        name = rng.choice(LAW_ENCODINGS)
        (p,) = _CHAINS[name](rng, 1)
        rel_dom, id_dom, rel_cod, id_cod = _IDENTITY_BUILDERS[name](p)
        left = constrained.compose(
            constrained.pair(rel_cod, id_cod, p.encoding), p
        )
        right = constrained.compose(
            p, constrained.pair(rel_dom, id_dom, p.encoding)
        )
        cases += 1
        if not (_pairs_equal(left, p) and _pairs_equal(right, p)):
            failures.append({"trial": t, "encoding": name})
    return {"cases": cases, "failures": failures}


def law_interchange(trials=DEFAULT_TRIALS, seed=oracles.DEFAULT_SEED) -> dict:
    """(p ⊗ q) ∘ (r ⊗ s) = (p ∘ r) ⊗ (q ∘ s) on matched boundaries."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for t in range(trials):
        name = rng.choice(TENSOR_ENCODINGS)
        r, p = _CHAINS[name](rng, 2)
        s, q = _CHAINS[name](rng, 2)
        cases += 1
        try:
            lhs = constrained.compose(
                constrained.tensor(p, q), constrained.tensor(r, s)
            )
        except Exception as exc:  # label collisions between the two chains
            if "duplicate" in str(exc):
                continue
            raise
        rhs = constrained.tensor(
            constrained.compose(p, r), constrained.compose(q, s)
        )
        if not _pairs_equal(lhs, rhs):
            failures.append({"trial": t, "encoding": name})
    return {"cases": cases, "failures": failures}


def law_dagger(trials=DEFAULT_TRIALS, seed=oracles.DEFAULT_SEED) -> dict:
    """Dagger is involutive and contravariant on the sectorial encodings."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for t in range(trials):
        enc = rng.choice((constrained.SECTORIAL_SUM, constrained.SECTORIAL_PROD))
        p, q = _sectorial_chain(rng, enc, 2)
        cases += 1
        twice = constrained.dagger(constrained.dagger(p))
        contra_l = constrained.dagger(constrained.compose(q, p))
        contra_r = constrained.compose(constrained.dagger(p), constrained.dagger(q))
        if not (_pairs_equal(twice, p) and _pairs_equal(contra_l, contra_r)):
            failures.append({"trial": t})
    return {"cases": cases, "failures": failures}


def law_snake(trials=DEFAULT_TRIALS, seed=oracles.DEFAULT_SEED) -> dict:
    """Snake identity on certified pairs for the compact sectorial encoding.

    Tensor products of label lists are only associative up to relabeling, so
    the middle boundary is aligned with an explicit rename, after which the
    composite must be exactly the identity pair (again up to the boundary
    relabel)."""
    rng = random.Random(seed)
    enc = constrained.SECTORIAL_PROD
    failures = []
    cases = 0
    for t in range(trials):
        space = oracles.random_sector_space(rng, f"v{t}n", max_sectors=2, max_dim=2)
        idp = constrained.pair(
            relations.identity(space.labels), sectorial.identity_matrix(space), enc
        )
        cup_pair = constrained.pair(
            relations.cup(space.labels), sectorial.sector_cup(space), enc
        )
        cap_pair = constrained.pair(
            relations.cap(space.labels), sectorial.sector_cap(space), enc
        )
        first = constrained.tensor(idp, cup_pair)   # A⊗I -> A⊗(A⊗A)
        second = constrained.tensor(cap_pair, idp)  # (A⊗A)⊗A -> I⊗A
        aligned = constrained.pair(
            relations.rename(
                first.constraint, dst=second.constraint.src
            ),
            sectorial.relabel(first.morphism, cod=second.morphism.dom),
            enc,
        )
        snake = constrained.compose(second, aligned)
        cases += 1
        identity_entries = sectorial.identity_matrix(space).entries
        ok = (
            snake.morphism.entries == identity_entries
            and relations.rename(
                snake.constraint,
                src=space.labels,
                dst=space.labels,
            ).pairs
            == relations.identity(space.labels).pairs
        )
        if not ok:
            failures.append({"trial": t})
    return {"cases": cases, "failures": failures}


def law_certificate_soundness(trials=DEFAULT_TRIALS, seed=oracles.DEFAULT_SEED) -> dict:
    """Certificates produced by compose/tensor/dagger/relax always agree with
    a from-scratch evaluation of the predicate (csp included)."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    chains = dict(_CHAINS)
    chains["csp"] = _csp_chain
    names = tuple(chains)
    for t in range(trials):
        name = rng.choice(names)
        p, q = chains[name](rng, 2)
        derived = [constrained.compose(q, p)]
        if p.encoding.supports_tensor:
            try:
                derived.append(constrained.tensor(p, q))
            except Exception as exc:
                if "duplicate" not in str(exc):
                    raise
        if p.encoding.supports_dagger:
            derived.append(constrained.dagger(p))
        if name == "monoid":
            # weakest monoid constraint is the empty relation (no conditions)
            derived.append(
                constrained.relax(
                    p, relations.empty(p.constraint.src, p.constraint.dst)
                )
            )
        elif name != "csp":
            derived.append(
                constrained.relax(
                    p, relations.full(p.constraint.src, p.constraint.dst)
                )
            )
        for d in derived:
            cases += 1
            if not constrained.recheck(d):
                failures.append({"trial": t, "encoding": name})
    return {"cases": cases, "failures": failures}


LAWS = {
    "associativity": law_associativity,
    "identity": law_identity,
    "interchange": law_interchange,
    "dagger": law_dagger,
    "snake": law_snake,
    "certificate_soundness": law_certificate_soundness,
}


def run_all_laws(trials=DEFAULT_TRIALS, seed=oracles.DEFAULT_SEED) -> dict:
    out = {}
    for name, law in LAWS.items():
        out[name] = law(trials=trials, seed=seed)
    return out
