"""Randomized and exhaustive evidence suites.

Each suite returns a summary dict with at least {"suite", "passed", "cases",
"failures"}; suites are deterministic given a seed. The generators here also
feed the law harness in the test suite: random relations, block matrices,
partitioned functions, CSPs, and random words of exactly-constrained channel
generators (permutations, controlled shifts, discards, uniform preparations)
whose constraint relations are tracked through the constrained-pair engine.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement, product

import numpy as np

from . import constrained, cspcat, funcrel, monoids, relations, sectorial, signalling
from .errors import ExplosionError

DEFAULT_SEED = 1729
MAX_CAP = 10**7


# ---------------------------------------------------------------------------
# random object generators


def random_relation(rng: random.Random, src, dst, density: float = 0.5):
    pairs = {
        (i, j)
        for i in range(len(src))
        for j in range(len(dst))
        if rng.random() < density
    }
    return relations.relation(src, dst, pairs)


def random_sector_space(rng: random.Random, prefix: str, max_sectors=3, max_dim=2):
    n = rng.randint(1, max_sectors)
    return sectorial.sector_space(
        [(f"{prefix}{k}", rng.randint(1, max_dim)) for k in range(n)]
    )


def random_block_matrix(rng: random.Random, dom, cod, density: float = 0.6):
    rows = [
        [
            Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if rng.random() < density
            else Fraction(0)
            for _ in range(dom.total_dim)
        ]
        for _ in range(cod.total_dim)
    ]
    return sectorial.block_matrix(dom, cod, rows)


def random_partition(rng: random.Random, prefix: str, max_blocks=3, max_size=2):
    n = rng.randint(1, max_blocks)
    return funcrel.partitioned_set(
        [(f"{prefix}{k}", rng.randint(1, max_size)) for k in range(n)]
    )


def random_function(rng: random.Random, dom, cod):
    return funcrel.partitioned_function(
        dom, cod, [rng.randrange(cod.total) for _ in range(dom.total)]
    )


def random_csp(rng: random.Random, dom_size, cod_size, max_constraints=2, max_arity=2):
    cons = []
    for _ in range(rng.randint(0, max_constraints)):
        k = rng.randint(1, max_arity)
        scope = tuple(rng.randrange(dom_size) for _ in range(k))
        tuples = list(product(range(cod_size), repeat=k))
        allowed = [t for t in tuples if rng.random() < 0.6]
        cons.append(cspcat.csp_constraint(k, scope, allowed))
    return cspcat.csp_problem(dom_size, cod_size, cons)


# ---------------------------------------------------------------------------
# words of exactly-constrained channel generators


class _WordBuilder:
    """Random walks through the sub-theory generated by factor permutations,
    per-factor bijections, discards and uniform preparations; every step is a
    certified constrained pair.

    Controlled shifts (classical CNOTs) are opt-in: they are fine for laxity
    and atomicity harnesses, but they break time-symmetry: a controlled
    shift influences its target while provably hiding its target from the
    control's output, so the backward check genuinely diverges from the
    forward one on such words (see test_signalling for the witness).
    """

    def __init__(self, rng: random.Random, max_factors=3, max_size=2,
                 include_controlled=True):
        self.rng = rng
        self.max_factors = max_factors
        self.max_size = max_size
        self.include_controlled = include_controlled
        self.fresh = 0

    def _label(self) -> str:
        self.fresh += 1
        return f"w{self.fresh}"

    def random_space(self) -> signalling.FactorSpace:
        n = self.rng.randint(1, self.max_factors)
        return signalling.factor_space(
            [(self._label(), self.rng.randint(1, self.max_size)) for _ in range(n)]
        )

    def identity_pair(self, space) -> constrained.ConstrainedMorphism:
        return constrained.pair(
            relations.identity(space.labels),
            signalling.identity_channel(space),
            constrained.SIGNALLING,
        )

    def _moves(self, space):
        n = len(space.factors)
        moves = []
        if n >= 2:
            moves.append("swap")
            if self.include_controlled and any(size >= 2 for _, size in space.factors):
                moves.append("controlled")
        if any(size >= 2 for _, size in space.factors):
            moves.append("shift")
        if n >= 2:
            moves.append("discard")
        if n < self.max_factors:
            moves.append("prepare")
        return moves

    def step_pair(self, space) -> constrained.ConstrainedMorphism:
        """One random generator with domain `space`, as a certified pair."""
        rng = self.rng
        move = rng.choice(self._moves(space))
        if move == "swap":
            perm = list(range(len(space.factors)))
            i, j = rng.sample(range(len(perm)), 2)
            perm[i], perm[j] = perm[j], perm[i]
            rel, chan = permutation_generator(space, tuple(perm))
        elif move == "shift":
            k = rng.choice(
                [k for k, (_, size) in enumerate(space.factors) if size >= 2]
            )
            rel, chan = shift_generator(space, k)
        elif move == "controlled":
            targets = [k for k, (_, size) in enumerate(space.factors) if size >= 2]
            t = rng.choice(targets)
            c = rng.choice([k for k in range(len(space.factors)) if k != t])
            rel, chan = controlled_shift_generator(space, c, t)
        elif move == "discard":
            k = rng.randrange(len(space.factors))
            rel, chan = discard_generator(space, k)
        else:
            pos = rng.randint(0, len(space.factors))
            rel, chan = prepare_generator(space, pos, self._label(), rng.randint(2, max(2, self.max_size)))
        return constrained.pair(rel, chan, constrained.SIGNALLING)

    def word(self, length=None, start=None) -> constrained.ConstrainedMorphism:
        if start is None:
            start = self.random_space()
        acc = self.identity_pair(start)
        steps = self.rng.randint(1, 6) if length is None else length
        for _ in range(steps):
            step = self.step_pair(acc.morphism.cod)
            acc = constrained.compose(step, acc)
        return acc


def permutation_generator(space, perm):
    """Wire permutation: output slot p carries input factor perm[p]."""
    cod = signalling.factor_space([space.factors[perm[p]] for p in range(len(perm))])
    rows = [[0] * space.total for _ in range(cod.total)]
    for x in range(space.total):
        cx = space.coords(x)
        y = cod.index(tuple(cx[perm[p]] for p in range(len(perm))))
        rows[y][x] = 1
    rel = relations.relation(
        space.labels, cod.labels, {(perm[p], p) for p in range(len(perm))}
    )
    return rel, signalling.channel(space, cod, rows)


def shift_generator(space, k):
    """Cyclic +1 on factor k; a per-factor bijection, so the constraint is
    the identity relation."""
    size = space.sizes[k]
    rows = [[0] * space.total for _ in range(space.total)]
    for x in range(space.total):
        cx = list(space.coords(x))
        cx[k] = (cx[k] + 1) % size
        rows[space.index(tuple(cx))][x] = 1
    return relations.identity(space.labels), signalling.channel(space, space, rows)


def controlled_shift_generator(space, control, target):
    """Output target = target + control (mod size); control passes through."""
    size = space.sizes[target]
    rows = [[0] * space.total for _ in range(space.total)]
    for x in range(space.total):
        cx = list(space.coords(x))
        cx[target] = (cx[target] + cx[control]) % size
        rows[space.index(tuple(cx))][x] = 1
    pairs = {(i, i) for i in range(len(space.factors))}
    pairs.add((control, target))
    rel = relations.relation(space.labels, space.labels, pairs)
    return rel, signalling.channel(space, space, rows)


def discard_generator(space, k):
    chan = signalling.discard(space, {k})
    pairs = set()
    for i in range(len(space.factors)):
        if i != k:
            pairs.add((i, i if i < k else i - 1))
    rel = relations.relation(space.labels, chan.cod.labels, pairs)
    return rel, chan


def prepare_generator(space, pos, label, size):
    """Insert a fresh uniformly random factor at `pos`; it is related to no
    input."""
    factors = list(space.factors)
    factors.insert(pos, (label, size))
    cod = signalling.factor_space(factors)
    chan = signalling.prepare_uniform(cod, {pos})
    pairs = {
        (i, i if i < pos else i + 1) for i in range(len(space.factors))
    }
    rel = relations.relation(space.labels, cod.labels, pairs)
    return rel, chan


# ---------------------------------------------------------------------------
# block structures and the exhaustive funcrel laxity sweep


def block_structures(max_blocks=3, max_size=2):
    out = []
    for nb in range(1, max_blocks + 1):
        out.extend(product(range(1, max_size + 1), repeat=nb))
    return out


def _canonical_maps(dom_sizes, cod_total) -> np.ndarray:
    """All functions up to permutations inside each dom block (images sorted
    within a block). Lossless for support/laxity checks, which only see
    which images occur per block."""
    per_block = [
        list(combinations_with_replacement(range(cod_total), s)) for s in dom_sizes
    ]
    maps = [sum(combo, ()) for combo in product(*per_block)]
    return np.array(maps, dtype=np.int64)


def funcrel_laxity_exhaustive(max_blocks=3, max_size=2):
    """Exhaustive laxity sweep over every triple of partitioned sets with at
    most `max_blocks` blocks of size at most `max_size`, every pair of
    functions between them, and every pair of relations they satisfy.

    Three lossless reductions make this exhaustive sweep tractable:
    - only the least satisfied relations (the supports) need checking, since
      relation composition and satisfaction are monotone in the relations;
    - the second function g enters only through block(g(.)), so g ranges
      over block-valued quotients;
    - f may be canonicalized inside each dom block (the data checked is
      invariant under such permutations).
    Each reduction is unit-tested directly against the literal oracle.
    """
    structures = block_structures(max_blocks, max_size)
    cases = 0
    failures = []
    for sB in structures:
        b, nb_b = sum(sB), len(sB)
        block_b = np.repeat(np.arange(nb_b, dtype=np.int64), sB)
        for sC in structures:
            nb_c = len(sC)
            # block-valued quotients of g; all are realizable (blocks nonempty)
            kappas = np.array(
                list(product(range(nb_c), repeat=b)), dtype=np.int64
            ).reshape(-1, b)
            n_kappa = kappas.shape[0]
            rows_g = np.zeros((n_kappa, nb_b), dtype=np.int64)
            for y in range(b):
                rows_g[:, block_b[y]] |= np.int64(1) << kappas[:, y]
            for sA in structures:
                a, nb_a = sum(sA), len(sA)
                block_a = np.repeat(np.arange(nb_a, dtype=np.int64), sA)
                fmaps = _canonical_maps(sA, b)
                n_f = fmaps.shape[0]
                rows_f = np.zeros((n_f, nb_a), dtype=np.int64)
                for x in range(a):
                    rows_f[:, block_a[x]] |= np.int64(1) << block_b[fmaps[:, x]]
                uniq, inverse = np.unique(rows_f, axis=0, return_inverse=True)
                sel = (uniq[:, None, :, None] >> np.arange(nb_b)) & 1
                composed = np.bitwise_or.reduce(
                    np.where(sel == 1, rows_g[None, :, None, :], 0), axis=3
                )
                composed_bits = np.zeros((uniq.shape[0], n_kappa), dtype=np.int64)
                for i in range(nb_a):
                    composed_bits |= composed[:, :, i] << (i * nb_c)
                comp_bits = np.zeros((n_f, n_kappa), dtype=np.int64)
                for x in range(a):
                    vals = kappas[:, fmaps[:, x]].T
                    comp_bits |= np.int64(1) << (block_a[x] * nb_c + vals)
                viol = comp_bits & ~composed_bits[inverse, :]
                cases += n_f * n_kappa
                if np.any(viol):
                    fi, ki = map(int, np.argwhere(viol)[0])
                    failures.append(
                        {
                            "dom": list(sA),
                            "mid": list(sB),
                            "cod": list(sC),
                            "f": [int(v) for v in fmaps[fi]],
                            "g_blocks": [int(v) for v in kappas[ki]],
                        }
                    )
    return {"cases": cases, "failures": failures}


def funcrel_laxity_literal(max_total=2, sample_pairs=None, rng=None):
    """Literal extensional sweep with enumerate/oracle machinery, for cross
    validation of the reduced sweep on small instances."""
    shapes = [s for s in block_structures(3, 2) if sum(s) <= max_total]
    cases = 0
    failures = []
    for sA, sB, sC in product(shapes, repeat=3):
        dom_a = funcrel.partitioned_set([(f"a{k}", s) for k, s in enumerate(sA)])
        dom_b = funcrel.partitioned_set([(f"b{k}", s) for k, s in enumerate(sB)])
        dom_c = funcrel.partitioned_set([(f"c{k}", s) for k, s in enumerate(sC)])
        rel_pairs = product(
            _all_relations(dom_a.labels, dom_b.labels),
            _all_relations(dom_b.labels, dom_c.labels),
        )
        if sample_pairs is not None:
            rel_pairs = rng.sample(list(rel_pairs), sample_pairs)
        for tau, sigma in rel_pairs:
            cases += 1
            if not funcrel.oracle_laxity(dom_a, dom_b, dom_c, tau, sigma):
                failures.append({"tau": tau.sorted_pairs, "sigma": sigma.sorted_pairs})
    return {"cases": cases, "failures": failures}


def _all_relations(src, dst):
    cells = list(product(range(len(src)), range(len(dst))))
    for bits in range(1 << len(cells)):
        yield relations.relation(
            src, dst, {cells[i] for i in range(len(cells)) if bits >> i & 1}
        )


# ---------------------------------------------------------------------------
# sectorial randomized suites


def sectorial_intersectability_random(trials=1000, seed=DEFAULT_SEED):
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        dom = random_sector_space(rng, "a")
        cod = random_sector_space(rng, "b")
        f = random_block_matrix(rng, dom, cod)
        tau = random_relation(rng, dom.labels, cod.labels)
        sig = random_relation(rng, dom.labels, cod.labels)
        both = sectorial.check_sectorial(f, tau) and sectorial.check_sectorial(f, sig)
        met = sectorial.check_sectorial(f, relations.meet(tau, sig))
        if both != met:
            failures.append({"trial": t})
    return {"cases": trials, "failures": failures}


def sectorial_laxity_random(trials=1000, seed=DEFAULT_SEED):
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        sa = random_sector_space(rng, "a")
        sb = random_sector_space(rng, "b")
        sc = random_sector_space(rng, "c")
        f = random_block_matrix(rng, sa, sb)
        g = random_block_matrix(rng, sb, sc)
        lhs = sectorial.support_relation(sectorial.compose(g, f))
        rhs = relations.compose(
            sectorial.support_relation(g), sectorial.support_relation(f)
        )
        if not relations.leq(lhs, rhs):
            failures.append({"trial": t})
    return {"cases": trials, "failures": failures}


# ---------------------------------------------------------------------------
# signalling suites


def signalling_laxity_random(trials=200, seed=DEFAULT_SEED, max_factors=3, max_size=3):
    """Compose two certified words and re-check the composite against the
    composed relation from scratch."""
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        builder = _WordBuilder(rng, max_factors, max_size)
        p = builder.word()
        q = builder.word(start=p.morphism.cod)
        composite = constrained.compose(q, p)
        if not signalling.check_signalling(composite.morphism, composite.constraint):
            failures.append({"trial": t})
    return {"cases": trials, "failures": failures}


def domain_atomicity_random(trials=500, seed=DEFAULT_SEED, max_factors=3, max_size=2):
    """Criterion: constrained channels satisfy domain atomicity for every
    subset of output factors."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for t in range(trials):
        builder = _WordBuilder(rng, max_factors, max_size)
        word = builder.word()
        chan, rel = word.morphism, word.constraint
        n_out = len(chan.cod.factors)
        for bits in range(1 << n_out):
            targets = {j for j in range(n_out) if bits >> j & 1}
            cases += 1
            if not signalling.check_domain_atomicity(chan, rel, targets):
                failures.append({"trial": t, "targets": sorted(targets)})
    return {"cases": cases, "failures": failures}


def timesym_random(trials=500, seed=DEFAULT_SEED, max_factors=3, max_size=2):
    """On words of factor-local generators (wire permutations, per-factor
    bijections, discard, prepare-uniform) the full, atomic and backward
    checks must agree on the word's derived support relation (and on random
    relations). Controlled shifts are excluded: they falsify time-symmetry,
    which is exactly what the backward check is for."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for t in range(trials):
        builder = _WordBuilder(rng, max_factors, max_size, include_controlled=False)
        word = builder.word()
        chan = word.morphism
        support = signalling.signalling_support(chan)
        candidates = [support]
        for _ in range(2):
            candidates.append(
                random_relation(rng, chan.dom.labels, chan.cod.labels)
            )
        for rel in candidates:
            cases += 1
            full = signalling.check_signalling(chan, rel)
            atomic = signalling.check_signalling_atomic(chan, rel)
            back = signalling.check_cosignalling(chan, rel)
            if not (full == atomic == back):
                failures.append(
                    {
                        "trial": t,
                        "relation": rel.sorted_pairs,
                        "full": full,
                        "atomic": atomic,
                        "backward": back,
                    }
                )
    return {"cases": cases, "failures": failures}


def signalling_counterexample_report():
    """The non-intersectability witness: satisfied generators, failed meet."""
    chan = signalling.parity_counterexample()
    gens = relations.meet_generators(chan.dom.labels, chan.cod.labels)
    sigma1, sigma2 = gens[0], gens[1]
    met = relations.meet(sigma1, sigma2)
    return {
        "sigma1_satisfied": signalling.check_signalling(chan, sigma1),
        "sigma2_satisfied": signalling.check_signalling(chan, sigma2),
        "meet_satisfied": signalling.check_signalling(chan, met),
        "witness": signalling.signalling_witness(chan, met),
    }


# ---------------------------------------------------------------------------
# relation-level sweeps


def meet_generator_completeness(max_src=4, max_dst=4):
    """Every relation equals the meet of the generators excluding exactly its
    absent pairs; exhaustive per boundary size."""
    cases = 0
    failures = []
    for n in range(1, max_src + 1):
        for m in range(1, max_dst + 1):
            src = tuple(f"a{i}" for i in range(n))
            dst = tuple(f"b{j}" for j in range(m))
            cells = [(i, j) for i in range(n) for j in range(m)]
            gen_pairs = {
                (i, j): frozenset(set(cells) - {(i, j)}) for i, j in cells
            }
            everything = frozenset(cells)
            for bits in range(1 << len(cells)):
                tau = frozenset(
                    cells[k] for k in range(len(cells)) if bits >> k & 1
                )
                acc = everything
                for cell in cells:
                    if cell not in tau:
                        acc &= gen_pairs[cell]
                cases += 1
                if acc != tau:
                    failures.append({"src": n, "dst": m, "pairs": sorted(tau)})
    return {"cases": cases, "failures": failures}


# ---------------------------------------------------------------------------
# monoid compositionality


def monoid_compositionality_exhaustive(max_order=4, max_points=3):
    """For every monoid (identity fixed at 0, lossless up to renaming), every
    labeling of up to `max_points` points, and every pair of elements, the
    composed maximal relations stay inside the product's maximal relation.
    Relation composition is monotone, so this single check per element pair
    covers every pair of satisfied relations."""
    cases = 0
    failures = []
    for monoid in monoids.all_monoids(max_order):
        size = monoid.size
        reach = [frozenset(monoid.mul(mp, a) for mp in range(size)) for a in range(size)]
        for npts in range(1, max_points + 1):
            for assignment in product(range(size), repeat=npts):
                # per-element maximal relations, as row bitmasks
                rel_rows = []
                for m in range(size):
                    rel_rows.append(
                        [
                            sum(
                                1 << y
                                for y in range(npts)
                                if monoid.mul(assignment[y], m) in reach[assignment[x]]
                            )
                            for x in range(npts)
                        ]
                    )
                for m in range(size):
                    for n_el in range(size):
                        cases += 1
                        prod_rows = rel_rows[monoid.mul(m, n_el)]
                        second, first = rel_rows[m], rel_rows[n_el]
                        ok = True
                        for x in range(npts):
                            composite_row = 0
                            fr = first[x]
                            for y in range(npts):
                                if fr >> y & 1:
                                    composite_row |= second[y]
                            if composite_row & ~prod_rows[x]:
                                ok = False
                                break
                        if not ok:
                            failures.append(
                                {
                                    "monoid": [list(r) for r in monoid.table],
                                    "assignment": list(assignment),
                                    "m": m,
                                    "n": n_el,
                                }
                            )
    return {"cases": cases, "failures": failures}


# ---------------------------------------------------------------------------
# CSP laxity


def _all_single_constraints(n_dom, n_cod, max_arity=2):
    out = []
    for k in range(1, max_arity + 1):
        tuples = list(product(range(n_cod), repeat=k))
        for scope in product(range(n_dom), repeat=k):
            for bits in range(1 << len(tuples)):
                allowed = [tuples[i] for i in range(len(tuples)) if bits >> i & 1]
                out.append(cspcat.csp_constraint(k, scope, allowed))
    return out


def csp_laxity_literal(sizes=(2, 2, 2), samples=2000, seed=DEFAULT_SEED):
    """Literal laxity sweep with real problems and real functions: single
    constraint problems on the left, and on the right all singletons, all
    same-body two-instance problems, plus sampled general two-subsets.
    Mixed-arity combinations compose nothing; their count is reported."""
    rng = random.Random(seed)
    nv, nvp, nvpp = sizes
    singles1 = _all_single_constraints(nv, nvp)
    singles2 = _all_single_constraints(nvp, nvpp)
    c1s = [cspcat.csp_problem(nv, nvp, [c]) for c in singles1]
    c1s.append(cspcat.csp_problem(nv, nvp, []))
    c2s = [cspcat.csp_problem(nvp, nvpp, [c]) for c in singles2]
    by_body: dict = {}
    for c in singles2:
        by_body.setdefault((c.arity, c.allowed), []).append(c)
    for (_, _), group in by_body.items():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                c2s.append(cspcat.csp_problem(nvp, nvpp, [group[i], group[j]]))
    for _ in range(samples):
        pick = rng.sample(range(len(singles2)), 2)
        c2s.append(cspcat.csp_problem(nvp, nvpp, [singles2[pick[0]], singles2[pick[1]]]))
    sat1 = {id(p): cspcat.satisfying_functions(p) for p in c1s}
    sat2 = {id(p): cspcat.satisfying_functions(p) for p in c2s}
    cases = 0
    skipped = 0
    failures = []
    for p1 in c1s:
        fs = sat1[id(p1)]
        if not fs:
            continue
        for p2 in c2s:
            gs = sat2[id(p2)]
            if not gs:
                continue
            cases += 1
            skipped += cspcat.arity_skips(p2, p1)
            composed = cspcat.compose_csp(p2, p1)
            for f in fs:
                for g in gs:
                    h = tuple(g[v] for v in f)
                    if not cspcat.satisfies(h, composed):
                        failures.append({"f": f, "g": g})
    return {"cases": cases, "failures": failures, "skipped_arity_pairs": skipped}


def csp_laxity_exhaustive(max_size=3):
    """Complete laxity sweep over problems of at most two constraints and
    arity <= 2 on sets of size <= max_size.

    The space is quotiented losslessly before sweeping: composites from a
    multi-constraint left problem are the union over its single constraints;
    only same-arity same-body instances of the right problem interact; a
    composite body must cover the left body, which therefore has at most two
    tuples; and functions enter only through their values on the scopes in
    play. Each quotienting step is unit-tested against the literal sweep.
    """
    cases = 0
    failures = []
    for nv in range(1, max_size + 1):
        for nvp in range(1, max_size + 1):
            for nvpp in range(1, max_size + 1):
                for k in (1, 2):
                    scopes_mid = list(product(range(nvp), repeat=k))
                    for a in product(range(nv), repeat=k):
                        # image tuples consistent with repeats in the scope
                        def consistent(m, scope=a):
                            return all(
                                m[i] == m[j]
                                for i in range(len(scope))
                                for j in range(len(scope))
                                if scope[i] == scope[j]
                            )

                        for m_count in (1, 2):
                            for mset in combinations_with_replacement(
                                scopes_mid, m_count
                            ):
                                mset = tuple(sorted(set(mset)))
                                elems = sorted({v for m in mset for v in m})
                                for rho_bits in range(1, 1 << len(mset)):
                                    rho = [
                                        mset[i]
                                        for i in range(len(mset))
                                        if rho_bits >> i & 1
                                    ]
                                    realizable = [m for m in rho if consistent(m)]
                                    if not realizable:
                                        # no function has its image in rho: vacuous
                                        continue
                                    for g_vals in product(
                                        range(nvpp), repeat=len(elems)
                                    ):
                                        g_of = dict(zip(elems, g_vals))
                                        body = {
                                            tuple(g_of[v] for v in m) for m in mset
                                        }
                                        c1 = cspcat.csp_problem(
                                            nv, nvp, [cspcat.csp_constraint(k, a, rho)]
                                        )
                                        c2 = cspcat.csp_problem(
                                            nvp,
                                            nvpp,
                                            [
                                                cspcat.csp_constraint(k, m, body)
                                                for m in mset
                                            ],
                                        )
                                        composed = cspcat.compose_csp(c2, c1)
                                        expected = cspcat.csp_constraint(
                                            k, a, body
                                        )
                                        if expected not in composed.constraints:
                                            failures.append(
                                                {"missing": True, "scope": a}
                                            )
                                        for m0 in realizable:
                                            cases += 1
                                            f = _extend_scope(nv, nvp, a, m0)
                                            g = _extend_elems(nvp, nvpp, g_of)
                                            if not cspcat.satisfies(f, c1):
                                                failures.append({"bad_f": a})
                                                continue
                                            if not cspcat.satisfies(g, c2):
                                                failures.append({"bad_g": list(mset)})
                                                continue
                                            h = tuple(g[v] for v in f)
                                            if not cspcat.satisfies(h, composed):
                                                failures.append(
                                                    {"scope": a, "m0": m0}
                                                )
    return {"cases": cases, "failures": failures}


def _extend_scope(n_dom, n_cod, scope, image):
    values = [0] * n_dom
    for pos, v in zip(scope, image):
        values[pos] = v
    return tuple(values)


def _extend_elems(n_dom, n_cod, mapping):
    return tuple(mapping.get(x, 0) for x in range(n_dom))


# ---------------------------------------------------------------------------
# suite registry for the service and CLI


def run_suite(name: str, cap: int | None = None, seed: int = DEFAULT_SEED) -> dict:
    if cap is not None and cap > MAX_CAP:
        raise ExplosionError(f"cap {cap} exceeds hard limit {MAX_CAP}")
    if name == "laxity":
        parts = {
            "funcrel_exhaustive": funcrel_laxity_exhaustive(),
            "funcrel_literal": funcrel_laxity_literal(),
            "sectorial_random": sectorial_laxity_random(seed=seed),
            "signalling_random": signalling_laxity_random(seed=seed),
        }
    elif name == "intersectability":
        parts = {
            "sectorial_random": sectorial_intersectability_random(seed=seed),
            "funcrel_small": _funcrel_intersectability_small(),
        }
        report = signalling_counterexample_report()
        expected = (
            report["sigma1_satisfied"]
            and report["sigma2_satisfied"]
            and not report["meet_satisfied"]
            and report["witness"] is not None
        )
        parts["signalling_counterexample"] = {
            "cases": 3,
            "failures": [] if expected else [report],
            "witness_expected": True,
            "witness": report["witness"],
        }
    elif name == "atomicity":
        parts = {"domain_atomicity": domain_atomicity_random(seed=seed)}
    elif name == "timesym":
        parts = {"timesym": timesym_random(seed=seed)}
    elif name == "csp":
        parts = {
            "exhaustive": csp_laxity_exhaustive(),
            "literal": csp_laxity_literal(seed=seed),
        }
    else:
        raise ValueError(f"unknown suite {name!r}")
    cases = sum(p["cases"] for p in parts.values())
    failures = [f for p in parts.values() for f in p["failures"]]
    part_summaries = {}
    for key, part in parts.items():
        summary = {"cases": part["cases"], "failures": len(part["failures"])}
        if "skipped_arity_pairs" in part:
            summary["skipped_arity_pairs"] = part["skipped_arity_pairs"]
        part_summaries[key] = summary
    out = {
        "suite": name,
        "seed": seed,
        "cases": cases,
        "passed": not failures,
        "failures": failures[:5],
        "parts": part_summaries,
    }
    if name == "intersectability":
        out["witness"] = parts["signalling_counterexample"]["witness"]
    return out


def _funcrel_intersectability_small():
    shapes = [s for s in block_structures(2, 2)]
    cases = 0
    failures = []
    for sA, sB in product(shapes, repeat=2):
        dom = funcrel.partitioned_set([(f"a{k}", s) for k, s in enumerate(sA)])
        cod = funcrel.partitioned_set([(f"b{k}", s) for k, s in enumerate(sB)])
        rels = list(_all_relations(dom.labels, cod.labels))
        for tau in rels:
            for sig in rels:
                cases += 1
                if not funcrel.oracle_intersectability(dom, cod, tau, sig):
                    failures.append(
                        {"tau": tau.sorted_pairs, "sigma": sig.sorted_pairs}
                    )
    return {"cases": cases, "failures": failures}


SUITES = ("laxity", "intersectability", "atomicity", "timesym", "csp")
