"""Acceptance suite.

One test per criterion; each prints a single PASS/FAIL line with its elapsed
time (run with -s to stream them). Every numeric claim is exact unless a
tolerance is stated inline; sampling counts, budgets and time limits are
pinned here and nowhere else.
"""

import itertools
import json
import random
import time
from contextlib import contextmanager

import pytest

from helpers import random_assignment, random_formula
from qlat.formula import (
    Assignment,
    alpha,
    alpha_levels,
    distinctness_formula,
    evaluate,
    evaluate_equation,
    evaluate_with_cache,
    law,
    parse,
    to_source,
)
from qlat.ratfunc import RF_D, RF_ONE
from qlat.search import (
    COUNTEREXAMPLE,
    InconclusiveSearchError,
    NO_COUNTEREXAMPLE,
    audit_invariants,
    embed_assignment,
    falsify,
    lift_counterexample,
    qubit_alpha_separator,
    separate_dims,
    structured_alpha_witness,
    verdict_from_json,
    verdict_to_json,
)
from qlat.subspace import Subspace, random_subspace_rng, span
from qlat.templieb import (
    chebyshev,
    generator_e,
    jones_wenzl,
    jw_at_root,
    markov_trace,
    root_params,
)


@contextmanager
def criterion(label: str, budget_s: float):
    start = time.time()
    try:
        yield
    except BaseException:
        print(f"FAIL  {label}  [{time.time() - start:.2f}s]")
        raise
    elapsed = time.time() - start
    print(f"PASS  {label}  [{elapsed:.2f}s]")
    assert elapsed < budget_s, f"{label} exceeded its {budget_s}s budget"


def test_c01_classical_base_case():
    """All five laws hold exhaustively over the two-element lattice of C^1."""
    with criterion("criterion 1: classical base case in C^1", 1.0):
        zero, one = Subspace.zero(1), Subspace.full(1)
        laws = [law(n) for n in ("distributivity", "modularity", "orthomodularity",
                                 "de_morgan_and", "de_morgan_or", "excluded_middle")]
        for bits in itertools.product((zero, one), repeat=3):
            a = Assignment(dict(zip("xyz", bits)), 1)
            for eq in laws:
                holds, lv, rv = evaluate_equation(eq, a)
                assert holds, (to_source(eq), [b.dim for b in bits])


def test_c02_structured_distributivity_gap():
    """The structured witness gives the test formula dimension exactly m/2."""
    with criterion("criterion 2: structured gap dim = m/2 for m in {2,4,8}", 5.0):
        for m in (2, 4, 8):
            witness = structured_alpha_witness(m)
            assert evaluate(alpha(), witness).dim == m // 2


def test_c03_modularity_and_orthomodularity():
    """Conditional modular and orthomodular laws: 500 seeded instances per
    dimension 2..6, with z = x & w forcing the hypothesis z <= x."""
    with criterion("criterion 3: modularity/orthomodularity, 500 x dims 2..6", 30.0):
        rng = random.Random(301)
        for n in range(2, 7):
            for _ in range(500):
                x = random_subspace_rng(rng, n, rng.randint(0, n))
                y = random_subspace_rng(rng, n, rng.randint(0, n))
                w = random_subspace_rng(rng, n, rng.randint(0, n))
                z = x.meet(w)
                # modularity: z <= x implies x & (y | z) <= (x & y) | z
                assert x.meet(y.join(z)).leq(x.meet(y).join(z))
                # orthomodularity: z <= x implies x & (~x | z) <= z
                assert x.meet(x.ortho().join(z)).leq(z)


def test_c04_huhn_separation():
    """The m-distributive law survives 500 trials in C^m and is defeated in
    C^(m+1) within the escalating budget; witnesses re-verified exactly."""
    with criterion("criterion 4: Huhn separation for m in {1,2,3}", 60.0):
        for m in (1, 2, 3):
            try:
                cert = separate_dims(m, m + 1, seed=0, holds_trials=500,
                                     budgets=(1000, 10000, 100000))
            except InconclusiveSearchError as exc:
                pytest.fail(f"search inconclusive for m={m}: {exc}")
            assert cert.holds_evidence.status == NO_COUNTEREXAMPLE
            assert cert.holds_evidence.trials_run == 500
            assert cert.fails_witness.status == COUNTEREXAMPLE
            holds, lv, rv = evaluate_equation(cert.separator,
                                              cert.fails_witness.witness)
            assert not holds
            assert (lv, rv) == cert.fails_witness.witness_gap


def test_c05_qubit_register_separation():
    """Level n+1 of the iterated test formula vanishes over 200 trials in
    C^(2^n) with the per-level dimension bound asserted per trial, and the
    chained structured witness reaches dimension exactly 1 in C^(2^(n+1))."""
    with criterion("criterion 5: qubit-register separation for n in {0,1}", 30.0):
        for n in (0, 1):
            low = 2 ** n
            levels = alpha_levels(n + 1)
            audited = 0

            def audit(assignment, lv, rv):
                nonlocal audited
                _, cache = evaluate_with_cache(levels[-1], assignment)
                for k, lvl in enumerate(levels, start=1):
                    assert cache[id(lvl)].dim * (2 ** k) <= low
                audited += 1

            from qlat.formula import Equation, ZERO
            verdict = falsify(Equation(levels[-1], ZERO, "="), low, 200,
                              seed=0, audit=audit)
            assert verdict.status == NO_COUNTEREXAMPLE and audited == 200

            cert = qubit_alpha_separator(n, trials=200, seed=0)
            gap_value = cert.fails_witness.witness_gap[0]
            assert gap_value.dim == 1
            assert cert.fails_witness.ambient_dim == 2 ** (n + 1)


def test_c06_invariant_battery():
    """Valuation, equality lemma, ortho period two, De Morgan and the test
    formula bounds hold on 500 random assignments across dimensions 2..6."""
    with criterion("criterion 6: invariant battery, 500 assignments", 20.0):
        rng = random.Random(601)
        for i in range(500):
            n = 2 + i % 5
            a = random_assignment(rng, ("p", "q", "r"), n)
            report = audit_invariants(a)
            assert report["all_pass"], [c for c in report["checks"] if not c["pass"]]


def test_c07_embedding_homomorphism():
    """Evaluation commutes with the tensor embedding C^2 -> C^4 on 200 random
    formula/assignment pairs, and lifting preserves counterexample status."""
    with criterion("criterion 7: embedding homomorphism, 200 pairs", 10.0):
        rng = random.Random(701)
        for _ in range(200):
            f = random_formula(rng, ("p", "q", "r"), depth=rng.randint(1, 5))
            a = random_assignment(rng, ("p", "q", "r"), 2)
            embedded = embed_assignment(a, 2)
            assert evaluate(f, embedded) == evaluate(f, a).tensor_embed(2)
        base = falsify(law("distributivity"), 2, 1000, seed=0)
        assert base.status == COUNTEREXAMPLE
        lifted = lift_counterexample(base, 2)
        assert lifted.status == COUNTEREXAMPLE and lifted.ambient_dim == 4


def test_c08_distinctness_formula():
    """The nested formula for four lines vanishes on every coincident
    quadruple over fixed lines and is nonzero on some distinct quadruple."""
    with criterion("criterion 8: distinctness formula, k = 4 in C^2", 10.0):
        g = distinctness_formula(["p", "q", "r", "s"])
        lines = [span([[1, 0]], 2), span([[0, 1]], 2),
                 span([[1, 1]], 2), span([[1, -1]], 2)]
        for combo in itertools.product(lines, repeat=4):
            if len({id(x) for x in combo}) == 4:
                continue
            a = Assignment(dict(zip("pqrs", combo)), 2)
            assert evaluate(g, a).is_zero()
        rng = random.Random(801)
        found = False
        for _ in range(200):
            quad = [random_subspace_rng(rng, 2, 1) for _ in range(4)]
            if len(set(quad)) < 4:
                continue
            a = Assignment(dict(zip("pqrs", quad)), 2)
            if not evaluate(g, a).is_zero():
                found = True
                break
        assert found, "no distinct quadruple with nonzero value found"


def test_c09_tl_relations_symbolic():
    """The three defining relations hold as exact rational-function identities
    for every valid index pair up to six strands."""
    with criterion("criterion 9: TL relations symbolic, n <= 6", 10.0):
        for n in range(2, 7):
            es = {i: generator_e(n, i) for i in range(1, n)}
            for i in range(1, n):
                assert es[i] * es[i] == es[i]
                for j in range(1, n):
                    if abs(i - j) == 1:
                        assert es[i] * es[j] * es[i] == es[i] * (RF_D ** -2)
                    elif i != j:
                        assert es[i] * es[j] == es[j] * es[i]


def test_c10_jones_wenzl_oracle():
    """Projectors up to six strands satisfy the full characterization, and the
    two-strand projector is exactly 1 - e_1."""
    with criterion("criterion 10: Jones-Wenzl characterization, n <= 6", 20.0):
        from qlat.templieb import TLElement
        assert jones_wenzl(2) == TLElement.identity(2) - generator_e(2, 1)
        for n in range(1, 7):
            p = jones_wenzl(n)
            assert not p.is_zero()
            assert p.identity_coefficient() == RF_ONE
            assert p * p == p
            for i in range(1, n):
                e = generator_e(n, i)
                assert (e * p).is_zero() and (p * e).is_zero()


def test_c11_trace_formulas():
    """Symbolic traces tr(e_i) = 1/d^2 and tr(p_j) = D_j(d)/d^j; numeric
    values at the roots within 1e-9; projector levels beyond r-1 rejected."""
    with criterion("criterion 11: Markov trace formulas", 10.0):
        for n in range(2, 7):
            for i in range(1, n):
                assert markov_trace(generator_e(n, i)) == RF_ONE / RF_D ** 2
        for j in range(1, 6):
            expected = chebyshev(j).as_rational_function() / RF_D ** j
            assert markov_trace(jones_wenzl(j)) == expected
        import math
        for r in (3, 4, 5):
            d = root_params(r)
            tr = markov_trace(generator_e(2, 1)).evaluate(d)
            assert abs(tr - 0.25 / math.cos(math.pi / r) ** 2) < 1e-9
            assert abs(chebyshev(r - 1).evaluate(d)) < 1e-9
            jw_at_root(r - 1, r)
            with pytest.raises(ValueError):
                jw_at_root(r, r)


def test_c12_determinism_and_round_trips():
    """Identical seeds give byte-identical verdict JSON; parse after print is
    the identity on 1000 random formulas; serialized witnesses replay to the
    recorded gap."""
    with criterion("criterion 12: determinism and round-trips", 10.0):
        a = falsify(law("distributivity"), 2, 500, seed=121)
        b = falsify(law("distributivity"), 2, 500, seed=121)
        ja = json.dumps(verdict_to_json(a), indent=2, sort_keys=True)
        jb = json.dumps(verdict_to_json(b), indent=2, sort_keys=True)
        assert ja == jb

        rng = random.Random(122)
        for _ in range(1000):
            f = random_formula(rng, ("p", "q", "r", "s"), depth=rng.randint(0, 8))
            assert parse(to_source(f)) == f

        replayed = verdict_from_json(json.loads(ja))
        holds, lv, rv = evaluate_equation(replayed.equation, replayed.witness)
        assert not holds
        assert (lv, rv) == replayed.witness_gap == a.witness_gap
