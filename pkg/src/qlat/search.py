"""Randomized falsification and dimension-separation certificates.

The search half of the toolkit: seeded sampling of subspace assignments to
hunt for counterexamples to lattice equations, structured witnesses for the
distribution test formula, certificates separating the logics of different
ambient dimensions, counterexample lifting along tensor embeddings, and a
per-assignment invariant audit.

Everything is deterministic from explicit seeds. A verdict never claims
validity: "no_counterexample" means exactly that the sampled evaluations all
held. Counterexamples, in contrast, are exact and replayable.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .formula import (
    Assignment,
    Equation,
    Formula,
    ONE,
    ZERO,
    alpha,
    alpha_levels,
    assignment_from_json,
    assignment_to_json,
    evaluate,
    evaluate_equation,
    evaluate_with_cache,
    free_vars,
    m_distributive,
    parse,
    to_source,
)
from .linalg import GR_ONE, GR_ZERO
from .subspace import Subspace, random_subspace_rng, span, subspace_from_json, subspace_to_json

COUNTEREXAMPLE = "counterexample_found"
NO_COUNTEREXAMPLE = "no_counterexample"

DEFAULT_TRIALS = 1000
DEFAULT_ENTRY_BOUND = 3
DEFAULT_SIZE_CAP = 16
# Escalating trial budgets for counterexample hunts; the first stage pins
# subspace dimensions near ambient/2, later stages draw uniformly from the
# interior dims 1..n-1 (dims 0 and n can never witness a failure of the
# m-distributive law: any variable at a bound collapses both sides).
ESCALATION_BUDGETS = (1000, 10000, 100000)


class InconclusiveSearchError(RuntimeError):
    """The escalating search budget ran out without finding a counterexample."""

    def __init__(self, equation: Equation, ambient_dim: int, trials: int, seed: int):
        super().__init__(
            f"no counterexample to '{to_source(equation)}' found in C^{ambient_dim} "
            f"after {trials} trials (seed {seed}); inconclusive")
        self.equation = equation
        self.ambient_dim = ambient_dim
        self.trials = trials
        self.seed = seed


@dataclass(frozen=True)
class Verdict:
    """Outcome of one batch of evaluations of an equation."""

    status: str
    equation: Equation
    ambient_dim: int
    trials_run: int
    seed: int
    witness: Optional[Assignment] = None
    witness_gap: Optional[tuple[Subspace, Subspace]] = None

    def __post_init__(self):
        if self.status not in (COUNTEREXAMPLE, NO_COUNTEREXAMPLE):
            raise ValueError(f"unknown verdict status {self.status!r}")
        if (self.status == COUNTEREXAMPLE) != (self.witness is not None):
            raise ValueError("witness must be present iff a counterexample was found")
        if (self.witness is None) != (self.witness_gap is None):
            raise ValueError("witness and witness_gap must be present together")


@dataclass(frozen=True)
class SeparationCertificate:
    """An equation that holds at the low dimension and fails at the high one."""

    low_dim: int
    high_dim: int
    separator: Equation
    holds_evidence: Verdict
    fails_witness: Verdict

    def __post_init__(self):
        if not self.low_dim < self.high_dim:
            raise ValueError("low_dim must be strictly below high_dim")
        if self.fails_witness.status != COUNTEREXAMPLE:
            raise ValueError("fails_witness must carry a counterexample")
        if self.holds_evidence.status != NO_COUNTEREXAMPLE:
            raise ValueError("holds_evidence must report no counterexample")


def _coerce_equation(eq) -> Equation:
    # A bare formula is read as the tautology claim "formula = 1".
    if isinstance(eq, Formula):
        return Equation(eq, ONE, "=")
    if isinstance(eq, Equation):
        return eq
    raise TypeError(f"expected an Equation or Formula, got {type(eq).__name__}")


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 2147483647 + trial)


def _draw_assignment(eq_vars: Sequence[str], ambient: int, seed: int, trial: int,
                     dim_schedule: Optional[Sequence[int]], entry_bound: int) -> Assignment:
    rng = _trial_rng(seed, trial)
    subs = {}
    for name in eq_vars:
        if dim_schedule is None:
            d = rng.randint(0, ambient)
        else:
            d = dim_schedule[rng.randrange(len(dim_schedule))]
        subs[name] = random_subspace_rng(rng, ambient, d, entry_bound)
    return Assignment(subs, ambient)


def _scan_range(eq: Equation, eq_vars: tuple[str, ...], ambient: int, seed: int,
                lo: int, hi: int, dim_schedule, entry_bound: int) -> Optional[int]:
    # Worker for parallel falsification: first failing trial index in [lo, hi).
    for t in range(lo, hi):
        a = _draw_assignment(eq_vars, ambient, seed, t, dim_schedule, entry_bound)
        holds, _, _ = evaluate_equation(eq, a)
        if not holds:
            return t
    return None


def falsify(eq, ambient_dim: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
            dim_schedule: Optional[Sequence[int]] = None, *,
            entry_bound: int = DEFAULT_ENTRY_BOUND,
            audit: Optional[Callable[[Assignment, Subspace, Subspace], None]] = None,
            workers: Optional[int] = None) -> Verdict:
    """Hunt for a counterexample over seeded random assignments.

    Subspace dimensions are drawn uniformly over 0..ambient unless
    ``dim_schedule`` pins them to the given choices. Deterministic given
    (equation, ambient, trials, seed): trial k always sees the same
    assignment. With ``workers`` the trials are scanned in parallel; the
    reported witness is still the one with the smallest trial index, so the
    verdict is identical to the sequential run.
    """
    eq = _coerce_equation(eq)
    if trials < 1:
        raise ValueError("at least one trial is required")
    if ambient_dim < 1:
        raise ValueError("ambient dimension must be at least 1")
    if dim_schedule is not None:
        dim_schedule = list(dim_schedule)
        if not dim_schedule or not all(0 <= d <= ambient_dim for d in dim_schedule):
            raise ValueError("dim_schedule must be nonempty dims within 0..ambient")
    eq_vars = tuple(sorted(free_vars(eq)))

    if workers and workers > 1 and audit is None and trials >= 4 * workers:
        first = _falsify_parallel(eq, eq_vars, ambient_dim, trials, seed,
                                  dim_schedule, entry_bound, workers)
    else:
        first = None
        for t in range(trials):
            a = _draw_assignment(eq_vars, ambient_dim, seed, t, dim_schedule, entry_bound)
            holds, lv, rv = evaluate_equation(eq, a)
            if audit is not None:
                audit(a, lv, rv)
            if not holds:
                first = t
                break

    if first is None:
        return Verdict(NO_COUNTEREXAMPLE, eq, ambient_dim, trials, seed)
    a = _draw_assignment(eq_vars, ambient_dim, seed, first, dim_schedule, entry_bound)
    holds, lv, rv = evaluate_equation(eq, a)
    assert not holds
    return Verdict(COUNTEREXAMPLE, eq, ambient_dim, first + 1, seed, a, (lv, rv))


def _falsify_parallel(eq, eq_vars, ambient, trials, seed, dim_schedule,
                      entry_bound, workers) -> Optional[int]:
    chunk = max(1, trials // (workers * 4))
    ranges = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
    best: Optional[int] = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_scan_range, eq, eq_vars, ambient, seed, lo, hi,
                        dim_schedule, entry_bound)
            for lo, hi in ranges
        ]
        for fut in futures:
            hit = fut.result()
            if hit is not None and (best is None or hit < best):
                best = hit
    return best


# ---------------------------------------------------------------------------
# Structured witnesses


def _half_split_triple(rows: list, ambient: int) -> tuple[Subspace, Subspace, Subspace]:
    """From an even list of independent vectors build the standard triple.

    p spans the first half, q the second half, r the diagonal sums; the three
    are pairwise trivially intersecting subspaces of half the spanned
    dimension.
    """
    cnt = len(rows)
    if cnt % 2 != 0 or cnt == 0:
        raise ValueError("an even, nonempty set of vectors is required")
    h = cnt // 2
    p = span(rows[:h], ambient)
    q = span(rows[h:], ambient)
    r = span([[a + b for a, b in zip(rows[i], rows[h + i])] for i in range(h)], ambient)
    return p, q, r


def structured_alpha_witness(ambient_dim: int) -> Assignment:
    """The standard half-dimension triple on which the distribution test
    formula evaluates to a subspace of dimension exactly ambient/2.

    p and q span complementary halves of the standard basis and r the
    diagonal; all pairwise meets are trivial. Requires an even dimension.
    """
    if ambient_dim < 2 or ambient_dim % 2 != 0:
        raise ValueError("ambient dimension must be even and at least 2")
    basis = [[GR_ONE if j == i else GR_ZERO for j in range(ambient_dim)]
             for i in range(ambient_dim)]
    p, q, r = _half_split_triple(basis, ambient_dim)
    a = Assignment({"p": p, "q": q, "r": r}, ambient_dim)
    h = ambient_dim // 2
    if p.meet(q).dim or p.meet(r).dim or q.meet(r).dim:
        raise RuntimeError("structured triple has a nontrivial pairwise meet")
    if evaluate(alpha(), a).dim != h:
        raise RuntimeError("structured triple failed the half-dimension check")
    return a


def qubit_alpha_separator(n: int, trials: int = 200, seed: int = 0,
                          size_cap: int = DEFAULT_SIZE_CAP) -> SeparationCertificate:
    """Separate the logics of C^(2^n) and C^(2^(n+1)) by the iterated test
    formula: level n+1 vanishes identically at the low dimension and a
    chained structured witness gives it dimension exactly 1 at the high one.

    Every sampled evaluation is audited against the per-level dimension bound
    dim(level k) <= low / 2^k.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    low, high = 2 ** n, 2 ** (n + 1)
    if high > size_cap:
        raise ValueError(f"dimension {high} exceeds the size cap {size_cap}")
    levels = alpha_levels(n + 1)
    separator = Equation(levels[-1], ZERO, "=")

    def _audit(assignment: Assignment, lv: Subspace, rv: Subspace):
        _, cache = evaluate_with_cache(levels[-1], assignment)
        for k, lvl in enumerate(levels, start=1):
            val = cache[id(lvl)]
            if val.dim * (2 ** k) > assignment.ambient:
                raise RuntimeError(
                    f"level-{k} dimension bound violated: dim {val.dim} in "
                    f"C^{assignment.ambient}")

    holds = falsify(separator, low, trials, seed, audit=_audit)
    if holds.status != NO_COUNTEREXAMPLE:
        raise RuntimeError(
            f"iterated test formula unexpectedly failed in C^{low}; this is a bug")

    subs: dict[str, Subspace] = {}
    assignment = None
    value = None
    for k in range(1, n + 2):
        if k == 1:
            rows = [[GR_ONE if j == i else GR_ZERO for j in range(high)] for i in range(high)]
        else:
            rows = [list(r) for r in value.basis.entries]
        p, q, r = _half_split_triple(rows, high)
        subs[f"p{k}"], subs[f"q{k}"], subs[f"r{k}"] = p, q, r
        assignment = Assignment(subs, high)
        value = evaluate(levels[k - 1], assignment)
        if value.dim * (2 ** k) != high:
            raise RuntimeError(f"chained witness level {k} has dim {value.dim}, "
                               f"expected {high // 2 ** k}")
    fails = Verdict(COUNTEREXAMPLE, separator, high, 1, seed, assignment,
                    (value, Subspace.zero(high)))
    return SeparationCertificate(low, high, separator, holds, fails)


def separate_dims(m: int, n: int, seed: int = 0, holds_trials: int = 500,
                  budgets: Sequence[int] = ESCALATION_BUDGETS,
                  entry_bound: int = DEFAULT_ENTRY_BOUND,
                  size_cap: int = DEFAULT_SIZE_CAP) -> SeparationCertificate:
    """Separate C^m from C^n (m < n) with the m-distributive law.

    Evidence at dimension m comes from seeded sampling; the counterexample at
    dimension n from an escalating seeded search (stage 1 pins dims near n/2,
    later stages draw from 1..n-1). Raises InconclusiveSearchError when the
    budget is exhausted; a missing counterexample is never papered over.
    """
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    if n > size_cap:
        raise ValueError(f"dimension {n} exceeds the size cap {size_cap}")
    separator = m_distributive(m)
    holds = falsify(separator, m, holds_trials, seed, entry_bound=entry_bound)
    if holds.status != NO_COUNTEREXAMPLE:
        raise RuntimeError(
            f"the {m}-distributive law unexpectedly failed in C^{m}; this is a bug")

    half_dims = sorted({n // 2, (n + 1) // 2})
    interior = list(range(1, n))
    schedules = [half_dims] + [interior] * (len(budgets) - 1)
    total = 0
    for stage, (budget, schedule) in enumerate(zip(budgets, schedules)):
        stage_seed = seed * 10007 + stage
        verdict = falsify(separator, n, budget, stage_seed,
                          dim_schedule=schedule, entry_bound=entry_bound)
        total += verdict.trials_run
        if verdict.status == COUNTEREXAMPLE:
            return SeparationCertificate(m, n, separator, holds, verdict)
    raise InconclusiveSearchError(separator, n, total, seed)


def embed_assignment(a: Assignment, factor_dim: int, side: str = "right") -> Assignment:
    return Assignment({name: s.tensor_embed(factor_dim, side) for name, s in a.items()},
                      a.ambient * factor_dim)


def lift_counterexample(v: Verdict, factor_dim: int) -> Verdict:
    """Tensor-embed a counterexample into a larger dimension.

    Embedding is a lattice homomorphism, so the re-evaluated gap is exactly
    the embedded gap and the lift always stays a counterexample.
    """
    if v.status != COUNTEREXAMPLE:
        raise ValueError("only counterexample verdicts can be lifted")
    lifted = embed_assignment(v.witness, factor_dim)
    holds, lv, rv = evaluate_equation(v.equation, lifted)
    if holds:
        raise RuntimeError("lifted witness no longer violates the equation; this is a bug")
    return Verdict(COUNTEREXAMPLE, v.equation, v.ambient_dim * factor_dim,
                   v.trials_run, v.seed, lifted, (lv, rv))


# ---------------------------------------------------------------------------
# Invariant audit


def audit_invariants(assignment, ambient_dim: int | None = None) -> dict:
    """Run the full invariant battery at one assignment.

    Checks the ortholattice laws per variable, De Morgan / valuation /
    equality-lemma per pair, and, when p, q, r are all bound, the containment
    and dimension bounds of the distribution test formula. Returns a JSON-able
    report with one entry per check and exact values in the details.
    """
    a = _coerce_assignment_audit(assignment, ambient_dim)
    amb = a.ambient
    top = Subspace.full(amb)
    bot = Subspace.zero(amb)
    checks: list[dict] = []

    def record(name: str, ok: bool, detail: str = ""):
        checks.append({"name": name, "pass": bool(ok), "detail": detail})

    names = sorted(a.subspaces)
    for v in names:
        p = a[v]
        record(f"double_ortho[{v}]", p.ortho().ortho() == p)
        record(f"excluded_middle[{v}]", p.join(p.ortho()) == top)
        record(f"non_contradiction[{v}]", p.meet(p.ortho()) == bot)
    for i, v in enumerate(names):
        for w in names[i + 1:]:
            p, q = a[v], a[w]
            mt, jn = p.meet(q), p.join(q)
            record(f"de_morgan_and[{v},{w}]", mt.ortho() == p.ortho().join(q.ortho()))
            record(f"de_morgan_or[{v},{w}]", jn.ortho() == p.ortho().meet(q.ortho()))
            record(f"valuation[{v},{w}]",
                   p.dim + q.dim == jn.dim + mt.dim,
                   f"dim {p.dim}+{q.dim} vs {jn.dim}+{mt.dim}")
            gap = jn.meet(p.ortho().join(q.ortho()))
            record(f"equality_lemma[{v},{w}]", (p == q) == (gap == bot),
                   f"gap dim {gap.dim}")
            record(f"order_inverting[{v},{w}]",
                   not p.leq(q) or q.ortho().leq(p.ortho()))
    if all(k in a for k in ("p", "q", "r")):
        aval = evaluate(alpha(), a)
        p = a["p"]
        record("alpha_in_ortho_p", aval.leq(p.ortho()), f"alpha dim {aval.dim}")
        record("alpha_dim_le_dim_p", aval.dim <= p.dim,
               f"{aval.dim} <= {p.dim}")
        record("alpha_dim_le_codim_p", aval.dim <= amb - p.dim,
               f"{aval.dim} <= {amb - p.dim}")
    return {
        "ambient": amb,
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks),
    }


def _coerce_assignment_audit(assignment, ambient_dim):
    if isinstance(assignment, Assignment):
        return assignment
    return Assignment(assignment, ambient_dim)


# ---------------------------------------------------------------------------
# JSON reports


def verdict_to_json(v: Verdict) -> dict:
    out = {
        "status": v.status,
        "equation": to_source(v.equation),
        "ambient": v.ambient_dim,
        "trials": v.trials_run,
        "seed": v.seed,
        "witness": None,
        "gap": None,
    }
    if v.witness is not None:
        out["witness"] = assignment_to_json(v.witness)
        lv, rv = v.witness_gap
        out["gap"] = {"lhs": subspace_to_json(lv), "rhs": subspace_to_json(rv)}
    return out


def verdict_from_json(obj: dict) -> Verdict:
    eq = parse(obj["equation"])
    eq = _coerce_equation(eq)
    witness = None
    gap = None
    if obj.get("witness") is not None:
        witness = assignment_from_json(obj["witness"], int(obj["ambient"]))
        gap = (subspace_from_json(obj["gap"]["lhs"]), subspace_from_json(obj["gap"]["rhs"]))
    return Verdict(obj["status"], eq, int(obj["ambient"]), int(obj["trials"]),
                   int(obj["seed"]), witness, gap)


def certificate_to_json(c: SeparationCertificate) -> dict:
    return {
        "low_dim": c.low_dim,
        "high_dim": c.high_dim,
        "separator": to_source(c.separator),
        "holds_evidence": verdict_to_json(c.holds_evidence),
        "fails_witness": verdict_to_json(c.fails_witness),
    }
