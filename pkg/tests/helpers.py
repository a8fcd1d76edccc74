"""Shared generators for the test suite: seeded random formulas and assignments."""

from __future__ import annotations

import random

from qlat.formula import And, Assignment, Formula, Not, ONE, Or, Var, ZERO
from qlat.subspace import random_subspace_rng


def random_formula(rng: random.Random, names=("p", "q", "r"), depth: int = 5) -> Formula:
    if depth <= 0:
        roll = rng.random()
        if roll < 0.8:
            return Var(rng.choice(names))
        return ZERO if roll < 0.9 else ONE
    roll = rng.random()
    if roll < 0.3:
        return And(random_formula(rng, names, depth - 1),
                   random_formula(rng, names, depth - 1))
    if roll < 0.6:
        return Or(random_formula(rng, names, depth - 1),
                  random_formula(rng, names, depth - 1))
    if roll < 0.8:
        return Not(random_formula(rng, names, depth - 1))
    if roll < 0.95:
        return Var(rng.choice(names))
    return ZERO if roll < 0.975 else ONE


def random_assignment(rng: random.Random, names, ambient: int,
                      entry_bound: int = 3) -> Assignment:
    subs = {}
    for name in names:
        dim = rng.randint(0, ambient)
        subs[name] = random_subspace_rng(rng, ambient, dim, entry_bound)
    return Assignment(subs, ambient)
