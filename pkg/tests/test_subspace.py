"""Lattice operations on subspaces: meet, join, ortho, embedding, sampling."""

import random
from fractions import Fraction

import pytest

from qlat.linalg import GR_I, GaussianRational
from qlat.subspace import (
    Subspace,
    random_subspace,
    span,
    subspace_from_json,
    subspace_to_json,
)

X_AXIS = span([[1, 0]], 2)
Y_AXIS = span([[0, 1]], 2)
DIAG = span([[1, 1]], 2)


def random_sub(rng, ambient):
    from qlat.subspace import random_subspace_rng
    return random_subspace_rng(rng, ambient, rng.randint(0, ambient))


class TestConstruction:
    def test_span_examples(self):
        assert span([[1, 0]], 2).dim == 1
        assert span([], 3).is_zero()
        assert span([[1, 0], [2, 0]], 2).dim == 1

    def test_span_length_mismatch(self):
        with pytest.raises(ValueError):
            span([[1, 0, 0]], 2)

    def test_ambient_zero_rejected(self):
        with pytest.raises(ValueError):
            span([], 0)
        with pytest.raises(ValueError):
            Subspace.zero(0)

    def test_normalized_dim(self):
        assert X_AXIS.normalized_dim == Fraction(1, 2)
        assert Subspace.full(4).normalized_dim == 1


class TestMeetJoinOrtho:
    def test_meet_axes(self):
        assert X_AXIS.meet(Y_AXIS).is_zero()

    def test_meet_idempotent_absorbing(self):
        assert X_AXIS.meet(X_AXIS) == X_AXIS
        assert Subspace.full(2).meet(DIAG) == DIAG

    def test_join_axes(self):
        assert X_AXIS.join(Y_AXIS).is_full()
        assert X_AXIS.join(Subspace.zero(2)) == X_AXIS

    def test_ortho_bounds(self):
        assert Subspace.zero(3).ortho().is_full()
        assert Subspace.full(3).ortho().is_zero()

    def test_ortho_real_line(self):
        assert X_AXIS.ortho() == Y_AXIS

    def test_ortho_complex_line(self):
        # <(1, i), (i, 1)> = conj(1)*i + conj(i)*1 = i - i = 0
        p = span([[1, GR_I]], 2)
        assert p.ortho().equals(span([[GR_I, 1]], 2))

    def test_ambient_mismatch_raises(self):
        p3 = span([[1, 0, 0]], 3)
        with pytest.raises(ValueError):
            X_AXIS.meet(p3)
        with pytest.raises(ValueError):
            X_AXIS.join(p3)
        with pytest.raises(ValueError):
            X_AXIS.equals(p3)
        with pytest.raises(ValueError):
            X_AXIS.leq(p3)

    def test_leq(self):
        assert Subspace.zero(2).leq(X_AXIS)
        assert X_AXIS.leq(Subspace.full(2))
        assert not X_AXIS.leq(Y_AXIS)
        assert X_AXIS.leq(X_AXIS)

    def test_equality_lemma_distinct_lines(self):
        # (p | q) & (~p | ~q) is nonzero exactly when p != q
        gap = X_AXIS.join(Y_AXIS).meet(X_AXIS.ortho().join(Y_AXIS.ortho()))
        assert not gap.is_zero()
        same = X_AXIS.join(X_AXIS).meet(X_AXIS.ortho().join(X_AXIS.ortho()))
        assert same.is_zero()


class TestLatticeLaws:
    """Ortholattice and modularity properties on seeded random subspaces."""

    def test_ortholattice_laws(self):
        rng = random.Random(2024)
        for _ in range(200):
            n = rng.randint(1, 6)
            p = random_sub(rng, n)
            q = random_sub(rng, n)
            assert p.ortho().ortho() == p
            assert p.meet(p.ortho()).is_zero()
            assert p.join(p.ortho()).is_full()
            if p.leq(q):
                assert q.ortho().leq(p.ortho())
            assert p.meet(q).ortho() == p.ortho().join(q.ortho())
            assert p.join(q).ortho() == p.ortho().meet(q.ortho())

    def test_modularity_unconditional(self):
        rng = random.Random(11)
        for _ in range(150):
            n = rng.randint(1, 6)
            x, y, z = (random_sub(rng, n) for _ in range(3))
            lhs = x.meet(y.join(x.meet(z)))
            rhs = x.meet(y).join(z)
            assert lhs.meet(rhs) == lhs  # lhs <= rhs

    def test_orthomodularity_sasaki(self):
        rng = random.Random(12)
        for _ in range(150):
            n = rng.randint(1, 6)
            x, y = (random_sub(rng, n) for _ in range(2))
            lhs = x.meet(x.ortho().join(x.meet(y)))
            assert lhs.meet(y) == lhs

    def test_valuation_and_monotone(self):
        rng = random.Random(13)
        for _ in range(150):
            n = rng.randint(1, 6)
            p, q = (random_sub(rng, n) for _ in range(2))
            assert p.dim + q.dim == p.join(q).dim + p.meet(q).dim
            if p.leq(q) and p != q:
                assert p.dim < q.dim

    def test_equality_lemma_random(self):
        rng = random.Random(14)
        for _ in range(150):
            n = rng.randint(1, 5)
            p, q = (random_sub(rng, n) for _ in range(2))
            gap = p.join(q).meet(p.ortho().join(q.ortho()))
            assert (p == q) == gap.is_zero()


class TestTensorEmbed:
    def test_full_embeds_to_full(self):
        assert Subspace.full(2).tensor_embed(2).is_full()

    def test_dim_scaling(self):
        e = X_AXIS.tensor_embed(2, "right")
        assert (e.ambient, e.dim) == (4, 2)
        assert Subspace.zero(2).tensor_embed(3).is_zero()

    def test_sides_differ(self):
        right = X_AXIS.tensor_embed(2, "right")
        left = X_AXIS.tensor_embed(2, "left")
        assert right.ambient == left.ambient == 4
        assert right.dim == left.dim == 2

    def test_bad_args(self):
        with pytest.raises(ValueError):
            X_AXIS.tensor_embed(0)
        with pytest.raises(ValueError):
            X_AXIS.tensor_embed(2, "middle")

    def test_lattice_homomorphism(self):
        rng = random.Random(21)
        for side in ("right", "left"):
            for _ in range(40):
                p = random_sub(rng, 2)
                q = random_sub(rng, 2)
                f = rng.randint(1, 3)
                ep, eq = p.tensor_embed(f, side), q.tensor_embed(f, side)
                assert p.meet(q).tensor_embed(f, side) == ep.meet(eq)
                assert p.join(q).tensor_embed(f, side) == ep.join(eq)
                assert p.ortho().tensor_embed(f, side) == ep.ortho()


class TestRandomSubspace:
    def test_exact_dims(self):
        for d in range(0, 5):
            s = random_subspace(4, d, seed=3)
            assert s.dim == d

    def test_deterministic(self):
        a = random_subspace(4, 2, seed=123)
        b = random_subspace(4, 2, seed=123)
        assert a == b
        c = random_subspace(4, 2, seed=124)
        # overwhelmingly a different subspace
        assert a != c

    def test_dim_zero(self):
        assert random_subspace(3, 0, seed=0).is_zero()

    def test_bad_dim(self):
        with pytest.raises(ValueError):
            random_subspace(3, 4, seed=0)


class TestJson:
    def test_round_trip(self):
        rng = random.Random(31)
        for _ in range(20):
            n = rng.randint(1, 5)
            p = random_sub(rng, n)
            blob = subspace_to_json(p)
            assert subspace_from_json(blob) == p

    def test_format(self):
        p = span([[GaussianRational(Fraction(1, 2), Fraction(-1, 3))]], 1)
        blob = subspace_to_json(p)
        assert blob["ambient"] == 1
        # canonical basis normalizes the leading entry to 1
        assert blob["basis"] == [[["1", "1", "0", "1"]]]

    def test_malformed(self):
        with pytest.raises(ValueError):
            subspace_from_json({"ambient": 2})
        with pytest.raises(ValueError):
            subspace_from_json({"ambient": 2, "basis": [[["1", "1", "0"]]]})
