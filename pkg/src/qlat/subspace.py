"""The lattice of subspaces of C^n.

A subspace is stored as its canonical RREF spanning basis, so equality of
subspaces is a syntactic comparison of bases. Meet is computed through the
kernel representation (a matrix whose null space is the subspace), join by
stacking bases, and orthocomplement through the conjugated basis kernel.
All operations are exact and pure; values are immutable and freely shareable.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .linalg import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    RationalMatrix,
    conj_entries,
    entry_from_json,
    entry_to_json,
    kernel,
    kron,
    row_space,
    vstack,
)

REDRAW_CAP = 1000


class Subspace:
    """A subspace of C^n held as a canonical RREF basis (rows span it)."""

    __slots__ = ("ambient", "basis", "_ortho")

    def __init__(self, ambient: int, basis: RationalMatrix):
        # Internal constructor: ``basis`` must already be canonical RREF
        # with no zero rows. External callers should use span().
        if ambient < 1:
            raise ValueError("ambient dimension must be at least 1")
        if basis.cols != ambient:
            raise ValueError("basis width does not match ambient dimension")
        self.ambient = ambient
        self.basis = basis
        self._ortho = None

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, RationalMatrix(0, ambient, []))

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, RationalMatrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def normalized_dim(self) -> Fraction:
        """dim / ambient, an exact rational in [0, 1]."""
        return Fraction(self.dim, self.ambient)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def _check_ambient(self, other: "Subspace"):
        if not isinstance(other, Subspace):
            raise TypeError(f"expected a Subspace, got {type(other).__name__}")
        if self.ambient != other.ambient:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient} vs {other.ambient}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of C^{self.ambient}, basis {self.basis!r})"

    def equals(self, other: "Subspace") -> bool:
        """Canonical-basis comparison; raises on ambient mismatch."""
        self._check_ambient(other)
        return self.basis == other.basis

    def leq(self, other: "Subspace") -> bool:
        """Containment self <= other."""
        self._check_ambient(other)
        if self.dim > other.dim:
            return False
        return self.join(other).dim == other.dim

    def kernel_rep(self) -> RationalMatrix:
        """A matrix whose null space is exactly this subspace.

        Rows are the entrywise conjugates of an orthocomplement basis, so
        M v = 0 iff v is orthogonal to ortho(self), i.e. v in self.
        """
        return conj_entries(self.ortho().basis)

    def meet(self, other: "Subspace") -> "Subspace":
        """Set intersection, computed as the kernel of stacked kernel reps."""
        self._check_ambient(other)
        stacked = vstack(self.kernel_rep(), other.kernel_rep())
        return Subspace(self.ambient, kernel(stacked))

    def join(self, other: "Subspace") -> "Subspace":
        """Span of the union (closure of the span; closed automatically here)."""
        self._check_ambient(other)
        return Subspace(self.ambient, row_space(vstack(self.basis, other.basis)))

    def ortho(self) -> "Subspace":
        """Orthogonal complement: all v with <b, v> = sum conj(b_i) v_i = 0."""
        if self._ortho is None:
            o = Subspace(self.ambient, kernel(conj_entries(self.basis)))
            o._ortho = self
            self._ortho = o
        return self._ortho

    def __and__(self, other):
        return self.meet(other)

    def __or__(self, other):
        return self.join(other)

    def __invert__(self):
        return self.ortho()

    def tensor_embed(self, factor_dim: int, side: str = "right") -> "Subspace":
        """Image under the lattice embedding into C^(ambient * factor_dim).

        side="right" sends a basis row b to {b kron e_j}; side="left" to
        {e_j kron b}. Both multiply dim by factor_dim and commute with meet,
        join and ortho.
        """
        if factor_dim < 1:
            raise ValueError("factor dimension must be at least 1")
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        big = self.ambient * factor_dim
        rows = []
        for brow in self.basis.entries:
            b = RationalMatrix(1, self.ambient, [brow])
            for j in range(factor_dim):
                e = RationalMatrix(1, factor_dim,
                                   [[GR_ONE if k == j else GR_ZERO for k in range(factor_dim)]])
                prod = kron(b, e) if side == "right" else kron(e, b)
                rows.append(prod.entries[0])
        if not rows:
            return Subspace.zero(big)
        return Subspace(big, row_space(RationalMatrix(len(rows), big, rows)))


def span(vectors, ambient: int) -> Subspace:
    """Subspace spanned by the given vectors of C^ambient (empty -> zero)."""
    rows = [list(v) for v in vectors]
    for v in rows:
        if len(v) != ambient:
            raise ValueError(f"vector length {len(v)} does not match ambient {ambient}")
    if not rows:
        return Subspace.zero(ambient)
    return Subspace(ambient, row_space(RationalMatrix.from_rows(rows, ambient)))


def random_subspace_rng(rng: random.Random, ambient: int, dim: int,
                        entry_bound: int = 3) -> Subspace:
    """Draw a subspace of exact dimension ``dim`` using the caller's RNG.

    Entries are Gaussian integers with |re|, |im| <= entry_bound;
    dimension-deficient draws are rejected and redrawn (capped).
    """
    if not 0 <= dim <= ambient:
        raise ValueError(f"requested dimension {dim} not in [0, {ambient}]")
    if entry_bound < 1:
        raise ValueError("entry bound must be at least 1")
    if dim == 0:
        return Subspace.zero(ambient)
    b = entry_bound
    for _ in range(REDRAW_CAP):
        vectors = [
            [GaussianRational(rng.randint(-b, b), rng.randint(-b, b)) for _ in range(ambient)]
            for _ in range(dim)
        ]
        s = span(vectors, ambient)
        if s.dim == dim:
            return s
    raise RuntimeError(
        f"failed to draw a dimension-{dim} subspace of C^{ambient} in {REDRAW_CAP} attempts")


def random_subspace(ambient: int, dim: int, seed: int, entry_bound: int = 3) -> Subspace:
    """Deterministic seeded wrapper around :func:`random_subspace_rng`."""
    return random_subspace_rng(random.Random(seed), ambient, dim, entry_bound)


def subspace_to_json(p: Subspace) -> dict:
    """{"ambient": n, "basis": [[4-int-string entry, ...], ...]}"""
    return {
        "ambient": p.ambient,
        "basis": [[entry_to_json(z) for z in row] for row in p.basis.entries],
    }


def subspace_from_json(obj) -> Subspace:
    if not isinstance(obj, dict) or "ambient" not in obj or "basis" not in obj:
        raise ValueError("subspace JSON must have 'ambient' and 'basis' keys")
    ambient = int(obj["ambient"])
    rows = [[entry_from_json(e) for e in row] for row in obj["basis"]]
    return span(rows, ambient)
