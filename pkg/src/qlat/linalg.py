"""Exact linear algebra over the Gaussian rationals.

Scalars live in Q(i): complex numbers whose real and imaginary parts are
arbitrary-precision rationals (``fractions.Fraction``). Every operation is
exact; nothing here touches floating point. Row reduction runs fraction-free
on Gaussian-integer rows (Montante/Bareiss full elimination), which keeps
intermediate entries bounded by minors of the input and stays fast even when
coefficients grow large. The reduced row echelon form is unique, so it doubles
as a canonical form: two row spaces are equal iff their RREFs are identical.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Rational = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class GaussianRational:
    """Exact complex scalar ``re + im*i`` with rational parts.

    Instances are immutable by convention; all arithmetic returns new values.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        return GR_ONE / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def entry_to_json(z: GaussianRational) -> list:
    """Serialize to the 4-integer-string wire format."""
    return [
        str(z.re.numerator),
        str(z.re.denominator),
        str(z.im.numerator),
        str(z.im.denominator),
    ]


def entry_from_json(item) -> GaussianRational:
    if not isinstance(item, (list, tuple)) or len(item) != 4:
        raise ValueError(f"matrix entry must be a 4-element list, got {item!r}")
    rn, rd, imn, imd = (int(s) for s in item)
    return GaussianRational(Fraction(rn, rd), Fraction(imn, imd))


class RationalMatrix:
    """Immutable row-major matrix over the Gaussian rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        grid = tuple(tuple(_coerce_entry(x) for x in row) for row in entries)
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise ValueError(f"entries do not form a {rows}x{cols} grid")
        self.rows = rows
        self.cols = cols
        self.entries = grid

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [[GR_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [[GR_ONE if i == j else GR_ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self):
        if self.rows == 0:
            return f"RationalMatrix(0x{self.cols})"
        body = "; ".join(", ".join(repr(z) for z in row) for row in self.entries)
        return f"[{body}]"

    def is_zero(self) -> bool:
        return all(not z for row in self.entries for z in row)


def _coerce_entry(x) -> GaussianRational:
    z = GaussianRational._coerce(x)
    if z is None:
        raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")
    return z


def conj_entries(m: RationalMatrix) -> RationalMatrix:
    """Entrywise complex conjugation (no transpose)."""
    return RationalMatrix(m.rows, m.cols, [[z.conjugate() for z in row] for row in m.entries])


def conj_transpose(m: RationalMatrix) -> RationalMatrix:
    """The Hermitian adjoint: (M†)_ij = conj(M_ji)."""
    return RationalMatrix(
        m.cols, m.rows,
        [[m.entries[i][j].conjugate() for i in range(m.rows)] for j in range(m.cols)],
    )


def matmul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        arow = a.entries[i]
        row = []
        for j in range(b.cols):
            acc = GR_ZERO
            for k in range(a.cols):
                acc = acc + arow[k] * b.entries[k][j]
            row.append(acc)
        out.append(row)
    return RationalMatrix(a.rows, b.cols, out)


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product; (a kron b) has block a_ij * b."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            row = []
            for j in range(a.cols):
                aij = a.entries[i][j]
                row.extend(aij * b.entries[k][l] for l in range(b.cols))
            out.append(row)
    return RationalMatrix(a.rows * b.rows, a.cols * b.cols, out)


def vstack(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.cols != b.cols:
        raise ValueError("column count mismatch in vstack")
    return RationalMatrix(a.rows + b.rows, a.cols, a.entries + b.entries)


def _int_rows(m: RationalMatrix) -> list[list[tuple[int, int]]]:
    # Scale each row to Gaussian-integer form; row scaling preserves the
    # row space, and RREF normalizes pivots anyway.
    rows = []
    for r in m.entries:
        den = 1
        for z in r:
            den = lcm(den, z.re.denominator, z.im.denominator)
        rows.append([
            (z.re.numerator * (den // z.re.denominator),
             z.im.numerator * (den // z.im.denominator))
            for z in r
        ])
    return rows


def _ff_gauss_jordan(rows: list[list[tuple[int, int]]], ncols: int):
    """Fraction-free Gauss-Jordan (Montante) over the Gaussian integers.

    Mutates ``rows`` into an integer multiple of the RREF: on return every
    pivot entry equals the final pivot value, so dividing by it yields the
    rational RREF. Returns (pivot_cols, final_pivot). Divisions are exact by
    the Bareiss minor identity; exactness is asserted at runtime.
    """
    nrows = len(rows)
    piv_cols: list[int] = []
    prev_re, prev_im = 1, 0
    pr = 0
    for pc in range(ncols):
        pivot = None
        for r in range(pr, nrows):
            e = rows[r][pc]
            if e[0] or e[1]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != pr:
            rows[pr], rows[pivot] = rows[pivot], rows[pr]
        prow = rows[pr]
        p_re, p_im = prow[pc]
        trivial_prev = prev_re == 1 and prev_im == 0
        pn = prev_re * prev_re + prev_im * prev_im
        for r in range(nrows):
            if r == pr:
                continue
            row = rows[r]
            f_re, f_im = row[pc]
            for c in range(ncols):
                if c == pc:
                    continue
                a_re, a_im = row[c]
                b_re, b_im = prow[c]
                n_re = p_re * a_re - p_im * a_im - f_re * b_re + f_im * b_im
                n_im = p_re * a_im + p_im * a_re - f_re * b_im - f_im * b_re
                if trivial_prev:
                    row[c] = (n_re, n_im)
                else:
                    t_re = n_re * prev_re + n_im * prev_im
                    t_im = n_im * prev_re - n_re * prev_im
                    q_re, rem_re = divmod(t_re, pn)
                    q_im, rem_im = divmod(t_im, pn)
                    if rem_re or rem_im:
                        raise ArithmeticError("fraction-free elimination step not exact")
                    row[c] = (q_re, q_im)
            row[pc] = (0, 0)
        prev_re, prev_im = p_re, p_im
        piv_cols.append(pc)
        pr += 1
        if pr == nrows:
            break
    return piv_cols, (prev_re, prev_im)


def rref(m: RationalMatrix) -> tuple[RationalMatrix, int, list[int]]:
    """Reduced row echelon form over Q(i).

    Returns ``(R, rank, pivot_cols)``. R has leading entries normalized to 1,
    zeros above and below every pivot, and zero rows trailing; it is the
    unique RREF of the row space of ``m``.
    """
    if m.rows == 0:
        return m, 0, []
    rows = _int_rows(m)
    piv_cols, (p_re, p_im) = _ff_gauss_jordan(rows, m.cols)
    rank = len(piv_cols)
    pn = p_re * p_re + p_im * p_im
    out = []
    for r in range(m.rows):
        if r < rank:
            row = []
            for a_re, a_im in rows[r]:
                row.append(GaussianRational(
                    Fraction(a_re * p_re + a_im * p_im, pn),
                    Fraction(a_im * p_re - a_re * p_im, pn),
                ))
            out.append(row)
        else:
            out.append([GR_ZERO] * m.cols)
    return RationalMatrix(m.rows, m.cols, out), rank, piv_cols


def row_space(m: RationalMatrix) -> RationalMatrix:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    r, rank, _ = rref(m)
    return RationalMatrix(rank, m.cols, r.entries[:rank])


def rank(m: RationalMatrix) -> int:
    return rref(m)[1]


def kernel(m: RationalMatrix) -> RationalMatrix:
    """Canonical (RREF) basis of the right null space {v : M v = 0}.

    The result has cols(m) - rank(m) rows; kernel of a 0-row matrix is all
    of the ambient space.
    """
    r, rk, piv = rref(m)
    n = m.cols
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    if not free:
        return RationalMatrix(0, n, [])
    rows = []
    for f in free:
        v = [GR_ZERO] * n
        v[f] = GR_ONE
        for k, pc in enumerate(piv):
            v[pc] = -r.entries[k][f]
        rows.append(v)
    return row_space(RationalMatrix(len(rows), n, rows))
