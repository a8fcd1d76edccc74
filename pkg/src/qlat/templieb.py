"""The Temperley-Lieb algebra on noncrossing diagrams.

A diagram on n strands is a noncrossing perfect matching of 2n boundary
points of a rectangle: 0..n-1 along the bottom (left to right) and n..2n-1
along the top (left to right). Algebra elements are linear combinations of
diagrams with coefficients in the field of rational functions in the loop
parameter d; multiplication stacks diagrams (x * y puts x above y) and each
closed loop contributes a factor d.

The generators e_i carry coefficient 1/d on the cup-cap diagram U_i, so that
e_i^2 = e_i, e_i e_{i+-1} e_i = e_i / d^2, and far-apart generators commute.
Jones-Wenzl projectors are built by the standard recursion and then verified
against their defining characterization (idempotent, nonzero, killed by every
generator) before being returned. The Markov trace of a basis diagram is
d^(loops of its circular closure minus n), normalized so the identity traces
to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ratfunc import (
    RF_D,
    RF_ONE,
    RF_ZERO,
    RationalFunction,
    coeffs_to_json,
)


class PoleError(ValueError):
    """A coefficient denominator vanishes at the requested evaluation point."""


class JonesWenzlError(RuntimeError):
    """Post-construction verification of a projector failed."""


class PlanarDiagram:
    """A noncrossing perfect matching of the 2n boundary points."""

    __slots__ = ("n", "pairing", "_partner")

    def __init__(self, n: int, pairs):
        if n < 0:
            raise ValueError("strand count must be nonnegative")
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        points = [x for p in norm for x in p]
        if sorted(points) != list(range(2 * n)):
            raise ValueError(f"pairs do not form a perfect matching of {2 * n} points")
        if _has_crossing(norm, n):
            raise ValueError("matching is not planar in the rectangle embedding")
        self.n = n
        self.pairing = norm
        self._partner = None

    def partners(self) -> list[int]:
        if self._partner is None:
            arr = [0] * (2 * self.n)
            for a, b in self.pairing:
                arr[a] = b
                arr[b] = a
            self._partner = arr
        return self._partner

    @classmethod
    def identity(cls, n: int) -> "PlanarDiagram":
        return cls(n, [(j, n + j) for j in range(n)])

    @classmethod
    def cup_cap(cls, n: int, i: int) -> "PlanarDiagram":
        """The diagram U_i: cup joining bottom i-1, i and cap joining the tops."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range 1..{n - 1}")
        pairs = [(i - 1, i), (n + i - 1, n + i)]
        pairs += [(j, n + j) for j in range(n) if j not in (i - 1, i)]
        return cls(n, pairs)

    def __eq__(self, other):
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return self.n == other.n and self.pairing == other.pairing

    def __hash__(self):
        return hash((self.n, self.pairing))

    def __lt__(self, other):
        return (self.n, self.pairing) < (other.n, other.pairing)

    def __repr__(self):
        return f"PlanarDiagram({self.n}, {list(self.pairing)})"


def _rect_pos(point: int, n: int) -> int:
    # Walk the rectangle boundary: bottom left to right, then top right to
    # left. Crossings in this circular order are exactly the non-planar ones.
    return point if point < n else 3 * n - 1 - point


def _has_crossing(pairs, n: int) -> bool:
    spans = []
    for a, b in pairs:
        pa, pb = _rect_pos(a, n), _rect_pos(b, n)
        spans.append((min(pa, pb), max(pa, pb)))
    for i in range(len(spans)):
        a1, b1 = spans[i]
        for j in range(i + 1, len(spans)):
            a2, b2 = spans[j]
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                return True
    return False


def enumerate_diagrams(n: int) -> list[PlanarDiagram]:
    """All noncrossing diagrams on n strands; there are Catalan(n) of them."""
    if n < 0:
        raise ValueError("strand count must be nonnegative")

    def matchings(points: tuple[int, ...]):
        if not points:
            yield []
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inner = points[1:k]
            outer = points[k + 1:]
            for mi in matchings(inner):
                for mo in matchings(outer):
                    yield [(first, points[k])] + mi + mo

    positions = tuple(range(2 * n))

    def label(pos: int) -> int:
        return pos if pos < n else 3 * n - 1 - pos

    out = []
    for m in matchings(positions):
        out.append(PlanarDiagram(n, [(label(a), label(b)) for a, b in m]))
    return sorted(out)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def compose(top: PlanarDiagram, bottom: PlanarDiagram) -> tuple[PlanarDiagram, int]:
    """Stack ``top`` above ``bottom``; returns (diagram, closed loop count)."""
    if top.n != bottom.n:
        raise ValueError(f"strand count mismatch: {top.n} vs {bottom.n}")
    n = top.n
    tp = top.partners()
    bp = bottom.partners()
    visited = [False] * n
    seen = [False] * (2 * n)
    pairs = []
    for start in range(2 * n):
        if seen[start]:
            continue
        # diag 0 walks the bottom diagram, diag 1 the top diagram
        diag, pt = (0, start) if start < n else (1, start)
        while True:
            if diag == 0:
                nxt = bp[pt]
                if nxt < n:
                    end = nxt
                    break
                j = nxt - n
                visited[j] = True
                diag, pt = 1, j
            else:
                nxt = tp[pt]
                if nxt >= n:
                    end = nxt
                    break
                visited[nxt] = True
                diag, pt = 0, n + nxt
        seen[start] = seen[end] = True
        pairs.append((start, end))
    loops = 0
    for j in range(n):
        if visited[j]:
            continue
        loops += 1
        cur = j
        while not visited[cur]:
            visited[cur] = True
            j2 = tp[cur]
            visited[j2] = True
            cur = bp[n + j2] - n
    return PlanarDiagram(n, pairs), loops


def closure_loops(diagram: PlanarDiagram) -> int:
    """Loop count of the circular closure (bottom j joined to top n+j)."""
    n = diagram.n
    partner = diagram.partners()
    visited = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if visited[s]:
            continue
        loops += 1
        cur = s
        while not visited[cur]:
            visited[cur] = True
            nxt = partner[cur]
            visited[nxt] = True
            cur = nxt - n if nxt >= n else nxt + n
    return loops


class TLElement:
    """A linear combination of diagrams with rational-function coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict):
        clean = {}
        for diag, coeff in terms.items():
            if diag.n != n:
                raise ValueError("all diagrams must share the strand count")
            c = coeff if isinstance(coeff, RationalFunction) else RationalFunction.constant(coeff)
            if c:
                clean[diag] = c
        self.n = n
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "TLElement":
        return cls(n, {})

    @classmethod
    def identity(cls, n: int) -> "TLElement":
        return cls(n, {PlanarDiagram.identity(n): RF_ONE})

    @classmethod
    def from_diagram(cls, diag: PlanarDiagram, coeff=1) -> "TLElement":
        return cls(diag.n, {diag: RationalFunction.constant(coeff)
                            if not isinstance(coeff, RationalFunction) else coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, diag: PlanarDiagram) -> RationalFunction:
        return self.terms.get(diag, RF_ZERO)

    def identity_coefficient(self) -> RationalFunction:
        return self.coefficient(PlanarDiagram.identity(self.n))

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        out = dict(self.terms)
        for diag, c in other.terms.items():
            out[diag] = out.get(diag, RF_ZERO) + c
        return TLElement(self.n, out)

    def __neg__(self):
        return TLElement(self.n, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            k = other if isinstance(other, RationalFunction) else RationalFunction.constant(other)
            return TLElement(self.n, {d: c * k for d, c in self.terms.items()})
        if not isinstance(other, TLElement):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        out: dict = {}
        for dx, cx in self.terms.items():
            for dy, cy in other.terms.items():
                diag, loops = compose(dx, dy)
                c = cx * cy
                if loops:
                    c = c * RF_D ** loops
                if diag in out:
                    out[diag] = out[diag] + c
                else:
                    out[diag] = c
        return TLElement(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self * other
        return NotImplemented

    def __repr__(self):
        if not self.terms:
            return f"TLElement({self.n}, 0)"
        bits = [f"({coeff!r})*{diag!r}" for diag, coeff in sorted(self.terms.items())]
        return " + ".join(bits)


def diagram_generator(n: int, i: int) -> TLElement:
    """The raw cup-cap diagram U_i with coefficient 1 (so U_i^2 = d U_i)."""
    return TLElement.from_diagram(PlanarDiagram.cup_cap(n, i))


def generator_e(n: int, i: int) -> TLElement:
    """The idempotent generator e_i = U_i / d."""
    return TLElement(n, {PlanarDiagram.cup_cap(n, i): RF_ONE / RF_D})


def tl_mul(x: TLElement, y: TLElement) -> TLElement:
    return x * y


def include(x: TLElement) -> TLElement:
    """The inclusion into one more strand: append a through-strand on the right."""
    n = x.n
    out = {}
    for diag, coeff in x.terms.items():
        pairs = [tuple(p if p < n else p + 1 for p in pair) for pair in diag.pairing]
        pairs.append((n, 2 * n + 1))
        out[PlanarDiagram(n + 1, pairs)] = coeff
    return TLElement(n + 1, out)


@dataclass(frozen=True)
class ChebyshevPoly:
    """The degree-n member of the recursion D0 = 1, D1 = x, D_{n+1} = x D_n - D_{n-1}."""

    index: int
    coeffs: tuple[int, ...]  # lowest degree first

    def __post_init__(self):
        if len(self.coeffs) != self.index + 1 or self.coeffs[-1] == 0:
            raise ValueError("coefficients do not match the stated degree")

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def as_rational_function(self) -> RationalFunction:
        return RationalFunction(self.coeffs)


@lru_cache(maxsize=None)
def chebyshev(n: int) -> ChebyshevPoly:
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return ChebyshevPoly(0, (1,))
    if n == 1:
        return ChebyshevPoly(1, (0, 1))
    prev2 = chebyshev(n - 2).coeffs
    prev1 = chebyshev(n - 1).coeffs
    shifted = (0,) + prev1
    out = [shifted[k] - (prev2[k] if k < len(prev2) else 0) for k in range(n + 1)]
    return ChebyshevPoly(n, tuple(out))


def _verify_jones_wenzl(p: TLElement, n: int):
    if p.is_zero():
        raise JonesWenzlError(f"projector at n={n} is zero")
    if p.identity_coefficient() != RF_ONE:
        raise JonesWenzlError(f"projector at n={n} has identity coefficient != 1")
    if p * p != p:
        raise JonesWenzlError(f"projector at n={n} is not idempotent")
    for i in range(1, n):
        e = generator_e(n, i)
        if not (e * p).is_zero() or not (p * e).is_zero():
            raise JonesWenzlError(f"projector at n={n} is not annihilated by e_{i}")


@lru_cache(maxsize=None)
def jones_wenzl(n: int) -> TLElement:
    """The unique nonzero idempotent killed by every generator.

    Built by the recursion p_{k+1} = p_k - (D_{k-1}/D_k) p_k U_k p_k on the
    raw diagrams, then verified against the characterization (idempotence,
    annihilation, identity coefficient 1) before being returned; a failed
    verification aborts rather than handing back an unverified element.
    """
    if n < 1:
        raise ValueError("strand count must be at least 1")
    if n == 1:
        p = TLElement.identity(1)
        _verify_jones_wenzl(p, 1)
        return p
    prev = include(jones_wenzl(n - 1))
    u = diagram_generator(n, n - 1)
    ratio = chebyshev(n - 2).as_rational_function() / chebyshev(n - 1).as_rational_function()
    p = prev - (prev * u * prev) * ratio
    _verify_jones_wenzl(p, n)
    return p


def markov_trace(x: TLElement) -> RationalFunction:
    """Normalized trace via circular closure: a diagram contributes
    d^(closure loops - n), so the identity traces to 1 and tr(e_i) = 1/d^2."""
    out = RF_ZERO
    for diag, coeff in x.terms.items():
        out = out + coeff * RationalFunction.monomial(closure_loops(diag) - x.n)
    return out


def root_params(r: int) -> float:
    """The loop parameter at the level-r root of unity: d = 2 cos(pi/r).

    All four sign choices of the underlying unit A give this same d; the
    canonical choice is A = i * exp(i pi / (2r)).
    """
    if not isinstance(r, int) or r < 3:
        raise ValueError("r must be an integer >= 3")
    return 2.0 * math.cos(math.pi / r)


POLE_TOLERANCE = 1e-12


def eval_at_root(f: RationalFunction, r: int) -> float:
    """Evaluate a symbolic coefficient at d = 2 cos(pi/r) in double precision."""
    d = root_params(r)
    den = _horner(f.iden, d)
    if abs(den) < POLE_TOLERANCE:
        raise PoleError(f"denominator vanishes at d = 2cos(pi/{r}) = {d!r}")
    return _horner(f.inum, d) / den


def _horner(cs, x: float) -> float:
    acc = 0.0
    for c in reversed(cs):
        acc = acc * x + float(c)
    return acc


@dataclass(frozen=True)
class NumericTLElement:
    """A diagram combination with double-precision coefficients."""

    n: int
    terms: dict

    def coefficient(self, diag: PlanarDiagram) -> float:
        return self.terms.get(diag, 0.0)


def jw_at_root(n: int, r: int) -> NumericTLElement:
    """The projector specialized at d = 2 cos(pi/r).

    At a level-r root the projectors exist consecutively only up to n = r-1;
    larger n is rejected. Coefficient denominators are checked against poles.
    """
    if not isinstance(r, int) or r < 3:
        raise ValueError("r must be an integer >= 3")
    if not 1 <= n <= r - 1:
        raise ValueError(
            f"projector level {n} unavailable at r={r}: defined only for n = 1..{r - 1}")
    p = jones_wenzl(n)
    return NumericTLElement(n, {diag: eval_at_root(c, r) for diag, c in p.terms.items()})


def tl_to_json(x: TLElement) -> dict:
    """{"n": strands, "terms": [{"pairing": ..., "coeff": {"num":, "den":}}]}"""
    terms = []
    for diag in sorted(x.terms):
        c = x.terms[diag]
        terms.append({
            "pairing": [[a, b] for a, b in diag.pairing],
            "coeff": {"num": coeffs_to_json(c.num), "den": coeffs_to_json(c.den)},
        })
    return {"n": x.n, "terms": terms}
