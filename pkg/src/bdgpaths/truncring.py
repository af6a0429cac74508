"""Truncated group rings in the Magnus realization.

``Z[pi]/I^(n+1)`` is modelled as the truncated free associative algebra on
the generators (words of length <= n, ``x_i`` standing for ``g_i - 1``)
modulo the two-sided ideal spanned by ``m_L (magnus(r) - 1) m_R``.  The word
basis is ordered by length, then lexicographically; canonical forms are
remainders modulo the Hermite basis of the ideal lattice.

Products follow composition order: ``p * q`` is "``q`` first, then ``p``"
when both come from paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .lattice import FgAbGroup, Lattice
from .space import Basepoints, GroupPresentation, Word

Mono = tuple[int, ...]


class RingMismatch(ValueError):
    pass


class TruncPoly:
    """Integer combination of words of length <= n in ``g`` letters (zeros not stored)."""

    __slots__ = ("n", "g", "coeffs")

    def __init__(self, n: int, g: int, coeffs: Mapping[Mono, int] | None = None):
        self.n = n
        self.g = g
        self.coeffs: dict[Mono, int] = {}
        if coeffs:
            for w, c in coeffs.items():
                if c and len(w) <= n:
                    self.coeffs[tuple(w)] = self.coeffs.get(tuple(w), 0) + c
            self.coeffs = {w: c for w, c in self.coeffs.items() if c}

    @classmethod
    def one(cls, n: int, g: int) -> "TruncPoly":
        return cls(n, g, {(): 1})

    @classmethod
    def zero(cls, n: int, g: int) -> "TruncPoly":
        return cls(n, g)

    @classmethod
    def monomial(cls, word: Sequence[int], n: int, g: int, coeff: int = 1) -> "TruncPoly":
        return cls(n, g, {tuple(word): coeff})

    def _check(self, other: "TruncPoly") -> None:
        if (self.n, self.g) != (other.n, other.g):
            raise RingMismatch(f"degree/alphabet mismatch {(self.n, self.g)} vs {(other.n, other.g)}")

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return TruncPoly(self.n, self.g, out)

    def __neg__(self) -> "TruncPoly":
        return TruncPoly(self.n, self.g, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        return self + (-other)

    def __mul__(self, other) -> "TruncPoly":
        if isinstance(other, int):
            return TruncPoly(self.n, self.g, {w: c * other for w, c in self.coeffs.items()})
        self._check(other)
        n = self.n
        out: dict[Mono, int] = {}
        for u, a in self.coeffs.items():
            room = n - len(u)
            for v, b in other.coeffs.items():
                if len(v) <= room:
                    w = u + v
                    out[w] = out.get(w, 0) + a * b
        return TruncPoly(n, self.g, out)

    __rmul__ = lambda self, k: self * k  # noqa: E731  (int * poly)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return (self.n, self.g) == (other.n, other.g) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.g, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncPoly(n={self.n}, {format_poly(self)})"

    def augmentation(self) -> int:
        return self.coeffs.get((), 0)

    def truncate(self, m: int) -> "TruncPoly":
        """Drop words longer than ``m`` and re-home in degree ``m``."""
        return TruncPoly(m, self.g, {w: c for w, c in self.coeffs.items() if len(w) <= m})

    def extend(self, m: int) -> "TruncPoly":
        """Same coefficients viewed at a higher truncation degree."""
        if m < self.n:
            raise ValueError("extend() cannot lower the degree")
        return TruncPoly(m, self.g, self.coeffs)

    def homogeneous(self, k: int) -> "TruncPoly":
        return TruncPoly(self.n, self.g, {w: c for w, c in self.coeffs.items() if len(w) == k})

    def min_degree(self) -> int | None:
        return min((len(w) for w in self.coeffs), default=None)

    def strip(self, letter: int) -> "TruncPoly":
        """Right quotient by ``x_letter``: the unique ``q`` with ``p - eps(p) = sum_e q_e x_e``."""
        return TruncPoly(self.n, self.g,
                         {w[:-1]: c for w, c in self.coeffs.items() if w and w[-1] == letter})


def format_poly(p: TruncPoly, names: Sequence[str] | None = None) -> str:
    if not p.coeffs:
        return "0"
    names = names or [chr(ord("x") + i) if p.g <= 3 else f"x{i + 1}" for i in range(p.g)]
    terms = []
    for w in sorted(p.coeffs, key=lambda w: (len(w), w)):
        c = p.coeffs[w]
        mono = "".join(names[i] for i in w) if w else "1"
        if w and abs(c) == 1:
            terms.append(("-" if c < 0 else "+") + mono)
        else:
            terms.append(f"{c:+d}" + ("" if not w else mono))
    s = " ".join(terms)
    return s[1:] if s.startswith("+") else s


def word_basis(n: int, g: int) -> list[Mono]:
    """Words of length <= n, length-first then lexicographic."""
    out: list[Mono] = []
    for k in range(n + 1):
        out.extend(iproduct(range(g), repeat=k))
    return out


def _letter_series(n: int, g: int, i: int, sign: int) -> TruncPoly:
    if sign > 0:
        return TruncPoly(n, g, {(): 1, (i,): 1})
    return TruncPoly(n, g, {(i,) * k: (-1) ** k for k in range(n + 1)})


def magnus(word: Sequence[int], n: int, g: int) -> TruncPoly:
    """Truncated Magnus expansion: ``x_i -> 1 + x_i``, ``x_i^-1 -> 1 - x_i + x_i^2 - ...``."""
    if n < 0:
        raise ValueError("truncation degree must be nonnegative")
    out = TruncPoly.one(n, g)
    for x in word:
        i = abs(x) - 1
        if not 0 <= i < g:
            raise ValueError(f"letter {x} out of range for {g} generators")
        out = out * _letter_series(n, g, i, 1 if x > 0 else -1)
    return out


def antipode(p: TruncPoly) -> TruncPoly:
    """Word-reversal antipode: ``x_i -> magnus(x_i^-1) - 1``, anti-multiplicative."""
    n, g = p.n, p.g
    s = [_letter_series(n, g, i, -1) - TruncPoly.one(n, g) for i in range(g)]
    out = TruncPoly.zero(n, g)
    for w, c in p.coeffs.items():
        term = TruncPoly.one(n, g)
        for i in reversed(w):
            term = term * s[i]
        out = out + term * c
    return out


class TruncRing:
    """``Z[pi]/I^(n+1)`` for a presented group, with canonical reduction."""

    def __init__(self, gp: GroupPresentation, n: int):
        if n < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.gp = gp
        self.n = n
        self.g = gp.ngens
        self.basis = word_basis(n, self.g)
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.relator_polys = [magnus(r, n, self.g) - TruncPoly.one(n, self.g)
                              for r in gp.relators]
        gens = []
        for rp in self.relator_polys:
            d = rp.min_degree()
            if d is None:
                continue
            # products of total degree > n vanish after truncation
            for total in range(n - d + 1):
                for left_len in range(total + 1):
                    for ml in iproduct(range(self.g), repeat=left_len):
                        left = TruncPoly.monomial(ml, n, self.g) * rp
                        for mr in iproduct(range(self.g), repeat=total - left_len):
                            v = left * TruncPoly.monomial(mr, n, self.g)
                            if v:
                                gens.append(self.vector(v))
        self.ideal = Lattice(gens, self.dim)
        self._group: FgAbGroup | None = None

    # vectors ----------------------------------------------------------------

    def vector(self, p: TruncPoly) -> list[int]:
        v = [0] * self.dim
        for w, c in p.coeffs.items():
            v[self.index[w]] = c
        return v

    def poly(self, v: Sequence[int]) -> TruncPoly:
        return TruncPoly(self.n, self.g, {self.basis[i]: c for i, c in enumerate(v) if c})

    def _check(self, p: TruncPoly) -> None:
        if (p.n, p.g) != (self.n, self.g):
            raise RingMismatch(f"element of degree {p.n} over {p.g} letters used in "
                               f"ring of degree {self.n} over {self.g} letters")

    # ring structure -----------------------------------------------------------

    def reduce(self, p: TruncPoly) -> TruncPoly:
        self._check(p)
        return self.poly(self.ideal.reduce(self.vector(p)))

    def equal(self, p: TruncPoly, q: TruncPoly) -> bool:
        return not self.reduce(p - q)

    def in_ideal(self, p: TruncPoly) -> bool:
        self._check(p)
        return self.vector(p) in self.ideal

    def one(self) -> TruncPoly:
        return TruncPoly.one(self.n, self.g)

    def letter(self, i: int) -> TruncPoly:
        return TruncPoly.monomial((i,), self.n, self.g)

    def magnus(self, word: Sequence[int]) -> TruncPoly:
        return self.reduce(magnus(word, self.n, self.g))

    def mul(self, p: TruncPoly, q: TruncPoly) -> TruncPoly:
        self._check(p)
        self._check(q)
        return self.reduce(p * q)

    def add(self, p: TruncPoly, q: TruncPoly) -> TruncPoly:
        self._check(p)
        self._check(q)
        return self.reduce(p + q)

    def neg(self, p: TruncPoly) -> TruncPoly:
        self._check(p)
        return self.reduce(-p)

    @property
    def group(self) -> FgAbGroup:
        """The ring as a Z-module (``Z^dim`` modulo the ideal lattice)."""
        if self._group is None:
            self._group = FgAbGroup(self.dim, self.ideal.basis)
        return self._group

    def words_from(self, k: int) -> list[list[int]]:
        return [[int(i == j) for j in range(self.dim)]
                for i, w in enumerate(self.basis) if len(w) >= k]

    def __repr__(self) -> str:
        return f"TruncRing(n={self.n}, g={self.g}, ideal rank={self.ideal.rank})"


@lru_cache(maxsize=256)
def _ring(gp: GroupPresentation, n: int) -> TruncRing:
    return TruncRing(gp, n)


def ring_at(gp: GroupPresentation, n: int) -> TruncRing:
    """Cached ring at any degree ``n >= 0`` (degree 0 is ``Z``); internal use."""
    return _ring(gp, n)


def build_ring(gp: GroupPresentation, n: int) -> TruncRing:
    if n < 1:
        raise ValueError("build_ring needs n >= 1")
    return _ring(gp, n)


def augmentation(p: TruncPoly) -> int:
    return p.augmentation()


def mul(p: TruncPoly, q: TruncPoly, ring: TruncRing) -> TruncPoly:
    return ring.mul(p, q)


def add(p: TruncPoly, q: TruncPoly, ring: TruncRing) -> TruncPoly:
    return ring.add(p, q)


def neg(p: TruncPoly, ring: TruncRing) -> TruncPoly:
    return ring.neg(p)


def ideal_quotient(ring: TruncRing, k: int) -> FgAbGroup:
    """``I^k / I^(n+1)`` as a subquotient of the ring's Z-module."""
    if not 1 <= k <= ring.n:
        raise ValueError(f"k={k} outside 1..{ring.n}")
    return FgAbGroup(ring.dim, ring.ideal.basis, ring.words_from(k))


def graded_piece(ring: TruncRing, k: int) -> FgAbGroup:
    """``A_k = I^k / I^(k+1)`` computed inside the ring."""
    if not 1 <= k <= ring.n:
        raise ValueError(f"k={k} outside 1..{ring.n}")
    rels = list(ring.ideal.basis) + ring.words_from(k + 1)
    return FgAbGroup(ring.dim, rels, ring.words_from(k))


# ---------------------------------------------------------------------------
# Path classes


@dataclass(frozen=True)
class PathClass:
    """A class in ``Z[pi^source_target] / I^(n+1)``.

    Paths ``u -> v`` are encoded through reference tree paths as elements of
    the anchor's ring: ``gamma = ref_v . q . ref_u^-1`` with ``q`` in ``pi_a``.
    """

    ring: TruncRing
    poly: TruncPoly
    source: int
    target: int

    def __post_init__(self):
        object.__setattr__(self, "poly", self.ring.reduce(self.poly))

    def __add__(self, other: "PathClass") -> "PathClass":
        self._match(other)
        return PathClass(self.ring, self.poly + other.poly, self.source, self.target)

    def __sub__(self, other: "PathClass") -> "PathClass":
        self._match(other)
        return PathClass(self.ring, self.poly - other.poly, self.source, self.target)

    def scale(self, k: int) -> "PathClass":
        return PathClass(self.ring, self.poly * k, self.source, self.target)

    def _match(self, other: "PathClass") -> None:
        if self.ring is not other.ring or (self.source, self.target) != (other.source, other.target):
            raise ValueError("path classes live in different modules")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathClass):
            return NotImplemented
        return (self.ring is other.ring and self.poly == other.poly
                and (self.source, self.target) == (other.source, other.target))

    def __hash__(self) -> int:
        return hash((id(self.ring), self.poly, self.source, self.target))


def path_class(word: Word, ring: TruncRing, bp: Basepoints) -> PathClass:
    """Class of the path ``ref_b . word`` from ``bp.a`` to ``bp.b``."""
    if bp.a != ring.gp.anchor:
        raise ValueError("path classes must start at the presentation's anchor")
    return PathClass(ring, magnus(word, ring.n, ring.g), bp.a, bp.b)


def act_right(pc: PathClass, p: TruncPoly) -> PathClass:
    return PathClass(pc.ring, pc.ring.mul(pc.poly, p), pc.source, pc.target)


def act_left(pc: PathClass, p: TruncPoly) -> PathClass:
    return PathClass(pc.ring, pc.ring.mul(p, pc.poly), pc.source, pc.target)


def invert_class(pc: PathClass) -> PathClass:
    return PathClass(pc.ring, antipode(pc.poly), pc.target, pc.source)


def span_lattice(ring: TruncRing, polys: Iterable[TruncPoly]) -> Lattice:
    """Lattice spanned by the given elements together with the ideal."""
    return Lattice([ring.vector(p) for p in polys] + list(ring.ideal.basis), ring.dim)
