"""Hopf structure on truncated path algebras and the homological composition.

Tensor powers of ``Z pi / I^(n+1)`` use a basis of word tuples with total
length at most ``n``; letters in different slots commute structurally.
The coproduct comes from the diagonal ``g -> g (x) g``, so on Magnus letters
``x -> x(x)1 + 1(x)x + x(x)x``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Callable, Mapping, Sequence

from .fox import HomologyModel, ModelError, homology_model, loop_model, truncate
from .lattice import (FgAbGroup, GroupHom, Lattice, kernel_lattice, tensor,
                      tensor_coords)
from .space import GroupPresentation, SimplicialSet, product_presentation
from .truncring import (Mono, PathClass, TruncPoly, TruncRing, graded_piece,
                        ring_at, word_basis)

TWord = tuple[Mono, ...]


class HopfError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Tensor powers


class TensorPoly:
    """Integer combination of ``k``-tuples of words, total length <= n."""

    __slots__ = ("n", "g", "k", "coeffs")

    def __init__(self, n: int, g: int, k: int, coeffs: Mapping[TWord, int] | None = None):
        self.n, self.g, self.k = n, g, k
        out: dict[TWord, int] = {}
        for t, c in (coeffs or {}).items():
            if c and sum(map(len, t)) <= n:
                out[t] = out.get(t, 0) + c
        self.coeffs = {t: c for t, c in out.items() if c}

    @classmethod
    def one(cls, n: int, g: int, k: int) -> "TensorPoly":
        return cls(n, g, k, {((),) * k: 1})

    @classmethod
    def pure(cls, factors: Sequence[TruncPoly], n: int) -> "TensorPoly":
        """``p_1 (x) ... (x) p_k`` truncated at total degree ``n``."""
        g = factors[0].g
        out: dict[TWord, int] = {}
        for combo in iproduct(*(f.coeffs.items() for f in factors)):
            t = tuple(w for w, _ in combo)
            c = 1
            for _, x in combo:
                c *= x
            out[t] = out.get(t, 0) + c
        return cls(n, g, len(factors), out)

    def _check(self, other: "TensorPoly") -> None:
        if (self.n, self.g, self.k) != (other.n, other.g, other.k):
            raise HopfError("tensor elements of different shapes")

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        self._check(other)
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, 0) + c
        return TensorPoly(self.n, self.g, self.k, out)

    def __neg__(self) -> "TensorPoly":
        return TensorPoly(self.n, self.g, self.k, {t: -c for t, c in self.coeffs.items()})

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (-other)

    def __mul__(self, other) -> "TensorPoly":
        if isinstance(other, int):
            return TensorPoly(self.n, self.g, self.k, {t: c * other for t, c in self.coeffs.items()})
        self._check(other)
        out: dict[TWord, int] = {}
        for t, a in self.coeffs.items():
            room = self.n - sum(map(len, t))
            for s, b in other.coeffs.items():
                if sum(map(len, s)) <= room:
                    u = tuple(x + y for x, y in zip(t, s))
                    out[u] = out.get(u, 0) + a * b
        return TensorPoly(self.n, self.g, self.k, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return (self.n, self.g, self.k) == (other.n, other.g, other.k) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.k, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*" + "(x)".join("".join(map(str, w)) or "1" for w in t)
                 for t, c in sorted(self.coeffs.items())]
        return "TensorPoly(" + (" + ".join(terms) or "0") + ")"

    def homogeneous(self, d: int) -> "TensorPoly":
        return TensorPoly(self.n, self.g, self.k,
                          {t: c for t, c in self.coeffs.items() if sum(map(len, t)) == d})


def tensor_word_basis(n: int, g: int, k: int) -> list[TWord]:
    words = word_basis(n, g)
    out: list[TWord] = []

    def rec(prefix: TWord, room: int) -> None:
        if len(prefix) == k:
            out.append(prefix)
            return
        for w in words:
            if len(w) <= room:
                rec(prefix + (w,), room - len(w))

    rec((), n)
    out.sort(key=lambda t: (sum(map(len, t)), t))
    return out


class TensorPowerRing:
    """``(Z pi)^(x)k`` modulo relators and ``(I(x)R(x)... + ...)^(n+1)``."""

    def __init__(self, gp: GroupPresentation, n: int, k: int = 2):
        self.gp, self.n, self.k, self.g = gp, n, k, gp.ngens
        self.basis = tensor_word_basis(n, self.g, k)
        self.index = {t: i for i, t in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._ideal: Lattice | None = None

    @property
    def ideal(self) -> Lattice:
        """Span of ``u_1 (x) .. j .. (x) u_k`` with ``j`` in the relator ideal of one slot."""
        if self._ideal is None:
            gens = []
            for pos in range(self.k):
                others = tensor_word_basis(self.n, self.g, self.k - 1)
                for rest in others:
                    room = self.n - sum(map(len, rest))
                    low = ring_at(self.gp, room)
                    for j in low.ideal.basis:
                        v = [0] * self.dim
                        for i, c in enumerate(j):
                            if c:
                                t = rest[:pos] + (low.basis[i],) + rest[pos:]
                                v[self.index[t]] += c
                        gens.append(v)
            self._ideal = Lattice(gens, self.dim)
        return self._ideal

    def vector(self, t: TensorPoly) -> list[int]:
        if (t.n, t.g, t.k) != (self.n, self.g, self.k):
            raise HopfError("tensor element does not belong to this ring")
        v = [0] * self.dim
        for w, c in t.coeffs.items():
            v[self.index[w]] = c
        return v

    def poly(self, v: Sequence[int]) -> TensorPoly:
        return TensorPoly(self.n, self.g, self.k, {self.basis[i]: c for i, c in enumerate(v) if c})

    def reduce(self, t: TensorPoly) -> TensorPoly:
        return self.poly(self.ideal.reduce(self.vector(t)))

    def equal(self, s: TensorPoly, t: TensorPoly) -> bool:
        return self.vector(s - t) in self.ideal

    def __repr__(self) -> str:
        return f"TensorPowerRing(n={self.n}, g={self.g}, k={self.k})"


@lru_cache(maxsize=64)
def tensor_square_ring(gp: GroupPresentation, n: int) -> TensorPowerRing:
    return TensorPowerRing(gp, n, 2)


# ---------------------------------------------------------------------------
# Coproduct and counit


def _word_coproduct(w: Mono, n: int, g: int) -> dict[TWord, int]:
    # each letter goes left, right or both
    out: dict[TWord, int] = {}
    for choice in iproduct((0, 1, 2), repeat=len(w)):
        left = tuple(x for x, c in zip(w, choice) if c != 1)
        right = tuple(x for x, c in zip(w, choice) if c != 0)
        if len(left) + len(right) <= n:
            out[(left, right)] = out.get((left, right), 0) + 1
    return out


def coproduct(p: TruncPoly, ring: TruncRing | None = None) -> TensorPoly:
    """``Delta(p)`` in the tensor square, truncated at total degree ``p.n``."""
    if ring is not None and (ring.n, ring.g) != (p.n, p.g):
        raise HopfError("element and ring have different truncation data")
    return coproduct_at(TensorPoly(p.n, p.g, 1, {(w,): c for w, c in p.coeffs.items()}), 0)


def coproduct_at(t: TensorPoly, pos: int) -> TensorPoly:
    """Apply ``Delta`` to slot ``pos`` of a ``k``-fold tensor, giving ``k + 1`` slots."""
    out: dict[TWord, int] = {}
    for tw, c in t.coeffs.items():
        room = t.n - sum(len(w) for i, w in enumerate(tw) if i != pos)
        for (l, r), m in _word_coproduct(tw[pos], room, t.g).items():
            s = tw[:pos] + (l, r) + tw[pos + 1:]
            out[s] = out.get(s, 0) + c * m
    return TensorPoly(t.n, t.g, t.k + 1, out)


def counit_at(t: TensorPoly, pos: int) -> TensorPoly:
    """Apply the augmentation to slot ``pos``."""
    out: dict[TWord, int] = {}
    for tw, c in t.coeffs.items():
        if not tw[pos]:
            s = tw[:pos] + tw[pos + 1:]
            out[s] = out.get(s, 0) + c
    return TensorPoly(t.n, t.g, t.k - 1, out)


def counit(p: TruncPoly) -> int:
    return p.augmentation()


def as_tensor(p: TruncPoly) -> TensorPoly:
    return TensorPoly(p.n, p.g, 1, {(w,): c for w, c in p.coeffs.items()})


def shuffle_coproduct(word: Mono, n: int, g: int) -> TensorPoly:
    """Graded coproduct of a monomial: the sum over subsets of its letters."""
    out: dict[TWord, int] = {}
    for mask in iproduct((0, 1), repeat=len(word)):
        left = tuple(x for x, m in zip(word, mask) if m)
        right = tuple(x for x, m in zip(word, mask) if not m)
        out[(left, right)] = out.get((left, right), 0) + 1
    return TensorPoly(n, g, 2, out)


def graded_coproduct(word: Mono, n: int, g: int) -> TensorPoly:
    """Degree-preserving part of ``Delta`` on the monomial ``word`` (its class in ``A_k``)."""
    return coproduct(TruncPoly.monomial(word, n, g)).homogeneous(len(word))


# ---------------------------------------------------------------------------
# Primitives and the equalizer


def primitive_part(ring: TruncRing, n: int | None = None) -> FgAbGroup:
    """Primitive elements of ``I/I^(n+1)`` as a subgroup of the ring's Z-module."""
    if n is not None and n != ring.n:
        raise HopfError("n does not match the ring")
    sq = tensor_square_ring(ring.gp, ring.n)
    domain = ring.words_from(1)
    images = []
    for v in domain:
        p = ring.poly(v)
        t = coproduct(p) - TensorPoly.pure([p, TruncPoly.one(ring.n, ring.g)], ring.n) \
            - TensorPoly.pure([TruncPoly.one(ring.n, ring.g), p], ring.n)
        images.append(sq.vector(t))
    coeffs = kernel_lattice(images, sq.dim, sq.ideal.basis)
    vecs = [[sum(c[i] * domain[i][j] for i in range(len(domain))) for j in range(ring.dim)]
            for c in coeffs]
    return FgAbGroup(ring.dim, ring.ideal.basis, vecs + list(ring.ideal.basis))


def primitive_generators(ring: TruncRing) -> list[TruncPoly]:
    """Reduced lifts of the canonical generators of the primitive subgroup."""
    return [ring.reduce(ring.poly(v)) for v in primitive_part(ring).generators()]


def _substitute(p: TruncPoly, images: Sequence[TruncPoly]) -> TruncPoly:
    """Ring map sending letter ``e`` to ``images[e]`` (degrees taken from the images)."""
    n, g = images[0].n, images[0].g
    out = TruncPoly.zero(n, g)
    for w, c in p.coeffs.items():
        term = TruncPoly.one(n, g)
        for x in w:
            term = term * images[x]
        out = out + term * c
    return out


@dataclass
class Equalizer:
    """Equalizer of ``D_*`` and ``i'_* + i''_*`` on loop models of X and X x X."""

    model_x: HomologyModel
    model_x2: HomologyModel
    diagonal: GroupHom
    insert_sum: GroupHom
    group: FgAbGroup  # subgroup of model_x.group's ambient

    def generators(self) -> list[list[int]]:
        return [list(v) for v in self.group.sub_lattice.basis]


def equalizer_homological(model_x: HomologyModel, model_x2: HomologyModel) -> Equalizer:
    """Kernel of ``D_* - i'_* - i''_*`` computed on the Fox chain level.

    ``D`` is the diagonal, ``i'`` and ``i''`` the two slice inclusions.  On the
    generator block of edge ``e`` the diagonal acts by the Fox derivatives of
    ``x_e' x_e''``: ``lambda eps_e -> phi(lambda) eps_e' + phi(lambda)(1 + x_e') eps_e''``
    with ``phi(x) = x' + x'' + x' x''``.
    """
    if not (model_x.same and model_x2.same) or model_x.n != model_x2.n:
        raise ModelError("equalizer needs loop models of equal degree")
    g = model_x.gp.ngens
    if model_x2.gp.ngens != 2 * g:
        raise ModelError("second model is not over the square of the first")
    n = model_x.n
    if n == 0:
        triv = GroupHom(model_x.group, model_x2.group, [])
        return Equalizer(model_x, model_x2, triv, triv, model_x.group)
    low, low2 = model_x.low, model_x2.low
    d2 = low2.dim
    m = low.n
    phi = [TruncPoly.monomial((e,), m, 2 * g) + TruncPoly.monomial((e + g,), m, 2 * g)
           + TruncPoly.monomial((e, e + g), m, 2 * g) for e in range(g)]
    diag_images, ins_images = [], []
    for e in range(g):
        shift_e = TruncPoly.one(m, 2 * g) + TruncPoly.monomial((e,), m, 2 * g)
        for w in low.basis:
            lam = _substitute(TruncPoly.monomial(w, m, g), phi) if w else TruncPoly.one(m, 2 * g)
            v = [0] * (2 * g * d2)
            v[e * d2:(e + 1) * d2] = low2.vector(lam)
            v[(e + g) * d2:(e + g + 1) * d2] = low2.vector(lam * shift_e)
            diag_images.append(v)
            u = [0] * (2 * g * d2)
            u[e * d2 + low2.index[w]] += 1
            u[(e + g) * d2 + low2.index[tuple(x + g for x in w)]] += 1
            ins_images.append(u)
    diagonal = GroupHom(model_x.group, model_x2.group, diag_images)
    insert_sum = GroupHom(model_x.group, model_x2.group, ins_images)
    diff = GroupHom(model_x.group, model_x2.group,
                    [[a - b for a, b in zip(x, y)] for x, y in zip(diag_images, ins_images)])
    return Equalizer(model_x, model_x2, diagonal, insert_sum, diff.kernel())


def primitives_vs_equalizer(gp: GroupPresentation, n: int) -> tuple[bool, FgAbGroup, Equalizer]:
    """Compare ``kappa(primitive_part)`` with the homological equalizer."""
    ring = ring_at(gp, n)
    prim = primitive_part(ring)
    mx = loop_model(gp, None, n)
    mx2 = loop_model(product_presentation(gp), None, n)
    eq = equalizer_homological(mx, mx2)
    kp = [mx.ambient(ring.poly(v)) for v in prim.sub_lattice.basis]
    same = mx.group.same_subgroup(kp, eq.generators())
    return same, prim, eq


# ---------------------------------------------------------------------------
# Composition


def compose(beta: PathClass, alpha: PathClass) -> PathClass:
    """``beta o alpha``: traverse ``alpha`` (a -> b), then ``beta`` (b -> c)."""
    if beta.ring is not alpha.ring:
        raise HopfError("classes live over different truncated rings")
    if alpha.target != beta.source:
        raise HopfError("endpoints do not match for composition")
    return PathClass(beta.ring, beta.poly * alpha.poly, alpha.source, beta.target)


def reduced_class(pc: PathClass) -> PathClass:
    """The part of a class seen by its model: loops lose their augmentation."""
    if pc.source != pc.target:
        return pc
    return PathClass(pc.ring, pc.poly - TruncPoly.one(pc.poly.n, pc.poly.g) * pc.poly.augmentation(),
                     pc.source, pc.target)


def compose_refined(beta: PathClass, alpha: PathClass) -> PathClass:
    """Composition of the reduced classes; for loops it lands in ``I^2/I^(n+1)``."""
    return compose(reduced_class(beta), reduced_class(alpha))


# ---------------------------------------------------------------------------
# The kernel K and homological composition


def _pieces(n: int) -> list[tuple[int, int]]:
    return [(mu, n - mu) for mu in range(n, -1, -1)]


def _block_group(groups: Sequence[FgAbGroup]) -> tuple[FgAbGroup, list[int]]:
    """Direct sum on the groups' ambient coordinates (relations only)."""
    offsets, dim = [], 0
    for gr in groups:
        offsets.append(dim)
        dim += gr.dim
    rels = []
    for gr, off in zip(groups, offsets):
        for r in gr.relation_lattice.basis:
            v = [0] * dim
            v[off:off + gr.dim] = r
            rels.append(v)
    return FgAbGroup(dim, rels), offsets


@dataclass
class KSpace:
    """``K``: compatible families in ``sum_(mu+nu=n) H_mu(b,c) (x) H_nu(a,b)``."""

    n: int
    beta_models: list[HomologyModel]  # index mu
    alpha_models: list[HomologyModel]  # index nu
    beta_tau: list[list[tuple[int, ...]]]  # canonical matrix of tau^mu_(mu-1), index mu
    alpha_tau: list[list[tuple[int, ...]]]
    top: FgAbGroup = field(repr=False)
    top_offsets: list[int] = field(repr=False)
    bottom: FgAbGroup = field(repr=False)
    bottom_offsets: list[int] = field(repr=False)
    compat: GroupHom = field(repr=False)
    group: FgAbGroup = field(repr=False)

    @property
    def endpoints(self) -> tuple[int, int, int]:
        return (self.alpha_models[0].source, self.alpha_models[0].target, self.beta_models[0].target)

    def piece(self, v: Sequence[int], mu: int) -> list[int]:
        nu = self.n - mu
        off = self.top_offsets[self.n - mu]
        size = self.beta_models[mu].group.ngens * self.alpha_models[nu].group.ngens
        return list(v[off:off + size])

    def contains(self, v: Sequence[int]) -> bool:
        return self.bottom.is_zero(self.compat.apply(v))


@dataclass(frozen=True)
class KElement:
    space: KSpace
    vector: tuple[int, ...]

    def component(self, mu: int) -> list[int]:
        return self.space.piece(self.vector, mu)

    def __add__(self, other: "KElement") -> "KElement":
        return KElement(self.space, tuple(a + b for a, b in zip(self.vector, other.vector)))


def _apply_canonical(mat: Sequence[Sequence[int]], x: Sequence[int], width: int) -> list[int]:
    out = [0] * width
    for c, row in zip(x, mat):
        if c:
            for j, y in enumerate(row):
                out[j] += c * y
    return out


def k_kernel(gp: GroupPresentation, n: int, a: int, b: int, c: int) -> KSpace:
    """Build ``K`` for composable classes ``a -> b -> c`` in degree ``n >= 2``."""
    if n < 2:
        raise HopfError("K is only defined for n >= 2")
    beta_models = [homology_model(gp, mu, b, c) for mu in range(n + 1)]
    alpha_models = [homology_model(gp, nu, a, b) for nu in range(n + 1)]
    beta_tau = [[]] + [truncate(beta_models[mu], beta_models[mu - 1]).canonical_matrix()
                       for mu in range(1, n + 1)]
    alpha_tau = [[]] + [truncate(alpha_models[nu], alpha_models[nu - 1]).canonical_matrix()
                        for nu in range(1, n + 1)]

    def tgroup(mu: int, nu: int) -> FgAbGroup:
        return tensor(beta_models[mu].group, alpha_models[nu].group)

    top, top_off = _block_group([tgroup(mu, nu) for mu, nu in _pieces(n)])
    bottom, bot_off = _block_group([tgroup(mu, nu) for mu, nu in _pieces(n - 1)])
    images = []
    for mu, nu in _pieces(n):
        kb = beta_models[mu].group.ngens
        ka = alpha_models[nu].group.ngens
        for i in range(kb):
            for j in range(ka):
                v = [0] * bottom.dim
                if mu >= 1:
                    # (tau beta) (x) alpha lands in piece (mu - 1, nu)
                    tb = _apply_canonical(beta_tau[mu], _unit(i, kb), beta_models[mu - 1].group.ngens)
                    off = bot_off[n - mu]
                    for k, x in enumerate(tensor_coords(tb, _unit(j, ka))):
                        v[off + k] += x
                if nu >= 1:
                    ta = _apply_canonical(alpha_tau[nu], _unit(j, ka), alpha_models[nu - 1].group.ngens)
                    off = bot_off[n - 1 - mu]
                    for k, x in enumerate(tensor_coords(_unit(i, kb), ta)):
                        v[off + k] -= x
                images.append(v)
    compat = GroupHom(top, bottom, images)
    return KSpace(n, beta_models, alpha_models, beta_tau, alpha_tau,
                  top, top_off, bottom, bot_off, compat, compat.kernel())


def _unit(i: int, k: int) -> list[int]:
    return [int(i == j) for j in range(k)]


def _tau_down(space_models: list[HomologyModel], taus, coords: Sequence[int], frm: int, to: int) -> list[int]:
    x = list(coords)
    for m in range(frm, to, -1):
        x = _apply_canonical(taus[m], x, space_models[m - 1].group.ngens)
        x = list(space_models[m - 1].group.normalize(x))
    return x


def embed(space: KSpace, beta: PathClass, alpha: PathClass) -> KElement:
    """Image of ``beta (x) alpha`` under the truncation maps."""
    n = space.n
    bm, am = space.beta_models[n], space.alpha_models[n]
    kb = bm.kappa(beta)
    ka = am.kappa(alpha)
    v = [0] * space.top.dim
    for idx, (mu, nu) in enumerate(_pieces(n)):
        x = _tau_down(space.beta_models, space.beta_tau, kb, n, mu)
        y = _tau_down(space.alpha_models, space.alpha_tau, ka, n, nu)
        off = space.top_offsets[idx]
        for k, t in enumerate(tensor_coords(x, y)):
            v[off + k] = t
    return KElement(space, tuple(v))


Lift = Callable[[int, int], TruncPoly]  # (level, generator index) -> poly at that level


def canonical_lifts(models: list[HomologyModel]) -> Lift:
    gens = [m.group.generators() for m in models]

    def lift(level: int, i: int) -> TruncPoly:
        return models[level].poly_of(gens[level][i])

    return lift


def perturbed_lifts(models: list[HomologyModel], rng: random.Random, size: int = 3) -> Lift:
    """Canonical lifts plus random elements of ``I^(level+1)`` (still valid lifts)."""
    base = canonical_lifts(models)
    top = models[-1].n
    g = models[0].gp.ngens
    cache: dict[tuple[int, int], TruncPoly] = {}

    def lift(level: int, i: int) -> TruncPoly:
        key = (level, i)
        if key not in cache:
            p = base(level, i).extend(top)
            for _ in range(size):
                length = rng.randint(level + 1, max(level + 1, top))
                if length <= top:
                    w = tuple(rng.randrange(g) for _ in range(length))
                    p = p + TruncPoly.monomial(w, top, g, rng.choice((-2, -1, 1, 2)))
            cache[key] = p
        return cache[key]

    return lift


def compose_homological(k: KElement, beta_lift: Lift | None = None,
                        alpha_lift: Lift | None = None) -> tuple[int, ...]:
    """The map ``K -> H_n(X^n, X(n)^a_c)`` in target-model coordinates.

    Each component is pushed through the Kunneth product of lifted
    representatives; the degree ``n - 1`` overlaps (read off through the
    beta-side truncation) are subtracted so that every filtration piece is
    counted once.
    """
    space = k.space
    if not space.contains(k.vector):
        raise HopfError("element is not in K")
    n = space.n
    a, _, c = space.endpoints
    bl = beta_lift or canonical_lifts(space.beta_models)
    al = alpha_lift or canonical_lifts(space.alpha_models)
    g = space.beta_models[0].gp.ngens
    total = TruncPoly.zero(n, g)

    def pair_sum(mu: int, nu: int, coords: Sequence[int], sign: int) -> TruncPoly:
        ka = space.alpha_models[nu].group.ngens
        out = TruncPoly.zero(n, g)
        for idx, x in enumerate(coords):
            if x:
                i, j = divmod(idx, ka)
                out = out + bl(mu, i).extend(n) * al(nu, j).extend(n) * (sign * x)
        return out

    for mu, nu in _pieces(n):
        total = total + pair_sum(mu, nu, k.component(mu), 1)
    for mu in range(n - 1, -1, -1):
        nu = n - 1 - mu
        src = k.component(mu + 1)
        kb1 = space.beta_models[mu + 1].group.ngens
        ka = space.alpha_models[nu].group.ngens
        kb = space.beta_models[mu].group.ngens
        t = [0] * (kb * ka)
        for idx, x in enumerate(src):
            if x:
                i, j = divmod(idx, ka)
                tb = _apply_canonical(space.beta_tau[mu + 1], _unit(i, kb1), kb)
                for p, y in enumerate(tb):
                    t[p * ka + j] += x * y
        total = total + pair_sum(mu, nu, t, -1)
    target = homology_model(space.beta_models[0].gp, n, a, c)
    return target.kappa_poly(total)


# ---------------------------------------------------------------------------
# Dual cup product example


@dataclass
class DualCupResult:
    h1: FgAbGroup
    h2: FgAbGroup
    dual_cup: GroupHom  # 2-chains -> H1 (x) H1 (canonical tensor coordinates)
    cokernel: FgAbGroup
    graded: FgAbGroup  # I^2/I^3 from the ring
    multiplication: GroupHom  # H1 (x) H1 -> I^2/I^3
    isomorphic: bool
    kernel_matches: bool
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.isomorphic and self.kernel_matches and self.surjective


def dual_cup_cokernel(ss: SimplicialSet, gp: GroupPresentation) -> DualCupResult:
    """Cokernel of ``H_2(X) -> H_1 (x) H_1`` (Alexander-Whitney diagonal) versus ``I^2/I^3``.

    Only one-vertex models are handled: there every edge is a 1-cycle, so the
    front and back faces of a 2-simplex are classes in ``H_1``.
    """
    from .oracle import boundary_rows

    if ss.count(0) != 1:
        raise HopfError("dual cup comparison needs a one-vertex model")
    ne, nt = ss.count(1), ss.count(2)
    d2 = boundary_rows(ss, 2)  # row per 2-simplex, over edges
    d3 = boundary_rows(ss, 3)
    h1 = FgAbGroup(ne, d2)
    cycles = kernel_lattice(d2, ne)
    h2 = FgAbGroup(nt, d3, cycles)
    tg = tensor(h1, h1)

    def edge_class(face) -> list[int]:
        m, idx, _ = face
        v = [0] * ne
        if m == 1:
            v[idx] = 1
        return list(h1.reduce(v))

    images = []
    for t in range(nt):
        front = edge_class(ss.face(ss.simplex(2, t), 2))
        back = edge_class(ss.face(ss.simplex(2, t), 0))
        images.append(tensor_coords(front, back))
    dual = GroupHom(h2, tg, images)
    coker = FgAbGroup(tg.dim, list(tg.relation_lattice.basis) + [dual.apply(z) for z in cycles])

    ring = ring_at(gp, 2)
    graded = graded_piece(ring, 2)
    gen_of = gp.gen_of_edge()
    lifts = []
    for v in h1.generators():
        p = TruncPoly.zero(2, gp.ngens)
        for e, x in enumerate(v):
            if x and e in gen_of:
                p = p + TruncPoly.monomial((gen_of[e],), 2, gp.ngens, x)
        lifts.append(p)
    k1 = h1.ngens
    mult_images = []
    for i in range(k1):
        for j in range(k1):
            # front face i traversed first, then back face j: composition order x_j x_i
            mult_images.append(ring.vector(lifts[j] * lifts[i]))
    mult = GroupHom(tg, graded, mult_images)
    ker = mult.kernel()
    img = Lattice([dual.apply(z) for z in cycles] + list(tg.relation_lattice.basis), tg.dim)
    return DualCupResult(h1, h2, dual, coker, graded, mult,
                         coker.is_isomorphic(graded), ker.subgroup_lattice() == img,
                         mult.is_surjective())
