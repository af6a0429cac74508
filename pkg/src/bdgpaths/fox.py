"""Fox-calculus models of ``H_n(X^n, X(n)^a_b)``.

Over ``R = Z[pi_a]`` the cellular chains of the universal cover give the
left-module complex ``R^relators -> R^generators -> I -> 0`` with
``d(f_r) = sum_e (dr/de) eps_e`` and ``d(eps_e) = g_e - 1``.  Tensoring with
``R/I^n`` (expanded over the word basis of the degree ``n - 1`` Magnus ring)
gives the models below:

* loop model (``a == b``): cokernel of the Fox matrix, identified with
  ``I/I^(n+1)`` by ``lambda eps_e -> lambda x_e``;
* path model (``a != b``): homology of
  ``(R/I^n)^relators -> (R/I^n)^generators + (R/I^n) eps_e -> (R/I^n)/Z``,
  an extension of ``I/I^(n+1)`` by the ``Z`` spanned by ``eps_e``.

Fox derivatives use the left convention ``d(uv) = du + u dv``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import FgAbGroup, GroupHom, Lattice, kernel_lattice
from .space import GroupPresentation, Word
from .truncring import PathClass, TruncPoly, TruncRing, magnus, ring_at


class ModelError(ValueError):
    pass


def fox_derivative(r: Word, e: int, ring: TruncRing) -> TruncPoly:
    """``dr/dx_e`` reduced in ``ring`` (``e`` is a 0-based generator index)."""
    if not 0 <= e < ring.g:
        raise ModelError(f"unknown generator {e}")
    n, g = ring.n, ring.g
    acc = TruncPoly.zero(n, g)
    prefix = TruncPoly.one(n, g)
    for x in r:
        i = abs(x) - 1
        step = magnus((x,), n, g)
        if i == e:
            acc = acc + (prefix if x > 0 else -(prefix * step))
        prefix = prefix * step
    return ring.reduce(acc)


def fox_matrix(gp: GroupPresentation, ring: TruncRing) -> list[list[TruncPoly]]:
    """Rows indexed by generators, columns by relators."""
    return [[fox_derivative(r, e, ring) for r in gp.relators] for e in range(gp.ngens)]


@dataclass
class HomologyModel:
    """Algebraic model of ``H_n(X^n, X(n)^source_target)`` with its kappa map."""

    n: int
    source: int
    target: int
    gp: GroupPresentation
    group: FgAbGroup
    low: TruncRing | None  # R/I^n as the degree n-1 Magnus ring

    @property
    def same(self) -> bool:
        return self.source == self.target

    @property
    def tag(self) -> str:
        return "loop" if self.same else "path"

    @property
    def block(self) -> int:
        return self.low.dim if self.low is not None else 1

    @property
    def nblocks(self) -> int:
        return self.gp.ngens + (0 if self.same else 1)

    def distinguished(self) -> list[int] | None:
        """Ambient vector of ``eps_e`` (path model only)."""
        if self.same:
            return None
        v = [0] * self.group.dim
        v[self.gp.ngens * self.block] = 1
        return v

    # kappa ------------------------------------------------------------------

    def ambient(self, q: TruncPoly) -> list[int]:
        """Ambient image of the encoded class ``q`` (any truncation degree >= n)."""
        if q.n < self.n:
            raise ModelError(f"class of degree {q.n} cannot feed a degree {self.n} model")
        if self.n == 0:
            return [] if self.same else [q.augmentation()]
        low = self.low
        v: list[int] = []
        for e in range(self.gp.ngens):
            v.extend(low.vector(q.strip(e).truncate(low.n)))
        if not self.same:
            v.extend(low.vector(q.truncate(low.n)))
        return v

    def kappa(self, pc: PathClass) -> tuple[int, ...]:
        if pc.ring.n != self.n or pc.ring.gp.relators != self.gp.relators:
            raise ModelError("path class and model do not share (X, n)")
        if (pc.source == pc.target) != self.same:
            raise ModelError("path class endpoints do not match the model")
        return self.group.reduce(self.ambient(pc.poly))

    def kappa_poly(self, q: TruncPoly) -> tuple[int, ...]:
        return self.group.reduce(self.ambient(q))

    def kappa_hom(self, ring: TruncRing) -> GroupHom:
        """kappa_n as a homomorphism from ``ring.group`` (``Z pi / I^(n+1)``)."""
        return GroupHom(ring.group, self.group,
                        [self.ambient(ring.poly(e)) for e in _units(ring.dim)])

    # the explicit identification with Z pi / I^(n+1) -------------------------

    def poly_of(self, v: Sequence[int]) -> TruncPoly:
        """The explicit identification with ``Z pi / I^(n+1)``: ``sum_e lambda_e x_e (+ c)``.

        For the path model a cycle ``(lambda, mu)`` has ``mu = sum lambda_e x_e + c``
        modulo the relator ideal, with ``c`` the constant term of ``mu``.
        """
        g = self.gp.ngens
        out = TruncPoly.zero(self.n, g)
        if self.n == 0:
            if not self.same and v:
                out = TruncPoly.one(0, g) * v[0]
            return out
        low, d = self.low, self.block
        for e in range(g):
            lam = low.poly(v[e * d:(e + 1) * d]).extend(self.n)
            out = out + lam * TruncPoly.monomial((e,), self.n, g)
        if not self.same:
            out = out + TruncPoly.one(self.n, g) * v[g * d + low.index[()]]
        return out

    def __repr__(self) -> str:
        return f"HomologyModel({self.tag}, n={self.n}, {self.group})"


def _units(d: int) -> list[list[int]]:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def _block_ideal(low: TruncRing, nblocks: int) -> list[list[int]]:
    d = low.dim
    rows = []
    for b in range(nblocks):
        for j in low.ideal.basis:
            v = [0] * (nblocks * d)
            v[b * d:(b + 1) * d] = j
            rows.append(v)
    return rows


def _fox_rows(gp: GroupPresentation, low: TruncRing, nblocks: int) -> list[list[int]]:
    d = low.dim
    fm = fox_matrix(gp, low)
    rows = []
    for ri in range(len(gp.relators)):
        for m in low.basis:
            mono = TruncPoly.monomial(m, low.n, low.g)
            v = [0] * (nblocks * d)
            for e in range(gp.ngens):
                v[e * d:(e + 1) * d] = low.vector(mono * fm[e][ri])
            rows.append(v)
    return rows


def _check_ring(gp: GroupPresentation, ring: TruncRing | None, n: int) -> None:
    if ring is not None and (ring.n != n or ring.gp.relators != gp.relators):
        raise ModelError("ring does not match the presentation and degree")


def loop_model(gp: GroupPresentation, ring: TruncRing | None, n: int,
               basepoint: int | None = None) -> HomologyModel:
    """Cokernel model of ``H_n(X^n, X(n)^a_a)``; ``n = 0`` gives the trivial group."""
    _check_ring(gp, ring, n)
    a = gp.anchor if basepoint is None else basepoint
    if n == 0:
        return HomologyModel(0, a, a, gp, FgAbGroup(0), None)
    low = ring_at(gp, n - 1)
    g = gp.ngens
    rels = _fox_rows(gp, low, g) + _block_ideal(low, g)
    return HomologyModel(n, a, a, gp, FgAbGroup(g * low.dim, rels), low)


def path_model(gp: GroupPresentation, ring: TruncRing | None, n: int,
               source: int | None = None, target: int | None = None) -> HomologyModel:
    """Extension model of ``H_n(X^n, X(n)^a_b)`` for ``a != b``; ``n = 0`` gives ``Z``."""
    _check_ring(gp, ring, n)
    a = gp.anchor if source is None else source
    b = gp.target if target is None else target
    if a == b:
        raise ModelError("path_model needs distinct endpoints")
    ref = gp.refpath if gp.target != gp.anchor else ()
    if len(ref) != 1 or ref[0][1] != 1:
        raise ModelError("presentation lacks a distinguished edge e with boundary (b) - (a)")
    if n == 0:
        return HomologyModel(0, a, b, gp, FgAbGroup(1), None)
    low = ring_at(gp, n - 1)
    g, d = gp.ngens, low.dim
    nb = g + 1
    # boundary over a: (lambda, mu) -> sum lambda_e x_e - mu  in (R/I^n)/Z
    images = []
    for blk in range(nb):
        for w in low.basis:
            if blk < g:
                img = TruncPoly.monomial(w + (blk,), low.n, g) if len(w) < low.n else TruncPoly.zero(low.n, g)
            else:
                img = -TruncPoly.monomial(w, low.n, g)
            images.append(low.vector(img))
    modulo = list(low.ideal.basis) + [low.vector(TruncPoly.one(low.n, g))]
    cycles = kernel_lattice(images, d, modulo)
    rels = _fox_rows(gp, low, nb) + _block_ideal(low, nb)
    cyc = Lattice(cycles, nb * d)
    if any(r not in cyc for r in rels):
        raise ModelError("internal error: relations are not cycles")
    group = FgAbGroup(nb * d, rels, cycles)
    return HomologyModel(n, a, b, gp, group, low)


def homology_model(gp: GroupPresentation, n: int, source: int, target: int) -> HomologyModel:
    """Loop or path model according to whether the endpoints agree."""
    if source == target:
        return loop_model(gp, None, n, source)
    return path_model(gp, None, n, source, target)


def kappa(pc: PathClass, model: HomologyModel) -> tuple[int, ...]:
    return model.kappa(pc)


def truncate(model_n: HomologyModel, model_m: HomologyModel) -> GroupHom:
    """``tau^n_(n-1)`` on model coordinates (blockwise truncation)."""
    n = model_n.n
    if model_m.n != n - 1 or n < 1:
        raise ModelError("truncation needs consecutive degrees n, n-1 with n >= 1")
    if model_n.same != model_m.same or model_n.gp.relators != model_m.gp.relators:
        raise ModelError("models do not share endpoints and space")
    src, dst = model_n, model_m
    images = []
    for blk in range(src.nblocks):
        is_mu = blk == src.gp.ngens
        for w in src.low.basis:
            img = [0] * dst.group.dim
            if dst.n == 0:
                if is_mu and not w:
                    img[0] = 1
            elif len(w) <= dst.low.n:
                img[blk * dst.block + dst.low.index[w]] = 1
            images.append(img)
    return GroupHom(src.group, dst.group, images)


def ring_truncation(ring_n: TruncRing, ring_m: TruncRing) -> GroupHom:
    """Algebraic truncation ``Z pi / I^(n+1) -> Z pi / I^m`` on word coordinates."""
    images = []
    for w in ring_n.basis:
        img = [0] * ring_m.dim
        if len(w) <= ring_m.n:
            img[ring_m.index[w]] = 1
        images.append(img)
    return GroupHom(ring_n.group, ring_m.group, images)
