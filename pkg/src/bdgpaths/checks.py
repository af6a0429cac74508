"""Verification suites: each check computes two sides by separate routes."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from .fox import homology_model, ring_truncation, truncate
from .hopf import (as_tensor, compose, compose_homological, compose_refined, coproduct,
                   coproduct_at, counit_at, dual_cup_cokernel, embed, graded_coproduct,
                   k_kernel, perturbed_lifts, primitives_vs_equalizer, shuffle_coproduct)
from .lattice import FgAbGroup, GroupHom, describe
from .oracle import (DEFAULT_CAP, chain_class, connectivity_check, kappa_chain, relative_complex,
                     tensor_power_check)
from .space import (Basepoints, GroupPresentation, SimplicialSet, attach_whisker,
                    fundamental_presentation, word_to_edge_path)
from .truncring import (build_ring, graded_piece, ideal_quotient, invert_class, magnus,
                        path_class, ring_at, word_basis)

SUITES = ("bdg", "connectivity", "ladder", "hopf", "composition", "cupexample")


@dataclass
class CheckRecord:
    check_id: str
    lhs_invariants: str
    rhs_invariants: str
    match: bool
    ms: int = 0


@dataclass
class VerificationReport:
    space: str
    n_range: list[int]
    endpoints: list[str]
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if all(c.match for c in self.checks) else "fail"

    def to_dict(self) -> dict:
        return {"space": self.space, "n_range": self.n_range, "endpoints": self.endpoints,
                "checks": [asdict(c) for c in self.checks], "verdict": self.verdict}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        checks = [CheckRecord(**c) for c in data["checks"]]
        return cls(data["space"], list(data["n_range"]), list(data["endpoints"]), checks)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def table(self) -> str:
        rows = [("check", "lhs", "rhs", "match", "ms")]
        for c in self.checks:
            rows.append((c.check_id, c.lhs_invariants, c.rhs_invariants,
                         "pass" if c.match else "FAIL", str(c.ms)))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = [f"space {self.space}  n {self.n_range[0]}..{self.n_range[-1]}  "
                 f"endpoints {' -> '.join(self.endpoints)}"]
        for r in rows:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


@dataclass
class Context:
    """A space with chosen endpoints and its presentation based at ``a``."""

    ss: SimplicialSet
    bp: Basepoints
    gp: GroupPresentation
    cap: int = DEFAULT_CAP
    seed: int = 0

    @property
    def endpoint_names(self) -> list[str]:
        return [self.ss.names[0][self.bp.a], self.ss.names[0][self.bp.b]]

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")


def make_context(ss: SimplicialSet, bp: Basepoints, distinct: bool,
                 cap: int = DEFAULT_CAP, seed: int = 0) -> Context:
    """Loops at ``a`` by default; ``distinct`` uses ``b`` (or a whisker if ``b == a``)."""
    if not distinct:
        bp = Basepoints(bp.a, bp.a)
    elif bp.same:
        ss, bp = attach_whisker(ss, bp.a)
    return Context(ss, bp, fundamental_presentation(ss, bp), cap, seed)


def _timed(check_id: str, fn: Callable[[], tuple[str, str, bool]]) -> CheckRecord:
    t = time.perf_counter()
    lhs, rhs, ok = fn()
    return CheckRecord(check_id, lhs, rhs, bool(ok), int(round((time.perf_counter() - t) * 1000)))


def _inv(g) -> str:
    return describe(g.invariants()) if hasattr(g, "invariants") else describe(g)


def random_word(rng: random.Random, g: int, max_len: int) -> tuple[int, ...]:
    if g == 0:
        return ()
    return tuple(rng.choice((1, -1)) * rng.randint(1, g) for _ in range(rng.randint(0, max_len)))


# ---------------------------------------------------------------------------
# Suites


def magnus_side(ctx: Context, n: int):
    """The Magnus-quotient side: ``I/I^(n+1)`` for loops, the whole ring for paths."""
    ring = build_ring(ctx.gp, n)
    return ideal_quotient(ring, 1) if ctx.bp.same else ring.group


def suite_bdg(ctx: Context, n: int) -> list[CheckRecord]:
    out = []

    def oracle_vs_fox():
        rc = relative_complex(ctx.ss, n, "both", ctx.bp, cap=ctx.cap)
        top = rc.invariants(n)
        model = homology_model(ctx.gp, n, ctx.bp.a, ctx.bp.b)
        return describe(top), _inv(model.group), top == model.group.invariants()

    def fox_vs_magnus():
        model = homology_model(ctx.gp, n, ctx.bp.a, ctx.bp.b)
        alg = magnus_side(ctx, n)
        return _inv(model.group), _inv(alg), model.group.is_isomorphic(alg)

    out.append(_timed(f"bdg.n{n}.oracle-vs-fox", oracle_vs_fox))
    out.append(_timed(f"bdg.n{n}.fox-vs-magnus", fox_vs_magnus))
    if n <= 2:
        out.append(_timed(f"bdg.n{n}.chain-kappa", lambda: chain_kappa_compare(ctx, n).summary()))
    if not ctx.bp.same and not ctx.gp.relators:
        def rank_formula():
            model = homology_model(ctx.gp, n, ctx.bp.a, ctx.bp.b)
            want = 1 + sum(ctx.gp.ngens ** k for k in range(1, n + 1))
            return str(model.group.rank), str(want), model.group.invariants() == (want, ())
        out.append(_timed(f"bdg.n{n}.extension-rank", rank_formula))
    return out


@dataclass
class ChainKappaResult:
    words: list[tuple[int, ...]]
    algebraic: GroupHom  # Z^words -> model
    chains: GroupHom  # Z^words -> oracle H_n
    same_kernel: bool
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.same_kernel and self.surjective

    def summary(self) -> tuple[str, str, bool]:
        return (f"ker rank {self.algebraic.kernel().rank} ({len(self.words)} words)",
                f"ker rank {self.chains.kernel().rank}", self.ok)


def chain_kappa_compare(ctx: Context, n: int) -> ChainKappaResult:
    """Algebraic kappa against the class of the chain ``gamma^n`` on positive words.

    Positive words of length ``<= n`` span ``Z pi / I^(n+1)``, and their edge
    paths only use edges forwards.  Both maps are defined on the free group
    on these words; they match when their kernels agree and both are onto.
    """
    gp, g = ctx.gp, ctx.gp.ngens
    a, b = ctx.bp.a, ctx.bp.b
    words = [tuple(x + 1 for x in w) for w in word_basis(n, g)]
    model = homology_model(gp, n, a, b)
    rc = relative_complex(ctx.ss, n, "both", ctx.bp, cap=ctx.cap)
    hg = rc.homology_group(n)
    tail = [e for e, _ in gp.refpath] if not ctx.bp.same else []
    alg, top = [], []
    for w in words:
        alg.append(model.ambient(magnus(w, n, g)))
        path = [e for e, _ in word_to_edge_path(w, gp)] + tail
        chain = kappa_chain(path, n, ctx.ss, a, b, ctx.cap)
        chain_class(rc, chain, n, hg)  # raises unless a relative cycle
        top.append(rc.chain_vector(chain, n))
    free = FgAbGroup(len(words))
    f, h = GroupHom(free, model.group, alg), GroupHom(free, hg, top)
    same = f.kernel().subgroup_lattice() == h.kernel().subgroup_lattice()
    return ChainKappaResult(words, f, h, same, f.is_surjective() and h.is_surjective())


def suite_connectivity(ctx: Context, n: int) -> list[CheckRecord]:
    def run():
        rc = relative_complex(ctx.ss, n, "both", ctx.bp, max(n, 1), ctx.cap)
        rep = connectivity_check(rc, n)
        lhs = ", ".join(f"H{k}={describe(v)}" for k, v in rep.groups.items()) or "-"
        return lhs, "all 0", rep.ok

    return [_timed(f"connectivity.n{n}", run)]


def suite_tensor_power(ctx: Context, n: int) -> list[CheckRecord]:
    def run():
        rep = tensor_power_check(ctx.ss, Basepoints(ctx.bp.a, ctx.bp.a), n, ctx.cap)
        return describe(rep.top), describe(rep.expected), rep.ok

    return [_timed(f"connectivity.n{n}.h1-tensor-power", run)]


def suite_ladder(ctx: Context, n: int, words: int = 20) -> list[CheckRecord]:
    a, b = ctx.bp.a, ctx.bp.b
    mn = homology_model(ctx.gp, n, a, b)
    mp = homology_model(ctx.gp, n - 1, a, b)
    ring_n, ring_p = ring_at(ctx.gp, n), ring_at(ctx.gp, n - 1)

    def kernel():
        tau = truncate(mn, mp)
        ker = tau.kernel()
        an = graded_piece(ring_n, n)
        return f"{_inv(ker)} (onto={tau.is_surjective()})", _inv(an), \
            tau.is_surjective() and ker.is_isomorphic(an)

    def commutes():
        tau = truncate(mn, mp)
        rng = ctx.rng(f"ladder{n}")
        good = 0
        for _ in range(words):
            w = random_word(rng, ctx.gp.ngens, n + 2)
            top = path_class(w, ring_n, ctx.bp)
            low = path_class(w, ring_p, ctx.bp)
            good += tau(mn.ambient(top.poly)) == mp.kappa(low)
        return f"{good}/{words}", f"{words}/{words}", good == words

    def kernels():
        kn = mn.kappa_hom(ring_n).kernel()
        kp = mp.kappa_hom(ring_p).kernel()
        trunc = ring_truncation(ring_n, ring_p)
        f = GroupHom(kn, kp, trunc.images)
        return _inv(kn), _inv(kp), f.is_isomorphism()

    return [_timed(f"ladder.n{n}.kernel-is-A{n}", kernel),
            _timed(f"ladder.n{n}.commutes", commutes),
            _timed(f"ladder.n{n}.kappa-kernels", kernels)]


def suite_hopf(ctx: Context, n: int, cases: int = 50) -> list[CheckRecord]:
    gp, g = ctx.gp, ctx.gp.ngens
    ring = ring_at(gp, n)
    rng = ctx.rng(f"hopf{n}")
    samples = [ring.poly([rng.randint(-3, 3) for _ in range(ring.dim)]) for _ in range(cases)]

    def count(pred, total=cases):
        good = sum(1 for s in range(total) if pred(s))
        return f"{good}/{total}", f"{total}/{total}", good == total

    def coassoc():
        return count(lambda i: coproduct_at(coproduct(samples[i]), 0)
                     == coproduct_at(coproduct(samples[i]), 1))

    def counit():
        return count(lambda i: counit_at(coproduct(samples[i]), 0) == as_tensor(samples[i])
                     and counit_at(coproduct(samples[i]), 1) == as_tensor(samples[i]))

    monos = [w for w in word_basis(n, g) if w]
    picks = [rng.choice(monos) for _ in range(cases)] if monos else []

    def shuffle():
        return count(lambda i: graded_coproduct(picks[i], n, g) == shuffle_coproduct(picks[i], n, g),
                     len(picks))

    pairs = [(random_word(rng, g, 4), random_word(rng, g, 4)) for _ in range(cases)]
    loop = Basepoints(ctx.bp.a, ctx.bp.a)

    def antipode():
        def ok(i):
            al = path_class(pairs[i][0], ring, loop)
            be = path_class(pairs[i][1], ring, loop)
            return invert_class(compose(be, al)) == compose(invert_class(al), invert_class(be))
        return count(ok)

    out = [_timed(f"hopf.n{n}.coassociativity", coassoc),
           _timed(f"hopf.n{n}.counit", counit),
           _timed(f"hopf.n{n}.shuffle", shuffle),
           _timed(f"hopf.n{n}.antipode", antipode)]

    def primitives():
        same, prim, eq = primitives_vs_equalizer(gp, n)
        return _inv(prim), _inv(eq.group), same

    out.append(_timed(f"hopf.n{n}.primitives-vs-equalizer", primitives))
    return out


def suite_composition(ctx: Context, n: int, pairs: int = 25, perturbed: int = 10) -> list[CheckRecord]:
    if n < 2:
        return []
    a, b = ctx.bp.a, ctx.bp.b
    gp = ctx.gp
    ring = ring_at(gp, n)
    space = k_kernel(gp, n, a, a, b)
    target = homology_model(gp, n, a, b)
    rng = ctx.rng(f"composition{n}")
    data = [(random_word(rng, gp.ngens, n + 2), random_word(rng, gp.ngens, n + 2)) for _ in range(pairs)]

    def classes(i):
        al = path_class(data[i][0], ring, Basepoints(a, a))
        be = path_class(data[i][1], ring, ctx.bp)
        return be, al

    def agrees():
        good = 0
        for i in range(pairs):
            be, al = classes(i)
            good += compose_homological(embed(space, be, al)) == target.kappa(compose_refined(be, al))
        return f"{good}/{pairs}", f"{pairs}/{pairs}", good == pairs

    def independent():
        good = 0
        for i in range(perturbed):
            be, al = classes(i)
            k = embed(space, be, al)
            base = compose_homological(k)
            other = compose_homological(k, perturbed_lifts(space.beta_models, rng),
                                        perturbed_lifts(space.alpha_models, rng))
            good += base == other
        return f"{good}/{perturbed}", f"{perturbed}/{perturbed}", good == perturbed

    return [_timed(f"composition.n{n}.kappa-compose", agrees),
            _timed(f"composition.n{n}.representative-independence", independent)]


def suite_cupexample(ctx: Context) -> list[CheckRecord]:
    def run():
        res = dual_cup_cokernel(ctx.ss, ctx.gp)
        return _inv(res.cokernel), _inv(res.graded), res.ok

    return [_timed("cupexample.coker-vs-A2", run)]


def run_suite(name: str, ctx: Context, nmax: int, nmin: int = 1) -> list[CheckRecord]:
    ns = range(nmin, nmax + 1)
    if name == "bdg":
        return [r for n in ns for r in suite_bdg(ctx, n)]
    if name == "connectivity":
        out = [r for n in ns for r in suite_connectivity(ctx, n)]
        if ctx.ss.count(0) == 1 and nmax >= 2:
            out += suite_tensor_power(ctx, 2)
        return out
    if name == "ladder":
        return [r for n in ns for r in suite_ladder(ctx, n)]
    if name == "hopf":
        return [r for n in ns for r in suite_hopf(ctx, n)]
    if name == "composition":
        return [r for n in ns for r in suite_composition(ctx, n)]
    if name == "cupexample":
        return suite_cupexample(ctx)
    raise ValueError(f"unknown suite {name!r}")


def applicable(name: str, ctx: Context) -> bool:
    if name == "hopf":
        return ctx.bp.same
    if name == "cupexample":
        return ctx.ss.count(0) == 1 and ctx.bp.same
    return True
