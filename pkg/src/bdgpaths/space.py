"""Finite simplicial sets with basepoints and their fundamental-group presentations.

A simplex of a simplicial set is written in Eilenberg-Zilber form
``(dim, index, eta)``: the nondegenerate simplex ``index`` of dimension
``dim`` pulled back along the monotone surjection ``eta : [k] -> [dim]``
(stored as the tuple of its values, so ``len(eta) == k + 1``).  The faces of
each nondegenerate simplex are stored in this form; a face whose ``eta`` is
not the identity is degenerate.

Words are tuples of nonzero ints, ``+i`` for generator ``i - 1`` and ``-i``
for its inverse.  Letters multiply in composition order: the word
``(w1, w2, ..., wk)`` is the loop that traverses ``wk`` first and ``w1`` last.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import FgAbGroup

Simplex = tuple[int, int, tuple[int, ...]]
Word = tuple[int, ...]


class SpaceError(ValueError):
    """Malformed space description or invalid request on a space."""


def _identity(k: int) -> tuple[int, ...]:
    return tuple(range(k + 1))


@dataclass(frozen=True)
class SimplicialSet:
    """Nondegenerate simplices by dimension with their faces in EZ form.

    ``faces[k][i]`` holds the ``k + 1`` faces ``d_0 .. d_k`` of the ``i``-th
    nondegenerate ``k``-simplex (``faces[0]`` entries are empty).
    """

    names: tuple[tuple[str, ...], ...]
    faces: tuple[tuple[tuple[Simplex, ...], ...], ...]
    name: str = "space"

    @property
    def dim(self) -> int:
        return len(self.names) - 1

    def count(self, k: int) -> int:
        return len(self.names[k]) if 0 <= k <= self.dim else 0

    def counts(self) -> tuple[int, ...]:
        return tuple(len(n) for n in self.names)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts()))

    def simplex(self, k: int, i: int) -> Simplex:
        return (k, i, _identity(k))

    def lookup(self, name: str) -> tuple[int, int]:
        for k, names in enumerate(self.names):
            if name in names:
                return k, names.index(name)
        raise SpaceError(f"unknown simplex {name!r}")

    def vertex(self, name: str) -> int:
        k, i = self.lookup(name)
        if k != 0:
            raise SpaceError(f"{name!r} is not a vertex")
        return i

    def face(self, s: Simplex, i: int) -> Simplex:
        """The ``i``-th face of an arbitrary simplex in EZ form."""
        m, idx, eta = s
        k = len(eta) - 1
        if not 0 <= i <= k or k == 0:
            raise SpaceError(f"face d_{i} of a {k}-simplex")
        eta2 = eta[:i] + eta[i + 1:]
        if len(set(eta2)) == m + 1:
            return (m, idx, eta2)
        # eta2 misses exactly one value j; factor eta2 = delta_j o eta'
        j = next(v for v in range(m + 1) if v not in eta2)
        eta_p = tuple(v if v < j else v - 1 for v in eta2)
        ym, yidx, zeta = self.faces[m][idx][j]
        return (ym, yidx, tuple(zeta[v] for v in eta_p))

    def edge_ends(self, e: int) -> tuple[int, int]:
        """(source, target) vertex indices of a nondegenerate edge."""
        d0, d1 = self.faces[1][e]
        return d1[1], d0[1]

    def describe(self) -> dict:
        return {
            "name": self.name,
            "counts": list(self.counts()),
            "euler_characteristic": self.euler_characteristic(),
        }


@dataclass(frozen=True)
class Basepoints:
    a: int
    b: int

    @property
    def same(self) -> bool:
        return self.a == self.b


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate(ss: SimplicialSet) -> ValidationReport:
    """Check references, face shapes, the simplicial identities and connectivity."""
    bad: list[str] = []

    def check_face(k, i, j, f):
        if not (isinstance(f, tuple) and len(f) == 3):
            bad.append(f"{ss.names[k][i]}: face d_{j} is malformed")
            return False
        m, idx, eta = f
        if not 0 <= m <= k - 1 or not 0 <= idx < ss.count(m):
            bad.append(f"{ss.names[k][i]}: face d_{j} references a missing simplex")
            return False
        if len(eta) != k or tuple(sorted(eta)) != tuple(eta) or set(eta) != set(range(m + 1)):
            bad.append(f"{ss.names[k][i]}: face d_{j} has an invalid degeneracy {eta}")
            return False
        return True

    if not ss.names or not ss.names[0]:
        return ValidationReport(False, ["no vertices"])
    for k in range(ss.dim + 1):
        if len(ss.faces[k]) != len(ss.names[k]):
            bad.append(f"dimension {k}: face table size mismatch")
            return ValidationReport(False, bad)
        for i, fs in enumerate(ss.faces[k]):
            if k == 0:
                continue
            if len(fs) != k + 1:
                bad.append(f"{ss.names[k][i]}: expected {k + 1} faces, got {len(fs)}")
                continue
            for j, f in enumerate(fs):
                check_face(k, i, j, f)
    if bad:
        return ValidationReport(False, bad)
    for k in range(2, ss.dim + 1):
        for i in range(ss.count(k)):
            s = ss.simplex(k, i)
            for jj in range(1, k + 1):
                for ii in range(jj):
                    lhs = ss.face(ss.face(s, jj), ii)
                    rhs = ss.face(ss.face(s, ii), jj - 1)
                    if lhs != rhs:
                        bad.append(f"{ss.names[k][i]}: d_{ii} d_{jj} != d_{jj - 1} d_{ii}")
    if bad:
        return ValidationReport(False, bad)
    parent = list(range(ss.count(0)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(ss.count(1)):
        s, t = ss.edge_ends(e)
        parent[find(s)] = find(t)
    if len({find(v) for v in range(ss.count(0))}) > 1:
        bad.append("space is not connected")
    return ValidationReport(not bad, bad)


# ---------------------------------------------------------------------------
# Construction


class _Builder:
    def __init__(self, name):
        self.name = name
        self.names: list[list[str]] = []
        self.faces: list[list[tuple]] = []

    def add(self, k, name, faces=()):
        while len(self.names) <= k:
            self.names.append([])
            self.faces.append([])
        self.names[k].append(name)
        self.faces[k].append(tuple(faces))
        return (k, len(self.names[k]) - 1)

    def build(self) -> SimplicialSet:
        ss = SimplicialSet(tuple(tuple(n) for n in self.names),
                           tuple(tuple(f) for f in self.faces), self.name)
        report = validate(ss)
        if not report:
            raise SpaceError(f"{self.name}: {report.violations[0]}")
        return ss


def _nd(ref, k=None) -> Simplex:
    m, idx = ref
    k = m if k is None else k
    return (m, idx, _identity(m)) if k == m else (m, idx, tuple([0] * (k + 1)))


def _edge_faces(src, dst):
    return (_nd(dst), _nd(src))


def from_dict(data: dict) -> tuple[SimplicialSet, Basepoints]:
    """Build a space from the documented JSON-compatible schema.

    ``{"name": str, "simplices": [[vertex names], [{"name", "faces"}], ...],
    "basepoints": {"a": vertex, "b": vertex}}``; a face is either a simplex
    name (nondegenerate face) or ``[name, [eta...]]``.
    """
    try:
        b = _Builder(data.get("name", "space"))
        levels = data["simplices"]
        for v in levels[0]:
            b.add(0, v if isinstance(v, str) else v["name"])
        for k, level in enumerate(levels[1:], start=1):
            for entry in level:
                b.add(k, entry["name"], ())
        lookup = {}
        for k, names in enumerate(b.names):
            for i, n in enumerate(names):
                if n in lookup:
                    raise SpaceError(f"duplicate simplex name {n!r}")
                lookup[n] = (k, i)
        for k, level in enumerate(levels[1:], start=1):
            for i, entry in enumerate(level):
                faces = []
                for f in entry["faces"]:
                    if isinstance(f, str):
                        if f not in lookup:
                            raise SpaceError(f"{entry['name']}: unknown face {f!r}")
                        m, idx = lookup[f]
                        faces.append((m, idx, _identity(m) if m == k - 1 else tuple([0] * k)))
                    else:
                        fname, eta = f
                        if fname not in lookup:
                            raise SpaceError(f"{entry['name']}: unknown face {fname!r}")
                        m, idx = lookup[fname]
                        faces.append((m, idx, tuple(int(x) for x in eta)))
                b.faces[k][i] = tuple(faces)
        ss = SimplicialSet(tuple(tuple(n) for n in b.names),
                           tuple(tuple(f) for f in b.faces), b.name)
        report = validate(ss)
        if not report:
            raise SpaceError(report.violations[0])
        bpd = data.get("basepoints", {})
        a = ss.vertex(bpd.get("a", ss.names[0][0]))
        bb = ss.vertex(bpd.get("b", ss.names[0][a]))
    except (KeyError, TypeError, IndexError) as exc:
        raise SpaceError(f"malformed space description: {exc!r}") from exc
    return ss, Basepoints(a, bb)


def load_space_file(path: str) -> tuple[SimplicialSet, Basepoints]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpaceError(f"{path}: {exc}") from exc
    return from_dict(data)


def to_dict(ss: SimplicialSet, bp: Basepoints) -> dict:
    levels: list = [list(ss.names[0])]
    for k in range(1, ss.dim + 1):
        level = []
        for i, name in enumerate(ss.names[k]):
            faces = []
            for m, idx, eta in ss.faces[k][i]:
                fname = ss.names[m][idx]
                faces.append(fname if eta == _identity(m) else [fname, list(eta)])
            level.append({"name": name, "faces": faces})
        levels.append(level)
    return {"name": ss.name, "simplices": levels,
            "basepoints": {"a": ss.names[0][bp.a], "b": ss.names[0][bp.b]}}


def _circle():
    b = _Builder("circle")
    v = b.add(0, "a")
    b.add(1, "x", _edge_faces(v, v))
    ss = b.build()
    return ss, Basepoints(0, 0)


def _wedge(g: int):
    b = _Builder(f"wedge{g}")
    v = b.add(0, "a")
    for i in range(g):
        b.add(1, f"x{i + 1}", _edge_faces(v, v))
    return b.build(), Basepoints(0, 0)


def _torus():
    # square with sides x (horizontal), y (vertical) and diagonal z
    b = _Builder("torus")
    v = b.add(0, "a")
    x = b.add(1, "x", _edge_faces(v, v))
    y = b.add(1, "y", _edge_faces(v, v))
    z = b.add(1, "z", _edge_faces(v, v))
    b.add(2, "upper", (_nd(y), _nd(z), _nd(x)))
    b.add(2, "lower", (_nd(x), _nd(z), _nd(y)))
    return b.build(), Basepoints(0, 0)


def _genus(h: int):
    """One-vertex surface of genus h: fan triangulation of the 4h-gon a1 b1 a1' b1' ..."""
    if h < 1:
        raise SpaceError("genus must be at least 1")
    bld = _Builder(f"genus{h}")
    v = bld.add(0, "a")
    sides = []  # (edge ref, sign) for polygon side k from P_k to P_{k+1}
    for i in range(1, h + 1):
        a = bld.add(1, f"a{i}", _edge_faces(v, v))
        bb = bld.add(1, f"b{i}", _edge_faces(v, v))
        sides += [(a, 1), (bb, 1), (a, -1), (bb, -1)]
    m = 4 * h
    diag = {}
    for k in range(2, m - 1):
        diag[k] = bld.add(1, f"d{k}", _edge_faces(v, v))

    def spoke(k):
        # edge from P_0 to P_k, always oriented away from P_0
        if k == 1:
            return sides[0][0]
        if k == m - 1:
            return sides[m - 1][0]
        return diag[k]

    for k in range(1, m - 1):
        side, sign = sides[k]
        s, t = (k, k + 1) if sign == 1 else (k + 1, k)
        bld.add(2, f"t{k}", (_nd(side), _nd(spoke(t)), _nd(spoke(s))))
    return bld.build(), Basepoints(0, 0)


def _sphere2():
    b = _Builder("sphere2")
    b.add(0, "a")
    deg = (0, 0, (0, 0))
    b.add(2, "cell", (deg, deg, deg))
    return b.build(), Basepoints(0, 0)


def _interval_wedge(g: int):
    b = _Builder(f"interval_wedge{g}")
    va = b.add(0, "a")
    vb = b.add(0, "b")
    b.add(1, "e", _edge_faces(va, vb))
    for i in range(g):
        b.add(1, f"x{i + 1}", _edge_faces(va, va))
    return b.build(), Basepoints(0, 1)


def attach_whisker(ss: SimplicialSet, a: int, vertex: str = "b*", edge: str = "e*"
                   ) -> tuple[SimplicialSet, Basepoints]:
    """``ss`` with a new vertex joined to ``a`` by one new edge ``a -> vertex``.

    The result is homotopy equivalent to ``ss`` and has a second basepoint
    reached by a single forward edge.
    """
    if vertex in ss.names[0] or (ss.dim >= 1 and edge in ss.names[1]):
        raise SpaceError("whisker names clash with existing simplices")
    names = [list(n) for n in ss.names]
    faces = [list(f) for f in ss.faces]
    if len(names) == 1:
        names.append([])
        faces.append([])
    names[0].append(vertex)
    faces[0].append(())
    new = len(names[0]) - 1
    names[1].append(edge)
    faces[1].append(_edge_faces((0, a), (0, new)))
    out = SimplicialSet(tuple(tuple(n) for n in names), tuple(tuple(f) for f in faces),
                        ss.name + "+whisker")
    report = validate(out)
    if not report:
        raise SpaceError(report.violations[0])
    return out, Basepoints(a, new)


BUILTINS = {
    "circle": "1 vertex, 1 edge",
    "wedge(g)": "1 vertex, g edges",
    "torus": "1 vertex, 3 edges, 2 triangles",
    "genus(h)": "1 vertex, 6h - 3 edges, 4h - 2 triangles",
    "sphere2": "1 vertex, 1 triangle with degenerate boundary",
    "interval_wedge(g)": "vertices a != b, edge e: a -> b, g loops at a",
}


def parse_space_name(name: str) -> tuple[str, int | None]:
    """Split ``wedge2``, ``wedge(2)`` or ``genus_2`` into (family, parameter)."""
    s = name.strip().lower().replace("(", "").replace(")", "")
    for fam in ("interval_wedge", "wedge", "genus"):
        if s.startswith(fam):
            rest = s[len(fam):].lstrip("_")
            if not rest.isdigit():
                raise SpaceError(f"{name!r}: {fam} needs a positive integer parameter")
            return fam, int(rest)
    if s in ("circle", "torus", "sphere2"):
        return s, None
    raise SpaceError(f"unknown space {name!r}")


def builtin_space(name: str, param: int | None = None) -> tuple[SimplicialSet, Basepoints]:
    if param is None:
        name, param = parse_space_name(name)
    if name == "circle":
        return _circle()
    if name == "torus":
        return _torus()
    if name == "sphere2":
        return _sphere2()
    if param is None or param < 1:
        raise SpaceError(f"{name} needs a positive integer parameter")
    if name == "wedge":
        return _wedge(param)
    if name == "genus":
        return _genus(param)
    if name == "interval_wedge":
        return _interval_wedge(param)
    raise SpaceError(f"unknown space {name!r}")


# ---------------------------------------------------------------------------
# Words and presentations


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    """Presentation of pi_1(X, anchor) read off a spanning tree.

    ``generators[i]`` is the edge index of generator ``i``; ``refpaths[v]`` is
    the tree edge path (traversal order, ``(edge, +-1)``) from the anchor to
    vertex ``v``.
    """

    ngens: int
    relators: tuple[Word, ...]
    generators: tuple[int, ...] = ()
    tree: tuple[int, ...] = ()
    anchor: int = 0
    target: int = 0
    refpaths: tuple[tuple[tuple[int, int], ...], ...] = ()
    names: tuple[str, ...] = ()

    @property
    def refpath(self) -> tuple[tuple[int, int], ...]:
        return self.refpaths[self.target] if self.refpaths else ()

    def gen_of_edge(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.generators)}

    def distinguished_edge(self, ss: SimplicialSet) -> int | None:
        """A tree edge from the anchor to the target, if one exists."""
        for e in self.tree:
            if ss.edge_ends(e) == (self.anchor, self.target):
                return e
        return None

    def abelianization(self) -> FgAbGroup:
        rels = []
        for r in self.relators:
            v = [0] * self.ngens
            for x in r:
                v[abs(x) - 1] += 1 if x > 0 else -1
            rels.append(v)
        return FgAbGroup(self.ngens, rels)


def spanning_tree(ss: SimplicialSet, root: int) -> tuple[list[int], list[tuple]]:
    """Breadth-first tree from ``root`` scanning edges in index order."""
    paths: list = [None] * ss.count(0)
    paths[root] = ()
    tree = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in range(ss.count(1)):
            s, t = ss.edge_ends(e)
            if s == v and paths[t] is None:
                paths[t] = paths[v] + ((e, 1),)
            elif t == v and paths[s] is None:
                paths[s] = paths[v] + ((e, -1),)
            else:
                continue
            tree.append(e)
            queue.append(t if s == v else s)
    return tree, paths


def fundamental_presentation(ss: SimplicialSet, bp: Basepoints) -> GroupPresentation:
    report = validate(ss)
    if not report:
        raise SpaceError(report.violations[0])
    tree, paths = spanning_tree(ss, bp.a)
    gens = tuple(e for e in range(ss.count(1)) if e not in tree)
    index = {e: i for i, e in enumerate(gens)}

    def letter(face: Simplex, sign: int) -> Word:
        m, idx, _ = face
        if m != 1 or idx not in index:
            return ()
        return (sign * (index[idx] + 1),)

    relators = []
    for i in range(ss.count(2)):
        d0, d1, d2 = ss.faces[2][i]
        # boundary loop traverses d2, then d0, then d1 backwards
        relators.append(free_reduce(letter(d1, -1) + letter(d0, 1) + letter(d2, 1)))
    return GroupPresentation(
        ngens=len(gens), relators=tuple(relators), generators=gens, tree=tuple(tree),
        anchor=bp.a, target=bp.b, refpaths=tuple(tuple(p) for p in paths),
        names=tuple(ss.names[1][e] for e in gens))


def edge_path_to_word(path: Sequence[tuple[int, int]], gp: GroupPresentation,
                      ss: SimplicialSet, start: int | None = None) -> Word:
    """Word of an edge path (traversal order) in the anchored groupoid encoding.

    A path from ``u`` to ``v`` is encoded by the loop ``ref_v^-1 . path . ref_u``
    at the anchor; tree edges contribute nothing.
    """
    index = gp.gen_of_edge()
    here = gp.anchor if start is None else start
    letters: list[int] = []
    for e, sign in path:
        if sign not in (1, -1) or not 0 <= e < ss.count(1):
            raise SpaceError(f"bad path step {(e, sign)!r}")
        s, t = ss.edge_ends(e)
        if sign == -1:
            s, t = t, s
        if s != here:
            raise SpaceError(f"path is not connected at edge {ss.names[1][e]!r}")
        here = t
        if e in index:
            letters.append(sign * (index[e] + 1))
    return free_reduce(reversed(letters))


def word_to_edge_path(word: Sequence[int], gp: GroupPresentation) -> list[tuple[int, int]]:
    """Traversal-order edge path of a word when every generator is an anchor loop."""
    return [(gp.generators[abs(x) - 1], 1 if x > 0 else -1) for x in reversed(word)]


def product_presentation(gp: GroupPresentation) -> GroupPresentation:
    """Presentation of pi x pi: primed letters ``1..g``, double-primed ``g+1..2g``."""
    g = gp.ngens
    shift = lambda w: tuple(x + g if x > 0 else x - g for x in w)  # noqa: E731
    rels = list(gp.relators) + [shift(r) for r in gp.relators]
    for i in range(1, g + 1):
        for j in range(g + 1, 2 * g + 1):
            rels.append((i, j, -i, -j))
    names = tuple(n + "'" for n in gp.names) + tuple(n + "''" for n in gp.names)
    return GroupPresentation(ngens=2 * g, relators=tuple(rels), names=names)
