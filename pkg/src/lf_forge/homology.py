"""First homology of an oriented thickened ribbon graph.

The surface deformation-retracts to its graph, so H1 is free on the co-tree
edges of a spanning tree.  The intersection pairing is evaluated at vertex
disks: every curve through a vertex is a chord of that disk, and two chords
cross according to how their endpoints interleave in the cyclic order.  When
two cycles share edges, one is pushed off to the right of its own direction
of travel; on an oriented, twist-free presentation this keeps shared bands
crossing-free and moves all decisions into the vertex disks, where arrival
endpoints land just after the attachment and departure endpoints just before
it.  All of this lives on the normalized (twist-free, globally
counterclockwise) presentation of the surface.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import (
    CombPath,
    CurveOnSurface,
    BoundaryPosition,
    PathStep,
    Step,
    TransversalityError,
    reversed_step,
    step_head,
    step_head_half,
    step_tail,
    step_tail_half,
)
from .ribbon import RibbonGraph, SurfaceError, SIDE_L, SIDE_R


class DisconnectedError(SurfaceError):
    """Homology helpers here only handle connected surfaces."""


class Workspace:
    """Oriented homology workspace for one ribbon graph.

    Holds the normalized presentation, the lexicographic spanning tree, the
    co-tree basis and the Gram matrix of the intersection pairing in that
    basis.  Cached on the graph instance; treat as read-only.
    """

    def __init__(self, surface: RibbonGraph):
        if not surface.is_connected():
            raise DisconnectedError("homology requires a connected surface")
        self.graph = surface
        self.norm = surface.normalized()  # raises NonOrientableError if needed
        # Lexicographically greedy spanning tree: scan edge ids in order and
        # keep every edge joining two components (Kruskal).
        root = {v: v for v in self.norm.vertices}

        def find(v):
            while root[v] != v:
                root[v] = root[root[v]]
                v = root[v]
            return v

        self.tree: set[str] = set()
        for e in self.norm.edges:
            t, h = self.norm.edge_endpoints(e)
            rt, rh = find(t), find(h)
            if rt != rh:
                root[rt] = rh
                self.tree.add(e)
        self.basis: tuple[str, ...] = tuple(e for e in self.norm.edges if e not in self.tree)
        self.index = {e: i for i, e in enumerate(self.basis)}
        self._tree_adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.norm.vertices}
        for e in self.tree:
            t, h = self.norm.edge_endpoints(e)
            self._tree_adj[t].append((e, h))
            self._tree_adj[h].append((e, t))
        self._slot_cache: dict[str, dict] = {}
        self._gram: list[list[int]] | None = None

    # -- basis cycles -------------------------------------------------------

    def tree_path(self, a: str, b: str) -> list[Step]:
        """Steps along tree edges from vertex a to vertex b."""
        if a == b:
            return []
        prev: dict[str, tuple[str, str]] = {a: ("", "")}
        queue = [a]
        while queue:
            v = queue.pop(0)
            if v == b:
                break
            for e, w in sorted(self._tree_adj[v]):
                if w not in prev:
                    prev[w] = (e, v)
                    queue.append(w)
        if b not in prev:
            raise DisconnectedError("tree path not found")
        steps: list[Step] = []
        v = b
        while v != a:
            e, u = prev[v]
            steps.append((e, 1 if self.norm.edge_endpoints(e) == (u, v) else -1))
            v = u
        steps.reverse()
        return steps

    def basis_cycle(self, edge: str) -> CurveOnSurface:
        """Fundamental cycle of a co-tree edge: the edge plus the tree path
        closing it up."""
        if edge not in self.index:
            raise SurfaceError(f"{edge!r} is not a basis (co-tree) edge")
        t, h = self.norm.edge_endpoints(edge)
        walk = [(edge, 1)] + self.tree_path(h, t)
        return CurveOnSurface(self.graph, f"z[{edge}]", tuple(walk))

    # -- chord bookkeeping ----------------------------------------------------

    def _slots(self, vertex: str) -> dict:
        """Cyclic positions of the marked points on the vertex disk: for each
        attachment, a pre-attachment point (R), the attachment itself (S) and
        a post-attachment point (L), in counterclockwise order."""
        if vertex not in self._slot_cache:
            pos = {}
            for i, h in enumerate(self.norm.rotation[vertex]):
                pos[(h, SIDE_R)] = 3 * i
                pos[(h, "S")] = 3 * i + 1
                pos[(h, SIDE_L)] = 3 * i + 2
            self._slot_cache[vertex] = pos
        return self._slot_cache[vertex]

    @staticmethod
    def _chord_sign(n: int, p_in: int, p_out: int, q_in: int, q_out: int) -> int:
        """Sign of the crossing of directed chords p and q of a disk whose
        boundary carries n marked positions counterclockwise; 0 if disjoint."""
        r_out = (p_out - p_in) % n
        r_qin = (q_in - p_in) % n
        r_qout = (q_out - p_in) % n
        if 0 < r_qin < r_out < r_qout:
            return 1
        if 0 < r_qout < r_out < r_qin:
            return -1
        return 0

    def crossing_number(self, x: CurveOnSurface, y: CurveOnSurface) -> int:
        """Signed crossings of two walks sharing no edges (corner rule)."""
        shared = x.edge_set() & y.edge_set()
        if shared:
            raise TransversalityError(
                f"curves {x.name!r} and {y.name!r} share edges {sorted(shared)}; "
                "refine one of them off the shared bands"
            )
        return self._pushed_crossings(x.passes(), y.passes(), push=False)

    def _pushed_crossings(self, x_passes, y_passes, push: bool) -> int:
        by_vertex: dict[str, list] = {}
        for p in x_passes:
            by_vertex.setdefault(p[0], []).append(p)
        total = 0
        for v, xs in by_vertex.items():
            ys = [q for q in y_passes if q[0] == v]
            if not ys:
                continue
            slots = self._slots(v)
            n = 3 * len(self.norm.rotation[v])
            for (_, xin, xout, _) in xs:
                pi, po = slots[(xin, "S")], slots[(xout, "S")]
                for (_, yin, yout, _) in ys:
                    if push:
                        qi, qo = slots[(yin, SIDE_L)], slots[(yout, SIDE_R)]
                    else:
                        qi, qo = slots[(yin, "S")], slots[(yout, "S")]
                    total += self._chord_sign(n, pi, po, qi, qo)
        return total

    def gram_matrix(self) -> list[list[int]]:
        """Intersection pairing of the basis cycles.

        Entry (i, j) counts signed crossings of basis cycle i with a copy of
        basis cycle j pushed off to the right of its own direction; shared
        tree segments stay parallel inside the bands, so only vertex corners
        contribute.
        """
        if self._gram is None:
            cycles = [self.basis_cycle(e) for e in self.basis]
            passes = [c.passes() for c in cycles]
            n = len(cycles)
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    if i != j:
                        m[i][j] = self._pushed_crossings(passes[i], passes[j], push=True)
            for i in range(n):
                for j in range(n):
                    if m[i][j] != -m[j][i]:
                        raise SurfaceError("intersection pairing failed antisymmetry")
            self._gram = m
        return self._gram


def workspace(surface: RibbonGraph) -> Workspace:
    ws = surface._cache.get("homology")
    if ws is None:
        ws = Workspace(surface)
        surface._cache["homology"] = ws
    return ws


@dataclass(frozen=True)
class HomologyClass:
    """Element of H1 of the thickened surface in the co-tree basis."""

    host: RibbonGraph
    vector: tuple[int, ...]

    def __post_init__(self):
        n = len(workspace(self.host).basis)
        if len(self.vector) != n:
            raise SurfaceError(f"class vector has length {len(self.vector)}, basis has {n}")

    def _require_same_host(self, other: "HomologyClass"):
        if self.host is not other.host:
            raise SurfaceError("homology classes live on different surfaces")

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._require_same_host(other)
        return HomologyClass(self.host, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        self._require_same_host(other)
        return HomologyClass(self.host, tuple(a - b for a, b in zip(self.vector, other.vector)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.host, tuple(-a for a in self.vector))

    def scaled(self, k: int) -> "HomologyClass":
        return HomologyClass(self.host, tuple(k * a for a in self.vector))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.vector)


def homology_basis(surface: RibbonGraph) -> tuple[str, ...]:
    """Co-tree edges indexing the H1 basis, in lexicographic order."""
    return workspace(surface).basis


def curve_class(surface: RibbonGraph, curve: CurveOnSurface) -> HomologyClass:
    """Homology class of a closed walk: net signed co-tree traversal counts."""
    if curve.host is not surface:
        raise SurfaceError("curve lives on a different surface")
    ws = workspace(surface)
    vec = [0] * len(ws.basis)
    for e, s in curve.walk:
        i = ws.index.get(e)
        if i is not None:
            vec[i] += s
    return HomologyClass(surface, tuple(vec))


def class_from_steps(surface: RibbonGraph, steps) -> HomologyClass:
    ws = workspace(surface)
    vec = [0] * len(ws.basis)
    for e, s in steps:
        i = ws.index.get(e)
        if i is not None:
            vec[i] += s
    return HomologyClass(surface, tuple(vec))


def algebraic_intersection(surface: RibbonGraph, x: HomologyClass, y: HomologyClass) -> int:
    """Skew-symmetric intersection pairing on H1."""
    if x.host is not surface or y.host is not surface:
        raise SurfaceError("classes live on a different surface")
    gram = workspace(surface).gram_matrix()
    return sum(
        xi * gram[i][j] * yj
        for i, xi in enumerate(x.vector) if xi
        for j, yj in enumerate(y.vector) if yj
    )


def dehn_twist_on_class(surface: RibbonGraph, curve: CurveOnSurface, x: HomologyClass) -> HomologyClass:
    """Action of the positive Dehn twist along ``curve``: x + <x, c> [c]."""
    c = curve_class(surface, curve.require_edge_simple())
    return x + c.scaled(algebraic_intersection(surface, x, c))


def signed_crossings(surface: RibbonGraph, x: CurveOnSurface, y: CurveOnSurface) -> int:
    """Signed corner crossings of edge-disjoint walks; equals the pairing of
    their classes."""
    return workspace(surface).crossing_number(x, y)


# -- Dehn twists on walks and arcs ---------------------------------------------


def _crossings_with_curve(surface: RibbonGraph, passes, curve: CurveOnSurface):
    """All signed (pass index in host walk, detour steps) crossings of a
    sequence of vertex passes with an edge-simple closed curve."""
    ws = workspace(surface)
    out = []
    c_passes = curve.passes()
    for (v, pin, pout, host_idx) in passes:
        for (w, qin, qout, cidx) in c_passes:
            if v != w:
                continue
            slots = ws._slots(v)
            n = 3 * len(ws.norm.rotation[v])
            s = ws._chord_sign(
                n, slots[(pin, "S")], slots[(pout, "S")], slots[(qin, "S")], slots[(qout, "S")]
            )
            if s == 0:
                continue
            detour = list(curve.rebased((cidx + 1) % len(curve.walk)))
            if s < 0:
                detour = [reversed_step(st) for st in reversed(detour)]
            out.append((host_idx, s, detour))
    return out


def dehn_twist_on_path(surface: RibbonGraph, curve: CurveOnSurface, path):
    """Positive Dehn twist along ``curve`` applied to a walk or arc.

    At every signed crossing the result detours around a full copy of the
    twist curve (reversed at negative crossings), so the homology effect
    matches ``dehn_twist_on_class`` exactly.  The input must meet the curve
    only at vertices or transverse band crossings; sharing an edge traversal
    raises TransversalityError.
    """
    curve.require_edge_simple()
    if isinstance(path, CurveOnSurface):
        if path.host is not surface or curve.host is not surface:
            raise SurfaceError("twist inputs live on different surfaces")
        shared = path.edge_set() & curve.edge_set()
        if shared:
            raise TransversalityError(
                f"walk shares edges {sorted(shared)} with twist curve {curve.name!r}; "
                "refine the walk off those bands first"
            )
        inserts = _crossings_with_curve(surface, path.passes(), curve)
        new_walk: list[Step] = []
        by_idx: dict[int, list] = {}
        for host_idx, _, detour in inserts:
            by_idx.setdefault(host_idx, []).append(detour)
        for i, step in enumerate(path.walk):
            new_walk.append(step)
            for detour in by_idx.get(i, ()):
                new_walk.extend(detour)
        return CurveOnSurface(surface, path.name, tuple(new_walk))
    if isinstance(path, CombPath):
        if path.host is not surface or curve.host is not surface:
            raise SurfaceError("twist inputs live on different surfaces")
        shared = path.traversed_edges() & curve.edge_set()
        if shared:
            raise TransversalityError(
                f"arc shares edges {sorted(shared)} with twist curve {curve.name!r}; "
                "refine the arc off those bands first"
            )
        inserts: dict[int, list] = {}
        for host_idx, _, detour in _crossings_with_curve(surface, path.interior_passes(), curve):
            inserts.setdefault(host_idx, []).append(detour)
        # Transverse rung crossings: one detour per traversal of the crossed
        # band, based at the head of that traversal.
        for i, st in enumerate(path.steps):
            if st.kind != "cross":
                continue
            for cidx, cstep in enumerate(curve.walk):
                if cstep[0] != st.edge:
                    continue
                s = st.sign * cstep[1]
                detour = list(curve.rebased((cidx + 1) % len(curve.walk)))
                if s < 0:
                    detour = [reversed_step(x) for x in reversed(detour)]
                inserts.setdefault(i, []).append(detour)
        new_steps: list[PathStep] = []
        for i, st in enumerate(path.steps):
            new_steps.append(st)
            for detour in inserts.get(i, ()):
                new_steps.extend(PathStep("edge", e, s) for e, s in detour)
        return CombPath(surface, tuple(new_steps), path.start, path.end)
    raise SurfaceError(f"cannot twist object of type {type(path).__name__}")


def arc_loop_class(surface: RibbonGraph, twisted: CombPath, original: CombPath) -> HomologyClass:
    """Class of (twisted arc) * (original arc reversed), a closed loop."""
    if twisted.start != original.start or twisted.end != original.end:
        raise SurfaceError("arcs do not share endpoints")
    diff = twisted.edge_steps() + [reversed_step(s) for s in reversed(original.edge_steps())]
    return class_from_steps(surface, diff)


def cutting_arc_system(surface: RibbonGraph) -> tuple[CombPath, ...]:
    """One transverse rung per co-tree edge; cutting along all of them
    reduces the surface to a thickened spanning tree, a disk."""
    ws = workspace(surface)
    arcs = []
    for e in ws.basis:
        start = surface.boundary_position(((e, 0), SIDE_R))
        end = surface.boundary_position(((e, 0), SIDE_L))
        arcs.append(
            CombPath(
                surface,
                (PathStep("cross", e, 1),),
                BoundaryPosition(*start),
                BoundaryPosition(*end),
            )
        )
    return tuple(arcs)
