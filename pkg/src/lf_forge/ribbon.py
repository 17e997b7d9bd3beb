"""Ribbon graphs with twist bits and the compact surfaces they thicken into.

A ribbon graph is a finite graph together with a cyclic order of half-edge
attachments around every vertex and a twist bit per edge.  Thickening vertices
to disks and edges to (half-twisted, when flagged) bands produces a compact
surface with boundary; all surface-level questions asked here (Euler
characteristic, boundary count, orientability, genus) are answered purely
combinatorially from that data.

Half-edges are pairs ``(edge_id, end)`` with ``end`` 0 or 1.  Traversing an
edge "forward" (sign +1) runs from end 0 to end 1.
"""

from __future__ import annotations

from dataclasses import dataclass


class SurfaceError(ValueError):
    """Input does not describe the object an operation requires."""


class NonOrientableError(SurfaceError):
    """Raised by operations defined only over oriented surfaces."""


HalfEdge = tuple[str, int]

# Boundary-walk states are (half_edge, side).  Side 0 is the band side that
# meets the corner *before* the attachment in the vertex's cyclic order, side 1
# the one after.  A state means "enter the band of this half-edge at this side".
SIDE_R = 0
SIDE_L = 1


@dataclass(frozen=True)
class SurfaceInvariants:
    """Homeomorphism data of the thickened surface.

    ``genus`` is None when the surface is non-orientable; there is then no
    orientable genus to report and callers must consult ``orientable``.
    """

    euler: int
    boundary_components: int
    genus: int | None
    orientable: bool


class RibbonGraph:
    """Immutable ribbon graph.

    Parameters:
        vertices: iterable of vertex ids (strings).
        edges: iterable of edge ids (strings).
        rotation: dict vertex -> sequence of half-edges, the cyclic
            counterclockwise order of attachments at that vertex.
        twists: collection of edge ids whose band carries a half twist.

    Every half-edge (e, 0) and (e, 1) must occur exactly once in the
    rotations.  Instances are treated as immutable after construction.
    """

    def __init__(self, vertices, edges, rotation, twists=()):
        self.vertices = tuple(sorted(vertices))
        self.edges = tuple(sorted(edges))
        self.twists = frozenset(twists)
        self.rotation = {v: tuple((str(e), int(i)) for e, i in rotation.get(v, ())) for v in self.vertices}
        self._check()
        self._vertex_of = {}
        for v in self.vertices:
            for h in self.rotation[v]:
                self._vertex_of[h] = v
        self._cache = {}

    def _check(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SurfaceError("duplicate vertex ids")
        if len(set(self.edges)) != len(self.edges):
            raise SurfaceError("duplicate edge ids")
        for e in self.edges:
            if e.startswith("-"):
                raise SurfaceError(f"edge id may not start with '-': {e!r}")
        if set(self.rotation) != set(self.vertices):
            raise SurfaceError("rotation keys must match vertex set")
        seen = {}
        for v, rot in self.rotation.items():
            for h in rot:
                if h in seen:
                    raise SurfaceError(f"half-edge {h} attached twice")
                seen[h] = v
        expected = {(e, i) for e in self.edges for i in (0, 1)}
        if set(seen) != expected:
            missing = expected - set(seen)
            extra = set(seen) - expected
            raise SurfaceError(f"half-edge mismatch: missing {sorted(missing)}, unknown {sorted(extra)}")
        if not self.twists <= set(self.edges):
            raise SurfaceError("twist set contains unknown edges")

    # -- basic structure ---------------------------------------------------

    def vertex_of(self, half_edge: HalfEdge) -> str:
        return self._vertex_of[half_edge]

    def edge_endpoints(self, edge: str) -> tuple[str, str]:
        """(tail, head) for the forward traversal of ``edge``."""
        return self._vertex_of[(edge, 0)], self._vertex_of[(edge, 1)]

    def is_loop(self, edge: str) -> bool:
        t, h = self.edge_endpoints(edge)
        return t == h

    def rotation_next(self, half_edge: HalfEdge) -> HalfEdge:
        rot = self.rotation[self._vertex_of[half_edge]]
        return rot[(rot.index(half_edge) + 1) % len(rot)]

    def rotation_prev(self, half_edge: HalfEdge) -> HalfEdge:
        rot = self.rotation[self._vertex_of[half_edge]]
        return rot[(rot.index(half_edge) - 1) % len(rot)]

    @staticmethod
    def partner(half_edge: HalfEdge) -> HalfEdge:
        e, i = half_edge
        return (e, 1 - i)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for h in self.rotation[v]:
                w = self._vertex_of[self.partner(h)]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    # -- boundary tracing --------------------------------------------------

    def _advance(self, state):
        """One step of the boundary walk.

        Entering the band of half-edge h at side R runs along the side that
        (untwisted) exits at the partner's L end, after which the walk wraps
        the next corner counterclockwise; a twist swaps the exit side and
        reverses the corner direction.  The map is a bijection on states.
        """
        h, side = state
        k = self.partner(h)
        twisted = h[0] in self.twists
        if side == SIDE_R:
            if not twisted:
                return (self.rotation_next(k), SIDE_R)
            return (self.rotation_prev(k), SIDE_L)
        if not twisted:
            return (self.rotation_prev(k), SIDE_L)
        return (self.rotation_next(k), SIDE_R)

    def _reverse_state(self, state):
        """The same band side entered from its other end."""
        h, side = state
        k = self.partner(h)
        if h[0] in self.twists:
            return (k, side)
        return (k, 1 - side)

    def boundary_walks(self) -> tuple[tuple[tuple[HalfEdge, int], ...], ...]:
        """Boundary circles as state cycles, one orbit per circle.

        Each circle is traversed by two direction-reversed state orbits; the
        one whose minimal state is smaller is kept, so positions along the
        returned walks are canonical.
        """
        if "boundary" in self._cache:
            return self._cache["boundary"]
        states = [((e, i), s) for e in self.edges for i in (0, 1) for s in (0, 1)]
        seen = set()
        orbits = []
        for start in sorted(states):
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            cur = self._advance(start)
            while cur != start:
                orbit.append(cur)
                seen.add(cur)
                cur = self._advance(cur)
            orbits.append(tuple(orbit))
        by_min = {min(o): o for o in orbits}
        kept = []
        for o in orbits:
            partner_min = min(self._reverse_state(s) for s in o)
            if min(o) < partner_min:
                kept.append(o)
        if 2 * len(kept) != len(orbits):
            raise SurfaceError("boundary tracing produced unpaired orbits")
        result = tuple(sorted(kept))
        self._cache["boundary"] = result
        return result

    def boundary_position(self, state) -> tuple[int, int]:
        """(walk index, offset) of a band-side state on the canonical walks."""
        walks = self.boundary_walks()
        for i, walk in enumerate(walks):
            if state in walk:
                return (i, walk.index(state))
        rev = self._reverse_state(state)
        for i, walk in enumerate(walks):
            if rev in walk:
                return (i, walk.index(rev))
        raise SurfaceError(f"state {state} not on any boundary walk")

    def num_boundary_components(self) -> int:
        return len(self.boundary_walks())

    # -- orientation -------------------------------------------------------

    def local_orientations(self) -> dict[str, int] | None:
        """Consistent +-1 per vertex, or None if the surface is non-orientable.

        An untwisted band is compatible with equal signs at its endpoints, a
        twisted band with opposite signs; loops therefore force their own
        twist bit to be clear.  Propagated over each component from its
        lexicographically least vertex, set to +1.
        """
        if "orientation" in self._cache:
            return self._cache["orientation"]
        eps: dict[str, int] = {}
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            t, h = self.edge_endpoints(e)
            adj[t].append((e, h))
            adj[h].append((e, t))
        result: dict[str, int] | None = {}
        for root in self.vertices:
            if root in eps:
                continue
            eps[root] = 1
            stack = [root]
            while stack and result is not None:
                v = stack.pop()
                for e, w in adj[v]:
                    want = -eps[v] if e in self.twists else eps[v]
                    if w not in eps:
                        eps[w] = want
                        stack.append(w)
                    elif eps[w] != want:
                        result = None
                        break
        if result is not None:
            result = eps
        self._cache["orientation"] = result
        return result

    def is_orientable(self) -> bool:
        return self.local_orientations() is not None

    def normalized(self) -> "RibbonGraph":
        """Equivalent presentation with every twist bit cleared.

        Reverses the rotation at every vertex carrying local orientation -1;
        this toggles the twist bit of every edge with exactly one flipped
        endpoint and leaves the surface unchanged.  Only defined for
        orientable graphs.  Vertex, edge and half-edge ids are preserved.
        """
        if "normalized" in self._cache:
            return self._cache["normalized"]
        eps = self.local_orientations()
        if eps is None:
            raise NonOrientableError("cannot orient a non-orientable surface")
        if not self.twists and all(s == 1 for s in eps.values()):
            self._cache["normalized"] = self
            return self
        rotation = {}
        for v in self.vertices:
            rot = self.rotation[v]
            rotation[v] = rot if eps[v] == 1 else tuple(reversed(rot))
        twists = set()
        for e in self.edges:
            t, h = self.edge_endpoints(e)
            tw = (e in self.twists) ^ (eps[t] == -1) ^ (eps[h] == -1)
            if tw:
                twists.add(e)
        if twists:
            raise SurfaceError("orientation propagation left twisted edges")
        norm = RibbonGraph(self.vertices, self.edges, rotation, ())
        self._cache["normalized"] = norm
        return norm

    def mirrored(self) -> "RibbonGraph":
        """The same surface with the opposite global orientation convention."""
        rotation = {v: tuple(reversed(rot)) for v, rot in self.rotation.items()}
        return RibbonGraph(self.vertices, self.edges, rotation, self.twists)

    # -- invariants ----------------------------------------------------------

    def invariants(self) -> SurfaceInvariants:
        """Euler characteristic, boundary count, genus, orientability.

        Genus is computed from chi = 2 - 2h - b and requires a connected
        graph; non-orientable surfaces report genus None.
        """
        if not self.is_connected():
            raise SurfaceError("surface invariants require a connected graph")
        chi = self.euler_characteristic()
        b = self.num_boundary_components()
        if not self.is_orientable():
            return SurfaceInvariants(chi, b, None, False)
        if (2 - chi - b) % 2 != 0:
            raise SurfaceError(f"impossible invariants: chi={chi}, b={b}")
        h = (2 - chi - b) // 2
        if h < 0:
            raise SurfaceError(f"negative genus from chi={chi}, b={b}")
        return SurfaceInvariants(chi, b, h, True)

    # -- degree-two smoothing ------------------------------------------------

    def smoothed(self) -> tuple["RibbonGraph", dict[str, tuple[str, int]]]:
        """Suppress all degree-2 vertices, merging their edge pairs.

        Returns the reduced graph and a map old edge -> (new edge, sign):
        traversing the old edge forward corresponds to traversing the new
        edge with that sign.  A component that is entirely a cycle of
        degree-2 vertices cannot be smoothed and raises.
        """
        deg2 = {v for v in self.vertices if len(self.rotation[v]) == 2
                and self.rotation[v][0][0] != self.rotation[v][1][0]}
        if not deg2:
            return self, {e: (e, 1) for e in self.edges}
        # Walk each maximal chain of degree-2 vertices from its anchored ends.
        edge_map: dict[str, tuple[str, int]] = {}
        new_edges = []
        new_twists = set()
        consumed = set()
        half_replacement: dict[HalfEdge, HalfEdge] = {}

        def hops(h):
            """Follow a chain starting into half-edge h's edge, away from it."""
            path = []
            cur = h  # half-edge at the anchor vertex, pointing into the chain
            while True:
                e = cur[0]
                path.append(cur)
                far = self.partner(cur)
                v = self._vertex_of[far]
                if v not in deg2:
                    return path, far
                a, b = self.rotation[v]
                cur = b if a == far else a

        for v in sorted(set(self.vertices) - deg2):
            for h in self.rotation[v]:
                if h[0] in consumed:
                    continue
                far_v = self._vertex_of[self.partner(h)]
                if far_v not in deg2:
                    continue
                path, far = hops(h)
                for k in path:
                    consumed.add(k[0])
                chain = [k[0] for k in path]
                new_id = min(chain)
                twist = sum(1 for e in chain if e in self.twists) % 2
                # Forward orientation of the merged edge follows the walk
                # direction out of the first anchor.
                new_edges.append(new_id)
                if twist:
                    new_twists.add(new_id)
                half_replacement[h] = (new_id, 0)
                half_replacement[far] = (new_id, 1)
                for k in path:
                    sign = 1 if k[1] == 0 else -1
                    edge_map[k[0]] = (new_id, sign)
        for e in self.edges:
            if e not in edge_map:
                edge_map[e] = (e, 1)
                new_edges.append(e)
                if e in self.twists:
                    new_twists.add(e)
        if len(new_edges) != len(set(new_edges)):
            raise SurfaceError("smoothing produced clashing edge ids")
        kept = set(self.vertices) - deg2
        if not kept:
            raise SurfaceError("cannot smooth a pure cycle of degree-2 vertices")
        rotation = {}
        for v in sorted(kept):
            rotation[v] = tuple(half_replacement.get(h, h) for h in self.rotation[v])
        return RibbonGraph(kept, new_edges, rotation, new_twists), edge_map

    # -- serialization -------------------------------------------------------

    @staticmethod
    def half_edge_id(h: HalfEdge) -> str:
        return f"{h[0]}.{h[1]}"

    @staticmethod
    def parse_half_edge(s: str) -> HalfEdge:
        edge, _, end = s.rpartition(".")
        if end not in ("0", "1") or not edge:
            raise SurfaceError(f"bad half-edge id {s!r}")
        return (edge, int(end))

    def to_json_dict(self) -> dict:
        return {
            "schema": "ribbon-graph/1",
            "vertices": list(self.vertices),
            "edges": [
                {
                    "id": e,
                    "half_edges": [self.half_edge_id((e, 0)), self.half_edge_id((e, 1))],
                    "twist": e in self.twists,
                }
                for e in self.edges
            ],
            "rotation": {v: [self.half_edge_id(h) for h in self.rotation[v]] for v in self.vertices},
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "RibbonGraph":
        if doc.get("schema") != "ribbon-graph/1":
            raise SurfaceError(f"unsupported schema {doc.get('schema')!r}")
        edges = [rec["id"] for rec in doc["edges"]]
        twists = [rec["id"] for rec in doc["edges"] if rec.get("twist")]
        rotation = {
            v: [cls.parse_half_edge(s) for s in hs] for v, hs in doc["rotation"].items()
        }
        return cls(doc["vertices"], edges, rotation, twists)

    def to_dot(self, name: str = "surface") -> str:
        """Graphviz rendering of the underlying graph; diagnostic only."""
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            t, h = self.edge_endpoints(e)
            mark = "~" if e in self.twists else ""
            lines.append(f'  "{t}" -- "{h}" [label="{e}{mark}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"RibbonGraph(V={len(self.vertices)}, E={len(self.edges)}, twists={len(self.twists)})"


def surface_invariants(surface: RibbonGraph) -> SurfaceInvariants:
    """Module-level alias for RibbonGraph.invariants."""
    return surface.invariants()
