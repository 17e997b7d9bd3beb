"""Immersed curve systems on closed oriented surfaces, crossings only.

A divide is the image of a curve system whose only singularities are
transverse double points.  It is stored as a 4-valent graph with a rotation
system: crossings are vertices, the arcs between consecutive crossings are
edges, and each crossing lists its four half-edge slots counterclockwise.
The curves themselves are recovered by entering a crossing and leaving
through the opposite slot.  Complementary faces are traced from the rotation
data; they are disks, so the data pins down a closed oriented ambient
surface and its genus.

Admissibility asks for connectedness plus a checkerboard coloring of the
faces.  The coloring drives the Morse counts and, downstream, which corners
of each crossing carry band attachments in the fiber construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ribbon import HalfEdge, RibbonGraph


class DivideError(ValueError):
    """Input does not describe a valid divide."""


class ColoringError(DivideError):
    """The faces of the divide admit no checkerboard coloring."""


# A step of a curve traversal: (edge, +1) runs tail to head.
Step = tuple[str, int]

VALENCE = 4


class Divide:
    """Immutable 4-valent rotation graph.

    Parameters mirror RibbonGraph minus twists: ``rotation`` maps each
    crossing to its four half-edges in counterclockwise order, and every
    half-edge (e, 0), (e, 1) must occur exactly once overall.
    """

    def __init__(self, vertices, edges, rotation):
        self.vertices = tuple(sorted(vertices))
        self.edges = tuple(sorted(edges))
        self.rotation = {v: tuple((str(e), int(i)) for e, i in rotation.get(v, ())) for v in self.vertices}
        self._check()
        self._vertex_of = {}
        self._slot = {}
        for v in self.vertices:
            for k, h in enumerate(self.rotation[v]):
                self._vertex_of[h] = v
                self._slot[h] = k
        self._cache = {}

    def _check(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise DivideError("duplicate vertex ids")
        if len(set(self.edges)) != len(self.edges):
            raise DivideError("duplicate edge ids")
        for e in self.edges:
            if e.startswith("-"):
                raise DivideError(f"edge id may not start with '-': {e!r}")
        if set(self.rotation) != set(self.vertices):
            raise DivideError("rotation keys must match vertex set")
        seen = set()
        for v, rot in self.rotation.items():
            if len(rot) != VALENCE:
                raise DivideError(f"crossing {v!r} has {len(rot)} slots, divides need exactly {VALENCE}")
            for h in rot:
                if h in seen:
                    raise DivideError(f"half-edge {h} attached twice")
                seen.add(h)
        expected = {(e, i) for e in self.edges for i in (0, 1)}
        if seen != expected:
            missing = expected - seen
            extra = seen - expected
            raise DivideError(f"half-edge mismatch: missing {sorted(missing)}, unknown {sorted(extra)}")

    # -- structure -----------------------------------------------------------

    def vertex_of(self, half_edge: HalfEdge) -> str:
        return self._vertex_of[half_edge]

    def edge_endpoints(self, edge: str) -> tuple[str, str]:
        return self._vertex_of[(edge, 0)], self._vertex_of[(edge, 1)]

    @staticmethod
    def partner(half_edge: HalfEdge) -> HalfEdge:
        e, i = half_edge
        return (e, 1 - i)

    def slot_of(self, half_edge: HalfEdge) -> int:
        return self._slot[half_edge]

    def opposite_slot(self, half_edge: HalfEdge) -> HalfEdge:
        """The slot the immersed curve continues through."""
        v = self._vertex_of[half_edge]
        return self.rotation[v][(self._slot[half_edge] + 2) % VALENCE]

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

    # -- curve components ----------------------------------------------------

    def components(self) -> tuple[tuple[Step, ...], ...]:
        """The immersed curves as closed signed-edge walks.

        Each walk starts at its least edge, traversed forward; walks are
        ordered by that edge.  Every edge appears in exactly one walk.
        """
        if "components" in self._cache:
            return self._cache["components"]
        claimed = set()
        walks = []
        for e in self.edges:
            if e in claimed:
                continue
            walk = []
            step: Step = (e, 1)
            while True:
                walk.append(step)
                claimed.add(step[0])
                arrive = (step[0], 1 if step[1] == 1 else 0)
                depart = self.opposite_slot(arrive)
                step = (depart[0], 1 if depart[1] == 0 else -1)
                if step == (e, 1):
                    break
            walks.append(tuple(walk))
        result = tuple(walks)
        self._cache["components"] = result
        return result

    # -- faces -----------------------------------------------------------------

    def faces(self) -> tuple[tuple[HalfEdge, ...], ...]:
        """Complementary disks as half-edge orbits of next-after-partner.

        Each orbit is rebased to start at its least half-edge and the orbits
        are sorted, so face indices are canonical.
        """
        if "faces" in self._cache:
            return self._cache["faces"]
        todo = sorted(self._vertex_of)
        seen = set()
        orbits = []
        for start in todo:
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            cur = self._face_next(start)
            while cur != start:
                orbit.append(cur)
                seen.add(cur)
                cur = self._face_next(cur)
            k = orbit.index(min(orbit))
            orbits.append(tuple(orbit[k:] + orbit[:k]))
        result = tuple(sorted(orbits))
        self._cache["faces"] = result
        return result

    def _face_next(self, half_edge: HalfEdge) -> HalfEdge:
        k = self.partner(half_edge)
        rot = self.rotation[self._vertex_of[k]]
        return rot[(self._slot[k] + 1) % VALENCE]

    def face_of(self, half_edge: HalfEdge) -> int:
        if "face_of" not in self._cache:
            self._cache["face_of"] = {h: i for i, orbit in enumerate(self.faces()) for h in orbit}
        return self._cache["face_of"][half_edge]

    def corner_face(self, vertex: str, slot: int) -> int:
        """Face filling the corner between ``slot`` and the next slot."""
        return self.face_of(self.rotation[vertex][(slot + 1) % VALENCE])

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces())

    def ambient_genus(self) -> int:
        if not self.is_connected():
            raise DivideError("ambient genus requires a connected divide")
        chi = self.euler_characteristic()
        if chi % 2 or chi > 2:
            raise DivideError(f"impossible Euler characteristic {chi} for a closed oriented surface")
        return (2 - chi) // 2

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": "divide/1",
            "vertices": list(self.vertices),
            "edges": [
                {"id": e, "tail": self._vertex_of[(e, 0)], "head": self._vertex_of[(e, 1)]}
                for e in self.edges
            ],
            "rotation": {v: [RibbonGraph.half_edge_id(h) for h in self.rotation[v]] for v in self.vertices},
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Divide":
        if doc.get("schema") != "divide/1":
            raise DivideError(f"unsupported schema {doc.get('schema')!r}")
        rotation = {v: [RibbonGraph.parse_half_edge(s) for s in hs] for v, hs in doc["rotation"].items()}
        divide = cls(doc["vertices"], [rec["id"] for rec in doc["edges"]], rotation)
        for rec in doc["edges"]:
            declared = (rec["tail"], rec["head"])
            if divide.edge_endpoints(rec["id"]) != declared:
                raise DivideError(f"edge {rec['id']!r} endpoints disagree with rotation placement")
        return divide

    def to_text(self) -> str:
        """One line per crossing: ``vertex: h h h h`` counterclockwise."""
        lines = [
            f"{v}: " + " ".join(RibbonGraph.half_edge_id(h) for h in self.rotation[v])
            for v in self.vertices
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Divide":
        """Parse the plain-text format; '#' comments and blank lines allowed."""
        rotation = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            name, colon, rest = line.partition(":")
            v = name.strip()
            tokens = rest.split()
            if not colon or not v or len(tokens) != VALENCE:
                raise DivideError(f"expected 'vertex: h h h h', got {raw!r}")
            if v in rotation:
                raise DivideError(f"crossing {v!r} listed twice")
            rotation[v] = tuple(RibbonGraph.parse_half_edge(t) for t in tokens)
        if not rotation:
            raise DivideError("empty divide description")
        edges = {h[0] for rot in rotation.values() for h in rot}
        return cls(rotation.keys(), edges, rotation)

    def to_dot(self, name: str = "divide") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            t, h = self.edge_endpoints(e)
            lines.append(f'  "{t}" -- "{h}" [label="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"Divide(V={len(self.vertices)}, E={len(self.edges)})"


# -- checkerboard coloring -----------------------------------------------------


@dataclass(frozen=True)
class Checkerboard:
    """Face indices split into the two color classes.

    White is, by convention, the class containing the face that holds the
    overall least half-edge.
    """

    white: tuple[int, ...]
    black: tuple[int, ...]

    def color_of(self, face: int) -> str:
        if face in self.white:
            return "white"
        if face in self.black:
            return "black"
        raise KeyError(f"no face {face}")


def checkerboard_coloring(divide: Divide) -> Checkerboard:
    """2-color the faces so the two sides of every edge differ.

    Raises ColoringError when impossible, naming an odd closed chain of
    faces as the witness.
    """
    faces = divide.faces()
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(faces))}
    for e in divide.edges:
        i = divide.face_of((e, 0))
        j = divide.face_of((e, 1))
        if i == j:
            raise ColoringError(f"face {i} touches both sides of edge {e!r}")
        adjacency[i].add(j)
        adjacency[j].add(i)
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for root in range(len(faces)):
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = [root]
        for u in queue:
            for w in sorted(adjacency[u]):
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    raise ColoringError("odd face chain " + _odd_chain(parent, u, w))
    anchor = color[divide.face_of((divide.edges[0], 0))] if divide.edges else 0
    white = tuple(i for i in range(len(faces)) if color[i] == anchor)
    black = tuple(i for i in range(len(faces)) if color[i] != anchor)
    return Checkerboard(white, black)


def _odd_chain(parent: dict[int, int | None], u: int, w: int) -> str:
    def chain(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    cu, cw = chain(u), chain(w)
    junction = None
    while cu and cw and cu[-1] == cw[-1]:
        junction = cu.pop()
        cw.pop()
    cycle = cu + [junction] + list(reversed(cw))
    return " - ".join(f"F{i}" for i in cycle)


# -- admissibility and Morse counts ---------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    connected: bool
    crossings: int
    arcs: int
    faces: int
    euler: int
    ambient_genus: int | None
    colorable: bool
    problem: str | None = None

    @property
    def admissible(self) -> bool:
        return self.connected and self.colorable

    def to_json_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "connected": self.connected,
            "crossings": self.crossings,
            "arcs": self.arcs,
            "faces": self.faces,
            "euler": self.euler,
            "ambient_genus": self.ambient_genus,
            "colorable": self.colorable,
            "problem": self.problem,
        }


def check_admissible(divide: Divide) -> AdmissibilityReport:
    """Connectedness plus checkerboard colorability, with the counts."""
    connected = divide.is_connected()
    faces = divide.faces()
    chi = divide.euler_characteristic()
    genus = None
    colorable = False
    problem = None
    if not connected:
        problem = "divide is not connected"
    else:
        genus = divide.ambient_genus()
        try:
            checkerboard_coloring(divide)
            colorable = True
        except ColoringError as exc:
            problem = str(exc)
    return AdmissibilityReport(
        connected=connected,
        crossings=len(divide.vertices),
        arcs=len(divide.edges),
        faces=len(faces),
        euler=chi,
        ambient_genus=genus,
        colorable=colorable,
        problem=problem,
    )


def morse_data(divide: Divide) -> tuple[int, int, int]:
    """(minima, saddles, maxima) of the induced height function.

    One minimum per white face, one saddle per crossing, one maximum per
    black face; the alternating sum is the ambient Euler characteristic.
    """
    coloring = checkerboard_coloring(divide)
    return (len(coloring.white), len(divide.vertices), len(coloring.black))


# -- the necklace family ----------------------------------------------------------


def standard_divide(genus: int) -> Divide:
    """Necklace divide filling the closed surface of the given genus.

    2g+2 circle components in a cyclic chain, consecutive ones crossing
    exactly once.  Crossing ``v{i}`` joins circle i to circle i+1 and lists
    its slots as (arriving a, departing a, arriving b, departing b), which
    yields four faces: two bounded by parallel strands (the white class) and
    two by alternating strands.
    """
    if genus < 0:
        raise ValueError(f"genus must be nonnegative, got {genus}")
    n = 2 * genus + 2
    w = len(str(n - 1))  # pad indices so id order equals cyclic order
    vertices = [f"v{i:0{w}d}" for i in range(n)]
    edges = [f"a{i:0{w}d}" for i in range(n)] + [f"b{i:0{w}d}" for i in range(n)]
    rotation = {}
    for i in range(n):
        p = (i - 1) % n
        rotation[vertices[i]] = (
            (f"a{p:0{w}d}", 1),
            (f"a{i:0{w}d}", 0),
            (f"b{p:0{w}d}", 1),
            (f"b{i:0{w}d}", 0),
        )
    return Divide(vertices, edges, rotation)
