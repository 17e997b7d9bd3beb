"""Two builders for genus-one Lefschetz fibrations on disk cotangent bundles.

The plumbing builder realizes a pattern of two annulus families crossing at
squares: the fiber is the square graph thickened by the strips, and the two
families of core circles become the first two blocks of vanishing cycles.

The divide builder thickens an admissible divide: every crossing becomes a
four-vertex roundabout (two band-attachment sites alternating with two
subdivision points) and every arc becomes a twisted band joining the sites
at the white corners it borders.  White faces, crossings and black faces of
the divide each contribute one family of cycles on that fiber.

Both builders end with the same closing move: simultaneously smoothing all
crossings of the first family with the second, respecting orientations,
which yields the final block of vanishing cycles.  The divide builder also
checks that this smoothing reproduces its black-face cycles exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveOnSurface, Step, curve_from_json
from .divides import Divide, check_admissible, checkerboard_coloring, standard_divide
from .homology import curve_class
from .ribbon import HalfEdge, RibbonGraph, SurfaceError


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SurfaceError(msg)


# -- plumbing patterns -----------------------------------------------------------


@dataclass(frozen=True)
class PlumbingPattern:
    """Squares where strips of one annulus family cross strips of another.

    ``loops_a`` and ``loops_b`` list, per annulus, the cyclic order of the
    squares its strip runs through.  Every square must be visited exactly
    once by each family: a square is one transverse crossing of one a-strip
    with one b-strip.
    """

    loops_a: tuple[tuple[str, ...], ...]
    loops_b: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "loops_a", tuple(tuple(q for q in loop) for loop in self.loops_a))
        object.__setattr__(self, "loops_b", tuple(tuple(q for q in loop) for loop in self.loops_b))
        for fam, loops in (("a", self.loops_a), ("b", self.loops_b)):
            if not loops:
                raise SurfaceError(f"family {fam} has no annuli")
            seen = [q for loop in loops for q in loop]
            if not seen:
                raise SurfaceError(f"family {fam} visits no squares")
            if len(seen) != len(set(seen)):
                raise SurfaceError(f"family {fam} visits a square twice")
        if set(q for loop in self.loops_a for q in loop) != set(q for loop in self.loops_b for q in loop):
            raise SurfaceError("the two families must cross at the same square set")

    @property
    def squares(self) -> tuple[str, ...]:
        return tuple(sorted(q for loop in self.loops_a for q in loop))


def johns_pattern(genus: int) -> PlumbingPattern:
    """Two long annuli crossed by 2g+2 short ones, one square per pair.

    Each short annulus meets each long one exactly once, in cyclic position
    j along both long strips, so the squares form two rows of length 2g+2.
    """
    if genus < 0:
        raise ValueError(f"genus must be nonnegative, got {genus}")
    n = 2 * genus + 2
    w = len(str(n - 1))
    row1 = tuple(f"s1_{j:0{w}d}" for j in range(n))
    row2 = tuple(f"s2_{j:0{w}d}" for j in range(n))
    loops_b = tuple((row1[j], row2[j]) for j in range(n))
    return PlumbingPattern((row1, row2), loops_b)


def realize_plumbing(pattern: PlumbingPattern) -> tuple[RibbonGraph, tuple[CurveOnSurface, ...], tuple[CurveOnSurface, ...]]:
    """Thicken a plumbing pattern into its fiber surface and core circles.

    Every square becomes a vertex; every strip contributes one edge per
    consecutive square pair.  At each square the two strips cross
    transversally, so the rotation interleaves them: (a out, b out, a in,
    b in) counterclockwise.  Returns (fiber, a-cores, b-cores).
    """
    families = []
    for fam, loops in (("a", pattern.loops_a), ("b", pattern.loops_b)):
        w = len(str(len(loops) - 1))
        families.append([(f"{fam}{i:0{w}d}", loop) for i, loop in enumerate(loops)])
    edges = []
    strands: dict[str, dict[str, tuple[HalfEdge, HalfEdge]]] = {q: {} for q in pattern.squares}
    walks: dict[str, list[Step]] = {}
    for fam, named_loops in zip("ab", families):
        for name, loop in named_loops:
            m = len(loop)
            wt = len(str(m - 1))
            eids = [f"{name}e{t:0{wt}d}" for t in range(m)]
            edges.extend(eids)
            walks[name] = [(e, 1) for e in eids]
            for t, q in enumerate(loop):
                arriving = (eids[(t - 1) % m], 1)
                departing = (eids[t], 0)
                strands[q][fam] = (arriving, departing)
    rotation = {}
    for q in pattern.squares:
        (a_in, a_out) = strands[q]["a"]
        (b_in, b_out) = strands[q]["b"]
        rotation[q] = (a_out, b_out, a_in, b_in)
    fiber = RibbonGraph(pattern.squares, edges, rotation)
    a_curves = tuple(CurveOnSurface(fiber, name, tuple(walks[name])) for name, _ in families[0])
    b_curves = tuple(CurveOnSurface(fiber, name, tuple(walks[name])) for name, _ in families[1])
    return fiber, a_curves, b_curves


# -- simultaneous oriented smoothing ----------------------------------------------


def simultaneous_surgery(surface: RibbonGraph, family_x, family_y, prefix: str = "c") -> tuple[CurveOnSurface, ...]:
    """Smooth every crossing of one embedded family with another at once.

    Both families must consist of edge-simple closed walks, pairwise
    edge-disjoint overall, with each family passing any vertex at most once;
    wherever both families pass a vertex their strands must interleave in
    the rotation.  Each such crossing is resolved the orientation-respecting
    way: the incoming strand of one family continues along the outgoing
    strand of the other.

    The resolved curves are returned sorted by their least edge, each walk
    starting at that edge, named ``prefix0``, ``prefix1``, ...
    """
    fams = {"x": tuple(family_x), "y": tuple(family_y)}
    owner: dict[str, tuple[str, int, int]] = {}
    for f, curves in fams.items():
        for ci, c in enumerate(curves):
            if c.host is not surface:
                raise SurfaceError(f"curve {c.name!r} lives on a different surface")
            c.require_edge_simple()
            for si, (e, _) in enumerate(c.walk):
                if e in owner:
                    raise SurfaceError(f"edge {e!r} is traversed twice; the families must be edge-disjoint")
                owner[e] = (f, ci, si)

    def family_passes(f: str) -> dict[str, tuple[int, HalfEdge, HalfEdge, int]]:
        out = {}
        for ci, c in enumerate(fams[f]):
            for (v, hin, hout, i) in c.passes():
                if v in out:
                    raise SurfaceError(f"one family passes vertex {v!r} twice; crossings must be simple")
                out[v] = (ci, hin, hout, i)
        return out

    px, py = family_passes("x"), family_passes("y")
    succ: dict[tuple[str, int, int], tuple[str, int, int]] = {}
    for f, curves in fams.items():
        for ci, c in enumerate(curves):
            n = len(c.walk)
            for si in range(n):
                succ[(f, ci, si)] = (f, ci, (si + 1) % n)
    for v in sorted(set(px) & set(py)):
        xci, xin, xout, xi = px[v]
        yci, yin, yout, yi = py[v]
        if not _interleaved(surface, v, (xin, xout), (yin, yout)):
            raise SurfaceError(f"the families meet tangentially at vertex {v!r}")
        succ[("x", xci, xi)] = ("y", yci, (yi + 1) % len(fams["y"][yci].walk))
        succ[("y", yci, yi)] = ("x", xci, (xi + 1) % len(fams["x"][xci].walk))

    def step_at(key):
        f, ci, si = key
        return fams[f][ci].walk[si]

    outputs = []
    consumed = set()
    for e in sorted(owner):
        if e in consumed:
            continue
        start = owner[e]
        walk = []
        key = start
        while True:
            st = step_at(key)
            walk.append(st)
            consumed.add(st[0])
            key = succ[key]
            if key == start:
                break
        outputs.append(tuple(walk))
    return tuple(CurveOnSurface(surface, f"{prefix}{i}", w) for i, w in enumerate(outputs))


def _interleaved(surface: RibbonGraph, vertex: str, x_halves, y_halves) -> bool:
    """Whether the two strand passes cross transversally inside the vertex disk."""
    pos = {h: i for i, h in enumerate(surface.rotation[vertex])}
    lo, hi = sorted((pos[x_halves[0]], pos[x_halves[1]]))
    return (lo < pos[y_halves[0]] < hi) != (lo < pos[y_halves[1]] < hi)


# -- the divide fiber --------------------------------------------------------------



@dataclass(frozen=True)
class DivideFiberModel:
    """The thickened divide and its three cycle families."""

    divide: Divide
    fiber: RibbonGraph
    white_cycles: tuple[CurveOnSurface, ...]
    crossing_cycles: tuple[CurveOnSurface, ...]
    black_cycles: tuple[CurveOnSurface, ...]


def divide_fiber_model(divide: Divide) -> DivideFiberModel:
    """Build the fiber surface of an admissible divide with its cycles.

    Per crossing v the fiber gets a roundabout w0 - m1 - w2 - m3 (edges
    v_r0..v_r3); w0 and w2 carry the two white corners, ordered by slot.
    Per arc e the fiber gets one twisted band, also named e, attached at the
    white corner each end borders; band attachments alternate with the
    roundabout edges.  One cycle per white face (bands only), per crossing
    (the roundabout core) and per black face (bands plus two-edge roundabout
    passages); smoothing the first family through the second must reproduce
    the third exactly, which pins every orientation convention in here.
    """
    report = check_admissible(divide)
    if not report.admissible:
        raise SurfaceError(f"divide is not admissible: {report.problem}")
    coloring = checkerboard_coloring(divide)
    white_corner_slot: dict[HalfEdge, int] = {}
    site_of_corner: dict[tuple[str, int], str] = {}
    # per site: (r_in, r_out, arriving band half, departing band half)
    site_ends: dict[str, tuple[HalfEdge, HalfEdge, HalfEdge, HalfEdge]] = {}
    vertices = []
    edges = []
    twists = set()
    rotation: dict[str, tuple[HalfEdge, ...]] = {}
    for v in divide.vertices:
        whites = [k for k in range(4) if coloring.color_of(divide.corner_face(v, k)) == "white"]
        _require(len(whites) == 2 and whites[1] - whites[0] == 2,
                 f"corner colors fail to alternate at crossing {v!r}")
        site_of_corner[(v, whites[0])] = f"{v}_w0"
        site_of_corner[(v, whites[1])] = f"{v}_w2"
        for k, h in enumerate(divide.rotation[v]):
            prev = (k - 1) % 4
            white_corner_slot[h] = prev if (v, prev) in site_of_corner else k
            _require((v, white_corner_slot[h]) in site_of_corner, f"no white corner borders {h}")
        r = [f"{v}_r{k}" for k in range(4)]
        w0, m1, w2, m3 = f"{v}_w0", f"{v}_m1", f"{v}_w2", f"{v}_m3"
        vertices += [w0, m1, w2, m3]
        edges += r
        twists.update((r[0], r[2]))
        rotation[m1] = ((r[0], 1), (r[1], 0))
        rotation[m3] = ((r[2], 1), (r[3], 0))
        for site, corner, r_in, r_out in (
            (w0, whites[0], (r[3], 1), (r[0], 0)),
            (w2, whites[1], (r[1], 1), (r[2], 0)),
        ):
            # the white face walk enters the corner along the lower slot's
            # half-edge and leaves along the upper slot's
            arriving = divide.rotation[v][corner]
            departing = divide.rotation[v][(corner + 1) % 4]
            site_ends[site] = (r_in, r_out, arriving, departing)
            rotation[site] = (r_in, departing, r_out, arriving)
    clash = set(divide.edges) & set(edges)
    _require(not clash, f"divide edge ids collide with roundabout ids: {sorted(clash)}")
    edges += list(divide.edges)
    twists.update(divide.edges)
    # Local orientation signs depend only on twists and endpoints, so a
    # provisional rotation suffices to compute them.  Each site is then
    # rewritten so that, after normalization flips the -1 vertices, every
    # site reads (r_in, band_out, r_out, band_in) in one global orientation.
    # A uniform rule cannot do this directly: the half-twisted bands force
    # opposite signs on the two ends of every band.
    provisional = RibbonGraph(vertices, edges, rotation, twists)
    _require(provisional.is_connected(), "divide fiber is disconnected")
    eps = provisional.local_orientations()
    _require(eps is not None, "divide fiber is non-orientable; twist placement is broken")
    for site, (r_in, r_out, arriving, departing) in site_ends.items():
        if eps[site] == 1:
            rotation[site] = (r_in, departing, r_out, arriving)
        else:
            rotation[site] = (r_in, arriving, r_out, departing)
    fiber = RibbonGraph(vertices, edges, rotation, twists)

    faces = divide.faces()
    white_cycles = []
    for j, fi in enumerate(coloring.white):
        walk = tuple((e, 1 if end == 0 else -1) for (e, end) in faces[fi])
        white_cycles.append(CurveOnSurface(fiber, f"a{j}", walk))

    wb = len(str(len(divide.vertices) - 1))
    crossing_cycles = []
    for j, v in enumerate(divide.vertices):
        walk = tuple((f"{v}_r{k}", 1) for k in range(4))
        crossing_cycles.append(CurveOnSurface(fiber, f"b{j:0{wb}d}", walk))

    black_cycles = []
    for j, fi in enumerate(coloring.black):
        orbit = faces[fi]
        steps: list[Step] = []
        for t, h in enumerate(orbit):
            e, end = h
            steps.append((e, 1 if end == 0 else -1))
            landing = divide.partner(h)
            v = divide.vertex_of(landing)
            depart = orbit[(t + 1) % len(orbit)]
            site_a = site_of_corner[(v, white_corner_slot[landing])]
            site_b = site_of_corner[(v, white_corner_slot[depart])]
            _require(site_a != site_b, f"black passage at {v!r} does not cross the roundabout")
            steps.extend(_roundabout_passage(v, from_w0=site_a.endswith("_w0")))
        # the smoothing orientation runs against the black face walk
        curve = CurveOnSurface(fiber, f"c{j}", tuple(steps)).reversed_curve()
        black_cycles.append(curve)

    model = DivideFiberModel(divide, fiber, tuple(white_cycles), tuple(crossing_cycles), tuple(black_cycles))
    _check_smoothing_matches(model)
    return model


def _roundabout_passage(v: str, from_w0: bool) -> list[Step]:
    """Two-edge arc across the roundabout of crossing v, against its core."""
    r = [f"{v}_r{k}" for k in range(4)]
    return [(r[3], -1), (r[2], -1)] if from_w0 else [(r[1], -1), (r[0], -1)]


def _check_smoothing_matches(model: DivideFiberModel) -> None:
    """Gate: smoothing white through crossing cycles must yield the black cycles."""
    outs = simultaneous_surgery(model.fiber, model.white_cycles, model.crossing_cycles)
    _require(len(outs) == len(model.black_cycles),
             f"smoothing produced {len(outs)} curves, expected {len(model.black_cycles)}")
    by_min = {min(c.edge_set()): c for c in model.black_cycles}
    for out in outs:
        target = by_min.get(min(out.edge_set()))
        _require(target is not None and out.cyclically_equal(target),
                 f"smoothing output {out.name!r} does not match any black face cycle")


# -- fibrations ---------------------------------------------------------------------


@dataclass(frozen=True)
class LefschetzFibration:
    """An ordered word of vanishing cycles on a fixed fiber surface."""

    construction: str
    genus: int
    fiber: RibbonGraph
    word: tuple[CurveOnSurface, ...]

    def __post_init__(self):
        names = [c.name for c in self.word]
        if len(names) != len(set(names)):
            raise SurfaceError("vanishing cycle names must be unique")
        for c in self.word:
            if c.host is not self.fiber:
                raise SurfaceError(f"cycle {c.name!r} lives off the fiber")

    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.word)

    def cycle(self, name: str) -> CurveOnSurface:
        for c in self.word:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "schema": "lefschetz-fibration/1",
            "construction": self.construction,
            "genus": self.genus,
            "fiber": self.fiber.to_json_dict(),
            "vanishing_cycles": [c.to_json_dict() for c in self.word],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LefschetzFibration":
        if doc.get("schema") != "lefschetz-fibration/1":
            raise SurfaceError(f"unsupported schema {doc.get('schema')!r}")
        fiber = RibbonGraph.from_json_dict(doc["fiber"])
        word = tuple(curve_from_json(fiber, rec) for rec in doc["vanishing_cycles"])
        return cls(doc["construction"], int(doc["genus"]), fiber, word)


def _check_page(fiber: RibbonGraph, genus: int) -> None:
    inv = fiber.invariants()
    _require(inv.orientable, "fiber must be orientable")
    _require(inv.euler == -4 * genus - 4, f"fiber Euler characteristic {inv.euler} != {-4 * genus - 4}")
    _require(inv.genus == 1, f"fiber genus {inv.genus} != 1")
    _require(inv.boundary_components == 4 * genus + 4,
             f"fiber boundary count {inv.boundary_components} != {4 * genus + 4}")


def _check_conservation(fiber: RibbonGraph, ins, outs) -> None:
    """The smoothing must preserve the total homology class."""
    total_in = None
    for c in ins:
        cls = curve_class(fiber, c)
        total_in = cls if total_in is None else total_in + cls
    total_out = None
    for c in outs:
        cls = curve_class(fiber, c)
        total_out = cls if total_out is None else total_out + cls
    _require(total_in == total_out, "smoothing failed to conserve the total homology class")


def johns_fibration(genus: int) -> LefschetzFibration:
    """Plumbing model: two long annuli, 2g+2 short ones, then the smoothing."""
    pattern = johns_pattern(genus)
    fiber, a_curves, b_curves = realize_plumbing(pattern)
    _check_page(fiber, genus)
    c_curves = simultaneous_surgery(fiber, a_curves, b_curves)
    _require(len(c_curves) == 2, f"smoothing produced {len(c_curves)} curves, expected 2")
    _check_conservation(fiber, list(a_curves) + list(b_curves), c_curves)
    return LefschetzFibration("johns", genus, fiber, (*a_curves, *b_curves, *c_curves))


def ishikawa_fibration(genus: int) -> LefschetzFibration:
    """Divide model over the necklace divide of the given genus."""
    model = divide_fiber_model(standard_divide(genus))
    _check_page(model.fiber, genus)
    _check_conservation(
        model.fiber,
        list(model.white_cycles) + list(model.crossing_cycles),
        model.black_cycles,
    )
    word = (*model.white_cycles, *model.crossing_cycles, *model.black_cycles)
    return LefschetzFibration("ishikawa", genus, model.fiber, word)


def sphere_planar_fibration() -> LefschetzFibration:
    """The classical annulus-page model over the sphere: two parallel cores."""
    fiber = RibbonGraph(
        ("p", "q"),
        ("c", "t"),
        {"p": (("c", 0), ("t", 0)), "q": (("t", 1), ("c", 1))},
    )
    inv = fiber.invariants()
    _require((inv.genus, inv.boundary_components, inv.orientable) == (0, 2, True), "annulus fiber is broken")
    core = (("c", 1), ("t", -1))
    word = (CurveOnSurface(fiber, "core0", core), CurveOnSurface(fiber, "core1", core))
    return LefschetzFibration("sphere", 0, fiber, word)
