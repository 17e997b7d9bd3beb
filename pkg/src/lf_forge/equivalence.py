"""Deciding whether two fibrations are the same up to relabeling.

The two builders present the same surface differently: the divide fiber
carries subdivision points and twist bits that the plumbing fiber does not.
Comparison therefore happens on the reduced presentation (degree-two vertices
suppressed, twist bits cleared), where an isomorphism is a vertex/edge
bijection that preserves every rotation or reverses every rotation, carries
each named cycle of one word onto a cycle of the other within the same
family, and commutes with the closing smoothing move.

The search is anchored: the image of the first first-family core must run
along a first-family core of the target, so only half-edges on those cores
seed the propagation, and each seed extends to at most one full map.  Seeds
are scanned in a fixed order (orientation-preserving first, then by half-edge
id), making the returned isomorphism deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .builders import LefschetzFibration, PlumbingPattern, simultaneous_surgery
from .curves import CurveOnSurface
from .ribbon import HalfEdge, RibbonGraph, SurfaceError

__all__ = [
    "FibrationIso",
    "carry_curve",
    "extract_plumbing_pattern",
    "find_isomorphism",
    "isomorphism_certificate",
    "patterns_equivalent",
    "reduced_word",
    "word_families",
]


def carry_curve(curve: CurveOnSurface, target: RibbonGraph,
                edge_map: dict[str, tuple[str, int]], name: str | None = None) -> CurveOnSurface:
    """Rewrite a closed walk through the edge map of a smoothing.

    Consecutive steps that land on the same merged edge with the same
    direction are one traversal of a suppressed chain and collapse to a
    single step, wrapping around the basepoint too.  An immediately repeated
    loop edge is kept: there the old edge ids coincide, on a chain they
    cannot.
    """
    runs: list[list] = []  # [new edge, direction, first old edge, last old edge]
    for e, s in curve.walk:
        new, sign = edge_map[e]
        d = s * sign
        if runs and runs[-1][0] == new and runs[-1][1] == d and runs[-1][3] != e:
            runs[-1][3] = e
        else:
            runs.append([new, d, e, e])
    if len(runs) > 1:
        first, last = runs[0], runs[-1]
        if first[0] == last[0] and first[1] == last[1] and last[3] != first[2]:
            runs.pop()
    walk = tuple((new, d) for new, d, _, _ in runs)
    return CurveOnSurface(target, curve.name if name is None else name, walk)


def word_families(fib: LefschetzFibration) -> dict[str, tuple[CurveOnSurface, ...]]:
    """Vanishing cycles grouped by name prefix (the name minus trailing digits),
    keyed in order of first appearance in the word."""
    fams: dict[str, list[CurveOnSurface]] = {}
    for c in fib.word:
        fams.setdefault(c.name.rstrip("0123456789"), []).append(c)
    return {k: tuple(v) for k, v in fams.items()}


def reduced_word(fib: LefschetzFibration) -> tuple[RibbonGraph, dict[str, CurveOnSurface]]:
    """The fiber with degree-two vertices suppressed and twists cleared,
    together with the word carried onto it.

    Orientation is inherited from the full fiber, not re-rooted: suppressing
    vertices can change which vertex normalization anchors at, silently
    mirroring the reduced surface relative to the original.
    """
    smooth, edge_map = fib.fiber.smoothed()
    norm = smooth.normalized()
    eps = fib.fiber.local_orientations()
    if eps is not None and eps[min(smooth.vertices)] == -1:
        norm = norm.mirrored()
    return norm, {c.name: carry_curve(c, norm, edge_map) for c in fib.word}


# -- plumbing pattern recovery -------------------------------------------------------


def extract_plumbing_pattern(fib: LefschetzFibration) -> PlumbingPattern:
    """Recover the abstract crossing pattern of the first two cycle families.

    On the reduced fiber the first- and second-family cores must partition
    the edges, each edge traversed exactly once, and every vertex must be a
    transverse crossing of one core from each family; the fibration is "of
    plumbed type".  The loops record, per core, the crossings in traversal
    order, so the builder's own pattern round-trips exactly.
    """
    fams = word_families(fib)
    if not {"a", "b"} <= set(fams):
        raise SurfaceError("not of plumbed type: word lacks the two core families")
    surface, carried = reduced_word(fib)
    owner: dict[str, str] = {}
    for f in ("a", "b"):
        for c in fams[f]:
            for e, _ in carried[c.name].walk:
                if e in owner:
                    raise SurfaceError(f"not of plumbed type: edge {e!r} carried twice")
                owner[e] = f
    missing = set(surface.edges) - set(owner)
    if missing:
        raise SurfaceError(f"not of plumbed type: edges {sorted(missing)} off the cores")
    for v in surface.vertices:
        around = tuple(owner[e] for e, _ in surface.rotation[v])
        if len(around) != 4 or around[0] == around[1] or around[0] != around[2] or around[1] != around[3]:
            raise SurfaceError(f"not of plumbed type: vertex {v!r} is not a transverse square")
    loops = {}
    for f in ("a", "b"):
        seqs = []
        for c in fams[f]:
            walk = carried[c.name].walk
            seqs.append(tuple(surface.edge_endpoints(e)[0 if s > 0 else 1] for e, s in walk))
        loops[f] = tuple(seqs)
    return PlumbingPattern(loops["a"], loops["b"])


def _pattern_key(pattern: PlumbingPattern):
    """Canonical form under square relabeling, loop reordering, rotation and
    reversal.  Squares are renamed (a-loop index, position along it); the key
    is the least sorted tuple of canonicalized b-loops over all placements."""

    def placements(loop):
        n = len(loop)
        for start in range(n):
            for step in (1, -1):
                yield tuple(loop[(start + step * t) % n] for t in range(n))

    def cyclic_min(seq):
        n = len(seq)
        variants = [tuple(seq[(i + t) % n] for t in range(n)) for i in range(n)]
        rev = tuple(reversed(seq))
        variants += [tuple(rev[(i + t) % n] for t in range(n)) for i in range(n)]
        return min(variants)

    best = None
    shapes = tuple(sorted(len(loop) for loop in pattern.loops_a))
    for order in itertools.permutations(range(len(pattern.loops_a))):
        for placed in itertools.product(*(placements(pattern.loops_a[i]) for i in order)):
            label = {}
            for i, loop in enumerate(placed):
                for t, q in enumerate(loop):
                    label[q] = (i, t)
            key = tuple(sorted(cyclic_min(tuple(label[q] for q in loop))
                               for loop in pattern.loops_b))
            if best is None or key < best:
                best = key
    return (shapes, best)


def patterns_equivalent(p1: PlumbingPattern, p2: PlumbingPattern) -> bool:
    """True when some square relabeling identifies the two patterns, loops
    taken up to reordering within each family, rotation and reversal."""
    return _pattern_key(p1) == _pattern_key(p2)


# -- isomorphism search --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FibrationIso:
    """A certified identification of two fibrations on their reduced fibers.

    vertex_map and edge_map form a ribbon-graph bijection; edge_map values
    carry the direction sign.  orientation_preserving reports whether all
    rotations are preserved (True) or all reversed (False).  cycle_map pairs
    vanishing cycle names family by family.
    """

    source: LefschetzFibration
    target: LefschetzFibration
    vertex_map: dict[str, str]
    edge_map: dict[str, tuple[str, int]]
    orientation_preserving: bool
    cycle_map: dict[str, str]

    def to_json_dict(self) -> dict:
        return {
            "schema": "isomorphism/1",
            "genus": self.source.genus,
            "found": True,
            "orientation_preserving": self.orientation_preserving,
            "cycle_map": dict(sorted(self.cycle_map.items())),
            "checks": [{"name": n, "passed": True} for n in _CHECK_NAMES],
        }


_CHECK_NAMES = (
    "fiber_invariants",
    "word_families",
    "ribbon_graph_bijection",
    "cycle_images_match",
    "surgery_commutes",
)


def _family_shape(fib: LefschetzFibration) -> tuple[tuple[str, int], ...]:
    return tuple((name, len(curves)) for name, curves in word_families(fib).items())


def _gate(lf1: LefschetzFibration, lf2: LefschetzFibration) -> list[tuple[str, bool]]:
    return [
        ("fiber_invariants", lf1.fiber.invariants() == lf2.fiber.invariants()),
        ("word_families", _family_shape(lf1) == _family_shape(lf2)),
    ]


def _mapped_curve(curve: CurveOnSurface, target: RibbonGraph,
                  edge_map: dict[str, tuple[str, int]]) -> CurveOnSurface:
    walk = tuple((edge_map[e][0], s * edge_map[e][1]) for e, s in curve.walk)
    return CurveOnSurface(target, curve.name, walk)


def _propagate(g1: RibbonGraph, g2: RibbonGraph, seed1: HalfEdge, seed2: HalfEdge,
               preserve: bool) -> tuple[dict[str, str], dict[str, tuple[str, int]]] | None:
    """Grow a half-edge correspondence from one seed, or fail.

    Rotation-next maps to rotation-next (or -previous when reversing) and
    partner maps to partner; on a connected graph the closure is total and
    any conflict kills the seed.
    """
    succ2 = g2.rotation_next if preserve else g2.rotation_prev
    phi: dict[HalfEdge, HalfEdge] = {seed1: seed2}
    stack = [seed1]
    while stack:
        h = stack.pop()
        img = phi[h]
        for nxt, nxt_img in ((g1.partner(h), g2.partner(img)),
                             (g1.rotation_next(h), succ2(img))):
            known = phi.get(nxt)
            if known is None:
                phi[nxt] = nxt_img
                stack.append(nxt)
            elif known != nxt_img:
                return None
    if len(phi) != 2 * len(g1.edges) or len(set(phi.values())) != len(phi):
        return None
    vertex_map: dict[str, str] = {}
    for h, img in phi.items():
        v, w = g1.vertex_of(h), g2.vertex_of(img)
        if vertex_map.setdefault(v, w) != w:
            return None
    if len(set(vertex_map.values())) != len(g1.vertices):
        return None
    edge_map: dict[str, tuple[str, int]] = {}
    for e in g1.edges:
        e2, end = phi[(e, 0)]
        if phi[(e, 1)] != (e2, 1 - end):
            return None
        edge_map[e] = (e2, 1 if end == 0 else -1)
    if len(set(e2 for e2, _ in edge_map.values())) != len(g1.edges):
        return None
    return vertex_map, edge_map


def _match_families(curves1: dict[str, CurveOnSurface], curves2: dict[str, CurveOnSurface],
                    fams1, fams2, g2: RibbonGraph,
                    edge_map) -> dict[str, str] | None:
    """Pair each mapped source cycle with an equal target cycle, family by
    family, up to cyclic rotation and reversal.  Returns the name bijection."""
    cycle_map: dict[str, str] = {}
    for fam, sources in fams1.items():
        targets = list(fams2[fam])
        images = {c.name: _mapped_curve(curves1[c.name], g2, edge_map) for c in sources}
        options = {}
        for c in sources:
            opts = [t.name for t in targets
                    if images[c.name].cyclically_equal(curves2[t.name], allow_reversal=True)]
            if not opts:
                return None
            options[c.name] = opts

        def assign(names, used):
            if not names:
                return {}
            head, rest = names[0], names[1:]
            for t in options[head]:
                if t in used:
                    continue
                sub = assign(rest, used | {t})
                if sub is not None:
                    sub[head] = t
                    return sub
            return None

        matched = assign([c.name for c in sources], frozenset())
        if matched is None:
            return None
        cycle_map.update(matched)
    return cycle_map


def _surgery_commutes(fams1, curves1, g2, edge_map) -> bool:
    """Re-run the closing smoothing on the mapped cores; the outputs must be
    the mapped closing cycles, orientations included."""
    if not {"a", "b", "c"} <= set(fams1):
        return True
    imgs = {f: [_mapped_curve(curves1[c.name], g2, edge_map) for c in fams1[f]]
            for f in ("a", "b", "c")}
    try:
        outs = simultaneous_surgery(g2, tuple(imgs["a"]), tuple(imgs["b"]), prefix="resmooth")
    except SurfaceError:
        return False
    if len(outs) != len(imgs["c"]):
        return False
    by_min = {min(c.edge_set()): c for c in imgs["c"]}
    for out in outs:
        target = by_min.get(min(out.edge_set()))
        if target is None or not out.cyclically_equal(target):
            return False
    return True


def find_isomorphism(lf1: LefschetzFibration, lf2: LefschetzFibration) -> FibrationIso | None:
    """Search for an isomorphism of fibrations, None when there is none.

    Cheap invariants gate the search; then every placement of the first
    first-family core onto the target's first-family cores is propagated to a
    full map and checked against the word and the smoothing move.  The first
    success in scan order is returned.
    """
    if not all(ok for _, ok in _gate(lf1, lf2)):
        return None
    try:
        g1, curves1 = reduced_word(lf1)
        g2, curves2 = reduced_word(lf2)
    except SurfaceError:
        return None
    if len(g1.edges) != len(g2.edges) or len(g1.vertices) != len(g2.vertices):
        return None
    fams1, fams2 = word_families(lf1), word_families(lf2)
    first_family = next(iter(fams1))
    anchor = curves1[fams1[first_family][0].name]
    e0, s0 = anchor.walk[0]
    seed1 = (e0, 0 if s0 > 0 else 1)
    candidates = sorted({(e, end)
                         for c in fams2[first_family]
                         for e in curves2[c.name].edge_set()
                         for end in (0, 1)})
    for preserve in (True, False):
        for seed2 in candidates:
            grown = _propagate(g1, g2, seed1, seed2, preserve)
            if grown is None:
                continue
            vertex_map, edge_map = grown
            cycle_map = _match_families(curves1, curves2, fams1, fams2, g2, edge_map)
            if cycle_map is None:
                continue
            if not _surgery_commutes(fams1, curves1, g2, edge_map):
                continue
            return FibrationIso(lf1, lf2, vertex_map, edge_map, preserve, cycle_map)
    return None


def isomorphism_certificate(lf1: LefschetzFibration, lf2: LefschetzFibration) -> dict:
    """Certificate document for a comparison, found or not."""
    gate = _gate(lf1, lf2)
    if not all(ok for _, ok in gate):
        return {
            "schema": "isomorphism/1",
            "genus": lf1.genus,
            "found": False,
            "orientation_preserving": None,
            "cycle_map": None,
            "checks": [{"name": n, "passed": ok} for n, ok in gate],
        }
    iso = find_isomorphism(lf1, lf2)
    if iso is None:
        checks = [{"name": n, "passed": ok} for n, ok in gate]
        checks.append({"name": "ribbon_graph_bijection", "passed": False})
        return {
            "schema": "isomorphism/1",
            "genus": lf1.genus,
            "found": False,
            "orientation_preserving": None,
            "cycle_map": None,
            "checks": checks,
        }
    return iso.to_json_dict()
