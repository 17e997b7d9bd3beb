"""Ribbon graph structure, classification invariants, and rewriting."""

import pytest
from hypothesis import given, strategies as st

from lf_forge.ribbon import NonOrientableError, RibbonGraph, SurfaceError


# -- random ribbon graphs ---------------------------------------------------------


@st.composite
def ribbon_graphs(draw, max_vertices=4, max_edges=7, allow_twists=True):
    """Connected ribbon graph: random endpoints, then a spanning chain of
    extra edges so connectivity never has to be rejected."""
    nv = draw(st.integers(1, max_vertices))
    vertices = [f"v{i}" for i in range(nv)]
    ne = draw(st.integers(max(1, nv - 1), max_edges))
    attach = {v: [] for v in vertices}
    names = []
    for j in range(ne):
        e = f"e{j}"
        names.append(e)
        if j < nv - 1:
            t, h = vertices[j], vertices[j + 1]
        else:
            t = vertices[draw(st.integers(0, nv - 1))]
            h = vertices[draw(st.integers(0, nv - 1))]
        attach[t].append((e, 0))
        attach[h].append((e, 1))
    rotation = {}
    for v in vertices:
        halves = list(attach[v])
        perm = draw(st.permutations(range(len(halves))))
        rotation[v] = tuple(halves[i] for i in perm)
    twists = ()
    if allow_twists:
        twists = tuple(e for e in names if draw(st.booleans()))
    return RibbonGraph(vertices, names, rotation, twists)


# -- frozen classification table --------------------------------------------------


def test_annulus_profile(annulus):
    inv = annulus.invariants()
    assert (inv.euler, inv.boundary_components, inv.genus, inv.orientable) == (0, 2, 0, True)


def test_mobius_profile(mobius):
    inv = mobius.invariants()
    assert (inv.euler, inv.boundary_components, inv.orientable) == (0, 1, False)
    assert inv.genus is None
    assert mobius.local_orientations() is None


def test_punctured_torus_profile(punctured_torus):
    inv = punctured_torus.invariants()
    assert (inv.euler, inv.boundary_components, inv.genus, inv.orientable) == (-1, 1, 1, True)


def test_pants_profile(pants):
    inv = pants.invariants()
    assert (inv.euler, inv.boundary_components, inv.genus, inv.orientable) == (-1, 3, 0, True)


def test_theta_with_uniform_far_end_is_punctured_torus():
    # same attachment order at both ends turns two of the bands into a handle
    g = RibbonGraph(
        ("u", "v"),
        ("e", "f", "g"),
        {"u": (("e", 0), ("f", 0), ("g", 0)), "v": (("e", 1), ("f", 1), ("g", 1))},
    )
    inv = g.invariants()
    assert (inv.euler, inv.boundary_components, inv.genus, inv.orientable) == (-1, 1, 1, True)


def test_one_vertex_genus_two():
    rot = (("a", 0), ("b", 0), ("a", 1), ("b", 1), ("c", 0), ("d", 0), ("c", 1), ("d", 1))
    g = RibbonGraph(("v",), ("a", "b", "c", "d"), {"v": rot})
    inv = g.invariants()
    assert (inv.euler, inv.boundary_components, inv.genus, inv.orientable) == (-3, 1, 2, True)


# -- constructor validation -------------------------------------------------------


def test_rejects_duplicate_vertex_ids():
    with pytest.raises(SurfaceError):
        RibbonGraph(("v", "v"), ("e",), {"v": (("e", 0), ("e", 1))})


def test_rejects_missing_half_edge():
    with pytest.raises(SurfaceError, match="half-edge"):
        RibbonGraph(("u", "v"), ("e",), {"u": (("e", 0),), "v": ()})


def test_rejects_reattached_half_edge():
    with pytest.raises(SurfaceError, match="attached twice"):
        RibbonGraph(
            ("u", "v"), ("e",), {"u": (("e", 0), ("e", 0)), "v": (("e", 1),)}
        )


def test_rejects_unknown_twist():
    with pytest.raises(SurfaceError, match="twist"):
        RibbonGraph(("v",), ("e",), {"v": (("e", 0), ("e", 1))}, twists=("zz",))


def test_rejects_sign_prefixed_edge_id():
    with pytest.raises(SurfaceError, match="'-'"):
        RibbonGraph(("v",), ("-e",), {"v": (("-e", 0), ("-e", 1))})


def test_rotation_next_prev_are_inverse(punctured_torus):
    for v in punctured_torus.vertices:
        for h in punctured_torus.rotation[v]:
            assert punctured_torus.rotation_prev(punctured_torus.rotation_next(h)) == h


# -- properties on random graphs --------------------------------------------------


@given(ribbon_graphs())
def test_euler_characteristic_is_vertices_minus_edges(g):
    assert g.euler_characteristic() == len(g.vertices) - len(g.edges)
    assert g.invariants().euler == g.euler_characteristic()


@given(ribbon_graphs())
def test_boundary_walks_cover_every_edge_side_once(g):
    steps = [s for walk in g.boundary_walks() for s in walk]
    assert len(steps) == 2 * len(g.edges)


@given(ribbon_graphs())
def test_orientable_genus_parity(g):
    inv = g.invariants()
    if inv.orientable:
        assert 2 - 2 * inv.genus - inv.boundary_components == inv.euler
    else:
        assert inv.genus is None


@given(ribbon_graphs(allow_twists=False))
def test_untwisted_graphs_are_orientable(g):
    eps = g.local_orientations()
    assert eps is not None
    assert set(eps.values()) <= {1, -1}
    assert g.invariants().orientable


@given(ribbon_graphs())
def test_normalization_clears_twists_and_preserves_type(g):
    if not g.invariants().orientable:
        with pytest.raises(NonOrientableError):
            g.normalized()
        return
    norm = g.normalized()
    assert not norm.twists
    assert norm.invariants() == g.invariants()


@given(ribbon_graphs())
def test_mirror_is_an_involution_preserving_type(g):
    m = g.mirrored()
    assert m.invariants() == g.invariants()
    back = m.mirrored()
    assert back.rotation == g.rotation and back.twists == g.twists


@given(ribbon_graphs())
def test_smoothing_preserves_type_and_removes_valence_two(g):
    # suppressible: valence two with two distinct incident edges
    deg2 = {
        v
        for v in g.vertices
        if len(g.rotation[v]) == 2 and g.rotation[v][0][0] != g.rotation[v][1][0]
    }
    if deg2 == set(g.vertices):
        with pytest.raises(SurfaceError):
            g.smoothed()
        return
    smooth, edge_map = g.smoothed()
    assert smooth.invariants() == g.invariants()
    assert set(edge_map) == set(g.edges)
    assert set(smooth.vertices) == set(g.vertices) - deg2
    for new, sign in edge_map.values():
        assert new in smooth.edges and sign in (1, -1)


def test_smoothing_merges_a_chain_through_an_anchor():
    g = RibbonGraph(
        ("m1", "m2", "v"),
        ("e0", "e1", "e2", "e3"),
        {
            "v": (("e0", 0), ("e2", 1), ("e3", 0), ("e3", 1)),
            "m1": (("e0", 1), ("e1", 0)),
            "m2": (("e1", 1), ("e2", 0)),
        },
    )
    smooth, edge_map = g.smoothed()
    assert smooth.vertices == ("v",)
    assert set(smooth.edges) == {"e0", "e3"}
    # the whole chain runs forward out of the anchor half-edge
    assert edge_map == {"e0": ("e0", 1), "e1": ("e0", 1), "e2": ("e0", 1), "e3": ("e3", 1)}
    assert smooth.invariants() == g.invariants()


def test_json_round_trip_is_exact():
    g = RibbonGraph(
        ("u", "v"),
        ("e", "f", "g"),
        {"u": (("e", 0), ("f", 0), ("g", 0)), "v": (("g", 1), ("f", 1), ("e", 1))},
        twists=("f",),
    )
    doc = g.to_json_dict()
    assert doc["schema"] == "ribbon-graph/1"
    back = RibbonGraph.from_json_dict(doc)
    assert back.vertices == g.vertices
    assert back.edges == g.edges
    assert back.rotation == g.rotation
    assert back.twists == g.twists
