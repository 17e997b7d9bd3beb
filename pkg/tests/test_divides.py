"""Divides: validation, faces, coloring, admissibility, Morse counts."""

import pytest

from lf_forge.divides import (
    ColoringError,
    Divide,
    DivideError,
    check_admissible,
    checkerboard_coloring,
    morse_data,
    standard_divide,
)


def figure_eight():
    # one crossing, the loop's own ends adjacent in the rotation
    return Divide(("x",), ("e", "f"), {"x": (("e", 0), ("e", 1), ("f", 0), ("f", 1))})


def three_chain(rotation_overrides=None):
    """Closed chain of three circles, consecutive ones crossing once."""
    rotation = {}
    for i in range(3):
        p = (i - 1) % 3
        rotation[f"v{i}"] = ((f"a{p}", 1), (f"a{i}", 0), (f"b{p}", 1), (f"b{i}", 0))
    rotation.update(rotation_overrides or {})
    vertices = tuple(rotation)
    edges = tuple(f"{fam}{i}" for fam in "ab" for i in range(3))
    return Divide(vertices, edges, rotation)


# -- construction and validation --------------------------------------------------


def test_rejects_wrong_valence():
    with pytest.raises(DivideError):
        Divide(("x",), ("e",), {"x": (("e", 0), ("e", 1))})


def test_rejects_duplicate_slot():
    with pytest.raises(DivideError):
        Divide(
            ("x",),
            ("e", "f"),
            {"x": (("e", 0), ("e", 0), ("f", 0), ("f", 1))},
        )


def test_faces_partition_half_edges():
    d = standard_divide(1)
    seen = [h for face in d.faces() for h in face]
    assert len(seen) == len(set(seen)) == 2 * len(d.edges)
    for h in seen:
        assert d.face_of(h) == d.face_of(h)


# -- the necklace family ----------------------------------------------------------


@pytest.mark.parametrize("genus", range(6))
def test_necklace_counts(genus):
    d = standard_divide(genus)
    rep = check_admissible(d)
    assert rep.admissible
    assert rep.crossings == 2 * genus + 2
    assert rep.arcs == 4 * genus + 4
    assert rep.faces == 4
    assert rep.euler == 2 - 2 * genus
    assert rep.ambient_genus == genus


@pytest.mark.parametrize("genus", range(6))
def test_necklace_morse_counts(genus):
    d = standard_divide(genus)
    minima, saddles, maxima = morse_data(d)
    assert (minima, saddles, maxima) == (2, 2 * genus + 2, 2)
    assert minima - saddles + maxima == d.euler_characteristic()


def test_necklace_rejects_negative_genus():
    with pytest.raises(ValueError):
        standard_divide(-1)


# -- coloring ---------------------------------------------------------------------


def test_figure_eight_is_admissible():
    rep = check_admissible(figure_eight())
    assert rep.admissible
    assert (rep.crossings, rep.arcs, rep.faces) == (1, 2, 3)
    assert rep.ambient_genus == 0
    minima, saddles, maxima = morse_data(figure_eight())
    assert saddles == 1
    assert sorted((minima, maxima)) == [1, 2]
    assert minima - saddles + maxima == 2


def test_three_chain_torus_embedding_is_colorable():
    rep = check_admissible(three_chain())
    assert rep.admissible
    assert (rep.faces, rep.ambient_genus) == (3, 1)


def test_odd_dual_cycle_is_rejected():
    # genus-1 embedding of the 3-chain whose three faces are pairwise
    # adjacent: the dual triangle has no 2-coloring.  On the sphere this
    # cannot happen (4-valent maps are Eulerian, their duals bipartite).
    d = three_chain(
        {
            "v0": (("a2", 1), ("a0", 0), ("b0", 0), ("b2", 1)),
            "v1": (("a0", 1), ("b0", 1), ("a1", 0), ("b1", 0)),
            "v2": (("a1", 1), ("b1", 1), ("b2", 0), ("a2", 0)),
        }
    )
    rep = check_admissible(d)
    assert rep.connected and not rep.colorable and not rep.admissible
    assert (rep.faces, rep.ambient_genus) == (3, 1)
    assert rep.problem.startswith("odd face chain")
    with pytest.raises(ColoringError, match="odd face chain"):
        checkerboard_coloring(d)


def test_self_adjacent_face_is_rejected():
    d = three_chain(
        {"v0": (("a2", 1), ("b2", 1), ("a0", 0), ("b0", 0))}
    )
    rep = check_admissible(d)
    assert not rep.admissible
    assert "touches both sides" in rep.problem


def test_disconnected_divide_is_rejected():
    d = Divide(
        ("x", "y"),
        ("e", "f", "g", "h"),
        {
            "x": (("e", 0), ("e", 1), ("f", 0), ("f", 1)),
            "y": (("g", 0), ("g", 1), ("h", 0), ("h", 1)),
        },
    )
    rep = check_admissible(d)
    assert not rep.connected and not rep.admissible
    assert rep.problem == "divide is not connected"


def test_coloring_classes_cover_all_faces():
    d = standard_divide(2)
    coloring = checkerboard_coloring(d)
    faces = set(range(len(d.faces())))
    assert set(coloring.white) | set(coloring.black) == faces
    assert not set(coloring.white) & set(coloring.black)
    for e in d.edges:
        sides = {coloring.color_of(d.face_of((e, i))) for i in (0, 1)}
        assert sides == {"white", "black"}


# -- components and serialization --------------------------------------------------


def test_necklace_component_count():
    for genus in range(3):
        d = standard_divide(genus)
        assert len(d.components()) == 2 * genus + 2


def test_text_round_trip():
    d = standard_divide(1)
    back = Divide.from_text(d.to_text())
    assert back.vertices == d.vertices
    assert back.edges == d.edges
    assert back.rotation == d.rotation


def test_json_round_trip():
    d = figure_eight()
    doc = d.to_json_dict()
    assert doc["schema"] == "divide/1"
    back = Divide.from_json_dict(doc)
    assert back.vertices == d.vertices
    assert back.edges == d.edges
    assert back.rotation == d.rotation


def test_dot_export_mentions_every_crossing():
    d = standard_divide(0)
    dot = d.to_dot()
    assert dot.startswith("graph")
    for v in d.vertices:
        assert v in dot
