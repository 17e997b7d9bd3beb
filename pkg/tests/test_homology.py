"""First homology of surfaces: basis, pairing, and Dehn twist action."""

import pytest
from hypothesis import given, strategies as st

from lf_forge.curves import CurveOnSurface, TransversalityError
from lf_forge.homology import (
    HomologyClass,
    algebraic_intersection,
    class_from_steps,
    curve_class,
    cutting_arc_system,
    dehn_twist_on_class,
    dehn_twist_on_path,
    homology_basis,
    signed_crossings,
    workspace,
)
from lf_forge.ribbon import RibbonGraph


def loop(surface, edge, name=None):
    return CurveOnSurface(surface, name or edge, ((edge, 1),))


@pytest.fixture(scope="module")
def genus_two():
    rot = (("a", 0), ("b", 0), ("a", 1), ("b", 1), ("c", 0), ("d", 0), ("c", 1), ("d", 1))
    return RibbonGraph(("v",), ("a", "b", "c", "d"), {"v": rot})


# -- basis and classes ------------------------------------------------------------


def test_basis_ranks(annulus, punctured_torus, pants, genus_two):
    assert len(homology_basis(annulus)) == 1
    assert len(homology_basis(punctured_torus)) == 2
    assert len(homology_basis(pants)) == 2
    assert len(homology_basis(genus_two)) == 4


def test_one_vertex_basis_cycles_are_unit_classes(punctured_torus):
    basis = homology_basis(punctured_torus)
    for i, e in enumerate(basis):
        vec = curve_class(punctured_torus, loop(punctured_torus, e)).vector
        assert vec == tuple(int(j == i) for j in range(len(basis)))


def test_commutator_walk_is_null_homologous(punctured_torus):
    walk = (("a", 1), ("b", 1), ("a", -1), ("b", -1))
    cls = curve_class(punctured_torus, CurveOnSurface(punctured_torus, "comm", walk))
    assert cls.is_zero()


def test_class_from_steps_matches_curve_class(punctured_torus):
    walk = (("a", 1), ("b", 1), ("a", 1))
    by_curve = curve_class(punctured_torus, CurveOnSurface(punctured_torus, "w", walk))
    assert class_from_steps(punctured_torus, walk) == by_curve


# -- intersection pairing ---------------------------------------------------------


def test_punctured_torus_symplectic_pairing(punctured_torus):
    a = curve_class(punctured_torus, loop(punctured_torus, "a"))
    b = curve_class(punctured_torus, loop(punctured_torus, "b"))
    assert abs(algebraic_intersection(punctured_torus, a, b)) == 1
    assert algebraic_intersection(punctured_torus, a, b) == -algebraic_intersection(
        punctured_torus, b, a
    )
    assert algebraic_intersection(punctured_torus, a, a) == 0


def test_genus_two_pairing_is_two_hyperbolic_blocks(genus_two):
    classes = {e: curve_class(genus_two, loop(genus_two, e)) for e in "abcd"}
    pair = lambda x, y: algebraic_intersection(genus_two, classes[x], classes[y])
    assert abs(pair("a", "b")) == 1
    assert abs(pair("c", "d")) == 1
    for x, y in (("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")):
        assert pair(x, y) == 0


def test_pants_pairing_vanishes(pants):
    # planar surface: the form is identically zero
    basis = homology_basis(pants)
    ws = workspace(pants)
    for e in basis:
        for f in basis:
            x = curve_class(pants, ws.basis_cycle(e))
            y = curve_class(pants, ws.basis_cycle(f))
            assert algebraic_intersection(pants, x, y) == 0


@given(
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    st.integers(-3, 3),
)
def test_pairing_is_bilinear_and_antisymmetric(u, v, w, k):
    surface = RibbonGraph(
        ("v",), ("a", "b"), {"v": (("a", 0), ("b", 0), ("a", 1), ("b", 1))}
    )
    x = HomologyClass(surface, u)
    y = HomologyClass(surface, v)
    z = HomologyClass(surface, w)
    pairing = lambda p, q: algebraic_intersection(surface, p, q)
    assert pairing(x, y) == -pairing(y, x)
    assert pairing(x + z.scaled(k), y) == pairing(x, y) + k * pairing(z, y)


def test_signed_crossings_equals_class_pairing(punctured_torus, genus_two):
    for surface, e, f in ((punctured_torus, "a", "b"), (genus_two, "c", "d")):
        x, y = loop(surface, e), loop(surface, f)
        assert signed_crossings(surface, x, y) == algebraic_intersection(
            surface, curve_class(surface, x), curve_class(surface, y)
        )


# -- Dehn twists ------------------------------------------------------------------


def test_twist_formula_on_punctured_torus(punctured_torus):
    a_curve = loop(punctured_torus, "a")
    a = curve_class(punctured_torus, a_curve)
    b = curve_class(punctured_torus, loop(punctured_torus, "b"))
    image = dehn_twist_on_class(punctured_torus, a_curve, b)
    assert image == b + a.scaled(algebraic_intersection(punctured_torus, b, a))
    assert dehn_twist_on_class(punctured_torus, a_curve, a) == a


def test_twist_on_path_agrees_with_class_action(punctured_torus):
    a_curve = loop(punctured_torus, "a")
    b_curve = loop(punctured_torus, "b")
    twisted = dehn_twist_on_path(punctured_torus, a_curve, b_curve)
    want = dehn_twist_on_class(
        punctured_torus, a_curve, curve_class(punctured_torus, b_curve)
    )
    assert curve_class(punctured_torus, twisted) == want


def test_twist_rejects_shared_edge_traversal(punctured_torus):
    a_curve = loop(punctured_torus, "a")
    path = CurveOnSurface(punctured_torus, "w", (("a", 1), ("b", 1)))
    with pytest.raises(TransversalityError):
        dehn_twist_on_path(punctured_torus, a_curve, path)


def test_twist_preserves_pairing_on_genus_two(genus_two):
    curves = {e: loop(genus_two, e) for e in "abcd"}
    classes = {e: curve_class(genus_two, c) for e, c in curves.items()}
    for t in "abcd":
        for x in "abcd":
            for y in "abcd":
                tx = dehn_twist_on_class(genus_two, curves[t], classes[x])
                ty = dehn_twist_on_class(genus_two, curves[t], classes[y])
                assert algebraic_intersection(genus_two, tx, ty) == algebraic_intersection(
                    genus_two, classes[x], classes[y]
                )


def test_twist_fixes_null_homologous_walk_class(punctured_torus):
    comm = CurveOnSurface(
        punctured_torus, "comm", (("a", 1), ("b", 1), ("a", -1), ("b", -1))
    )
    cls = curve_class(punctured_torus, comm)
    assert cls.is_zero()
    for e in ("a", "b"):
        assert dehn_twist_on_class(punctured_torus, loop(punctured_torus, e), cls).is_zero()


# -- cutting arcs -----------------------------------------------------------------


def test_cutting_arc_system_sizes(annulus, punctured_torus, pants, genus_two):
    for surface in (annulus, punctured_torus, pants, genus_two):
        arcs = cutting_arc_system(surface)
        assert len(arcs) == len(homology_basis(surface))


def test_cutting_arcs_cross_their_own_edge_once(punctured_torus):
    basis = homology_basis(punctured_torus)
    for e, arc in zip(basis, cutting_arc_system(punctured_torus)):
        # a single transverse band crossing, no edge traversals
        assert [(s.kind, s.edge) for s in arc.steps] == [("cross", e)]
        assert arc.traversed_edges() == frozenset()
