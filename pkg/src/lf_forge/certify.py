"""Certificate reports: every stated invariant of a fibration, checked.

A certificate is a flat list of named checks with expected and computed
values, so a failing run says exactly which invariant broke.  Expectations
are closed-form in the genus; the boundary group comes from the disk-bundle
picture (Euler number 2 - 2g), the total-space groups from the cycle class
matrix.
"""

from __future__ import annotations

from .builders import LefschetzFibration, simultaneous_surgery
from .equivalence import word_families
from .invariants import (
    FinAbGroup,
    boundary_open_book,
    open_book_h1,
    total_space_euler,
    total_space_homology,
)
from .ribbon import SurfaceError

__all__ = [
    "expected_boundary_group",
    "expected_fiber_profile",
    "fibration_certificate",
]


def expected_boundary_group(genus: int) -> FinAbGroup:
    """First homology of the unit cotangent circle bundle: Z^2g plus a cyclic
    factor of order |2 - 2g| (a free factor when that vanishes)."""
    e = abs(2 - 2 * genus)
    if e == 0:
        return FinAbGroup(2 * genus + 1, ())
    if e == 1:
        return FinAbGroup(2 * genus, ())
    return FinAbGroup(2 * genus, (e,))


def expected_fiber_profile(construction: str, genus: int) -> dict:
    """Fiber and word-shape expectations per construction."""
    if construction == "sphere":
        if genus != 0:
            raise ValueError("the annulus-page model exists only at genus 0")
        return {"genus": 0, "boundary": 2, "euler": 0, "word_length": 2}
    return {
        "genus": 1,
        "boundary": 4 * genus + 4,
        "euler": -4 * genus - 4,
        "word_length": 2 * genus + 6,
    }


def _check(name: str, expected, actual) -> dict:
    return {
        "name": name,
        "passed": expected == actual,
        "expected": str(expected),
        "actual": str(actual),
    }


def _smoothing_check(fib: LefschetzFibration) -> dict | None:
    """Re-run the closing smoothing when the word has the three families."""
    fams = word_families(fib)
    if not {"a", "b", "c"} <= set(fams):
        return None
    try:
        outs = simultaneous_surgery(fib.fiber, fams["a"], fams["b"], prefix="recheck")
    except SurfaceError as exc:
        return {"name": "closing_smoothing", "passed": False,
                "expected": "smoothing succeeds", "actual": str(exc)}
    by_min = {min(c.edge_set()): c for c in fams["c"]}
    ok = len(outs) == len(fams["c"]) and all(
        (t := by_min.get(min(out.edge_set()))) is not None and out.cyclically_equal(t)
        for out in outs)
    return {"name": "closing_smoothing", "passed": ok,
            "expected": f"{len(fams['c'])} closing cycles reproduced",
            "actual": "reproduced" if ok else "mismatch"}


def fibration_certificate(fib: LefschetzFibration) -> dict:
    """Check every stated invariant of one fibration; schema certificate/1."""
    g = fib.genus
    want = expected_fiber_profile(fib.construction, g)
    inv = fib.fiber.invariants()
    h1, h2 = total_space_homology(fib.fiber, fib.word)
    boundary = open_book_h1(boundary_open_book(fib.fiber, fib.word))
    checks = [
        _check("fiber_genus", want["genus"], inv.genus),
        _check("fiber_boundary_components", want["boundary"], inv.boundary_components),
        _check("fiber_euler", want["euler"], inv.euler),
        _check("fiber_orientable", True, inv.orientable),
        _check("word_length", want["word_length"], len(fib.word)),
        _check("total_space_euler", 2 - 2 * g, total_space_euler(fib.fiber, fib.word)),
        _check("total_space_h1", FinAbGroup.free(2 * g), h1),
        _check("total_space_h2", FinAbGroup.free(1), h2),
        _check("boundary_h1", expected_boundary_group(g), boundary),
    ]
    smoothing = _smoothing_check(fib)
    if smoothing is not None:
        checks.append(smoothing)
    return {
        "schema": "certificate/1",
        "construction": fib.construction,
        "genus": g,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }
