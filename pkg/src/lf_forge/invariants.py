"""Homological invariants of a fibration's total space and boundary.

Everything is exact integer linear algebra.  The total space of a fibration
with fiber F and vanishing cycles c_1..c_m deformation-retracts to F with m
disks attached, so its homology is read off the chain map Z^m -> H1(F)
sending each cycle to its class.  The boundary is an open book with page F
and monodromy the product of positive Dehn twists along the word; its H1 is
presented on the page basis with one relation per cutting arc, the class of
(monodromy image of the arc) * (arc reversed).
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveOnSurface
from .homology import (
    HomologyClass,
    algebraic_intersection,
    curve_class,
    cutting_arc_system,
    homology_basis,
    workspace,
)
from .ribbon import RibbonGraph, SurfaceError


# -- finitely generated abelian groups ------------------------------------------


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank plus cyclic torsion factors in a divisibility chain."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion factor {t} must be at least 2 (Z/0 is never stored)")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FinAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        if n == 0:
            return cls(1, ())
        n = abs(n)
        return cls(0, ()) if n == 1 else cls(0, (n,))

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank > 1 else (["Z"] if self.free_rank else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json_dict(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


# -- Smith normal form -----------------------------------------------------------


def smith_normal_form(matrix: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(D, U, V) with D = U * matrix * V, U and V unimodular, D diagonal with
    d_1 | d_2 | ... Exact over Python ints."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(map(int, r)) for r in matrix]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, k):  # row_i += k * row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, k):  # col_i += k * col_j
        for r in a:
            r[i] += k * r[j]
        for r in v:
            r[i] += k * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # Pivot: smallest nonzero magnitude in the remaining block.
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t] % a[t][t]:
                dirty = True
            row_op(i, t, -(a[i][t] // a[t][t]))
        for j in range(t + 1, cols):
            if a[t][j] % a[t][t]:
                dirty = True
            col_op(j, t, -(a[t][j] // a[t][t]))
        if dirty or any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
            continue  # remainders surfaced; redo this pivot
        # Divisibility: fold in any entry the pivot does not divide.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, 1)
            continue
        t += 1
    return a, u, v


def _diagonal(d: list[list[int]]) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def cokernel(matrix: list[list[int]], ambient_rank: int) -> FinAbGroup:
    """Z^ambient_rank modulo the column span of ``matrix``."""
    if not matrix or not matrix[0]:
        return FinAbGroup.free(ambient_rank)
    if len(matrix) != ambient_rank:
        raise ValueError("matrix rows must match ambient rank")
    d, _, _ = smith_normal_form(matrix)
    diag = _diagonal(d)
    torsion = tuple(x for x in diag if x > 1)
    return FinAbGroup(ambient_rank - len(diag), torsion)


def matrix_rank(matrix: list[list[int]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    d, _, _ = smith_normal_form(matrix)
    return len(_diagonal(d))


# -- fibration-level invariants ---------------------------------------------------


def total_space_euler(fiber: RibbonGraph, cycles) -> int:
    """chi of the 4-manifold: chi(fiber) x chi(disk) plus one per critical
    point, i.e. chi(F) + #cycles here."""
    return fiber.euler_characteristic() + len(cycles)


def _class_matrix(fiber: RibbonGraph, cycles) -> list[list[int]]:
    basis = homology_basis(fiber)
    cols = [curve_class(fiber, c).vector for c in cycles]
    return [[col[i] for col in cols] for i in range(len(basis))]


def total_space_homology(fiber: RibbonGraph, cycles) -> tuple[FinAbGroup, FinAbGroup]:
    """(H1, H2) of the total space: cokernel and kernel of the map sending
    each vanishing cycle to its fiber class.  H2 is free."""
    m = _class_matrix(fiber, cycles)
    h1 = cokernel(m, len(m))
    h2 = FinAbGroup.free(len(cycles) - matrix_rank(m))
    return h1, h2


# -- open books -------------------------------------------------------------------


@dataclass(frozen=True)
class OpenBook:
    """Boundary open book: page plus the ordered word of positive twists."""

    page: RibbonGraph
    word: tuple[CurveOnSurface, ...]

    def binding_components(self) -> int:
        return self.page.num_boundary_components()


def boundary_open_book(fiber: RibbonGraph, cycles) -> OpenBook:
    for c in cycles:
        if c.host is not fiber:
            raise SurfaceError("cycle lives on a different surface")
        c.require_edge_simple()
    return OpenBook(fiber, tuple(cycles))


def monodromy_arc_relations(book: OpenBook) -> list[list[int]]:
    """Relation matrix of H1 of the open book on the page basis.

    For the cutting arc dual to co-tree edge e, iterating the word's twists
    inserts n_k detour copies of c_k where n_k counts the running arc's signed
    crossings with c_k; crossings of a pushed-off detour copy of c_j with c_k
    equal the pairing <c_j, c_k>, and the base arc meets c_k once per signed
    traversal of e.  The relation class telescopes to sum_k n_k [c_k].
    """
    page = book.page
    ws = workspace(page)
    n = len(ws.basis)
    vecs = [curve_class(page, c).vector for c in book.word]
    classes = [HomologyClass(page, v) for v in vecs]
    pair = [
        [algebraic_intersection(page, ci, cj) for cj in classes] for ci in classes
    ]
    columns = []
    for i in range(n):
        counts = []
        for k in range(len(vecs)):
            nk = vecs[k][i] + sum(counts[j] * pair[j][k] for j in range(k))
            counts.append(nk)
        col = [0] * n
        for k, nk in enumerate(counts):
            if nk:
                col = [c + nk * v for c, v in zip(col, vecs[k])]
        columns.append(col)
    return [[columns[j][i] for j in range(n)] for i in range(n)]


def open_book_h1(book: OpenBook) -> FinAbGroup:
    """H1 of the closed 3-manifold the open book describes."""
    n = len(homology_basis(book.page))
    if n == 0:
        return FinAbGroup.trivial()
    if not book.word:
        return FinAbGroup.free(n)
    return cokernel(monodromy_arc_relations(book), n)
