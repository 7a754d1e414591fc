"""Builders for the fixture corpus and the benchmark family.

Simplicial builders return lists of maximal simplices (feed into
``build_from_simplices``); CW builders return explicit cell descriptions
(feed into ``build_from_cw``).
"""

from __future__ import annotations


def closed_simplex(n=2):
    """The closed n-simplex as a single maximal simplex."""
    return [list(range(n + 1))]


def tetrahedron_boundary():
    """Triangulated 2-sphere: the four faces of a tetrahedron."""
    return [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]


def circle_simplices(k=3):
    """Simplicial circle with k vertices (k >= 3)."""
    if k < 3:
        raise ValueError("simplicial circle needs k >= 3")
    return [[i, (i + 1) % k] for i in range(k)]


def circle_cw(k=4):
    """CW circle with k vertices and k edges (k >= 2 keeps it regular)."""
    if k < 2:
        raise ValueError("regular CW circle needs k >= 2")
    cells = [{"id": f"v{i}", "dim": 0, "boundary": []} for i in range(k)]
    for i in range(k):
        cells.append({
            "id": f"e{i}", "dim": 1,
            "boundary": [[f"v{(i + 1) % k}", 1], [f"v{i}", -1]],
        })
    return {"cells": cells}


def torus_grid(g):
    """Triangulated flat torus on a g x g vertex grid (g >= 3).

    Each grid square splits into two triangles; the family has star size
    bounded by 13 independent of g, with m = 6 g^2 cells in total.
    """
    if g < 3:
        raise ValueError("grid torus needs g >= 3")

    def v(i, j):
        return (i % g) * g + (j % g)

    tris = []
    for i in range(g):
        for j in range(g):
            tris.append([v(i, j), v(i + 1, j), v(i, j + 1)])
            tris.append([v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)])
    return tris


def torus_minimal():
    """The 7-vertex triangulation of the torus (14 triangles)."""
    tris = []
    for i in range(7):
        tris.append([i, (i + 1) % 7, (i + 3) % 7])
        tris.append([i, (i + 2) % 7, (i + 3) % 7])
    return tris


def parallelogram_flap():
    """A parallelogram split by both diagonals, plus a flap triangle.

    Corners 0..3, center 4, flap vertex 5; the flap shares the half-diagonal
    (0, 4), which therefore has three 2-dimensional cofaces.
    """
    return [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4], [0, 4, 5]]


def wedge_cone_cw():
    """Closed cone over a wedge of two circles, as an explicit CW complex.

    Wedge point p, cone apex q, circle midpoints z1/z2; each circle is split
    into two edges (w1/w2 and w3/w4).  Coning adds edges y1 = (q, z1),
    y2 = (q, z2) and e = (q, p), plus one 2-cell per circle edge.  The axis
    edge e is a face of all four 2-cells, which is what keeps the two sheets
    of 2-dimensional cells apart.
    """
    cells = [
        {"id": "p", "dim": 0, "boundary": []},
        {"id": "q", "dim": 0, "boundary": []},
        {"id": "z1", "dim": 0, "boundary": []},
        {"id": "z2", "dim": 0, "boundary": []},
        {"id": "w1", "dim": 1, "boundary": [["z1", 1], ["p", -1]]},
        {"id": "w2", "dim": 1, "boundary": [["z1", 1], ["p", -1]]},
        {"id": "w3", "dim": 1, "boundary": [["z2", 1], ["p", -1]]},
        {"id": "w4", "dim": 1, "boundary": [["z2", 1], ["p", -1]]},
        {"id": "y1", "dim": 1, "boundary": [["z1", 1], ["q", -1]]},
        {"id": "y2", "dim": 1, "boundary": [["z2", 1], ["q", -1]]},
        {"id": "e", "dim": 1, "boundary": [["p", 1], ["q", -1]]},
        {"id": "x1", "dim": 2, "boundary": [["w1", 1], ["y1", -1], ["e", 1]]},
        {"id": "x2", "dim": 2, "boundary": [["w2", 1], ["y1", -1], ["e", 1]]},
        {"id": "x3", "dim": 2, "boundary": [["w3", 1], ["y2", -1], ["e", 1]]},
        {"id": "x4", "dim": 2, "boundary": [["w4", 1], ["y2", -1], ["e", 1]]},
    ]
    return {"cells": cells}


def pinched_torus_disk(a=6, b=4):
    """Triangulated pinched torus with a spanning disk.

    A cylinder of b-vertex meridian circles at longitudes 1..a-1 has both
    boundary circles coned to the single pinch vertex; a disk (cone over the
    longitude circle through the pinch) is attached across the equator.
    Needs a >= 3 and b >= 3 to stay simplicial.
    """
    if a < 3 or b < 3:
        raise ValueError("pinched torus needs a >= 3 and b >= 3")
    pinch = 0

    def v(i, j):
        return 1 + (i - 1) * b + (j % b)

    apex = 1 + (a - 1) * b  # disk center
    tris = []
    for i in range(1, a - 1):
        for j in range(b):
            tris.append([v(i, j), v(i + 1, j), v(i, j + 1)])
            tris.append([v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)])
    for j in range(b):
        tris.append([pinch, v(1, j), v(1, j + 1)])
        tris.append([pinch, v(a - 1, j), v(a - 1, j + 1)])
    tris.append([apex, pinch, v(1, 0)])
    for i in range(1, a - 1):
        tris.append([apex, v(i, 0), v(i + 1, 0)])
    tris.append([apex, v(a - 1, 0), pinch])
    return tris


def pinched_torus_equator_cells(a=6, b=4):
    """Vertex labels on the pinched equator (pinch first), for tests."""
    ring = [1 + (i - 1) * b for i in range(1, a)]
    return [0] + ring
