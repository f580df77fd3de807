"""Shared fixtures: named presentations and seeded random generators."""

from __future__ import annotations

import random

from solk import (
    Dart,
    Edge,
    EdgePath,
    Graph,
    IntMatrix,
    Presentation,
    parse_presentation,
    validate,
)

AABAB_TEXT = """solenoid v1
vertex p
edge a p p
edge b p p
map a -> a a b
map b -> a b
"""

FIBONACCI_TEXT = """solenoid v1
vertex p
edge a p p
edge b p p
map a -> a b
map b -> a
"""

DOUBLING_TEXT = """solenoid v1
vertex p
edge a p p
edge b p p
map a -> a b
map b -> a b
"""

THUE_MORSE_TEXT = """solenoid v1
vertex p
edge a p p
edge b p p
map a -> a b
map b -> b a
"""

TWO_VERTEX_TEXT = """solenoid v1
vertex u
vertex v
edge a u v
edge b v u
map a -> a b a
map b -> b a b
"""


def n_solenoid_text(n: int) -> str:
    return "solenoid v1\nvertex p\nedge a p p\nmap a -> " + " ".join(["a"] * n) + "\n"


def aabab():
    return parse_presentation(AABAB_TEXT)


def fibonacci():
    return parse_presentation(FIBONACCI_TEXT)


def n_solenoid(n: int):
    return parse_presentation(n_solenoid_text(n))


def random_int_matrix(rng: random.Random, max_dim: int = 6, lo: int = -5, hi: int = 5) -> IntMatrix:
    rows = rng.randint(0, max_dim)
    cols = rng.randint(0, max_dim)
    return IntMatrix(rows, cols, [rng.randint(lo, hi) for _ in range(rows * cols)])


def random_unimodular(rng: random.Random, n: int, ops: int = 8) -> IntMatrix:
    m = IntMatrix.identity(n).to_rows()
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if n and rng.random() < 0.5:
        k = rng.randrange(n)
        m[k] = [-x for x in m[k]]
    return IntMatrix.from_rows(m, cols=n)


def _paths_between(graph: Graph, start: str, end: str, max_len: int) -> list[tuple[str, ...]]:
    """All forward edge paths from start to end with 1..max_len darts."""
    out: list[tuple[str, ...]] = []
    frontier: list[tuple[str, tuple[str, ...]]] = [(start, ())]
    for _ in range(max_len):
        nxt = []
        for at, path in frontier:
            for e in graph.edges:
                if e.source != at:
                    continue
                extended = path + (e.name,)
                if e.target == end:
                    out.append(extended)
                nxt.append((e.target, extended))
        frontier = nxt
    return out


def random_presentation(rng: random.Random, max_vertices: int = 3, max_edges: int = 4,
                        max_image_len: int = 4):
    """One attempt at a random presentation; may return None."""
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(1, max_edges)
    vertices = tuple(f"v{i}" for i in range(nv))
    edges = tuple(
        Edge(f"e{i}", rng.choice(vertices), rng.choice(vertices)) for i in range(ne)
    )
    # Reduced presentations only: germ classes need darts on both sides.
    for v in vertices:
        if not any(e.source == v for e in edges) or not any(e.target == v for e in edges):
            return None
    graph = Graph(vertices, edges)
    vmap = {v: rng.choice(vertices) for v in vertices}
    edge_map = {}
    for e in edges:
        options = _paths_between(graph, vmap[e.source], vmap[e.target], max_image_len)
        if not options:
            return None
        names = rng.choice(options)
        edge_map[e.name] = EdgePath(tuple(Dart(n) for n in names))
    return Presentation(graph=graph, edge_map=edge_map, vertex_map=vmap)


def random_valid_presentations(seed: int, count: int, max_attempts: int = 60000):
    """Seeded stream of validated, primitive presentations."""
    rng = random.Random(seed)
    found = []
    for _ in range(max_attempts):
        p = random_presentation(rng)
        if p is None:
            continue
        report = validate(p)
        if report.ok and not report.warnings():
            found.append(p)
            if len(found) == count:
                break
    return found
