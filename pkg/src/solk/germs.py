"""Finite model of the quotient of the unstable set by the germ relation.

A vertex point of the line presented by (Y, g) is remembered by the pair
(incoming dart, outgoing dart) at that vertex; interior points of an edge
form a single Hausdorff cell per edge.  This module computes which germ
classes occur, the induced self-map on them, and the preimage data needed
downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Dart, Presentation, abelianization


class UnreachableVertex(ValueError):
    """Some vertex carries no occurring germ class (presentation not reduced)."""


class DegreeNotConstant(RuntimeError):
    """Hausdorff + connected quotient with a non-constant preimage count."""


@dataclass(frozen=True)
class GermClass:
    """A vertex point of the quotient: (vertex, arriving dart, departing dart)."""

    vertex: str
    in_dart: Dart
    out_dart: Dart

    @property
    def in_edge(self) -> str:
        return self.in_dart.edge

    @property
    def out_edge(self) -> str:
        return self.out_dart.edge

    def sort_key(self) -> tuple[str, str, str]:
        return (self.vertex, self.in_edge, self.out_edge)

    def label(self) -> str:
        return f"{self.in_dart}|{self.out_dart}"


@dataclass(frozen=True)
class QuotientModel:
    """Cells of the quotient: germ classes plus one interior cell per edge."""

    classes: tuple[GermClass, ...]
    edge_points: tuple[str, ...]
    gtilde: dict[GermClass, GermClass]
    interior_preimage_table: dict[GermClass, tuple[tuple[str, int], ...]]

    def vertex_preimages(self, c: GermClass) -> tuple[GermClass, ...]:
        return tuple(d for d in self.classes if self.gtilde[d] == c)

    def preimage_count(self, c: GermClass) -> int:
        return len(self.vertex_preimages(c)) + len(self.interior_preimage_table[c])


def _germ(p: Presentation, in_dart: Dart, out_dart: Dart) -> GermClass:
    graph = p.graph
    vertex = graph.dart_end(in_dart)
    if graph.dart_start(out_dart) != vertex:
        raise ValueError(f"darts {in_dart}, {out_dart} do not meet at a common vertex")
    if out_dart == in_dart.reversed():
        raise ValueError("outgoing dart reverses the incoming dart")
    return GermClass(vertex=vertex, in_dart=in_dart, out_dart=out_dart)


def junction_germs(p: Presentation) -> tuple[GermClass, ...]:
    """Germs realized at interior junctions of image paths, deduplicated.

    Returned in discovery order (edges in declaration order, junctions left
    to right).
    """
    seen: list[GermClass] = []
    for e in p.graph.edge_names():
        darts = p.edge_map[e].darts
        for i in range(len(darts) - 1):
            g = _germ(p, darts[i], darts[i + 1])
            if g not in seen:
                seen.append(g)
    return tuple(seen)


def _dart_image(p: Presentation, d: Dart) -> tuple[Dart, ...]:
    img = p.edge_map[d.edge].darts
    return img if d.forward else tuple(x.reversed() for x in reversed(img))


def gtilde_on_class(p: Presentation, c: GermClass) -> GermClass:
    """Image of a germ class under the induced map on the quotient.

    The class maps to (last dart of the image of the incoming dart, first
    dart of the image of the outgoing dart) at the image vertex.
    """
    in_img = _dart_image(p, c.in_dart)
    out_img = _dart_image(p, c.out_dart)
    return _germ(p, in_img[-1], out_img[0])


def _all_germs(p: Presentation) -> list[GermClass]:
    graph = p.graph
    out: list[GermClass] = []
    for v in graph.vertices:
        in_darts = [Dart(e.name) for e in graph.edges if e.target == v]
        out_darts = [Dart(e.name) for e in graph.edges if e.source == v]
        for din in in_darts:
            for dout in out_darts:
                out.append(GermClass(vertex=v, in_dart=din, out_dart=dout))
    return out


def occurring_classes(p: Presentation) -> QuotientModel:
    """The occurring germ classes and the model tables built over them.

    Occurring = forward closure, under the induced map, of the junction
    germs together with every germ lying on a cycle of the induced map
    over the full finite germ set.  Junction germs occur because every
    edge occurs densely in the line; cycle germs account for backward
    orbits of vertex points such as fixed points.
    """
    full = _all_germs(p)
    step = {c: gtilde_on_class(p, c) for c in full}

    on_cycle: set[GermClass] = set()
    for c in full:
        x = c
        for _ in range(len(full)):
            x = step[x]
        # x is now on the eventual cycle of c; walk the cycle once.
        start = x
        cycle = [x]
        x = step[x]
        while x != start:
            cycle.append(x)
            x = step[x]
        on_cycle.update(cycle)

    occurring = set(junction_germs(p)) | on_cycle
    frontier = list(occurring)
    while frontier:
        nxt = step[frontier.pop()]
        if nxt not in occurring:
            occurring.add(nxt)
            frontier.append(nxt)

    classes = tuple(sorted(occurring, key=GermClass.sort_key))

    covered = {c.vertex for c in classes}
    for v in p.graph.vertices:
        if v not in covered:
            raise UnreachableVertex(f"vertex '{v}' carries no occurring germ class")

    table: dict[GermClass, list[tuple[str, int]]] = {c: [] for c in classes}
    for e in p.graph.edge_names():
        darts = p.edge_map[e].darts
        for i in range(len(darts) - 1):
            table[_germ(p, darts[i], darts[i + 1])].append((e, i + 1))

    return QuotientModel(
        classes=classes,
        edge_points=p.graph.edge_names(),
        gtilde={c: step[c] for c in classes},
        interior_preimage_table={c: tuple(v) for c, v in table.items()},
    )


def interior_preimages(p: Presentation, c: GermClass) -> tuple[tuple[str, int], ...]:
    """Edge-interior preimages of an occurring class: pairs (edge, junction index).

    Junction index i means the point between the i-th and (i+1)-st darts of
    the image path, 1-based.
    """
    model = occurring_classes(p)
    if c not in model.interior_preimage_table:
        raise ValueError(f"class {c.label()} does not occur")
    return model.interior_preimage_table[c]


def _arrival_end(d: Dart) -> tuple[str, str]:
    return (d.edge, "head" if d.forward else "tail")


def _departure_end(d: Dart) -> tuple[str, str]:
    return (d.edge, "tail" if d.forward else "head")


def is_quotient_hausdorff(
    p: Presentation,
) -> tuple[bool, tuple[GermClass, GermClass] | None]:
    """Whether the quotient is Hausdorff, with a witness pair when it is not.

    Two classes at the same vertex cannot be separated exactly when they
    are approached through the same end of the same edge, i.e. when they
    share an incoming or an outgoing dart.
    """
    model = occurring_classes(p)
    by_vertex: dict[str, list[GermClass]] = {}
    for c in model.classes:
        by_vertex.setdefault(c.vertex, []).append(c)
    for group in by_vertex.values():
        for i, c1 in enumerate(group):
            ends1 = {_arrival_end(c1.in_dart), _departure_end(c1.out_dart)}
            for c2 in group[i + 1 :]:
                ends2 = {_arrival_end(c2.in_dart), _departure_end(c2.out_dart)}
                if ends1 & ends2:
                    return False, (c1, c2)
    return True, None


def _is_connected(model: QuotientModel) -> bool:
    # Cells: one node per edge interior and one per class; a class touches
    # the interiors of its incoming and outgoing edges.
    nodes: list[object] = list(model.edge_points) + list(model.classes)
    if not nodes:
        return True
    adj: dict[object, set[object]] = {n: set() for n in nodes}
    for c in model.classes:
        for e in (c.in_edge, c.out_edge):
            adj[c].add(e)
            adj[e].add(c)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(nodes)


@dataclass(frozen=True)
class QuotientSummary:
    class_count_per_vertex: dict[str, int]
    hausdorff: bool
    hausdorff_witness: tuple[GermClass, GermClass] | None
    connected: bool
    degree: int | None
    nuclear_dimension_bound: int


def quotient_summary(p: Presentation) -> QuotientSummary:
    """Diagnostics of the quotient space.

    When the quotient is Hausdorff and connected, the induced map has a
    constant number n >= 2 of preimages over every cell; that n is
    reported as the degree.  The one-dimensional cell structure bounds the
    nuclear dimension of the stable algebra by 1.
    """
    model = occurring_classes(p)
    hausdorff, witness = is_quotient_hausdorff(p)
    connected = _is_connected(model)

    per_vertex: dict[str, int] = {v: 0 for v in p.graph.vertices}
    for c in model.classes:
        per_vertex[c.vertex] += 1

    degree = None
    if hausdorff and connected and model.classes:
        counts = {f"class {c.label()}@{c.vertex}": model.preimage_count(c) for c in model.classes}
        M = abelianization(p)
        names = p.graph.edge_names()
        for i, e in enumerate(names):
            counts[f"edge {e}"] = sum(M.row(i))
        values = set(counts.values())
        if len(values) != 1 or min(values) < 2:
            raise DegreeNotConstant(
                f"expected one constant preimage count n >= 2, got {sorted(counts.items())}"
            )
        degree = values.pop()

    return QuotientSummary(
        class_count_per_vertex=per_vertex,
        hausdorff=hausdorff,
        hausdorff_witness=witness,
        connected=connected,
        degree=degree,
        nuclear_dimension_bound=1,
    )
