"""Combinatorial presentations of one-dimensional graph solenoids.

A presentation is a finite directed graph together with a substitution
sending each edge to a nonempty edge path and each vertex to a vertex,
with matching endpoints.  The file format is line oriented:

    solenoid v1
    vertex p
    edge a p p
    edge b p p
    map a -> a a b
    map b -> a b
    vmap p -> p        # optional; inferred from the maps when omitted

``#`` starts a comment and blank lines are ignored.  A token ``~e`` in an
image path denotes a reversed traversal of edge ``e``; the parser accepts
it but validation rejects orientation-reversing substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intlin import IntMatrix


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.reason = message


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise ValueError("duplicate edge names")
        vset = set(self.vertices)
        for e in self.edges:
            if e.source not in vset or e.target not in vset:
                raise ValueError(f"edge {e.name} has undeclared endpoint")

    def edge(self, name: str) -> Edge:
        for e in self.edges:
            if e.name == name:
                return e
        raise KeyError(name)

    def edge_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.edges)

    def dart_start(self, d: "Dart") -> str:
        e = self.edge(d.edge)
        return e.source if d.forward else e.target

    def dart_end(self, d: "Dart") -> str:
        e = self.edge(d.edge)
        return e.target if d.forward else e.source


@dataclass(frozen=True)
class Dart:
    """One-sided traversal of an edge; forward runs source to target."""

    edge: str
    forward: bool = True

    def reversed(self) -> "Dart":
        return Dart(self.edge, not self.forward)

    def __str__(self) -> str:
        return self.edge if self.forward else "~" + self.edge


@dataclass(frozen=True)
class EdgePath:
    darts: tuple[Dart, ...]

    def __post_init__(self):
        if not self.darts:
            raise ValueError("edge path must be nonempty")

    def start(self, graph: Graph) -> str:
        return graph.dart_start(self.darts[0])

    def end(self, graph: Graph) -> str:
        return graph.dart_end(self.darts[-1])

    def is_continuous(self, graph: Graph) -> bool:
        return all(
            graph.dart_end(a) == graph.dart_start(b)
            for a, b in zip(self.darts, self.darts[1:])
        )

    def __len__(self) -> int:
        return len(self.darts)

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.darts)


@dataclass(frozen=True)
class Presentation:
    graph: Graph
    edge_map: dict[str, EdgePath]
    vertex_map: dict[str, str]

    def image(self, edge_name: str) -> EdgePath:
        return self.edge_map[edge_name]


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not any(f.severity == "error" for f in self.findings)

    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    def warnings(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")


def _tokenize(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line_no, line.split()


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation file format.

    Graph-level structure (name uniqueness, declared endpoints, internal
    continuity of image paths) is enforced here; substitution-level checks
    live in validate().
    """
    vertices: list[str] = []
    edges: list[Edge] = []
    edge_map: dict[str, EdgePath] = {}
    vmap_explicit: dict[str, str] = {}
    saw_header = False
    last_line = 0

    for line_no, tokens in _tokenize(text):
        last_line = line_no
        if not saw_header:
            if tokens != ["solenoid", "v1"]:
                raise ParseError(line_no, "expected header 'solenoid v1'")
            saw_header = True
            continue
        keyword = tokens[0]
        if keyword == "vertex":
            if len(tokens) != 2:
                raise ParseError(line_no, "expected 'vertex <name>'")
            name = tokens[1]
            if name in vertices:
                raise ParseError(line_no, f"duplicate vertex '{name}'")
            vertices.append(name)
        elif keyword == "edge":
            if len(tokens) != 4:
                raise ParseError(line_no, "expected 'edge <name> <source> <target>'")
            name, src, tgt = tokens[1:]
            if any(e.name == name for e in edges):
                raise ParseError(line_no, f"duplicate edge '{name}'")
            if src not in vertices:
                raise ParseError(line_no, f"unknown vertex '{src}'")
            if tgt not in vertices:
                raise ParseError(line_no, f"unknown vertex '{tgt}'")
            edges.append(Edge(name, src, tgt))
        elif keyword == "map":
            if len(tokens) < 4 or tokens[2] != "->":
                raise ParseError(line_no, "expected 'map <edge> -> <edge> ...'")
            name = tokens[1]
            if not any(e.name == name for e in edges):
                raise ParseError(line_no, f"unknown edge '{name}'")
            if name in edge_map:
                raise ParseError(line_no, f"duplicate map for edge '{name}'")
            darts = []
            for tok in tokens[3:]:
                forward = not tok.startswith("~")
                ename = tok if forward else tok[1:]
                if not any(e.name == ename for e in edges):
                    raise ParseError(line_no, f"unknown edge '{ename}'")
                darts.append(Dart(ename, forward))
            path = EdgePath(tuple(darts))
            graph_so_far = Graph(tuple(vertices), tuple(edges))
            if not path.is_continuous(graph_so_far):
                raise ParseError(line_no, f"image path of '{name}' is discontinuous")
            edge_map[name] = path
        elif keyword == "vmap":
            if len(tokens) != 4 or tokens[2] != "->":
                raise ParseError(line_no, "expected 'vmap <vertex> -> <vertex>'")
            src, tgt = tokens[1], tokens[3]
            if src not in vertices:
                raise ParseError(line_no, f"unknown vertex '{src}'")
            if tgt not in vertices:
                raise ParseError(line_no, f"unknown vertex '{tgt}'")
            if src in vmap_explicit:
                raise ParseError(line_no, f"duplicate vmap for vertex '{src}'")
            vmap_explicit[src] = tgt
        else:
            raise ParseError(line_no, f"unknown directive '{keyword}'")

    if not saw_header:
        raise ParseError(last_line or 1, "empty input; expected header 'solenoid v1'")
    graph = Graph(tuple(vertices), tuple(edges))
    for e in edges:
        if e.name not in edge_map:
            raise ParseError(last_line, f"no image path for edge '{e.name}'")

    vertex_map = dict(vmap_explicit)
    for v in vertices:
        if v in vertex_map:
            continue
        inferred = None
        for e in edges:
            if e.source == v:
                inferred = edge_map[e.name].start(graph)
                break
            if e.target == v:
                inferred = edge_map[e.name].end(graph)
                break
        if inferred is None:
            raise ParseError(
                last_line, f"cannot infer image of isolated vertex '{v}'; add a vmap line"
            )
        vertex_map[v] = inferred

    return Presentation(graph=graph, edge_map=edge_map, vertex_map=vertex_map)


def serialize_presentation(p: Presentation) -> str:
    """Inverse of parse_presentation up to comments and whitespace."""
    lines = ["solenoid v1"]
    lines.extend(f"vertex {v}" for v in p.graph.vertices)
    lines.extend(f"edge {e.name} {e.source} {e.target}" for e in p.graph.edges)
    lines.extend(f"map {e.name} -> {p.edge_map[e.name]}" for e in p.graph.edges)
    lines.extend(f"vmap {v} -> {p.vertex_map[v]}" for v in p.graph.vertices)
    return "\n".join(lines) + "\n"


def abelianization(p: Presentation) -> IntMatrix:
    """Occurrence-count matrix of the substitution.

    Square, indexed by edges in declaration order; entry (f, e) counts the
    traversals of edge f (either direction) in the image of edge e.
    """
    names = p.graph.edge_names()
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    entries = [[0] * n for _ in range(n)]
    for j, e in enumerate(names):
        for d in p.edge_map[e].darts:
            entries[index[d.edge]][j] += 1
    return IntMatrix.from_rows(entries, cols=n)


def substitution_power(p: Presentation, k: int) -> Presentation:
    """The k-fold composition of the substitution, as a presentation."""
    if k < 1:
        raise ValueError("power must be >= 1")
    result = p
    for _ in range(k - 1):
        new_map = {}
        for e in p.graph.edge_names():
            darts: list[Dart] = []
            for d in result.edge_map[e].darts:
                img = p.edge_map[d.edge].darts
                darts.extend(img if d.forward else tuple(x.reversed() for x in reversed(img)))
            new_map[e] = EdgePath(tuple(darts))
        new_vmap = {v: p.vertex_map[result.vertex_map[v]] for v in p.graph.vertices}
        result = Presentation(graph=p.graph, edge_map=new_map, vertex_map=new_vmap)
    return result


def _is_primitive(M: IntMatrix) -> bool:
    n = M.rows
    if n == 0:
        return True
    power = M
    for _ in range(n * n):
        if all(x > 0 for row in power.to_rows() for x in row):
            return True
        power = power @ M
    return False


def validate(p: Presentation) -> ValidationReport:
    """Substitution-level checks; see the finding codes below.

    These are necessary conditions for the presentation to define an
    expanding, mixing one-dimensional solenoid, not a full certificate:
    (a) endpoints   (b) homeomorphism   (c) orientation
    (d) primitivity (warning only)      (e) eventual expansion
    """
    findings: list[Finding] = []
    graph = p.graph

    # (a) vertex map total and compatible with the image-path endpoints.
    for v in graph.vertices:
        w = p.vertex_map.get(v)
        if w is None or w not in graph.vertices:
            findings.append(Finding("error", "endpoints", f"vertex '{v}' has no image vertex"))
    for e in graph.edges:
        path = p.edge_map.get(e.name)
        if path is None:
            findings.append(Finding("error", "endpoints", f"edge '{e.name}' has no image path"))
            continue
        if not path.is_continuous(graph):
            findings.append(
                Finding("error", "endpoints", f"image path of '{e.name}' is discontinuous")
            )
            continue
        want_start = p.vertex_map.get(e.source)
        want_end = p.vertex_map.get(e.target)
        if want_start is not None and path.start(graph) != want_start:
            findings.append(
                Finding(
                    "error",
                    "endpoints",
                    f"image of '{e.name}' starts at {path.start(graph)}, "
                    f"but source vertex maps to {want_start}",
                )
            )
        if want_end is not None and path.end(graph) != want_end:
            findings.append(
                Finding(
                    "error",
                    "endpoints",
                    f"image of '{e.name}' ends at {path.end(graph)}, "
                    f"but target vertex maps to {want_end}",
                )
            )
    if any(f.code == "endpoints" for f in findings):
        return ValidationReport(tuple(findings))

    # (c) orientation: reversed darts in image paths are unsupported.
    for e in graph.edge_names():
        for d in p.edge_map[e].darts:
            if not d.forward:
                findings.append(
                    Finding(
                        "error",
                        "orientation",
                        f"unsupported: orientation-reversing image of '{e}' (dart {d})",
                    )
                )
                break

    # (b) the substitution must not be invertible.
    if all(len(p.edge_map[e]) == 1 for e in graph.edge_names()):
        images = [p.edge_map[e].darts[0].edge for e in graph.edge_names()]
        if len(set(images)) == len(images):
            findings.append(
                Finding(
                    "error",
                    "homeomorphism",
                    "substitution permutes the edges, so the map is invertible",
                )
            )

    M = abelianization(p)

    # (d) primitivity is the combinatorial stand-in for mixing.
    if not _is_primitive(M):
        findings.append(
            Finding(
                "warning",
                "not-primitive",
                "occurrence matrix has no strictly positive power; mixing is unverified",
            )
        )

    # (e) every edge must eventually have an image of length >= 2.
    n = len(graph.edges)
    if n > 0:
        lengths_ok = [False] * n
        power = M
        for _ in range(n):
            for j in range(n):
                if sum(power.col(j)) >= 2:
                    lengths_ok[j] = True
            power = power @ M
        for j, ok in enumerate(lengths_ok):
            if not ok:
                findings.append(
                    Finding(
                        "error",
                        "not-expanding",
                        f"edge '{graph.edge_names()[j]}' never expands under iteration",
                    )
                )

    return ValidationReport(tuple(findings))
