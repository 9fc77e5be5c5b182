"""Coxeter diagrams: labelled complete graphs on the bounding hyperplanes.

A pair of nodes carries no edge (dihedral angle pi/2), a finite order
``Order(m)`` with ``3 <= m <= 6``, ``Infinity`` (parallel hyperplanes) or a
dotted edge labelled by ``cosh`` of the distance between ultraparallel
hyperplanes.  ``Unknown`` marks a dotted edge whose weight is still to be
solved for.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import (
    DiagramSyntaxError,
    DuplicateEdge,
    ExpressionSyntaxError,
    InvalidWeight,
    UnknownNode,
    UnsupportedOrder,
)
from .radical import RadicalNumber, parse_expr, sign

MAX_NODES = 20


@dataclass(frozen=True)
class Order:
    m: int

    def __post_init__(self):
        if self.m not in (3, 4, 5, 6):
            raise UnsupportedOrder(f"edge order must be in 3..6, got {self.m}")

    def key(self):
        return (0, self.m)

    def __str__(self):
        return f"m={self.m}"


@dataclass(frozen=True)
class Infinity:
    def key(self):
        return (1, 0)

    def __str__(self):
        return "inf"


@dataclass(frozen=True)
class Dotted:
    weight: RadicalNumber

    def __post_init__(self):
        if sign(self.weight - 1).sign <= 0:
            raise InvalidWeight(f"dotted weight must exceed 1, got {self.weight}")

    def key(self):
        return (2, str(self.weight))

    def __str__(self):
        return f"dotted {self.weight}"


@dataclass(frozen=True)
class Unknown:
    name: str

    def key(self):
        return (3, 0)

    def __str__(self):
        return f"dotted ?{self.name}"


EdgeLabel = Union[Order, Infinity, Dotted, Unknown]
INFINITY = Infinity()


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class CoxeterDiagram:
    """Immutable Coxeter diagram.

    ``edges`` maps ordered pairs ``(i, j)`` with ``i < j`` to labels; absent
    pairs are orthogonal.  ``tags`` are free-form node annotations (Gale
    positions in the catalog) and never affect structure.
    """

    node_count: int
    edges: dict = field(default_factory=dict)
    tags: tuple = ()
    dim: int | None = None

    def __post_init__(self):
        if not 0 <= self.node_count <= MAX_NODES:
            raise ValueError(f"node count must be in 0..{MAX_NODES}")
        clean = {}
        for (i, j), lab in dict(self.edges).items():
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            for v in (i, j):
                if not 0 <= v < self.node_count:
                    raise UnknownNode(v)
            key = _pair(i, j)
            if key in clean:
                raise DuplicateEdge(f"two labels for pair {key}")
            clean[key] = lab
        object.__setattr__(self, "edges", clean)
        tags = tuple(self.tags) if self.tags else (None,) * self.node_count
        if len(tags) != self.node_count:
            raise ValueError("one tag slot per node required")
        present = [t for t in tags if t is not None]
        if len(present) != len(set(present)):
            raise ValueError("node tags must be unique")
        object.__setattr__(self, "tags", tags)

    def __eq__(self, other):
        if not isinstance(other, CoxeterDiagram):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.edges == other.edges
            and self.tags == other.tags
        )

    def __hash__(self):
        return hash((self.node_count, frozenset(self.edges.items()), self.tags))

    def __len__(self):
        return self.node_count

    def label(self, i: int, j: int) -> EdgeLabel | None:
        return self.edges.get(_pair(i, j))

    def neighbours(self, i: int) -> list[int]:
        return [b if a == i else a for (a, b) in self.edges if i in (a, b)]

    def unknowns(self) -> list[str]:
        return sorted({lab.name for lab in self.edges.values() if isinstance(lab, Unknown)})

    def has_dotted(self) -> bool:
        return any(isinstance(lab, (Dotted, Unknown)) for lab in self.edges.values())

    def node_by_tag(self, tag: str) -> int:
        try:
            return self.tags.index(tag)
        except ValueError:
            raise UnknownNode(tag) from None

    def with_edges(self, updates: dict) -> CoxeterDiagram:
        """Copy with some pair labels replaced (``None`` removes the edge)."""
        edges = dict(self.edges)
        for (i, j), lab in updates.items():
            key = _pair(i, j)
            if lab is None:
                edges.pop(key, None)
            else:
                edges[key] = lab
        return CoxeterDiagram(self.node_count, edges, self.tags, self.dim)

    def __str__(self):
        return format_diagram(self)

    def __repr__(self):
        return f"CoxeterDiagram(nodes={self.node_count}, edges={len(self.edges)})"


def subdiagram(d: CoxeterDiagram, nodes: Iterable[int]) -> CoxeterDiagram:
    """Induced subdiagram on ``nodes``, renumbered in increasing order."""
    nodes = sorted(set(nodes))
    for v in nodes:
        if not 0 <= v < d.node_count:
            raise UnknownNode(v)
    index = {v: k for k, v in enumerate(nodes)}
    edges = {
        (index[i], index[j]): lab
        for (i, j), lab in d.edges.items()
        if i in index and j in index
    }
    tags = tuple(d.tags[v] for v in nodes)
    dim = d.dim if len(nodes) == d.node_count else None
    return CoxeterDiagram(len(nodes), edges, tags, dim)


def connected_components(d: CoxeterDiagram, nodes: Iterable[int] | None = None) -> list[list[int]]:
    """Maximal connected node sets; every kind of edge connects."""
    pool = set(range(d.node_count)) if nodes is None else set(nodes)
    adj = {v: [] for v in pool}
    for i, j in d.edges:
        if i in pool and j in pool:
            adj[i].append(j)
            adj[j].append(i)
    seen: set[int] = set()
    comps = []
    for start in sorted(pool):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(d: CoxeterDiagram) -> bool:
    return d.node_count > 0 and len(connected_components(d)) == 1


# -- canonical form ---------------------------------------------------------

def _label_matrix(d: CoxeterDiagram):
    n = d.node_count
    lab = [[None] * n for _ in range(n)]
    for (i, j), l in d.edges.items():
        k = l.key()
        lab[i][j] = lab[j][i] = k
    return lab


def _refine(colors: list[int], lab) -> list[int]:
    n = len(colors)
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(
                (colors[w], lab[v][w]) for w in range(n) if w != v and lab[v][w] is not None
            )
            sigs.append((colors[v], tuple(nb)))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _twins(u: int, v: int, lab) -> bool:
    return all(lab[u][w] == lab[v][w] for w in range(len(lab)) if w != u and w != v)


def _certificate(order: list[int], lab) -> tuple:
    n = len(order)
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            k = lab[order[a]][order[b]]
            if k is not None:
                out.append((a, b, k))
    return tuple(out)


def canonical_form(d: CoxeterDiagram) -> tuple:
    """Isomorphism-invariant key (tags ignored).

    Colour refinement on (degree, incident label multiset), then
    individualisation of nodes in the first non-singleton cell with
    backtracking; the lexicographically least certificate wins.
    """
    n = d.node_count
    lab = _label_matrix(d)
    init = []
    for v in range(n):
        inc = sorted(lab[v][w] for w in range(n) if w != v and lab[v][w] is not None)
        init.append((len(inc), tuple(inc)))
    ranks = {s: r for r, s in enumerate(sorted(set(init)))}
    colors = _refine([ranks[s] for s in init], lab)
    best = [None]

    def search(colors):
        if len(set(colors)) == n:
            order = sorted(range(n), key=lambda v: colors[v])
            cert = _certificate(order, lab)
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min((c for c, vs in cells.items() if len(vs) > 1),
                     key=lambda c: (len(cells[c]), c))
        tried: list[int] = []
        for v in cells[target]:
            # swapping twins is an automorphism fixing the colouring
            if any(_twins(u, v, lab) for u in tried):
                continue
            tried.append(v)
            # split v off ahead of its cell, keeping all other ranks ordered
            indiv = [2 * c + (0 if u == v else 1) if c == target else 2 * c + 1
                     for u, c in enumerate(colors)]
            search(_refine(indiv, lab))

    search(colors)
    return (n, best[0])


# -- file format ------------------------------------------------------------

_EDGE = re.compile(r"edge\s+(\d+)\s+(\d+)\s+(.+)$")


def _parse_label(spec: str, lineno: int) -> EdgeLabel:
    spec = spec.strip()
    if spec == "inf":
        return INFINITY
    if spec.startswith("m="):
        try:
            m = int(spec[2:])
        except ValueError:
            raise DiagramSyntaxError(f"bad order {spec!r}", lineno) from None
        if m == 2:
            raise DiagramSyntaxError("m=2 is written as an absent edge", lineno)
        try:
            return Order(m)
        except UnsupportedOrder as exc:
            raise UnsupportedOrder(f"line {lineno}: {exc}") from None
    if spec.startswith("dotted"):
        expr = spec[len("dotted"):].strip()
        if expr.startswith("?"):
            name = expr[1:].strip()
            if not name:
                raise DiagramSyntaxError("unknown needs a name", lineno)
            return Unknown(name)
        try:
            w = parse_expr(expr)
        except ExpressionSyntaxError as exc:
            raise DiagramSyntaxError(str(exc), lineno) from None
        try:
            return Dotted(w)
        except InvalidWeight as exc:
            raise InvalidWeight(str(exc), lineno) from None
    raise DiagramSyntaxError(f"unrecognised edge label {spec!r}", lineno)


def parse_diagram(text: str) -> CoxeterDiagram:
    """Parse the line-oriented diagram format ('#' starts a comment)."""
    dim = None
    count = None
    tags: dict[int, str] = {}
    edges: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "dim":
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise DiagramSyntaxError(f"bad dim line {line!r}", lineno)
            dim = int(parts[1])
        elif head == "nodes":
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise DiagramSyntaxError(f"bad nodes line {line!r}", lineno)
            count = int(parts[1])
            if count > MAX_NODES:
                raise DiagramSyntaxError(f"at most {MAX_NODES} nodes supported", lineno)
        elif head == "tag":
            parts = line.split(None, 2)
            if count is None:
                raise DiagramSyntaxError("tag before nodes line", lineno)
            if len(parts) != 3 or not parts[1].isdigit():
                raise DiagramSyntaxError(f"bad tag line {line!r}", lineno)
            v = int(parts[1])
            if v >= count:
                raise DiagramSyntaxError(f"tag for unknown node {v}", lineno)
            if v in tags or parts[2] in tags.values():
                raise DiagramSyntaxError(f"duplicate tag {line!r}", lineno)
            tags[v] = parts[2].strip()
        elif head == "edge":
            if count is None:
                raise DiagramSyntaxError("edge before nodes line", lineno)
            m = _EDGE.match(line)
            if not m:
                raise DiagramSyntaxError(f"bad edge line {line!r}", lineno)
            i, j = int(m.group(1)), int(m.group(2))
            if i == j:
                raise DiagramSyntaxError("self-loop", lineno)
            if i >= count or j >= count:
                raise DiagramSyntaxError(f"edge references unknown node in {line!r}", lineno)
            key = _pair(i, j)
            if key in edges:
                raise DuplicateEdge(f"pair {key} labelled twice", lineno)
            edges[key] = _parse_label(m.group(3), lineno)
        else:
            raise DiagramSyntaxError(f"unknown directive {head!r}", lineno)
    if count is None:
        raise DiagramSyntaxError("missing nodes line")
    tag_tuple = tuple(tags.get(v) for v in range(count))
    return CoxeterDiagram(count, edges, tag_tuple, dim)


def format_diagram(d: CoxeterDiagram, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    if d.dim is not None:
        lines.append(f"dim {d.dim}")
    lines.append(f"nodes {d.node_count}")
    lines += [f"tag {v} {t}" for v, t in enumerate(d.tags) if t is not None]
    lines += [f"edge {i} {j} {lab}" for (i, j), lab in sorted(d.edges.items())]
    return "\n".join(lines) + "\n"


# -- rendering --------------------------------------------------------------

def _node_name(d: CoxeterDiagram, v: int) -> str:
    return d.tags[v] if d.tags[v] is not None else str(v)


def render_dot(d: CoxeterDiagram) -> str:
    out = ["graph coxeter {", "  node [shape=circle, style=filled, fillcolor=black, "
           "width=0.15, label=\"\", xlabel=\"\\N\"];"]
    for v in range(d.node_count):
        out.append(f'  n{v} [xlabel="{_node_name(d, v)}"];')
    for (i, j), lab in sorted(d.edges.items()):
        if isinstance(lab, Order):
            attrs = "" if lab.m == 3 else f' [label="{lab.m}"]'
        elif isinstance(lab, Infinity):
            attrs = ' [penwidth=4, label="inf"]'
        elif isinstance(lab, Dotted):
            attrs = f' [style=dashed, label="{lab.weight}"]'
        else:
            attrs = f' [style=dashed, label="?{lab.name}"]'
        out.append(f"  n{i} -- n{j}{attrs};")
    out.append("}")
    return "\n".join(out) + "\n"


def render_tikz(d: CoxeterDiagram, radius: float = 1.5) -> str:
    """TikZ picture: (m-2)-fold strokes, bold for inf, dashed with label."""
    n = max(d.node_count, 1)
    pos = [
        (round(radius * math.cos(2 * math.pi * v / n + math.pi / 2), 4),
         round(radius * math.sin(2 * math.pi * v / n + math.pi / 2), 4))
        for v in range(d.node_count)
    ]
    out = [
        "\\begin{tikzpicture}",
        "\\tikzstyle{every node}=[draw,shape=circle,minimum size=0.15cm,inner sep=0, fill=black]",
    ]
    for v, (x, y) in enumerate(pos):
        out.append(f"\\node[label=above:{{${_node_name(d, v)}$}}] at ({x},{y}) (v{v}) {{}};")
    for (i, j), lab in sorted(d.edges.items()):
        if isinstance(lab, Order):
            k = lab.m - 2
            if k == 1:
                out.append(f"\\draw (v{i})--(v{j});")
                continue
            (x1, y1), (x2, y2) = pos[i], pos[j]
            length = math.hypot(x2 - x1, y2 - y1) or 1.0
            nx, ny = -(y2 - y1) / length, (x2 - x1) / length
            for s in range(k):
                off = 0.03 * (s - (k - 1) / 2)
                out.append(
                    f"\\draw ({x1 + off * nx:.4f},{y1 + off * ny:.4f})--"
                    f"({x2 + off * nx:.4f},{y2 + off * ny:.4f});"
                )
        elif isinstance(lab, Infinity):
            out.append(f"\\draw[line width=4pt] (v{i})--(v{j});")
        else:
            text = str(lab.weight) if isinstance(lab, Dotted) else "?" + lab.name
            out.append(f"\\draw[dashed] (v{i})--(v{j}) node[midway,above] {{\\texttt{{{text}}}}};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"
