"""Standard Gale diagrams of n-polytopes with n+3 facets.

A diagram is a weighting of the vertices ``a_0 .. a_{2k-1}`` of a regular
2k-gon; vertex ``a_i`` sits at angle ``pi*i/k`` and stands for ``mu(a_i)``
facets.  All geometry reduces to arcs of position indices: a set of
positions contains the origin in its convex hull iff it is not confined to
an open semicircle, i.e. iff no cyclic gap between consecutive positions
exceeds k steps.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import NotOneOppositePair, UnsupportedDimension

log = logging.getLogger(__name__)

__all__ = [
    "GaleDiagram",
    "FacetAtlas",
    "ConstraintSet",
    "PairKind",
    "enumerate_gale",
    "faces",
    "derive_constraints",
    "check_rules",
]


@dataclass(frozen=True)
class GaleDiagram:
    k: int
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.k < 2 or len(self.weights) != 2 * self.k:
            raise ValueError("a standard Gale diagram is a 2k-gon with k >= 2")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")

    @property
    def size(self) -> int:
        return 2 * self.k

    @property
    def facet_count(self) -> int:
        return sum(self.weights)

    @property
    def dimension(self) -> int:
        return self.facet_count - 3

    def opposite(self, i: int) -> int:
        return (i + self.k) % self.size

    def opposite_pairs(self) -> list[tuple[int, int]]:
        """Positions ``(i, i+k)`` with both weights nonzero, ``i < k``."""
        return [(i, i + self.k) for i in range(self.k)
                if self.weights[i] and self.weights[i + self.k]]

    def arc(self, start: int, end: int) -> list[int]:
        """Positions start, start+1, ..., end (mod 2k)."""
        n = self.size
        length = (end - start) % n
        return [(start + t) % n for t in range(length + 1)]

    def transformed(self, shift: int, reflect: bool) -> GaleDiagram:
        n = self.size
        if reflect:
            w = [self.weights[(-i + shift) % n] for i in range(n)]
        else:
            w = [self.weights[(i + shift) % n] for i in range(n)]
        return GaleDiagram(self.k, tuple(w))

    def canonical(self) -> GaleDiagram:
        best = min(
            self.transformed(s, r).weights for s in range(self.size) for r in (False, True)
        )
        return GaleDiagram(self.k, best)

    def serialize(self) -> str:
        return f"k={self.k}; weights={','.join(map(str, self.weights))}"

    @classmethod
    def parse(cls, text: str) -> GaleDiagram:
        parts = dict(p.strip().split("=", 1) for p in text.split(";") if p.strip())
        return cls(int(parts["k"]), tuple(int(x) for x in parts["weights"].split(",")))

    def __str__(self):
        return self.serialize()


def _max_gap(positions, size: int) -> int:
    ps = sorted(set(positions))
    if not ps:
        return size + 1
    gaps = [b - a for a, b in zip(ps, ps[1:])] + [ps[0] + size - ps[-1]]
    return max(gaps)


def origin_in_hull(positions, k: int) -> bool:
    """Origin in conv of the given positions (closed hull)."""
    return _max_gap(positions, 2 * k) <= k


def origin_in_relint(positions, k: int) -> bool:
    """Origin in the relative interior of the hull."""
    ps = set(p % (2 * k) for p in positions)
    if len(ps) == 2:
        a, b = sorted(ps)
        if b - a == k:
            return True
    return _max_gap(ps, 2 * k) < k


def _span_rank(positions, k: int) -> int:
    ps = set(positions)
    if not ps:
        return 0
    lines = {p % k for p in ps}
    return 1 if len(lines) == 1 else 2


def check_rules(g: GaleDiagram, n: int | None = None) -> list[str]:
    """Names of violated standard-form rules (empty list when valid)."""
    bad = []
    w, size, k = g.weights, g.size, g.k
    if n is not None and sum(w) != n + 3:
        bad.append("sum")
    if any(w[i] == 0 and w[(i + 1) % size] == 0 for i in range(size)):
        bad.append("adjacent-zero")
    if any(w[i] == 0 and w[i + k] == 0 for i in range(k)):
        bad.append("opposite-zero")
    # smallest open half-planes hold the k-1 positions strictly between a_j and a_{j+k}
    if any(sum(w[(j + t) % size] for t in range(1, k)) < 2 for j in range(size)):
        bad.append("half-plane")
    return bad


def enumerate_gale(n: int, opposite_pairs: int = 1) -> list[GaleDiagram]:
    """All standard Gale diagrams with the given number of doubly occupied diameters.

    Non-simple diameters carry weight 1 on both ends.  Results are
    canonical representatives under the dihedral group, sorted.
    """
    if not 2 <= n <= 16:
        raise UnsupportedDimension(f"dimension must be in 2..16, got {n}")
    if opposite_pairs not in (0, 1):
        raise ValueError("opposite_pairs must be 0 or 1")
    total = n + 3
    found: set[tuple] = set()
    out = []
    k_max = total - 1 if opposite_pairs else total
    for k in range(2, k_max + 1):
        free = k - opposite_pairs
        budget = total - 2 * opposite_pairs
        if free < 1 or budget < free:
            continue
        for parts in _compositions(budget, free):
            for sides in product((0, 1), repeat=free):
                w = [0] * (2 * k)
                if opposite_pairs:
                    w[0] = w[k] = 1
                for t, (part, side) in enumerate(zip(parts, sides)):
                    i = t + opposite_pairs
                    w[i + side * k] = part
                g = GaleDiagram(k, tuple(w))
                if check_rules(g, n):
                    continue
                c = g.canonical()
                if c.weights not in found:
                    found.add(c.weights)
                    out.append(c)
    out.sort(key=lambda g: (g.k, g.weights))
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- facets and faces -------------------------------------------------------

@dataclass(frozen=True)
class FacetAtlas:
    """One entry ``(position, copy)`` per facet; list index = diagram node."""

    facets: tuple

    @classmethod
    def of(cls, g: GaleDiagram) -> FacetAtlas:
        return cls(tuple((i, c) for i, w in enumerate(g.weights) for c in range(1, w + 1)))

    def __len__(self):
        return len(self.facets)

    def position(self, node: int) -> int:
        return self.facets[node][0]

    def nodes_at(self, positions) -> frozenset:
        ps = set(positions)
        return frozenset(v for v, (p, _) in enumerate(self.facets) if p in ps)

    def tag(self, node: int, g: GaleDiagram) -> str:
        p, c = self.facets[node]
        return str(p) if g.weights[p] == 1 else f"{p},{c}"

    def tags(self, g: GaleDiagram) -> tuple:
        return tuple(self.tag(v, g) for v in range(len(self.facets)))

    def node_of_tag(self, tag: str, g: GaleDiagram) -> int:
        return self.tags(g).index(tag)


def _complement_positions(atlas: FacetAtlas, subset) -> list[int]:
    sub = set(subset)
    return [p for v, (p, _) in enumerate(atlas.facets) if v not in sub]


def faces(g: GaleDiagram, atlas: FacetAtlas, subset) -> bool:
    """Do the facets in ``subset`` (node indices) have a common face?"""
    sub = set(subset)
    if not sub <= set(range(len(atlas))):
        raise ValueError("subset references unknown facets")
    return origin_in_hull(_complement_positions(atlas, sub), g.k)


def face_dimension(g: GaleDiagram, atlas: FacetAtlas, subset) -> int | None:
    """Dimension of the face whose facet set is exactly ``subset``, else None."""
    comp = _complement_positions(atlas, subset)
    if not origin_in_relint(comp, g.k):
        return None
    return len(comp) - _span_rank(comp, g.k) - 1


class PairKind:
    RIDGE = "ridge"            # adjacent facets: finite dihedral order
    PARALLEL = "parallel"      # meet only at an ideal point: infinity
    DISJOINT = "disjoint"      # no common point: dotted weight


def pair_kind(g: GaleDiagram, atlas: FacetAtlas, a: int, b: int) -> str:
    if face_dimension(g, atlas, {a, b}) is not None:
        return PairKind.RIDGE
    if faces(g, atlas, {a, b}):
        return PairKind.PARALLEL
    return PairKind.DISJOINT


@dataclass
class ConstraintSet:
    """Subdiagram obligations, as sets of diagram nodes (facet indices).

    ``vertex_required`` holds the facet sets of simple vertices: each must be
    elliptic (finite vertex) or connected parabolic (ideal vertex).
    """

    elliptic_required: list = field(default_factory=list)
    connected_parabolic_required: list = field(default_factory=list)
    lanner_required: list = field(default_factory=list)
    quasi_lanner_required: list = field(default_factory=list)
    vertex_required: list = field(default_factory=list)
    log: list = field(default_factory=list)

    def dedupe(self):
        for name in ("elliptic_required", "connected_parabolic_required", "lanner_required",
                     "quasi_lanner_required", "vertex_required"):
            seen = []
            for s in getattr(self, name):
                s = frozenset(s)
                if s not in seen:
                    seen.append(s)
            seen.sort(key=lambda s: (len(s), sorted(s)))
            setattr(self, name, seen)
        # an elliptic obligation implied by a larger one is redundant
        ell = self.elliptic_required
        self.elliptic_required = [s for s in ell if not any(s < t for t in ell)]
        return self

    def all_sets(self):
        for name in ("elliptic_required", "connected_parabolic_required", "lanner_required",
                     "quasi_lanner_required", "vertex_required"):
            for s in getattr(self, name):
                yield name, s

    def serialize(self) -> str:
        out = []
        for name in ("connected_parabolic_required", "quasi_lanner_required",
                     "lanner_required", "vertex_required", "elliptic_required"):
            for s in getattr(self, name):
                out.append(f"{name} {' '.join(map(str, sorted(s)))}")
        out += [f"# {line}" for line in self.log]
        return "\n".join(out) + "\n"


def derive_constraints(g: GaleDiagram) -> ConstraintSet:
    """Subdiagram obligations read off a one-non-simple-vertex Gale diagram."""
    pairs = g.opposite_pairs()
    if len(pairs) != 1 or any(g.weights[p] != 1 for p in pairs[0]):
        raise NotOneOppositePair(f"{g} does not have exactly one weight-1 opposite pair")
    atlas = FacetAtlas.of(g)
    k, size, w = g.k, g.size, g.weights
    cs = ConstraintSet()
    i, j = pairs[0]

    # the non-simple vertex: two connected parabolic arcs between the pair
    for a, b in ((i + 1, j - 1), (j + 1, i - 1 + size)):
        nodes = atlas.nodes_at(g.arc(a % size, b % size))
        cs.connected_parabolic_required.append(nodes)
        cs.log.append(f"parabolic-arc {a % size}..{b % size}")

    # zero neighbour of a pair end: the arc beyond it to the far end is quasi-Lanner
    for base in (i, j):
        for step in (1, -1):
            if w[(base + step) % size] == 0:
                start = (base + 2 * step) % size
                end = (base + k) % size
                arc = g.arc(start, end) if step == 1 else g.arc(end, start)
                cs.quasi_lanner_required.append(atlas.nodes_at(arc))
                cs.log.append(f"quasi-lanner zero at {(base + step) % size}: {arc[0]}..{arc[-1]}")

    # zero weights at a_p and a_{p+k-1}: the k-2 positions between are Lanner
    for p in range(size):
        q = (p + k - 1) % size
        if w[p] == 0 and w[q] == 0:
            arc = g.arc((p + 1) % size, (p + k - 2) % size)
            cs.lanner_required.append(atlas.nodes_at(arc))
            cs.log.append(f"lanner zeros at {p},{q}: {arc[0]}..{arc[-1]}")

    # simple vertices: n facets whose complement strictly surrounds the origin
    facets = frozenset(range(len(atlas)))
    for comp in combinations(sorted(facets), 3):
        rest = facets - set(comp)
        if face_dimension(g, atlas, rest) == 0:
            cs.vertex_required.append(rest)
    # edges (n-1 facets) have finite points, so their diagrams are elliptic;
    # every face of positive dimension lies in the facet set of an edge
    for comp in combinations(sorted(facets), 4):
        rest = facets - set(comp)
        if face_dimension(g, atlas, rest) == 1:
            cs.elliptic_required.append(rest)
    return cs.dedupe()
