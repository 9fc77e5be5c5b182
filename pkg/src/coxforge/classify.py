"""Signature-based classification of Coxeter diagrams without dotted edges.

Definitions (checked in this order, so the classes are disjoint):

* Elliptic: Gram matrix positive definite.
* Parabolic: positive semidefinite, singular, and every connected component
  has a one-dimensional kernel.
* Lanner: connected, inertia (s-1, 1, 0), every proper subdiagram elliptic.
* QuasiLanner: connected, inertia (s-1, 1, 0), every proper subdiagram
  elliptic or parabolic, not Lanner.

Proper-subdiagram conditions are tested on the maximal (s-1)-node
subdiagrams only.  That suffices: principal submatrices of positive definite
matrices are positive definite, and a connected parabolic diagram has a
positive kernel vector, so its proper subdiagrams are elliptic.  A
disconnected parabolic maximal subdiagram would force rank < s.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from itertools import product

from .diagram import (
    INFINITY,
    CoxeterDiagram,
    Order,
    canonical_form,
    connected_components,
    is_connected,
    subdiagram,
)
from .errors import DottedEdgePresent
from .gram import InertiaTriple, gram_matrix, inertia

__all__ = ["DiagramClass", "classify", "classify_with_inertia", "enumerate_connected", "diagrams_of_class", "LABELS"]


class DiagramClass(enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    LANNER = "Lanner"
    QUASI_LANNER = "QuasiLanner"
    OTHER = "Other"

    def __str__(self):
        return self.value


# absent edge (m=2) first, then finite orders, then infinity
LABELS = (None, Order(3), Order(4), Order(5), Order(6), INFINITY)


def _key(d: CoxeterDiagram) -> tuple:
    return (d.node_count, tuple(sorted((e, lab.key()) for e, lab in d.edges.items())))


@lru_cache(maxsize=200_000)
def _cached(key: tuple) -> tuple[DiagramClass, InertiaTriple]:
    n, items = key
    edges = {e: _LABEL_OF_KEY[k] for e, k in items}
    return _classify(CoxeterDiagram(n, edges))


_LABEL_OF_KEY = {lab.key(): lab for lab in LABELS if lab is not None}


def _is_elliptic(d: CoxeterDiagram) -> bool:
    return classify(d) is DiagramClass.ELLIPTIC


def _classify(d: CoxeterDiagram) -> tuple[DiagramClass, InertiaTriple]:
    s = d.node_count
    t = inertia(gram_matrix(d))
    if t.negative == 0 and t.zero == 0:
        return DiagramClass.ELLIPTIC, t
    if t.negative == 0:
        for comp in connected_components(d):
            ct = inertia(gram_matrix(subdiagram(d, comp)))
            if ct.zero != 1:
                return DiagramClass.OTHER, t
        return DiagramClass.PARABOLIC, t
    if t == (s - 1, 1, 0) and is_connected(d):
        subs = [classify(subdiagram(d, [v for v in range(s) if v != u])) for u in range(s)]
        if all(c is DiagramClass.ELLIPTIC for c in subs):
            return DiagramClass.LANNER, t
        if all(c in (DiagramClass.ELLIPTIC, DiagramClass.PARABOLIC) for c in subs):
            return DiagramClass.QUASI_LANNER, t
    return DiagramClass.OTHER, t


def classify_with_inertia(d: CoxeterDiagram) -> tuple[DiagramClass, InertiaTriple]:
    if d.has_dotted():
        raise DottedEdgePresent("classification needs a diagram without dotted edges")
    return _cached(_key(d))


def classify(d: CoxeterDiagram) -> DiagramClass:
    return classify_with_inertia(d)[0]


# -- enumeration ------------------------------------------------------------

def _extensions(base: CoxeterDiagram, allowed_sub) -> list[CoxeterDiagram]:
    """All one-node extensions of ``base`` whose partial subdiagrams pass.

    Edges from the new node are assigned one at a time; after each choice
    the subdiagram on the new node and the nodes decided so far must satisfy
    ``allowed_sub`` (a hereditary filter on proper subdiagrams).
    """
    s = base.node_count
    new = s
    out = []

    def rec(k: int, edges: dict):
        if k == s:
            if any(new in e for e in edges):
                out.append(CoxeterDiagram(s + 1, edges))
            return
        for lab in LABELS:
            trial = dict(edges)
            if lab is not None:
                trial[(k, new)] = lab
            d = CoxeterDiagram(s + 1, trial)
            part = subdiagram(d, list(range(k + 1)) + [new])
            if k + 1 < s and not allowed_sub(part):
                continue
            rec(k + 1, trial)

    rec(0, dict(base.edges))
    return out


def _dedupe(ds) -> list[CoxeterDiagram]:
    seen = {}
    for d in ds:
        seen.setdefault(canonical_form(d), d)
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=None)
def _connected_elliptic(size: int) -> tuple[CoxeterDiagram, ...]:
    if size == 1:
        return (CoxeterDiagram(1),)
    out = []
    for base in _connected_elliptic(size - 1):
        out += [d for d in _extensions(base, _is_elliptic) if classify(d) is DiagramClass.ELLIPTIC]
    return tuple(_dedupe(out))


@lru_cache(maxsize=None)
def _connected_of_class(cls: DiagramClass, size: int) -> tuple[CoxeterDiagram, ...]:
    if cls is DiagramClass.ELLIPTIC:
        return _connected_elliptic(size)
    if size == 1:
        return ()
    if cls is DiagramClass.OTHER:
        return tuple(d for d in _brute_connected(size) if classify(d) is cls)

    def ell_or_par(d):
        return classify(d) in (DiagramClass.ELLIPTIC, DiagramClass.PARABOLIC)

    # removing a non-cut node leaves an elliptic (or, for quasi-Lanner,
    # connected parabolic) diagram, so every member extends such a base
    bases = list(_connected_elliptic(size - 1))
    sub_ok = _is_elliptic
    if cls is DiagramClass.QUASI_LANNER:
        bases += list(_connected_of_class(DiagramClass.PARABOLIC, size - 1))
        sub_ok = ell_or_par
    out = []
    for base in bases:
        out += [d for d in _extensions(base, sub_ok) if classify(d) is cls]
    return tuple(_dedupe(out))


def _brute_connected(size: int) -> list[CoxeterDiagram]:
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    out = []
    for labs in product(LABELS, repeat=len(pairs)):
        d = CoxeterDiagram(size, {p: l for p, l in zip(pairs, labs) if l is not None})
        if is_connected(d):
            out.append(d)
    return _dedupe(out)


def enumerate_connected(class_filter: DiagramClass, max_nodes: int) -> list[CoxeterDiagram]:
    """Connected diagrams of one class on 1..max_nodes nodes, one per isomorphism type.

    Labels come from {2, 3, 4, 5, 6, inf}.  ``Other`` is only available by
    brute force and is capped at 4 nodes.
    """
    if not 1 <= max_nodes <= 10:
        raise ValueError("max_nodes must be in 1..10")
    if class_filter is DiagramClass.OTHER and max_nodes > 4:
        raise ValueError("enumerating Other diagrams is limited to 4 nodes")
    out = []
    for size in range(1, max_nodes + 1):
        out += _connected_of_class(class_filter, size)
    return out


def _disjoint_union(parts) -> CoxeterDiagram:
    edges, offset = {}, 0
    for d in parts:
        edges.update({(i + offset, j + offset): lab for (i, j), lab in d.edges.items()})
        offset += d.node_count
    return CoxeterDiagram(offset, edges)


def _unions(components: list[CoxeterDiagram], size: int, smallest: int = 0):
    """Multisets of components (indices non-decreasing) with ``size`` nodes in total."""
    if size == 0:
        yield ()
        return
    for t in range(smallest, len(components)):
        c = components[t]
        if c.node_count <= size:
            for rest in _unions(components, size - c.node_count, t):
                yield (c,) + rest


def diagrams_of_class(cls: DiagramClass, size: int) -> list[CoxeterDiagram]:
    """All diagrams of one class on exactly ``size`` nodes, one per isomorphism type.

    Unlike :func:`enumerate_connected` this includes disconnected elliptic
    and parabolic diagrams (disjoint unions of connected ones).
    """
    if not 1 <= size <= 10:
        raise ValueError("size must be in 1..10")
    if cls is DiagramClass.OTHER:
        raise ValueError("Other diagrams are not enumerated by class")
    if cls in (DiagramClass.LANNER, DiagramClass.QUASI_LANNER):
        return list(_connected_of_class(cls, size))
    components = [d for s in range(1, size + 1) for d in _connected_of_class(cls, s)]
    return _dedupe(_disjoint_union(parts) for parts in _unions(components, size))
