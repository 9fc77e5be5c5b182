"""From Gale diagrams to certified Coxeter polytopes.

The pipeline for dimension ``n``:

1. enumerate standard Gale diagrams with one non-simple vertex;
2. read subdiagram obligations off each Gale diagram;
3. backtrack over edge labels, failing a partial assignment as soon as a
   fully assigned piece of an obligation set has the wrong class;
4. solve for the unknown dotted weights from the vanishing minors;
5. verify the resulting Gram matrix exactly and dedupe by canonical form.
"""
from __future__ import annotations

import hashlib
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator

import mpmath

from .classify import DiagramClass, classify, diagrams_of_class
from .diagram import (
    INFINITY,
    CoxeterDiagram,
    Dotted,
    Order,
    Unknown,
    canonical_form,
    is_connected,
    subdiagram,
)
from .errors import DimensionMismatch, TooManyUnknowns
from .gale import (
    ConstraintSet,
    FacetAtlas,
    GaleDiagram,
    PairKind,
    derive_constraints,
    enumerate_gale,
    pair_kind,
)
from .gram import edge_entry, gram_matrix, inertia
from .polynomial import Poly, RealRoot, bareiss_det, real_roots_above, recover_radical, resultant
from .radical import RadicalNumber, sign

__all__ = [
    "CandidateDiagram",
    "VerificationReport",
    "WeightSolutions",
    "PipelineStats",
    "canonical_key",
    "verify",
    "check_constraints",
    "enumerate_candidates",
    "solve_weights",
    "run_pipeline",
]

DEFAULT_MAX_UNKNOWNS = 2
RIDGE_LABELS = (None, Order(3), Order(4), Order(5), Order(6))


def canonical_key(d: CoxeterDiagram) -> str:
    """Short stable hex digest of the canonical form (for sorting and display)."""
    return hashlib.sha256(repr(canonical_form(d)).encode()).hexdigest()[:16]


# -- verification -----------------------------------------------------------

@dataclass
class VerificationReport:
    dimension: int
    diagram: CoxeterDiagram
    rank: int | None
    inertia: tuple | None
    rank_pass: bool
    signature_pass: bool
    off_diagonal_pass: bool
    connected_pass: bool
    constraint_passes: dict = field(default_factory=dict)
    verdict: str = "rejected"
    reason: str = ""
    provenance: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"

    @property
    def key(self) -> str:
        return canonical_key(self.diagram)

    def weights(self) -> list[str]:
        return [str(lab.weight) for _, lab in sorted(self.diagram.edges.items())
                if isinstance(lab, Dotted)]

    def to_line(self) -> str:
        """Machine-readable one-liner: key, verdict, inertia, weights."""
        inert = ",".join(map(str, self.inertia)) if self.inertia else "-"
        return "\t".join([self.key, self.verdict, inert, ";".join(self.weights()) or "-"])

    def to_dict(self) -> dict:
        from .diagram import format_diagram

        return {
            "key": self.key,
            "dimension": self.dimension,
            "verdict": self.verdict,
            "reason": self.reason,
            "rank": self.rank,
            "inertia": list(self.inertia) if self.inertia else None,
            "checks": {
                "rank": self.rank_pass,
                "signature": self.signature_pass,
                "off_diagonal": self.off_diagonal_pass,
                "connected": self.connected_pass,
            },
            "constraints": dict(self.constraint_passes),
            "weights": self.weights(),
            "provenance": list(self.provenance),
            "diagram": format_diagram(self.diagram),
        }

    def to_text(self) -> str:
        def mark(ok):
            return "pass" if ok else "FAIL"

        lines = [
            f"dimension   {self.dimension}",
            f"rank        {self.rank}  (need <= {self.dimension + 1})  {mark(self.rank_pass)}",
            f"inertia     {_fmt_inertia(self.inertia)}  (need ({self.dimension}, 1, 2))"
            f"  {mark(self.signature_pass)}",
            f"off-diag    non-positive  {mark(self.off_diagonal_pass)}",
            f"connected   {mark(self.connected_pass)}",
        ]
        for name, ok in self.constraint_passes.items():
            lines.append(f"constraint  {name}  {mark(ok)}")
        lines.append(f"verdict     {self.verdict}" + (f": {self.reason}" if self.reason else ""))
        return "\n".join(lines) + "\n"


def _fmt_inertia(t) -> str:
    return "-" if t is None else f"({t[0]}, {t[1]}, {t[2]})"


def verify(d: CoxeterDiagram, n: int, constraints: ConstraintSet | None = None) -> VerificationReport:
    """Exact acceptance test for an (n+3)-node diagram without unknowns.

    Every check is run and reported; the verdict is ``accepted`` iff all of
    them pass.  ``constraints`` adds per-obligation checks when the Gale
    provenance is known.
    """
    if d.node_count != n + 3:
        raise DimensionMismatch(f"dimension {n} needs {n + 3} nodes, diagram has {d.node_count}")
    if d.unknowns():
        raise ValueError(f"diagram still has unknown weights {d.unknowns()}")
    entries = {pair: edge_entry(lab) for pair, lab in d.edges.items()}  # UnsupportedOrder
    off_ok = all(sign(x).sign <= 0 for x in entries.values())
    connected = is_connected(d)
    report = VerificationReport(n, d, None, None, False, False, off_ok, connected)
    if off_ok:
        t = inertia(gram_matrix(d))
        report.inertia = tuple(t)
        report.rank = t.positive + t.negative
        report.rank_pass = report.rank <= n + 1
        report.signature_pass = tuple(t) == (n, 1, 2)
    if constraints is not None:
        report.constraint_passes = check_constraints(d, constraints)
    failures = [name for name, ok in (
        ("rank exceeds n+1", report.rank_pass),
        (f"inertia {_fmt_inertia(report.inertia)} is not ({n}, 1, 2)", report.signature_pass),
        ("positive off-diagonal entry", off_ok),
        ("diagram is disconnected", connected),
    ) if not ok]
    failures += [f"constraint {name}" for name, ok in report.constraint_passes.items() if not ok]
    report.verdict = "rejected" if failures else "accepted"
    report.reason = "; ".join(failures)
    return report


_KIND_NAMES = {
    "elliptic_required": "elliptic",
    "connected_parabolic_required": "parabolic",
    "lanner_required": "lanner",
    "quasi_lanner_required": "quasi_lanner",
    "vertex_required": "vertex",
}


def _obligation_holds(kind: str, sub: CoxeterDiagram) -> bool:
    if sub.has_dotted():
        # the two-node Lanner diagram is an ultraparallel (dotted) pair
        return kind == "lanner" and sub.node_count == 2 and bool(sub.edges)
    return _class_satisfies(kind, classify(sub), is_connected(sub))


def _class_satisfies(kind: str, cls: DiagramClass, connected: bool) -> bool:
    if kind == "elliptic":
        return cls is DiagramClass.ELLIPTIC
    if kind == "ell_or_par":
        return cls in (DiagramClass.ELLIPTIC, DiagramClass.PARABOLIC)
    if kind == "parabolic":
        return cls is DiagramClass.PARABOLIC and connected
    if kind == "lanner":
        return cls is DiagramClass.LANNER
    if kind == "quasi_lanner":
        return cls is DiagramClass.QUASI_LANNER
    if kind == "vertex":
        return cls is DiagramClass.ELLIPTIC or (cls is DiagramClass.PARABOLIC and connected)
    raise ValueError(kind)


def check_constraints(d: CoxeterDiagram, cs: ConstraintSet) -> dict[str, bool]:
    """Check every obligation of ``cs`` on ``d`` (node indices = facet indices)."""
    out = {}
    for name, s in cs.all_sets():
        kind = _KIND_NAMES[name]
        out[f"{kind}:{','.join(map(str, sorted(s)))}"] = _obligation_holds(kind, subdiagram(d, s))
    return out


# -- candidate enumeration --------------------------------------------------

@dataclass
class CandidateDiagram:
    diagram: CoxeterDiagram
    unknowns: list
    gale: GaleDiagram
    constraints: ConstraintSet

    @property
    def provenance(self) -> str:
        return self.gale.serialize()


@dataclass
class PipelineStats:
    gale_diagrams: int = 0
    skipped_unknowns: int = 0
    unsatisfiable: int = 0
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    leaves: int = 0
    candidates: int = 0
    disconnected: int = 0
    solved: int = 0
    unmatched_roots: int = 0
    accepted: int = 0
    rejected: int = 0
    seconds: float = 0.0

    def merge(self, other: PipelineStats):
        for name in ("gale_diagrams", "skipped_unknowns", "unsatisfiable", "nodes", "leaves", "candidates",
                     "disconnected", "solved", "unmatched_roots", "accepted", "rejected"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.prunes.update(other.prunes)

    def summary(self) -> str:
        prunes = ", ".join(f"{k}={v}" for k, v in sorted(self.prunes.items())) or "none"
        return (f"gale={self.gale_diagrams} skipped(unknowns)={self.skipped_unknowns} "
                f"unsatisfiable={self.unsatisfiable} nodes={self.nodes} leaves={self.leaves} "
                f"candidates={self.candidates} disconnected={self.disconnected} "
                f"solutions={self.solved} unmatched={self.unmatched_roots} "
                f"accepted={self.accepted} rejected={self.rejected} prunes[{prunes}] "
                f"time={self.seconds:.1f}s")


_CLASS_CACHE: dict = {}


def _cached_class(size: int, labels: tuple) -> tuple[DiagramClass, bool]:
    key = (size, labels)
    hit = _CLASS_CACHE.get(key)
    if hit is None:
        edges = {}
        i = 0
        for a in range(size):
            for b in range(a + 1, size):
                if labels[i] is not None:
                    edges[(a, b)] = labels[i]
                i += 1
        d = CoxeterDiagram(size, edges)
        hit = (classify(d), is_connected(d))
        if len(_CLASS_CACHE) > 500_000:
            _CLASS_CACHE.clear()
        _CLASS_CACHE[key] = hit
    return hit


def _obligations(g: GaleDiagram, cs: ConstraintSet, kinds: dict) -> list[tuple[frozenset, str]] | None:
    """Obligations to check by labelling; None if some obligation cannot hold."""
    out = []
    for name, s in cs.all_sets():
        kind = _KIND_NAMES[name]
        nodes = sorted(s)
        inner = [kinds[(a, b)] for i, a in enumerate(nodes) for b in nodes[i + 1:]]
        if kind == "lanner" and len(nodes) == 2:
            if inner != [PairKind.DISJOINT]:
                return None
            continue
        if PairKind.DISJOINT in inner:
            return None
        if len(nodes) < 2:
            # no pair to label: the subdiagram is elliptic (or empty)
            if not _class_satisfies(kind, DiagramClass.ELLIPTIC, True):
                return None
            continue
        out.append((frozenset(s), kind))
    return out


_ORDER_WEIGHT = {"parabolic": 8, "quasi_lanner": 6, "lanner": 6, "vertex": 2, "elliptic": 1}


def _node_order(p: int, obligations) -> list[int]:
    """Greedy order: each next node shares the most weighted obligations with the chosen ones."""
    total = [0] * p
    for s, kind in obligations:
        for v in s:
            total[v] += _ORDER_WEIGHT[kind]
    chosen: list[int] = []
    rest = set(range(p))
    while rest:
        def score(v):
            link = sum(_ORDER_WEIGHT[kind] * len(s.intersection(chosen))
                       for s, kind in obligations if v in s)
            return (link, total[v], -v)
        best = max(rest, key=score)
        chosen.append(best)
        rest.remove(best)
    return chosen


_HEREDITARY = {"elliptic": "elliptic", "parabolic": "elliptic", "lanner": "elliptic",
               "vertex": "elliptic", "quasi_lanner": "ell_or_par"}


_LABEL_RANK = {
    type(None): lambda lab: 0,
    Order: lambda lab: lab.m - 2,
    type(INFINITY): lambda lab: 5,
    Unknown: lambda lab: 6,
}


_PRESET_MIN, _PRESET_MAX = 3, 10


def _block_presets(atlas: FacetAtlas, obligations, kinds: dict) -> dict[int, list[dict]]:
    """Labellings of heavy Gale positions, one per isomorphism type.

    Facets at one position are interchangeable, so any solution can be
    permuted until the subdiagram on those facets equals a fixed
    representative of its isomorphism class.  A position qualifies when
    some obligation covers all its facets (which bounds the block to
    elliptic, parabolic, Lanner or quasi-Lanner types) and its internal
    pairs are ridges.  Returns position -> list of {pair: label}.
    """
    by_pos: dict[int, list[int]] = {}
    for v in range(len(atlas)):
        by_pos.setdefault(atlas.position(v), []).append(v)
    out = {}
    for pos, block in by_pos.items():
        w = len(block)
        if not _PRESET_MIN <= w <= _PRESET_MAX:
            continue
        if any(kinds[(a, b)] != PairKind.RIDGE for i, a in enumerate(block) for b in block[i + 1:]):
            continue
        reqs = {kind if len(s) == w else _HEREDITARY[kind] for s, kind in obligations if s >= set(block)}
        if not reqs:
            continue
        pool = [d for cls in DiagramClass if cls is not DiagramClass.OTHER
                for d in diagrams_of_class(cls, w)]
        presets = []
        for d in pool:
            if any(lab not in RIDGE_LABELS for lab in d.edges.values()):
                continue
            cls, conn = classify(d), is_connected(d)
            if all(_class_satisfies(r, cls, conn) for r in reqs):
                presets.append({(block[i], block[j]): d.edges.get((i, j))
                                for i in range(w) for j in range(i + 1, w)})
        out[pos] = presets
    return out


def _copy_row_orders(atlas: FacetAtlas, rank: dict, index: dict,
                     skip: frozenset = frozenset()) -> list[list[tuple[int, int]]]:
    """Lexicographic row constraints between facets at the same Gale position.

    Facets sharing a position are interchangeable: permuting them maps
    solutions to solutions.  Any solution can therefore be permuted so that
    the rows of labels towards the facets at other positions (read in
    search order) are sorted, and only sorted assignments are kept.  Each
    constraint is the list of pair indices ``(pair with first, pair with
    second)`` per outside facet.
    """
    by_pos: dict[int, list[int]] = {}
    for v in range(len(atlas)):
        by_pos.setdefault(atlas.position(v), []).append(v)
    out = []
    for pos, copies in by_pos.items():
        if len(copies) < 2 or pos in skip:
            continue
        copies.sort(key=rank.get)
        outside = sorted((v for v in range(len(atlas)) if atlas.position(v) != pos), key=rank.get)
        for a, b in zip(copies, copies[1:]):
            out.append([(index[tuple(sorted((x, a)))], index[tuple(sorted((x, b)))]) for x in outside])
    return out


def enumerate_candidates(g: GaleDiagram, n: int | None = None,
                         max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
                         stats: PipelineStats | None = None) -> Iterator[CandidateDiagram]:
    """Connected labelled diagrams satisfying every obligation of ``g``.

    Ridge pairs get orders {2,3,4,5,6}, parallel pairs infinity, and
    ultraparallel pairs become dotted unknowns.  Output is deduplicated by
    canonical form.
    """
    if n is None:
        n = g.dimension
    if g.dimension != n:
        raise DimensionMismatch(f"Gale diagram has {g.facet_count} facets, not {n + 3}")
    stats = stats if stats is not None else PipelineStats()
    cs = derive_constraints(g)
    atlas = FacetAtlas.of(g)
    p = len(atlas)
    tags = atlas.tags(g)
    pairs = [(u, v) for v in range(p) for u in range(v)]
    kinds = {(u, v): pair_kind(g, atlas, u, v) for u, v in pairs}
    disjoint = [pr for pr in pairs if kinds[pr] == PairKind.DISJOINT]
    obligations = _obligations(g, cs, kinds)
    if obligations is None:
        stats.unsatisfiable += 1
        return
    if len(disjoint) > max_unknowns:
        stats.skipped_unknowns += 1
        return

    unknown_names = [f"w{i + 1}" for i in range(len(disjoint))]
    options = []
    for pr in pairs:
        kind = kinds[pr]
        if kind == PairKind.RIDGE:
            options.append(RIDGE_LABELS)
        elif kind == PairKind.PARALLEL:
            options.append((INFINITY,))
        else:
            options.append((Unknown(unknown_names[disjoint.index(pr)]),))
    pair_index = {pr: t for t, pr in enumerate(pairs)}

    # pairs are searched node by node in a most-constrained-first order;
    # after assigning (u, v) every pair inside {nodes up to u} + {v} is known
    order = _node_order(p, obligations)
    rank = {v: r for r, v in enumerate(order)}
    pairs = [tuple(sorted((order[a], order[b]))) for b in range(p) for a in range(b)]
    options = [options[pair_index[pr]] for pr in pairs]
    index = {pr: t for t, pr in enumerate(pairs)}
    checks: list[list] = [[] for _ in pairs]
    for s, kind in obligations:
        for t, pr in enumerate(pairs):
            u, v = sorted(pr, key=rank.get)
            if u in s and v in s:
                part = tuple(sorted((x for x in s if rank[x] <= rank[u]), key=rank.get)) + (v,)
                req = kind if len(part) == len(s) else _HEREDITARY[kind]
                sub_pairs = tuple(index[(a, b) if a < b else (b, a)]
                                  for i, a in enumerate(part) for b in part[i + 1:])
                checks[t].append((len(part), sub_pairs, req))
    checks = [list(dict.fromkeys(c)) for c in checks]
    presets = _block_presets(atlas, obligations, kinds)
    row_orders = _copy_row_orders(atlas, rank, index, frozenset(presets))
    row_checks: list[list] = [[] for _ in pairs]
    for cols in row_orders:
        for ta, tb in cols:
            for t in (ta, tb):
                row_checks[t].append(cols)

    labels = [None] * len(pairs)
    seen = set()

    def rows_unsorted(t: int, cols):
        """Pairs explaining a lexicographic inversion between two copy rows."""
        for ta, tb in cols:
            if ta > t or tb > t:
                return None
            a, b = _LABEL_RANK[type(labels[ta])](labels[ta]), _LABEL_RANK[type(labels[tb])](labels[tb])
            if a != b:
                if a < b:
                    return None
                stats.prunes["symmetry"] += 1
                return [i for col in cols[:cols.index((ta, tb)) + 1] for i in col]
        return None

    def failing(t: int):
        """Pairs explaining the first failed check at ``t`` (None if all pass)."""
        for cols in row_checks[t]:
            bad = rows_unsorted(t, cols)
            if bad is not None:
                return bad
        for size, sub_pairs, req in checks[t]:
            sub = tuple(labels[i] for i in sub_pairs)
            if req == "elliptic" and INFINITY in sub:
                stats.prunes[req] += 1
                return sub_pairs
            cls, conn = _cached_class(size, sub)
            if not _class_satisfies(req, cls, conn):
                stats.prunes[req] += 1
                return sub_pairs
        return None

    # Conflict-directed backjumping: a failed subtree returns the set of
    # earlier pairs its failures depend on; if pair t is not among them no
    # other label for t can help, so the search jumps straight past it.
    # Subtrees that produced a leaf return None and are never jumped over.
    def rec(t: int):
        if t == len(pairs):
            yield
            return None
        conflict: set = set()
        found = False
        for lab in options[t]:
            stats.nodes += 1
            labels[t] = lab
            bad = failing(t)
            if bad is not None:
                conflict.update(i for i in bad if i != t)
                continue
            sub = yield from rec(t + 1)
            if sub is None:
                found = True
            elif t not in sub and not found:
                labels[t] = None
                return sub
            else:
                conflict.update(i for i in sub if i != t)
        labels[t] = None
        return None if found else conflict

    free_options = list(options)
    for choice in product(*presets.values()):
        options = list(free_options)
        for fixed in choice:
            for pr, lab in fixed.items():
                options[index[pr if pr in index else pr[::-1]]] = (lab,)
        for _ in rec(0):
            stats.leaves += 1
            edges = {pr: lab for pr, lab in zip(pairs, labels) if lab is not None}
            d = CoxeterDiagram(p, edges, tags=tags, dim=n)
            if not is_connected(d):
                stats.disconnected += 1
                continue
            key = canonical_form(d)
            if key in seen:
                continue
            seen.add(key)
            stats.candidates += 1
            yield CandidateDiagram(d, list(unknown_names), g, cs)


# -- weight solving ---------------------------------------------------------

@dataclass(frozen=True)
class UnmatchedRoot:
    """A numerically consistent weight with no certified radical form."""

    unknown: str
    root: RealRoot

    def __str__(self):
        return f"{self.unknown} in [{float(self.root.low):.15g}, {float(self.root.high):.15g}]" \
               f" (degree {self.root.degree})"


@dataclass
class WeightSolutions:
    diagrams: list = field(default_factory=list)
    unmatched: list = field(default_factory=list)
    log: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.diagrams)

    def __len__(self):
        return len(self.diagrams)

    def __getitem__(self, i):
        return self.diagrams[i]


def _symbolic_gram(d: CoxeterDiagram, names: list[str]) -> list[list[Poly]]:
    nv = len(names)
    p = d.node_count
    rows = [[Poly.constant(nv, 1 if i == j else 0) for j in range(p)] for i in range(p)]
    for (i, j), lab in d.edges.items():
        if isinstance(lab, Unknown):
            entry = -Poly.variable(nv, names.index(lab.name))
        else:
            entry = Poly.constant(nv, edge_entry(lab))
        rows[i][j] = rows[j][i] = entry
    return rows


def _minor(rows, drop_row: int, drop_col: int) -> Poly:
    sub = [[x for j, x in enumerate(r) if j != drop_col] for i, r in enumerate(rows) if i != drop_row]
    return bareiss_det(sub)


def _minors(rows):
    """Principal minors first, then the off-diagonal ones (symmetric pairs once)."""
    p = len(rows)
    for c in range(p):
        yield (c, c), _minor(rows, c, c)
    for r in range(p):
        for c in range(r + 1, p):
            yield (r, c), _minor(rows, r, c)


def _numeric_rank_ok(d: CoxeterDiagram, n: int, values: dict, dps: int = 60) -> bool:
    """High-precision check that the (n+3)-square Gram matrix has rank <= n+1."""
    with mpmath.workdps(dps):
        p = d.node_count
        a = mpmath.matrix(p, p)
        for i in range(p):
            a[i, i] = 1
        for (i, j), lab in d.edges.items():
            x = -values[lab.name] if isinstance(lab, Unknown) else edge_entry(lab).to_mpf(dps)
            a[i, j] = a[j, i] = x
        ev = sorted(abs(e) for e in mpmath.eigsy(a)[0])
        return ev[1] <= mpmath.mpf(10) ** (-(dps // 2)) * max(ev)


def solve_weights(c: CandidateDiagram | CoxeterDiagram, n: int,
                  max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> WeightSolutions:
    """Concrete dotted weights making every (n+2)-minor of the Gram matrix vanish.

    Each minor (delete one row and one column) is a polynomial in the
    unknowns.  Minors free of all but one unknown give univariate equations
    directly; otherwise two minors are combined by a resultant.  Real roots
    above 1 are isolated exactly, matched into the radical field and
    certified by substituting into the full matrix (rank <= n+1).  Roots
    with no certified form that still pass a 60-digit rank check are
    reported in ``unmatched``.
    """
    d = c.diagram if isinstance(c, CandidateDiagram) else c
    names = d.unknowns()
    out = WeightSolutions()
    if len(names) > max_unknowns:
        raise TooManyUnknowns(f"{len(names)} unknowns, at most {max_unknowns} supported")
    if d.node_count != n + 3:
        raise DimensionMismatch(f"dimension {n} needs {n + 3} nodes, diagram has {d.node_count}")
    pair_of = {lab.name: pr for pr, lab in d.edges.items() if isinstance(lab, Unknown)}
    if not names:
        t = inertia(gram_matrix(d))
        if t.positive + t.negative <= n + 1:
            out.diagrams.append(d)
        return out

    rows = _symbolic_gram(d, names)
    nv = len(names)
    univariate: dict[int, list] = {}
    mixed: list[Poly] = []
    for (r, col), m in _minors(rows):
        if not m:
            continue
        vs = m.variables()
        if not vs:
            out.log.append(f"minor ({r},{col}) is the nonzero constant {m.terms[(0,) * nv]}")
            return out
        if len(vs) == 1:
            (v,) = vs
            univariate.setdefault(v, []).append(m)
        else:
            mixed.append(m)
        if len(univariate) == nv:
            break

    # candidate root lists per unknown (exactly isolated, matched when possible)
    roots: dict[int, list] = {}
    for v, polys in univariate.items():
        roots[v] = _roots_of(polys[0].univariate(v))
        out.log.append(f"{names[v]}: {len(roots[v])} root(s) > 1 from a single-unknown minor")
    if len(roots) < nv:
        missing = [v for v in range(nv) if v not in roots]
        if nv == 1 or not mixed:
            out.log.append("no minor determines the unknowns; family is not rigid")
            return out
        combos = _eliminate(mixed, missing[0], 1 - missing[0], roots)
        if combos is None:
            out.log.append("resultants vanish identically; family is not rigid")
            return out
    else:
        combos = [dict(zip(range(nv), vals)) for vals in product(*(roots[v] for v in range(nv)))]

    seen = set()
    for combo in combos:
        exact = {v: val for v, (root, val) in combo.items() if val is not None}
        if len(exact) == nv:
            try:
                cand = d.with_edges({pair_of[names[v]]: Dotted(val) for v, val in exact.items()})
            except ValueError:
                continue
            t = inertia(gram_matrix(cand))
            if t.positive + t.negative <= n + 1:
                key = tuple(str(exact[v]) for v in range(nv))
                if key not in seen:
                    seen.add(key)
                    out.diagrams.append(cand)
            continue
        values = {names[v]: (root.approx(60) if val is None else val.to_mpf(60))
                  for v, (root, val) in combo.items()}
        if _numeric_rank_ok(d, n, values):
            out.unmatched += [UnmatchedRoot(names[v], root) for v, (root, val) in combo.items()
                              if val is None]
    return out


def _roots_of(coeffs) -> list[tuple[RealRoot, RadicalNumber | None]]:
    return [(r, recover_radical(r)) for r in real_roots_above(coeffs, Fraction(1))]


def _eliminate(mixed: list[Poly], x: int, y: int, known: dict) -> list[dict] | None:
    """Solve two-unknown minors for (x, y) by a resultant in ``y``."""
    if y in known:
        # substitute each known y-root; the minors become univariate in x
        combos = []
        for ry in known[y]:
            if ry[1] is None:
                continue
            for m in mixed:
                sub = m.substitute(y, ry[1])
                if sub:
                    if not sub.variables():
                        break
                    for rx in _roots_of(sub.univariate(x)):
                        combos.append({x: rx, y: ry})
                    break
        return combos
    for i in range(len(mixed)):
        for j in range(i + 1, len(mixed)):
            res = resultant(mixed[i], mixed[j], y)
            if not res or res.variables() != {x}:
                continue
            combos = []
            for rx in _roots_of(res.univariate(x)):
                if rx[1] is None:
                    continue
                for m in mixed:
                    sub = m.substitute(x, rx[1])
                    if sub and sub.variables() == {y}:
                        for ry in _roots_of(sub.univariate(y)):
                            combos.append({x: rx, y: ry})
                        break
            return combos
    return None


# -- pipeline ---------------------------------------------------------------

def _process_gale(args) -> tuple[list[VerificationReport], list[VerificationReport], PipelineStats]:
    g, n, max_unknowns, keep_rejected = args
    stats = PipelineStats(gale_diagrams=1)
    accepted, rejected = [], []
    for cand in enumerate_candidates(g, n, max_unknowns=max_unknowns, stats=stats):
        sols = solve_weights(cand, n, max_unknowns=max_unknowns)
        stats.unmatched_roots += len(sols.unmatched)
        if not sols.diagrams and keep_rejected:
            rep = VerificationReport(n, cand.diagram, None, None, False, False, True, True,
                                     reason="no weights solve the minor equations",
                                     provenance=[g.serialize()])
            rejected.append(rep)
        for d in sols.diagrams:
            stats.solved += 1
            rep = verify(d, n, cand.constraints)
            rep.provenance.append(g.serialize())
            (accepted if rep.accepted else rejected).append(rep)
    return accepted, rejected if keep_rejected else [], stats


def run_pipeline(n: int, jobs: int = 1, max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
                 progress: Callable[[str], None] | None = None,
                 stats: PipelineStats | None = None,
                 rejected: list | None = None) -> list[VerificationReport]:
    """Accepted reports for dimension ``n``, one per canonical form, sorted by key.

    ``stats`` (if given) is filled with prune and progress counters;
    ``rejected`` (if given) collects rejected reports.
    """
    if not 4 <= n <= 16:
        raise ValueError("dimension must be in 4..16")
    start = time.perf_counter()
    stats = stats if stats is not None else PipelineStats()
    gales = enumerate_gale(n, 1)
    if progress:
        progress(f"n={n}: {len(gales)} Gale diagrams")
    tasks = [(g, n, max_unknowns, rejected is not None) for g in gales]
    merged: dict[str, VerificationReport] = {}
    rejected_by_key: dict[str, VerificationReport] = {}

    def absorb(i, result):
        acc, rej, st = result
        stats.merge(st)
        for rep in acc:
            key = rep.key
            if key in merged:
                merged[key].provenance += rep.provenance
            else:
                merged[key] = rep
        for rep in rej:
            rejected_by_key.setdefault(rep.key, rep)
        if progress:
            progress(f"[{i + 1}/{len(tasks)}] {tasks[i][0]}: +{len(acc)} accepted, "
                     f"{len(merged)} distinct so far")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, result in enumerate(pool.map(_process_gale, tasks, chunksize=1)):
                absorb(i, result)
    else:
        for i, task in enumerate(tasks):
            absorb(i, _process_gale(task))

    stats.accepted = len(merged)
    stats.rejected = len(rejected_by_key)
    stats.seconds = time.perf_counter() - start
    if rejected is not None:
        rejected += [rejected_by_key[k] for k in sorted(rejected_by_key)]
    if progress:
        progress(stats.summary())
    return [merged[k] for k in sorted(merged)]
