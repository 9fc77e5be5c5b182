"""Gram matrices of Coxeter diagrams and exact inertia.

Inertia is computed by symmetric Gaussian elimination over the radical
field: 1x1 pivots on the first nonzero diagonal entry, a 2x2 pivot
``[[0, b], [b, 0]]`` (one positive and one negative eigenvalue) when the
whole remaining diagonal vanishes.  Sylvester's law of inertia makes the
pivot sign counts equal to the eigenvalue sign counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

from .diagram import CoxeterDiagram, Dotted, Infinity, Order, Unknown
from .errors import DimensionMismatch, UnsupportedOrder
from .radical import RadicalNumber, cos_pi_over, sign

ZERO = RadicalNumber()
ONE = RadicalNumber(1)


class InertiaTriple(NamedTuple):
    positive: int
    negative: int
    zero: int

    def __str__(self):
        return f"({self.positive}, {self.negative}, {self.zero})"


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Symmetric matrix with unit diagonal and non-positive off-diagonal."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(RadicalNumber._coerce(x) for x in row) for row in self.entries)
        p = len(rows)
        for i, row in enumerate(rows):
            if len(row) != p:
                raise ValueError("Gram matrix must be square")
            if row[i] != ONE:
                raise ValueError(f"diagonal entry {i} is {row[i]}, expected 1")
            for j in range(i + 1, p):
                if row[j] != rows[j][i]:
                    raise ValueError(f"asymmetric at ({i}, {j})")
                if sign(row[j]).sign > 0:
                    raise ValueError(f"positive off-diagonal entry at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, GramMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def rows(self) -> list[list[RadicalNumber]]:
        return [list(r) for r in self.entries]

    def principal(self, idx: Sequence[int]) -> GramMatrix:
        return GramMatrix(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def to_mpmath(self, dps: int = 50):
        import mpmath

        with mpmath.workdps(dps):
            return mpmath.matrix([[x.to_mpf(dps) for x in row] for row in self.entries])

    def dump(self) -> str:
        """Debug dump: one row per line, tab-separated expressions."""
        return "\n".join("\t".join(str(x) for x in row) for row in self.entries) + "\n"


def edge_entry(label) -> RadicalNumber:
    if label is None:
        return ZERO
    if isinstance(label, Order):
        return -cos_pi_over(label.m)
    if isinstance(label, Infinity):
        return -ONE
    if isinstance(label, Dotted):
        return -label.weight
    if isinstance(label, Unknown):
        raise ValueError(f"unknown weight {label.name!r} has no numeric entry")
    raise UnsupportedOrder(f"unsupported label {label!r}")


def gram_matrix(d: CoxeterDiagram) -> GramMatrix:
    """Gram matrix: 1 on the diagonal, -cos(pi/m), -1 or -weight off it."""
    p = d.node_count
    rows = [[ONE if i == j else ZERO for j in range(p)] for i in range(p)]
    for (i, j), lab in d.edges.items():
        rows[i][j] = rows[j][i] = edge_entry(lab)
    return GramMatrix(tuple(tuple(r) for r in rows))


def _as_rows(m) -> list[list[RadicalNumber]]:
    if isinstance(m, GramMatrix):
        return m.rows()
    return [[RadicalNumber._coerce(x) for x in row] for row in m]


def inertia(m) -> InertiaTriple:
    """Exact (positive, negative, zero) eigenvalue counts of a symmetric matrix."""
    a = _as_rows(m)
    p = len(a)
    active = list(range(p))
    pos = neg = 0
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is not None:
            d = a[piv][piv]
            if sign(d).sign > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            inv = d.inverse()
            col = {j: a[j][piv] for j in active if a[j][piv]}
            for j, cj in col.items():
                f = cj * inv
                for k in active:
                    if k < j:
                        continue
                    ck = col.get(k)
                    if ck is not None:
                        a[j][k] = a[j][k] - f * ck
                        a[k][j] = a[j][k]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j]), None)
        if pair is None:
            break
        i, j = pair
        b_inv = a[i][j].inverse()
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        ci = {r: a[r][i] for r in active}
        cj = {r: a[r][j] for r in active}
        for r in active:
            for s in active:
                if s < r:
                    continue
                upd = (ci[r] * cj[s] + cj[r] * ci[s]) * b_inv
                if upd:
                    a[r][s] = a[r][s] - upd
                    a[s][r] = a[r][s]
    return InertiaTriple(pos, neg, p - pos - neg)


def rank(m) -> int:
    t = inertia(m)
    return t.positive + t.negative


def determinant(m) -> RadicalNumber:
    """Exact determinant by Gaussian elimination with nonzero pivoting."""
    a = _as_rows(m)
    p = len(a)
    det = ONE
    for c in range(p):
        r = next((r for r in range(c, p) if a[r][c]), None)
        if r is None:
            return ZERO
        if r != c:
            a[c], a[r] = a[r], a[c]
            det = -det
        piv = a[c][c]
        det = det * piv
        inv = piv.inverse()
        for r in range(c + 1, p):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y if k >= c else x for k, (x, y) in enumerate(zip(a[r], a[c]))]
    return det


def minors_vanish(g: GramMatrix, n: int, exhaustive: bool = False) -> bool:
    """True iff det G and every (n+2)x(n+2) minor of the (n+3)-square G vanish.

    Decided through the rank (``rank <= n+1``).  ``exhaustive=True``
    additionally expands every (n+2)-minor and asserts agreement.
    """
    if g.size != n + 3:
        raise DimensionMismatch(f"expected a {n + 3}x{n + 3} matrix, got {g.size}")
    ok = rank(g) <= n + 1
    if exhaustive:
        rows = g.rows()
        idx = range(g.size)
        brute = all(
            not determinant([[rows[i][j] for j in cols] for i in rs])
            for rs in combinations(idx, n + 2)
            for cols in combinations(idx, n + 2)
        )
        if brute != ok:
            raise AssertionError("rank test and minor expansion disagree")
    return ok


def is_positive_definite(m) -> bool:
    t = inertia(m)
    return t.negative == 0 and t.zero == 0


def is_positive_semidefinite(m) -> bool:
    return inertia(m).negative == 0
