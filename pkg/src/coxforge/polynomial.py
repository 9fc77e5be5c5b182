"""Polynomials in a few variables over the radical field, and their real roots.

Used to solve for unknown dotted weights: determinants of Gram matrices with
indeterminate entries are computed fraction-free (Bareiss), eliminated with
resultants, pushed down to Q by taking norms, and their real roots are
isolated exactly with sympy.  Roots are then matched back into the radical
field by an integer-relation search and certified by exact substitution.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath
import sympy

from .radical import RadicalNumber, squarefree_split

__all__ = [
    "Poly",
    "bareiss_det",
    "resultant",
    "norm_to_rational",
    "RealRoot",
    "real_roots_above",
    "recover_radical",
]

ZERO = RadicalNumber()
ONE = RadicalNumber(1)


class Poly:
    """Sparse polynomial in ``nvars`` variables with RadicalNumber coefficients.

    Terms are stored as ``{exponent tuple: coefficient}`` with no zero
    coefficients.  Exponent tuples compare lexicographically, which is the
    monomial order used by exact division.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: RadicalNumber._coerce(c)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> Poly:
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): ONE})

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly.constant(self.nvars, other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._lift(other)
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: Poly) -> Poly:
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        le, lc = other.leading()
        lc_inv = lc.inverse()
        rem = Poly(self.nvars, dict(self.terms))
        quot: dict = {}
        while rem:
            e, c = rem.leading()
            diff = tuple(a - b for a, b in zip(e, le))
            if min(diff) < 0:
                raise ArithmeticError("division is not exact")
            t = Poly(self.nvars, {diff: c * lc_inv})
            quot[diff] = t.terms[diff]
            rem = rem - t * other
        return Poly(self.nvars, quot)

    def degree(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def coefficients_in(self, var: int) -> list[Poly]:
        """Coefficients w.r.t. ``var`` (constant term first), as polynomials."""
        out = [Poly(self.nvars) for _ in range(self.degree(var) + 1)]
        for e, c in self.terms.items():
            rest = list(e)
            rest[var] = 0
            out[e[var]].terms[tuple(rest)] = c
        return out

    def substitute(self, var: int, value) -> Poly:
        value = RadicalNumber._coerce(value)
        powers = [ONE]
        out: dict = {}
        for e, c in self.terms.items():
            while len(powers) <= e[var]:
                powers.append(powers[-1] * value)
            rest = list(e)
            rest[var] = 0
            rest = tuple(rest)
            p = c * powers[e[var]]
            out[rest] = out[rest] + p if rest in out else p
        return Poly(self.nvars, out)

    def variables(self) -> set[int]:
        return {v for e in self.terms for v, x in enumerate(e) if x}

    def univariate(self, var: int) -> list[RadicalNumber]:
        """Coefficient list (constant first) of a polynomial in ``var`` only."""
        if self.variables() - {var}:
            raise ValueError("polynomial involves other variables")
        out = [ZERO] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            out[e[var]] = c
        return out

    def primes(self) -> set[int]:
        return {p for c in self.terms.values() for p in c.primes()}

    def conjugate(self, p: int) -> Poly:
        return Poly(self.nvars, {e: c.conjugate(p) for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        names = "xyzuvw"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"{names[i]}^{x}" if x > 1 else names[i] for i, x in enumerate(e) if x)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def bareiss_det(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free determinant of a square matrix of polynomials."""
    a = [list(row) for row in matrix]
    size = len(a)
    if size == 0:
        raise ValueError("empty matrix")
    nvars = next(iter(a[0])).nvars
    sgn = 1
    prev = Poly.constant(nvars, 1)
    for k in range(size - 1):
        if not a[k][k]:
            r = next((r for r in range(k + 1, size) if a[r][k]), None)
            if r is None:
                return Poly(nvars)
            a[k], a[r] = a[r], a[k]
            sgn = -sgn
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if num else num
        prev = a[k][k]
    det = a[size - 1][size - 1]
    return det if sgn > 0 else -det


def resultant(p: Poly, q: Poly, var: int) -> Poly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``var``."""
    pc = p.coefficients_in(var)[::-1]
    qc = q.coefficients_in(var)[::-1]
    dp, dq = len(pc) - 1, len(qc) - 1
    if dp < 0 or dq < 0:
        return Poly(p.nvars)
    if dp == 0:
        return _poly_pow(pc[0], dq)
    if dq == 0:
        return _poly_pow(qc[0], dp)
    size = dp + dq
    zero = Poly(p.nvars)
    rows = []
    for i in range(dq):
        rows.append([zero] * i + pc + [zero] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([zero] * i + qc + [zero] * (size - dq - 1 - i))
    return bareiss_det(rows)


def _poly_pow(p: Poly, e: int) -> Poly:
    out = Poly.constant(p.nvars, 1)
    for _ in range(e):
        out = out * p
    return out


def norm_to_rational(coeffs: list[RadicalNumber]) -> list[Fraction]:
    """Product of all Galois conjugates of a univariate polynomial.

    The result has rational coefficients and vanishes at every root of the
    input.  Conjugating one prime at a time and multiplying keeps the
    number of factors at ``2**r`` for ``r`` primes.
    """
    p = Poly(1, {(i,): c for i, c in enumerate(coeffs)})
    for prime in sorted(p.primes()):
        p = p * p.conjugate(prime)
    out = [Fraction(0)] * (p.degree(0) + 1)
    for (i,), c in p.terms.items():
        out[i] = c.to_fraction()
    return out


@dataclass(frozen=True)
class RealRoot:
    """A real root of an irreducible rational polynomial, with an isolating interval."""

    factor: tuple  # integer coefficients, constant term first
    low: Fraction
    high: Fraction

    def approx(self, dps: int = 60):
        """The root to ``dps`` digits (Newton from the interval midpoint)."""
        mid = (self.low + self.high) / 2
        with mpmath.workdps(dps + 10):
            t = mpmath.mpf(mid.numerator) / mid.denominator
            if self.low == self.high:
                return t
            cs = [mpmath.mpf(c) for c in reversed(self.factor)]
            dcs = [c * (len(cs) - 1 - i) for i, c in enumerate(cs[:-1])]
            for _ in range(200):
                step = mpmath.polyval(cs, t) / mpmath.polyval(dcs, t)
                t -= step
                if abs(step) <= abs(t) * mpmath.mpf(10) ** (-dps - 5):
                    break
            return t

    @property
    def degree(self) -> int:
        return len(self.factor) - 1


def _to_sympy(coeffs: list[Fraction], x):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x,
                      domain="QQ")


def real_roots_above(coeffs: list[RadicalNumber], bound: Fraction = Fraction(1),
                     eps: Fraction = Fraction(1, 10**30)) -> list[RealRoot]:
    """Real roots ``> bound`` of a univariate polynomial over the radical field.

    Returns one :class:`RealRoot` per root of the input polynomial (roots of
    conjugate polynomials introduced by the norm are filtered out by
    high-precision evaluation).  Intervals are refined to width ``eps``.
    """
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    x = sympy.Symbol("x")
    norm = _to_sympy(norm_to_rational(coeffs), x)
    out = []
    for fac, _ in norm.factor_list()[1]:
        fac = fac.monic()
        _, fac = fac.clear_denoms(convert=True)
        icoeffs = tuple(int(c) for c in reversed(fac.all_coeffs()))
        for (lo, hi), _ in fac.intervals(eps=sympy.Rational(eps.numerator, eps.denominator)):
            lo, hi = Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))
            while lo <= bound < hi and lo != hi:
                mid = (lo + hi) / 2
                fmid = _eval_fraction(icoeffs, mid)
                if fmid == 0:
                    lo = hi = mid
                elif (fmid > 0) == (_eval_fraction(icoeffs, lo) > 0):
                    lo = mid
                else:
                    hi = mid
            if hi <= bound:
                continue
            root = RealRoot(icoeffs, lo, hi)
            if _is_root_of(coeffs, root):
                out.append(root)
    out.sort(key=lambda r: r.low)
    return out


def _eval_fraction(icoeffs, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(icoeffs):
        acc = acc * t + c
    return acc


def _is_root_of(coeffs: list[RadicalNumber], root: RealRoot, dps: int = 80) -> bool:
    with mpmath.workdps(dps):
        r = root.approx(dps)
        cs = [c.to_mpf(dps) for c in coeffs]
        val = mpmath.polyval(cs[::-1], r)
        scale = sum(abs(c) * abs(r) ** i for i, c in enumerate(cs))
        return abs(val) <= scale * mpmath.mpf(10) ** (-(dps // 2))


def _conjugates(root: RealRoot, dps: int) -> list | None:
    """All roots of the factor to ``dps`` digits, or None if any is non-real."""
    with mpmath.workdps(dps + 20):
        zs = mpmath.polyroots([mpmath.mpf(c) for c in reversed(root.factor)],
                              maxsteps=400, extraprec=4 * dps)
        if any(abs(mpmath.im(z)) > mpmath.mpf(10) ** (-dps // 2) for z in zs):
            return None
        return [mpmath.re(z) for z in zs]


def _rational_square(x, dps: int, max_den: int = 10**8) -> Fraction | None:
    """``x**2`` as a fraction with a small denominator, if it is one."""
    sq = x * x
    q = Fraction(mpmath.nstr(sq, dps, strip_zeros=False)).limit_denominator(max_den)
    if abs(sq - mpmath.mpf(q.numerator) / q.denominator) > mpmath.mpf(10) ** (-dps // 2) * (1 + abs(sq)):
        return None
    return q


def recover_radical(root: RealRoot, max_radicand: int = 50, dps: int = 120) -> RadicalNumber | None:
    """Exact radical-field value of ``root``, or None if none is found.

    Degree 1 and 2 factors are solved in closed form.  For degree ``2**s``
    the root would lie in a real multiquadratic field, whose Galois group
    flips signs of square roots.  Writing the root as a sum of ``c_d sqrt(d)``
    terms, each term equals ``(sum(A) - sum(B)) / 2**s`` for the split of
    the conjugates into halves ``A`` (holding the root) and ``B`` given by
    the matching character.  Every half split is tried; a split isolates a
    single term when the result squares to a rational, and the largest such
    term per radicand is kept (a character has the largest correlation with
    itself).  The assembled value is certified exactly: it must be a root
    of the factor inside the isolating interval.
    """
    f = root.factor
    if root.degree == 1:
        return _certified(RadicalNumber(Fraction(-f[0], f[1])), root)
    if root.degree == 2:
        c, b, a = (Fraction(v) for v in f)
        disc = b * b - 4 * a * c
        kn, sn = squarefree_split(disc.numerator * disc.denominator)
        rad = RadicalNumber.sqrt(sn, Fraction(kn, disc.denominator))
        for s in (1, -1):
            val = (RadicalNumber(-b) + rad * s) / (2 * a)
            cert = _certified(val, root)
            if cert is not None:
                return cert
        return None
    deg = root.degree
    if deg & (deg - 1) or deg > 16:
        return None  # not a multiquadratic degree (or beyond the supported size)
    zs = _conjugates(root, dps)
    if zs is None:
        return None
    with mpmath.workdps(dps + 20):
        here = root.approx(dps)
        home = min(range(deg), key=lambda i: abs(zs[i] - here))
        others = [i for i in range(deg) if i != home]
        val = RadicalNumber(Fraction(-f[-2], f[-1]) / deg)
        best: dict[int, tuple] = {}
        for rest in combinations(others, deg // 2 - 1):
            half = {home, *rest}
            term = (sum(zs[i] for i in half) - sum(zs[i] for i in range(deg) if i not in half)) / deg
            if abs(term) < mpmath.mpf(10) ** (-dps // 2):
                continue
            sq = _rational_square(term, dps)
            if sq is None:
                continue
            k, d = squarefree_split(sq.numerator * sq.denominator)
            if d == 1 or d > max_radicand:
                continue
            coef = Fraction(k, sq.denominator) * (1 if term > 0 else -1)
            if d not in best or abs(coef) > abs(best[d]):
                best[d] = coef
        for d, coef in best.items():
            val = val + RadicalNumber.sqrt(d, coef)
    return _certified(val, root)


def _certified(val: RadicalNumber, root: RealRoot) -> RadicalNumber | None:
    acc = ZERO
    for c in reversed(root.factor):
        acc = acc * val + c
    if acc:
        return None
    if RadicalNumber(root.low) <= val <= RadicalNumber(root.high):
        return val
    return None
