"""Exact arithmetic in the field of rational combinations of square roots.

A :class:`RadicalNumber` is a finite sum ``q_1*sqrt(n_1) + ... + q_k*sqrt(n_k)``
with rational ``q_i`` and distinct squarefree ``n_i >= 1``.  Distinct square
roots of squarefree integers are linearly independent over Q, so the term map
is a canonical form and equality/zero testing is structural.  Signs of
nonzero values are decided by rational interval enclosures.
"""
from __future__ import annotations

import enum
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import ExpressionSyntaxError, UnsupportedOrder

__all__ = [
    "RadicalNumber",
    "Sign",
    "SignCertificate",
    "sign",
    "cos_pi_over",
    "parse_expr",
    "SUPPORTED_ORDERS",
]

SUPPORTED_ORDERS = (2, 3, 4, 5, 6)
DEFAULT_PRECISION = 64
_EPS = 2.0 ** -52


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, s)`` with ``n == k*k*s`` and ``s`` squarefree."""
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    k, s = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1
    return k, s * n


@lru_cache(maxsize=4096)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=8192)
def _radical_product(a: int, b: int) -> tuple[int, int]:
    # sqrt(a)*sqrt(b) = g*sqrt(a*b/g^2) for squarefree a, b
    g = math.gcd(a, b)
    return g, (a // g) * (b // g)


@lru_cache(maxsize=8192)
def _sqrt_enclosure(n: int, bits: int) -> tuple[Fraction, Fraction]:
    r = math.isqrt(n << (2 * bits))
    if r * r == n << (2 * bits):
        v = Fraction(r, 1 << bits)
        return v, v
    return Fraction(r, 1 << bits), Fraction(r + 1, 1 << bits)


def _start_bits() -> int:
    raw = os.environ.get("COXFORGE_PRECISION")
    if not raw:
        return DEFAULT_PRECISION
    try:
        bits = int(raw)
    except ValueError:
        return DEFAULT_PRECISION
    return max(bits, 8)


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


@dataclass(frozen=True)
class SignCertificate:
    """Certified sign with a rational interval enclosing the value.

    ``witness`` is ``None`` for exact zero, otherwise ``(lo, hi)`` with the
    value inside and ``0`` outside the closed interval.
    """

    sign: Sign
    witness: tuple[Fraction, Fraction] | None


class RadicalNumber:
    """Immutable exact real number ``sum q_n * sqrt(n)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, (int, Rational)):
            terms = {1: terms}
        acc: dict[int, Fraction] = {}
        for n, q in dict(terms).items():
            q = Fraction(q)
            if not q:
                continue
            k, s = squarefree_split(int(n))
            acc[s] = acc.get(s, 0) + q * k
        self._terms = {n: q for n, q in acc.items() if q}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> RadicalNumber:
        # trusted constructor: keys squarefree, values nonzero Fractions
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, n: int, coefficient=1) -> RadicalNumber:
        return cls({n: coefficient})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def radicands(self) -> tuple[int, ...]:
        return tuple(sorted(self._terms))

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 1 in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part()

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RadicalNumber):
            return other
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return RadicalNumber._raw({1: q} if q else {})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        terms = dict(self._terms)
        for n, q in other._terms.items():
            v = terms.get(n)
            if v is None:
                terms[n] = q
            else:
                v += q
                if v:
                    terms[n] = v
                else:
                    del terms[n]
        return RadicalNumber._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return RadicalNumber._raw({n: -q for n, q in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return RadicalNumber._raw({})
        terms: dict[int, Fraction] = {}
        for a, p in self._terms.items():
            for b, q in other._terms.items():
                if a == 1:
                    g, n = 1, b
                elif b == 1:
                    g, n = 1, a
                else:
                    g, n = _radical_product(a, b)
                terms[n] = terms.get(n, 0) + g * p * q
        return RadicalNumber._raw({n: q for n, q in terms.items() if q})

    __rmul__ = __mul__

    def conjugate(self, p: int) -> RadicalNumber:
        """Apply the field automorphism ``sqrt(p) -> -sqrt(p)`` for prime ``p``."""
        return RadicalNumber._raw(
            {n: (-q if n % p == 0 else q) for n, q in self._terms.items()}
        )

    def primes(self) -> tuple[int, ...]:
        ps = set()
        for n in self._terms:
            ps.update(_prime_factors(n))
        return tuple(sorted(ps))

    def inverse(self) -> RadicalNumber:
        if not self._terms:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return RadicalNumber._raw({1: 1 / self._terms[1]})
        # x * conj_p(x) has no sqrt(p) component; recurse on fewer primes
        p = self.primes()[-1]
        c = self.conjugate(p)
        return c * (self * c).inverse()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            if not other._terms:
                raise ZeroDivisionError("division by zero")
            d = other._terms[1]
            return RadicalNumber._raw({n: q / d for n, q in self._terms.items()})
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = RadicalNumber._raw({1: Fraction(1)})
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sign(self) -> int:
        return int(sign(self).sign)

    def __lt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- conversion ---------------------------------------------------------

    def __float__(self):
        return math.fsum(float(q) * math.sqrt(n) for n, q in self._terms.items())

    def to_mpf(self, dps: int = 50):
        import mpmath

        with mpmath.workdps(dps + 10):
            v = mpmath.mpf(0)
            for n, q in self._terms.items():
                v += mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(n)
            return +v

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for n, q in self._terms.items():
            a, b = _sqrt_enclosure(n, bits)
            if q > 0:
                lo += q * a
                hi += q * b
            else:
                lo += q * b
                hi += q * a
        return lo, hi

    def __str__(self):
        return format_expr(self)

    def __repr__(self):
        return f"RadicalNumber('{self}')"


def _float_filter(a: RadicalNumber) -> SignCertificate | None:
    """Certified sign from double precision when the margin is large enough."""
    try:
        parts = [float(q) * math.sqrt(n) for n, q in a._terms.items()]
    except OverflowError:
        return None
    total = math.fsum(parts)
    mag = math.fsum(abs(x) for x in parts)
    # each part carries <= 3 roundings; fsum is correctly rounded
    err = (len(parts) + 4) * _EPS * mag + 1e-300
    if abs(total) <= 2 * err or not math.isfinite(total):
        return None
    lo, hi = Fraction(total) - Fraction(err), Fraction(total) + Fraction(err)
    return SignCertificate(Sign.POSITIVE if total > 0 else Sign.NEGATIVE, (lo, hi))


def sign(a: RadicalNumber) -> SignCertificate:
    """Certified sign of ``a``.

    Exact zero iff the term map is empty.  Otherwise a double precision
    filter with a rigorous error bound is tried, then rational enclosures of
    every square root are refined (doubling the bit count) until the
    interval excludes zero.
    """
    if not isinstance(a, RadicalNumber):
        a = RadicalNumber(a)
    if not a._terms:
        return SignCertificate(Sign.ZERO, None)
    if a.is_rational():
        q = a._terms[1]
        return SignCertificate(Sign.POSITIVE if q > 0 else Sign.NEGATIVE, (q, q))
    cert = _float_filter(a)
    if cert is not None:
        return cert
    bits = _start_bits()
    while True:
        lo, hi = a.enclosure(bits)
        if lo > 0:
            return SignCertificate(Sign.POSITIVE, (lo, hi))
        if hi < 0:
            return SignCertificate(Sign.NEGATIVE, (lo, hi))
        bits *= 2


_COS_PI_OVER = {
    2: RadicalNumber(),
    3: RadicalNumber({1: Fraction(1, 2)}),
    4: RadicalNumber({2: Fraction(1, 2)}),
    5: RadicalNumber({1: Fraction(1, 4), 5: Fraction(1, 4)}),
    6: RadicalNumber({3: Fraction(1, 2)}),
}


def cos_pi_over(m: int) -> RadicalNumber:
    """Exact ``cos(pi/m)`` for the supported dihedral orders."""
    try:
        return _COS_PI_OVER[m]
    except (KeyError, TypeError):
        raise UnsupportedOrder(
            f"order {m!r} is not supported; use one of {SUPPORTED_ORDERS}"
        ) from None


# -- expression grammar -----------------------------------------------------
#   expr     := ['-'] term (('+'|'-') term)*
#   term     := rational | rational? 'sqrt(' posint ')' | 'cos(pi/5)'
#   rational := int ('/' posint)?

_TOKEN = re.compile(
    r"\s*(?:(?P<cos>cos\(pi/5\))"
    r"|(?P<num>\d+)(?:/(?P<den>\d+))?\s*(?:\*?\s*sqrt\((?P<rad1>\d+)\))?"
    r"|sqrt\((?P<rad2>\d+)\))\s*"
)


def parse_expr(text: str) -> RadicalNumber:
    s = text.strip()
    if not s:
        raise ExpressionSyntaxError("empty expression")
    pos = 0
    total = RadicalNumber()
    first = True
    while pos < len(s):
        sgn = 1
        if s[pos] in "+-":
            if first and s[pos] == "+":
                raise ExpressionSyntaxError(f"unexpected '+' in {text!r}")
            sgn = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ExpressionSyntaxError(f"expected '+' or '-' at offset {pos} in {text!r}")
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ExpressionSyntaxError(f"bad term at offset {pos} in {text!r}")
        if m.group("cos"):
            term = _COS_PI_OVER[5]
        else:
            if m.group("num") is not None:
                den = int(m.group("den")) if m.group("den") else 1
                if den == 0:
                    raise ExpressionSyntaxError(f"zero denominator in {text!r}")
                coef = Fraction(int(m.group("num")), den)
            else:
                coef = Fraction(1)
            rad = m.group("rad1") or m.group("rad2")
            if rad is not None and int(rad) == 0:
                raise ExpressionSyntaxError(f"sqrt(0) in {text!r}")
            term = RadicalNumber({int(rad) if rad else 1: coef})
        total = total + (term if sgn > 0 else -term)
        pos = m.end()
        first = False
    return total


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_expr(a: RadicalNumber) -> str:
    """Print in the expression grammar, terms sorted by radicand."""
    if not a._terms:
        return "0"
    out = []
    for i, n in enumerate(sorted(a._terms)):
        q = a._terms[n]
        neg = q < 0
        q = abs(q)
        if n == 1:
            body = _fmt_rational(q)
        elif q == 1:
            body = f"sqrt({n})"
        else:
            body = f"{_fmt_rational(q)}sqrt({n})"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)
