import random
from fractions import Fraction

import mpmath
import sympy
from hypothesis import given, settings, strategies as st

from coxforge.polynomial import (
    Poly,
    RealRoot,
    bareiss_det,
    norm_to_rational,
    real_roots_above,
    recover_radical,
    resultant,
)
from coxforge.radical import RadicalNumber, parse_expr

from conftest import radicals

R = RadicalNumber


def const(c, nv=2):
    return Poly.constant(nv, c)


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_bareiss_matches_cofactor_expansion(size, data):
    rows = [[const(data.draw(radicals)) for _ in range(size)] for _ in range(size)]
    assert bareiss_det(rows) == cofactor_det(rows)


def test_bareiss_symbolic_matches_sympy():
    rng = random.Random(5)
    x, y = sympy.symbols("x y")
    for _ in range(20):
        size = rng.randint(1, 4)
        ent = [[rng.choice([0, 1, -2, Fraction(1, 3), "x", "y"]) for _ in range(size)] for _ in range(size)]

        def ours(v):
            if v == "x":
                return Poly.variable(2, 0)
            if v == "y":
                return Poly.variable(2, 1)
            return const(v)

        def theirs(v):
            return {"x": x, "y": y}.get(v, sympy.nsimplify(v) if not isinstance(v, str) else v)

        d = bareiss_det([[ours(v) for v in r] for r in ent])
        expected = sympy.Poly(sympy.Matrix([[theirs(v) for v in r] for r in ent]).det(), x, y)
        got = {e: c.to_fraction() for e, c in d.terms.items()}
        want = {e: Fraction(int(c.p), int(c.q)) for e, c in zip(expected.monoms(), expected.coeffs()) if c}
        assert got == want


def test_resultant_eliminates_common_root():
    # x^2 - y and x - 2 share the root x=2 exactly when y = 4
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    res = resultant(x * x - y, x - const(2), 0)
    assert res.variables() == {1}
    coeffs = res.univariate(1)
    assert sum(c * 4 ** i for i, c in enumerate(coeffs)) == 0
    assert coeffs[1] != 0


def test_resultant_matches_sympy():
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    p = x * x * y - const(3) * x + const(1)
    q = x * x - y * y + const(2)
    res = resultant(p, q, 0)
    sx, sy = sympy.symbols("x y")
    expected = sympy.Poly(sympy.resultant(sx ** 2 * sy - 3 * sx + 1, sx ** 2 - sy ** 2 + 2, sx), sy)
    got = {e[1]: c.to_fraction() for e, c in res.terms.items()}
    want = {m[0]: Fraction(int(c.p), int(c.q)) for m, c in zip(expected.monoms(), expected.coeffs())}
    assert got == want


def test_norm_vanishes_at_roots():
    # (x - sqrt(3))(x - 1 - sqrt(2))
    a, b = R.sqrt(3), 1 + R.sqrt(2)
    coeffs = [a * b, -(a + b), R(1)]
    norm = norm_to_rational(coeffs)
    assert all(isinstance(c, Fraction) for c in norm)
    with mpmath.workdps(50):
        for root in (a, b, -a, 1 - R.sqrt(2)):
            val = mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(norm)],
                                 root.to_mpf(50))
            assert abs(val) < mpmath.mpf(10) ** -40


def test_real_roots_above_one_filters_conjugates():
    # only sqrt(3) is a root of x - sqrt(3); the norm adds -sqrt(3)
    roots = real_roots_above([-R.sqrt(3), R(1)])
    assert len(roots) == 1
    assert roots[0].low < Fraction(17321, 10000) and roots[0].high > Fraction(17320, 10000)
    assert recover_radical(roots[0]) == R.sqrt(3)
    # roots at or below 1 are discarded
    assert real_roots_above([R(Fraction(-1, 2)), R(1)]) == []


def test_recover_radical_examples():
    for text in ("sqrt(3)", "1/4+1/4sqrt(5)+1/3sqrt(15)", "1/2sqrt(2)+1/2sqrt(6)", "7/5", "2+1/3sqrt(15)"):
        val = parse_expr(text)
        roots = real_roots_above([-val, R(1)])
        assert len(roots) == 1, text
        lo, hi = val.enclosure(128)
        assert roots[0].low <= hi and lo <= roots[0].high
        assert recover_radical(roots[0]) == val, text


def test_recover_radical_gives_up_on_cube_roots():
    root = RealRoot((-2, 0, 0, 1), Fraction(125, 100), Fraction(126, 100))
    assert recover_radical(root) is None


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.sampled_from([1, 2, 3, 5, 6, 10, 15, 30]),
                       st.fractions(min_value=-3, max_value=3, max_denominator=9).filter(bool),
                       min_size=1, max_size=4))
def test_recover_radical_round_trips_multiquadratic_values(terms):
    val = sum((R.sqrt(m, q) if m > 1 else R(q) for m, q in terms.items()), R(0))
    val = val + R(50)  # keep the value above 1
    roots = real_roots_above([-val, R(1)])
    assert len(roots) == 1
    assert recover_radical(roots[0]) == val


def test_recover_radical_rejects_non_multiquadratic_quartic():
    # x^4 - 2 has two complex roots, so its real root is not in the radical field
    roots = real_roots_above([R(-2), R(0), R(0), R(0), R(1)])
    assert len(roots) == 1 and recover_radical(roots[0]) is None
