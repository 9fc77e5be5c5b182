import random
from fractions import Fraction
from itertools import combinations

import pytest

from coxforge.diagram import INFINITY, CoxeterDiagram, Dotted, Order, Unknown
from coxforge.errors import DimensionMismatch
from coxforge.gram import (
    GramMatrix,
    determinant,
    gram_matrix,
    inertia,
    is_positive_definite,
    is_positive_semidefinite,
    minors_vanish,
    rank,
)
from coxforge.radical import RadicalNumber, parse_expr

from oracle import float_inertia

R = RadicalNumber
SQRT3 = Dotted(R.sqrt(3))


def edge(lab):
    return CoxeterDiagram(2, {(0, 1): lab})


def identity(p):
    return GramMatrix(tuple(tuple(1 if i == j else 0 for j in range(p)) for i in range(p)))


def test_gram_entries():
    assert gram_matrix(edge(Order(3))).rows() == [[1, Fraction(-1, 2)], [Fraction(-1, 2), 1]]
    assert gram_matrix(edge(INFINITY)).rows() == [[1, -1], [-1, 1]]
    assert gram_matrix(edge(SQRT3)).rows() == [[1, -R.sqrt(3)], [-R.sqrt(3), 1]]
    assert gram_matrix(CoxeterDiagram(2))[0, 1] == 0


def test_gram_rejects_unknowns():
    with pytest.raises(ValueError):
        gram_matrix(edge(Unknown("w")))


def test_gram_matrix_invariants():
    with pytest.raises(ValueError):
        GramMatrix(((1, 0), (0, 2)))
    with pytest.raises(ValueError):
        GramMatrix(((1, Fraction(1, 2)), (Fraction(1, 2), 1)))
    with pytest.raises(ValueError):
        GramMatrix(((1, -1), (0, 1)))


def test_inertia_examples(catalog_by_id):
    assert inertia(identity(3)) == (3, 0, 0)
    assert inertia([[1, -1], [-1, 1]]) == (1, 0, 1)
    assert inertia(gram_matrix(catalog_by_id["4a"].diagram)) == (4, 1, 2)


def test_inertia_needs_two_by_two_pivot():
    # zero diagonal throughout: only the 2x2 pivot path can proceed
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[0, 1, 0], [1, 0, 0], [0, 0, 0]]) == (1, 1, 1)
    assert inertia([[0, 2, 1], [2, 0, 1], [1, 1, 0]]) == float_inertia([[0, 2, 1], [2, 0, 1], [1, 1, 0]])


def test_rank_examples(catalog_by_id):
    assert rank(identity(3)) == 3
    assert rank([[1, -1], [-1, 1]]) == 1
    assert rank(gram_matrix(catalog_by_id["4a"].diagram)) == 5


def test_minors_vanish_examples(catalog_by_id):
    g = gram_matrix(catalog_by_id["4a"].diagram)
    assert not minors_vanish(identity(7), 4)
    assert minors_vanish(g, 4, exhaustive=True)
    # an extra unit diagonal block raises size and rank together: rank stays n+1
    rows = [list(r) + [0] for r in g.rows()] + [[0] * 7 + [1]]
    padded = GramMatrix(tuple(map(tuple, rows)))
    assert rank(padded) == 6
    assert minors_vanish(padded, 5)
    with pytest.raises(DimensionMismatch):
        minors_vanish(g, 5)


def test_definiteness_examples():
    assert is_positive_definite(gram_matrix(edge(Order(5))))
    g_inf = gram_matrix(edge(INFINITY))
    assert is_positive_semidefinite(g_inf) and not is_positive_definite(g_inf)
    g_dot = gram_matrix(edge(SQRT3))
    assert not is_positive_semidefinite(g_dot)
    assert determinant(g_dot) == -2


def test_catalog_inertia_matches_float_oracle(catalog):
    for e in catalog:
        g = gram_matrix(e.diagram)
        assert tuple(inertia(g)) == float_inertia(g.rows()), e.id


def test_inertia_invariant_under_permutation(catalog):
    rng = random.Random(7)
    for e in catalog[::3]:
        g = gram_matrix(e.diagram)
        rows = g.rows()
        perm = list(range(g.size))
        rng.shuffle(perm)
        shuffled = [[rows[i][j] for j in perm] for i in perm]
        t = inertia(shuffled)
        assert t == inertia(g)
        assert t.positive + t.negative == rank(shuffled)


def _random_symmetric(rng, size):
    values = [R(0), R(Fraction(-1, 2)), -R.sqrt(2, Fraction(1, 2)), R(-1), -R.sqrt(3),
              -parse_expr("cos(pi/5)"), R(Fraction(1, 3)), R.sqrt(5)]
    rows = [[R(0)] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = rng.choice([R(1), R(0), R(-2), R.sqrt(2)])
        for j in range(i + 1, size):
            rows[i][j] = rows[j][i] = rng.choice(values)
    return rows


def _rank_by_minors(rows):
    size = len(rows)
    for k in range(size, 0, -1):
        for rs in combinations(range(size), k):
            for cs in combinations(range(size), k):
                if determinant([[rows[i][j] for j in cs] for i in rs]):
                    return k
    return 0


def test_rank_matches_exhaustive_minors_on_random_matrices():
    rng = random.Random(11)
    for _ in range(60):
        rows = _random_symmetric(rng, rng.randint(1, 5))
        assert rank(rows) == _rank_by_minors(rows)


def test_inertia_matches_oracle_on_random_matrices():
    rng = random.Random(12)
    for _ in range(80):
        rows = _random_symmetric(rng, rng.randint(1, 7))
        assert tuple(inertia(rows)) == float_inertia(rows)


def test_exhaustive_minors_on_dim4_catalog(catalog):
    for e in catalog:
        if e.dimension == 4:
            assert minors_vanish(gram_matrix(e.diagram), 4, exhaustive=True), e.id


def test_dump_is_tab_separated(catalog_by_id):
    text = gram_matrix(catalog_by_id["4a"].diagram).dump()
    lines = text.splitlines()
    assert len(lines) == 7 and all(len(line.split("\t")) == 7 for line in lines)
    assert "-sqrt(3)" in text
