import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxforge.diagram import (
    INFINITY,
    CoxeterDiagram,
    Dotted,
    Order,
    Unknown,
    canonical_form,
    connected_components,
    format_diagram,
    is_connected,
    parse_diagram,
    render_dot,
    render_tikz,
    subdiagram,
)
from coxforge.errors import DiagramSyntaxError, DuplicateEdge, InvalidWeight, UnknownNode, UnsupportedOrder
from coxforge.radical import RadicalNumber, parse_expr

LABELS = [Order(3), Order(4), Order(5), Order(6), INFINITY, Dotted(parse_expr("sqrt(3)")),
          Dotted(parse_expr("1/2+1/3sqrt(15)"))]


def path(*labels):
    return CoxeterDiagram(len(labels) + 1, {(i, i + 1): lab for i, lab in enumerate(labels)})


def permuted(d, perm):
    edges = {(perm[i], perm[j]): lab for (i, j), lab in d.edges.items()}
    return CoxeterDiagram(d.node_count, edges)


def random_diagram(rng, size, density=0.4):
    edges = {}
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < density:
                edges[(i, j)] = rng.choice(LABELS)
    return CoxeterDiagram(size, edges)


def test_parse_single_edge():
    d = parse_diagram("nodes 2\nedge 0 1 m=3")
    assert d.node_count == 2 and d.label(0, 1) == Order(3)


def test_parse_dotted_sqrt3():
    d = parse_diagram("nodes 2\nedge 0 1 dotted sqrt(3)")
    assert d.label(1, 0) == Dotted(RadicalNumber.sqrt(3))


def test_parse_rejects_weight_below_one():
    with pytest.raises(InvalidWeight):
        parse_diagram("nodes 2\nedge 0 1 dotted 1/2")
    with pytest.raises(InvalidWeight):
        parse_diagram("nodes 2\nedge 0 1 dotted 1")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DuplicateEdge, match="line 3"):
        parse_diagram("nodes 3\nedge 0 1 m=3\nedge 1 0 m=4")
    with pytest.raises(DiagramSyntaxError, match="line 2"):
        parse_diagram("nodes 2\nedge 0 1 m=2")
    with pytest.raises(DiagramSyntaxError, match="line 2"):
        parse_diagram("nodes 2\nedge 0 1 dotted sqrt(")
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("edge 0 1 m=3")
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("nodes 2\nedge 0 5 m=3")
    with pytest.raises(UnsupportedOrder):
        parse_diagram("nodes 2\nedge 0 1 m=7")


def test_parse_unknown_weight_and_tags():
    d = parse_diagram("dim 1\nnodes 2\ntag 0 6,2\ntag 1 5\nedge 0 1 dotted ?w")
    assert d.unknowns() == ["w"] and d.tags == ("6,2", "5") and d.dim == 1
    assert d.node_by_tag("5") == 1
    with pytest.raises(UnknownNode):
        d.node_by_tag("7")


def test_subdiagram_identity_and_empty(catalog_by_id):
    d = catalog_by_id["4a"].diagram
    assert subdiagram(d, range(d.node_count)) == d
    assert subdiagram(d, []).node_count == 0
    with pytest.raises(UnknownNode):
        subdiagram(d, [99])


def test_subdiagram_bold_edge_of_4a(catalog_by_id):
    d = catalog_by_id["4a"].diagram
    sub = subdiagram(d, [d.node_by_tag("9"), d.node_by_tag("7")])
    assert sub.node_count == 2
    assert list(sub.edges.values()) == [INFINITY]


def test_subdiagram_restriction_property():
    rng = random.Random(5)
    for _ in range(50):
        d = random_diagram(rng, 8)
        a = [0, 1, 2, 3]
        b = [4, 5, 6, 7]
        cut = d.with_edges({(i, j): None for i in a for j in b})
        whole = subdiagram(cut, a + b)
        assert subdiagram(whole, a) == subdiagram(cut, a)


def test_connected_components_examples(catalog_by_id):
    assert connected_components(CoxeterDiagram(2)) == [[0], [1]]
    assert connected_components(path(Order(5))) == [[0, 1]]
    assert is_connected(catalog_by_id["4a"].diagram)


def test_canonical_form_examples():
    p = path(Order(3), Order(3))
    assert canonical_form(p) == canonical_form(permuted(p, [2, 1, 0]))
    assert canonical_form(path(Order(3), Order(4))) == canonical_form(path(Order(4), Order(3)))
    tri = CoxeterDiagram(3, {(0, 1): Order(3), (1, 2): Order(3), (0, 2): Order(3)})
    assert canonical_form(tri) != canonical_form(p)


def test_canonical_form_ignores_tags():
    a = CoxeterDiagram(2, {(0, 1): Order(4)}, tags=("x", "y"))
    b = CoxeterDiagram(2, {(0, 1): Order(4)})
    assert canonical_form(a) == canonical_form(b)


def test_canonical_form_separates_weights_and_structure():
    a = path(Dotted(parse_expr("sqrt(3)")), Order(3))
    b = path(Dotted(parse_expr("sqrt(2)")), Order(3))
    assert canonical_form(a) != canonical_form(b)
    # same degree sequence, different graphs: 6-cycle vs two triangles
    hexagon = CoxeterDiagram(6, {(i, (i + 1) % 6): Order(3) for i in range(6)})
    tris = CoxeterDiagram(6, {(0, 1): Order(3), (1, 2): Order(3), (0, 2): Order(3),
                              (3, 4): Order(3), (4, 5): Order(3), (3, 5): Order(3)})
    assert canonical_form(hexagon) != canonical_form(tris)


def test_canonical_form_invariant_under_10k_permutations():
    rng = random.Random(2024)
    checked = 0
    while checked < 10_000:
        size = rng.randint(1, 13)
        d = random_diagram(rng, size, density=rng.choice([0.15, 0.3, 0.6]))
        key = canonical_form(d)
        for _ in range(25):
            perm = list(range(size))
            rng.shuffle(perm)
            assert canonical_form(permuted(d, perm)) == key
            checked += 1


def test_canonical_form_on_highly_symmetric_diagrams():
    # complete graphs and cycles are where refinement alone gets stuck
    for size in (5, 8, 13):
        k = CoxeterDiagram(size, {(i, j): Order(3) for i in range(size) for j in range(i + 1, size)})
        cyc = CoxeterDiagram(size, {(i, (i + 1) % size) if i + 1 < size else (0, size - 1): Order(3)
                                    for i in range(size)})
        rng = random.Random(size)
        perm = list(range(size))
        rng.shuffle(perm)
        assert canonical_form(permuted(k, perm)) == canonical_form(k)
        assert canonical_form(permuted(cyc, perm)) == canonical_form(cyc)


@settings(max_examples=100)
@given(st.integers(min_value=2, max_value=9), st.randoms(use_true_random=False))
def test_isomorphism_equivalence_matches_brute_force(size, rng):
    a = random_diagram(rng, min(size, 6))
    b = random_diagram(rng, min(size, 6))
    from itertools import permutations
    n = a.node_count
    iso = any(permuted(a, list(p)).edges == b.edges for p in permutations(range(n)))
    assert (canonical_form(a) == canonical_form(b)) == iso


def test_format_parse_round_trip_catalog(catalog):
    for e in catalog:
        text = format_diagram(e.diagram, comment=e.source_note)
        assert parse_diagram(text) == e.diagram


def test_render_dot_dashed_label(catalog_by_id):
    dot = render_dot(catalog_by_id["4a"].diagram)
    dashed = [line for line in dot.splitlines() if "dashed" in line]
    assert len(dashed) == 1 and 'label="sqrt(3)"' in dashed[0]
    assert "penwidth=4" in dot


def test_render_tikz_strokes():
    tikz = render_tikz(path(Order(5), INFINITY, Dotted(parse_expr("sqrt(3)"))))
    assert tikz.count("\\draw (") == 3  # three parallel strokes for m=5
    assert "line width" in tikz and "dashed" in tikz
    assert tikz.startswith("\\begin{tikzpicture}")


def test_unknown_label_round_trip():
    d = path(Unknown("w1"), Order(3))
    assert parse_diagram(format_diagram(d)) == d
