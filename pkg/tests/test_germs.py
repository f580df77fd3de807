import pytest

from solk.germs import (
    GermClass,
    UnreachableVertex,
    gtilde_on_class,
    interior_preimages,
    is_quotient_hausdorff,
    junction_germs,
    occurring_classes,
    quotient_summary,
)
from solk.model import Dart, parse_presentation

from helpers import (
    DOUBLING_TEXT,
    THUE_MORSE_TEXT,
    TWO_VERTEX_TEXT,
    aabab,
    fibonacci,
    n_solenoid,
    random_valid_presentations,
)


def pairs(classes):
    return {(c.in_edge, c.out_edge) for c in classes}


def germ(vertex, i, o):
    return GermClass(vertex=vertex, in_dart=Dart(i), out_dart=Dart(o))


def test_junction_germs_aabab():
    assert pairs(junction_germs(aabab())) == {("a", "a"), ("a", "b")}


def test_junction_germs_n_solenoid():
    assert pairs(junction_germs(n_solenoid(2))) == {("a", "a")}


def test_junction_germs_fibonacci():
    assert pairs(junction_germs(fibonacci())) == {("a", "b")}


def test_gtilde_aabab_all_to_ba():
    p = aabab()
    for i, o in [("b", "a"), ("a", "a"), ("a", "b")]:
        img = gtilde_on_class(p, germ("p", i, o))
        assert (img.in_edge, img.out_edge) == ("b", "a")


def test_gtilde_fibonacci():
    img = gtilde_on_class(fibonacci(), germ("p", "a", "b"))
    assert (img.in_edge, img.out_edge) == ("b", "a")


def test_occurring_classes_aabab():
    model = occurring_classes(aabab())
    assert pairs(model.classes) == {("b", "a"), ("a", "b"), ("a", "a")}
    assert ("b", "b") not in pairs(model.classes)


def test_occurring_classes_n_solenoid():
    model = occurring_classes(n_solenoid(3))
    assert pairs(model.classes) == {("a", "a")}


def test_occurring_classes_fibonacci():
    # Closure: ab -> ba -> aa -> ba, with {ba, aa} the cycle.
    model = occurring_classes(fibonacci())
    assert pairs(model.classes) == {("a", "b"), ("b", "a"), ("a", "a")}


def test_occurring_classes_thue_morse_all_two_blocks():
    model = occurring_classes(parse_presentation(THUE_MORSE_TEXT))
    assert pairs(model.classes) == {("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")}


def test_interior_preimages_aabab():
    p = aabab()
    assert interior_preimages(p, germ("p", "a", "a")) == (("a", 1),)
    assert interior_preimages(p, germ("p", "a", "b")) == (("a", 2), ("b", 1))
    assert interior_preimages(p, germ("p", "b", "a")) == ()
    with pytest.raises(ValueError, match="does not occur"):
        interior_preimages(p, germ("p", "b", "b"))


def test_hausdorff_aabab_with_witness():
    ok, witness = is_quotient_hausdorff(aabab())
    assert not ok
    a, b = witness
    assert a != b
    assert a.in_edge == b.in_edge or a.out_edge == b.out_edge


def test_hausdorff_n_solenoid():
    ok, witness = is_quotient_hausdorff(n_solenoid(2))
    assert ok and witness is None


def test_hausdorff_doubling_presentation():
    # g(a) = ab, g(b) = ab: classes {ab, ba}, disjoint dart roles.
    p = parse_presentation(DOUBLING_TEXT)
    model = occurring_classes(p)
    assert pairs(model.classes) == {("a", "b"), ("b", "a")}
    ok, _ = is_quotient_hausdorff(p)
    assert ok


def test_hausdorff_thue_morse_false():
    ok, _ = is_quotient_hausdorff(parse_presentation(THUE_MORSE_TEXT))
    assert not ok


def test_summary_n_solenoids():
    for n in (2, 3):
        s = quotient_summary(n_solenoid(n))
        assert s.hausdorff and s.connected
        assert s.degree == n
        assert s.nuclear_dimension_bound == 1


def test_summary_aabab():
    s = quotient_summary(aabab())
    assert not s.hausdorff
    assert s.connected
    assert s.degree is None
    assert s.class_count_per_vertex == {"p": 3}


def test_summary_two_vertex_cover():
    s = quotient_summary(parse_presentation(TWO_VERTEX_TEXT))
    assert s.hausdorff and s.connected and s.degree == 3
    assert s.class_count_per_vertex == {"u": 1, "v": 1}


def test_unreachable_vertex():
    text = """solenoid v1
vertex p
vertex q
edge a p p
map a -> a a
vmap p -> p
vmap q -> q
"""
    p = parse_presentation(text)
    with pytest.raises(UnreachableVertex, match="'q'"):
        occurring_classes(p)


def corpus():
    return [
        aabab(),
        fibonacci(),
        n_solenoid(2),
        n_solenoid(5),
        parse_presentation(DOUBLING_TEXT),
        parse_presentation(THUE_MORSE_TEXT),
        parse_presentation(TWO_VERTEX_TEXT),
    ] + random_valid_presentations(seed=2024, count=30)


def test_closure_is_fixed_point():
    for p in corpus():
        model = occurring_classes(p)
        class_set = set(model.classes)
        for c in model.classes:
            assert model.gtilde[c] in class_set
        for g in junction_germs(p):
            assert g in class_set


def test_closure_idempotent():
    for p in corpus():
        assert occurring_classes(p).classes == occurring_classes(p).classes


def test_gtilde_surjective_on_classes():
    for p in corpus():
        model = occurring_classes(p)
        for c in model.classes:
            assert model.preimage_count(c) >= 1


def test_junction_count_identity():
    for p in corpus():
        model = occurring_classes(p)
        total = sum(len(v) for v in model.interior_preimage_table.values())
        assert total == sum(len(p.edge_map[e]) - 1 for e in p.graph.edge_names())


def test_class_count_bounded_by_dart_degrees():
    for p in corpus():
        model = occurring_classes(p)
        for v in p.graph.vertices:
            indeg = sum(1 for e in p.graph.edges if e.target == v)
            outdeg = sum(1 for e in p.graph.edges if e.source == v)
            count = sum(1 for c in model.classes if c.vertex == v)
            assert count <= indeg * outdeg


def test_hausdorff_connected_implies_constant_degree():
    for p in corpus():
        s = quotient_summary(p)  # raises DegreeNotConstant on violation
        if s.hausdorff and s.connected:
            assert s.degree is not None and s.degree >= 2


def test_occurring_classes_invariant_under_substitution_powers():
    # The occurring two-sided germs describe the expanded line itself, so
    # presenting the same line by an iterate of the substitution must not
    # change them.
    from solk.model import substitution_power

    for p in corpus():
        base = occurring_classes(p).classes
        for k in (2, 3):
            assert occurring_classes(substitution_power(p, k)).classes == base
