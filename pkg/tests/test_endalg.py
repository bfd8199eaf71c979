import pytest

from symtilt.algebra import cartan_matrix
from symtilt.complexes import compose, stalk, two_term
from symtilt.endalg import (
    EndAlgebra, end_graded, end_ungraded, parse_relation, parse_relations, quiver_data,
    spanning_check, verify_relations,
)
from symtilt.errors import StructuralError
from symtilt.presets import build_preset, monomial, truncated_poly


def test_parse_relation_terms():
    r = parse_relation("beta alpha^2 = gamma + 2 delta")
    assert dict((w, c) for c, w in r.terms) == {
        ("beta", "alpha", "alpha"): 1, ("gamma",): -1, ("delta",): -2}


def test_parse_chain_of_equalities_splits():
    rels = parse_relations(["a = b = 0"])
    assert [r.label for r in rels] == ["a = 0", "b = 0"]


def test_parse_power_of_group():
    r = parse_relation("(a b)^2 = 0")
    assert r.terms == ((1, ("a", "b", "a", "b")),)


@pytest.mark.parametrize("text", ["a = = b", "a ^ = 0", "(a b = 0", ""])
def test_parse_rejects_garbage(text):
    with pytest.raises(StructuralError):
        parse_relation(text)


def test_multiplication_is_composition():
    inst = build_preset("example1", n=3, m=1)
    E = EndAlgebra(inst.summand_complexes(), graded=True)
    g = inst.generators
    a = E.element(g["alpha"].map, 0, 0)
    b = E.element(g["beta"].map, 0, 1)
    ba = E.element(compose(g["beta"].map, g["alpha"].map), 0, 1)
    assert E.algebra.mul(b, a) == ba


def test_graded_dims_and_grading():
    inst = build_preset("example1", n=3, m=1)
    E = end_graded(inst.summand_complexes())
    assert E.dim == 11
    assert sorted(set(E.grading)) == [-1, 0, 1]
    assert E.graded_dims(1, 1) == {-1: 1, 0: 2, 1: 1}
    assert E.degree0().dim == len(E.degree_part(0))


def test_ungraded_is_degree_zero_part():
    inst = build_preset("example2", n=3, m=1)
    B = end_ungraded(inst.summand_complexes())
    assert cartan_matrix(B) == [[3, 1, 0], [1, 2, 1], [0, 1, 3]]


def test_relation_failure_is_reported():
    inst = build_preset("example1", n=3, m=1)
    E = end_graded(inst.summand_complexes())
    res = verify_relations(E, inst.generators, parse_relations(["alpha = 0", "eps^2 = 0"]))
    assert [r.passed for r in res] == [False, True]
    assert res[0].as_dict()["passed"] is False


def test_single_generator_does_not_span():
    inst = build_preset("example1", n=3, m=1)
    E = end_graded(inst.summand_complexes())
    assert spanning_check(E, inst.generators)
    assert not spanning_check(E, {"alpha": inst.generators["alpha"]})


def test_quiver_of_gamma2():
    inst = build_preset("example2", n=4, m=2)
    E = EndAlgebra(inst.summand_complexes(), graded=False)
    assert quiver_data(E) == (3, [[1, 1, 0], [1, 1, 1], [0, 1, 1]])


def test_local_end_ring_of_projective():
    A = truncated_poly(4)
    E = end_graded([stalk(A)])
    assert E.dim == 4 and cartan_matrix(E.algebra) == [[4]]
    X = two_term(A, monomial(A, "x"))
    assert end_graded([X]).dim == 4
