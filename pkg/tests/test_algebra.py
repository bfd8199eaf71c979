import pytest

from symtilt.algebra import (
    FDAlgebra, cartan_matrix, center, commutator_space, degeneracy_witness, fingerprint,
    graded_symmetric_functionals, radical, radical_powers, subalgebra, symmetric_functionals,
    symmetrizing_form, symmetry_report,
)
from symtilt.endalg import EndAlgebra
from symtilt.errors import StructuralError, UnsupportedFeatureError
from symtilt.fields import QQ, Field
from symtilt.presets import build_preset, dihedral_base, monomial, truncated_poly


def path_algebra_a2(field=QQ):
    """Path algebra of 1 -> 2: basis e1, e2, a with a = e2 a e1."""
    table = [[{} for _ in range(3)] for _ in range(3)]
    table[0][0] = {0: 1}
    table[1][1] = {1: 1}
    table[1][2] = {2: 1}
    table[2][0] = {2: 1}
    return FDAlgebra(field, ["e1", "e2", "a"], table, [1, 1, 0], [[1, 0, 0], [0, 1, 0]])


def test_truncated_poly_structure():
    A = truncated_poly(4)
    x = monomial(A, "x")
    assert A.mul(x, A.mul(x, x)) == monomial(A, "x^3")
    assert A.mul(monomial(A, "x^3"), x) == A.zero
    assert len(radical(A)) == 3
    assert radical_powers(A) == [3, 2, 1]
    assert len(center(A)) == 4
    assert cartan_matrix(A) == [[4]]


def test_dihedral_base_relations():
    A = dihedral_base(2, 3)
    x, y = monomial(A, "x"), monomial(A, "y")
    assert A.mul(x, y) == A.mul(y, x) == A.zero
    assert monomial(A, "x^2") == monomial(A, "y^3")
    assert A.dim == 5


def test_invalid_table_is_rejected():
    table = [[{0: 1}, {1: 1}], [{1: 1}, {0: 1}]]
    with pytest.raises(StructuralError):
        FDAlgebra(QQ, ["1", "t"], table, [1, 0], [[1, 0], [0, 1]])


def test_path_algebra_is_not_symmetric():
    A = path_algebra_a2()
    assert cartan_matrix(A) == [[1, 0], [1, 1]]
    assert symmetrizing_form(A) is None
    assert not fingerprint(A).symmetric


def test_local_bases_are_symmetric():
    for A in (truncated_poly(3), dihedral_base(2, 2), dihedral_base(3, 2, Field(2))):
        lam = symmetrizing_form(A)
        assert lam is not None
        assert symmetry_report(A)["symmetric"]


def test_radical_needs_characteristic_zero():
    with pytest.raises(UnsupportedFeatureError):
        radical(truncated_poly(3, Field(2)))


def test_subalgebra_needs_the_unit():
    A = path_algebra_a2()
    B = subalgebra(A, [0, 1])
    assert B.dim == 2 and cartan_matrix(B) == [[1, 0], [0, 1]]
    with pytest.raises(StructuralError):
        subalgebra(A, [0])


def test_fingerprint_ignores_summand_order():
    inst = build_preset("example1", n=3, m=1)
    S = inst.summand_complexes()
    assert fingerprint(EndAlgebra(S, graded=True).algebra) == fingerprint(EndAlgebra(S[::-1], graded=True).algebra)


def test_graded_end_algebra_has_only_graded_symmetric_form():
    E = EndAlgebra(build_preset("example1", n=3, m=1).summand_complexes(), graded=True)
    A = E.algebra
    assert degeneracy_witness(A, symmetric_functionals(A)) is not None
    report = symmetry_report(A, E.grading)
    assert report == {**report, "symmetric": False, "graded_symmetric": True}
    assert len(commutator_space(A)) < A.dim
    assert graded_symmetric_functionals(A, E.grading)


def test_graded_end_algebra_is_symmetric_in_characteristic_two():
    E = EndAlgebra(build_preset("example1", n=3, m=1, field=Field(2)).summand_complexes(), graded=True)
    assert symmetrizing_form(E.algebra) is not None
