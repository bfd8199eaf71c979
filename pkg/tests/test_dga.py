import pytest
from hypothesis import HealthCheck, given, settings

from strategies import complexes
from symtilt.algebra import fingerprint
from symtilt.complexes import direct_sum, stalk
from symtilt.dga import DGAlgebra, cohomology, degree_pattern, differential_arrows, rhom_dga
from symtilt.endalg import EndAlgebra
from symtilt.errors import StructuralError
from symtilt.fields import QQ
from symtilt.homcalc import graded_dims
from symtilt.presets import build_preset, truncated_poly

PROPS = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def section7():
    inst = build_preset("dga_section7", n=2, s=2)
    return inst, [inst.complexes["A"], inst.complexes["T2x"]]


def test_tx_dga_shape():
    _, S = section7()
    D = rhom_dga(S)
    assert D.dim == 36
    assert degree_pattern(D) == [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]
    assert differential_arrows(D) == [
        ((0, 2), (0, 1)), ((1, 0), (2, 0)), ((1, 1), (2, 1)),
        ((1, 2), (1, 1)), ((1, 2), (2, 2)), ((2, 2), (2, 1)),
    ]


def test_ty_has_same_pattern_and_arrows():
    inst, S = section7()
    Dx = rhom_dga(S)
    Dy = rhom_dga([inst.complexes["A"], inst.complexes["T2y"]])
    assert degree_pattern(Dx) == degree_pattern(Dy)
    assert differential_arrows(Dx) == differential_arrows(Dy)


def test_cohomology_matches_hom_and_end_ring():
    _, S = section7()
    H = cohomology(rhom_dga(S))
    T = direct_sum(*S)
    assert {i: d for i, d in H.dims.items() if d} == graded_dims(T, T)
    assert fingerprint(H.degree0()) == fingerprint(EndAlgebra(S, graded=False).algebra)


def test_invalid_dga_is_rejected():
    # one generator t in degree 1 with d(1) = t breaks d(1) = d(1 * 1) = 2 d(1)
    table = [[{0: 1}, {1: 1}], [{1: 1}, {}]]
    with pytest.raises(StructuralError):
        DGAlgebra(QQ, ["1", "t"], [0, 1], table, [[QQ(0), QQ(1)], [QQ(0), QQ(0)]], [1, 0])


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(complexes(truncated_poly(3), max_parts=2))
def test_dga_axioms_and_cohomology(X):
    # construction checks d^2 = 0, degree +1, Leibniz and the unit
    D = rhom_dga(X, validate=X.rank() <= 3)
    H = cohomology(D)
    assert {i: d for i, d in H.dims.items() if d} == graded_dims(X, X)


@PROPS
@given(complexes(truncated_poly(2), max_parts=2))
def test_grading_is_additive(X):
    D = rhom_dga(X)
    for a in range(D.dim):
        for b in range(D.dim):
            prod = D.mul(D.basis_element(a), D.basis_element(b))
            degs = {D.degrees[k] for k, c in enumerate(prod) if c}
            assert degs <= {D.degrees[a] + D.degrees[b]}


def test_stalk_dga_is_the_algebra():
    A = truncated_poly(3)
    D = rhom_dga(stalk(A))
    assert D.dim == 3 and all(not any(row) for row in D.d)
