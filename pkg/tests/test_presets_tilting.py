import pytest

from symtilt.algebra import fingerprint
from test_algebra import path_algebra_a2
from symtilt.complexes import compose, stalk, two_term, zero_map
from symtilt.endalg import EndAlgebra
from symtilt.errors import ContractViolation, PreconditionError, StructuralError
from symtilt.homcalc import is_null_homotopic
from symtilt.presets import build_preset, monomial, truncated_poly
from symtilt.tilting import (
    exchange, left_approximation, prop21_tilting, same_profile, verify_left_approx,
    verify_right_approx, verify_tilting,
)


def test_preset_parameters_are_validated():
    with pytest.raises(StructuralError):
        build_preset("example1", n=3)
    with pytest.raises(StructuralError):
        build_preset("example1", n=3, m=3)
    with pytest.raises(StructuralError):
        build_preset("nope", n=3)


def test_monomial_powers_wrap_to_socle():
    inst = build_preset("example3", n=2, s=3)
    A = inst.algebra
    assert monomial(A, "x^2") == monomial(A, "y^3")
    assert monomial(A, "x^3") == A.zero


def test_preset_fixtures_are_attached():
    inst = build_preset("example1", n=3, m=2)
    assert inst.expected["cartan"] == [[3, 4], [4, 8]]
    assert inst.expected["provenance"].startswith("DERIVED")


def test_approximation_of_projective_by_itself():
    A = truncated_poly(3)
    P = stalk(A)
    ap = left_approximation(P, [P], "reduced")
    assert len(ap.components) == 1
    assert verify_left_approx(ap.map, [P])
    ex = exchange(P, [P])
    assert ex.Y.is_zero


def test_raw_and_reduced_approximations():
    inst = build_preset("example1", n=3, m=1)
    X, M = inst.complexes["T2"], [inst.complexes["A"]]
    raw = left_approximation(X, M, "raw")
    red = left_approximation(X, M, "reduced")
    assert verify_left_approx(raw.map, M) and verify_left_approx(red.map, M)
    assert len(red.components) <= len(raw.components)
    assert len(red.components) == 2


def test_zero_map_is_not_an_approximation():
    inst = build_preset("example1", n=3, m=1)
    X, P = inst.complexes["T2"], inst.complexes["A"]
    assert not verify_left_approx(zero_map(X, P), [P])
    assert not verify_right_approx(zero_map(P, X), [P])


def test_exchange_example1_profile():
    inst = build_preset("example1", n=3, m=1)
    A = inst.algebra
    ex = exchange(inst.complexes["T2"], [inst.complexes["A"]])
    assert same_profile(ex.Y, two_term(A, monomial(A, "x^2"))) is not None
    assert ex.right_approx
    f, g, h = ex.triangle
    assert is_null_homotopic(compose(g, f)) and is_null_homotopic(compose(h, g))
    rep = ex.report()
    assert rep["lambda"]["cartan"] == [[3, 2], [2, 4]]
    assert rep["gamma"]["cartan"] == [[3, 4], [4, 8]]
    assert rep["determinants_equal"] == {"graded": True, "degree0": True}


def test_exchange_strict_raises_without_symmetric_certificate():
    inst = build_preset("example1", n=3, m=1)
    with pytest.raises(ContractViolation):
        exchange(inst.complexes["T2"], [inst.complexes["A"]], strict=True)


def test_exchange_needs_symmetric_base():
    A = path_algebra_a2()
    with pytest.raises(PreconditionError):
        exchange(stalk(A, 0), [stalk(A, 1)])


def test_prop21_tilting_over_lambda1():
    inst = build_preset("example1", n=3, m=1)
    L = EndAlgebra(inst.summand_complexes(), graded=False).algebra
    T = prop21_tilting(L, [1], [0])
    verdict = verify_tilting(T)
    assert verdict["tilting"], verdict
    with pytest.raises(PreconditionError):
        prop21_tilting(L, [1], [])


def test_prop21_over_gamma1():
    inst = build_preset("example2", n=3, m=1)
    G = EndAlgebra(inst.summand_complexes(), graded=False).algebra
    T = prop21_tilting(G, [2], [0, 1])
    assert verify_tilting(T)["vanishing"]


def test_degree_zero_exchange_is_example2():
    inst = build_preset("example1", n=3, m=1)
    ex = exchange(inst.complexes["T2"], [inst.complexes["A"]])
    for m, alg in [(1, ex.lam0), (2, ex.gamma0)]:
        other = EndAlgebra(build_preset("example2", n=3, m=m).summand_complexes(), graded=False)
        assert fingerprint(alg) == fingerprint(other.algebra)
