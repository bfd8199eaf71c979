import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from strategies import ALGEBRAS, chain_maps, complex_pairs, complexes
from symtilt.complexes import (
    ChainMap, ProjComplex, compose, cone, cone_maps, direct_sum, identity, minimize, shift,
    stalk, two_term, zero_map,
)
from symtilt.errors import ContractViolation, StructuralError
from symtilt.homcalc import graded_dims, hom_k, homotopic
from symtilt.presets import monomial, truncated_poly

PROPS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def test_two_term_complex_shape():
    A = truncated_poly(3)
    X = two_term(A, monomial(A, "x"))
    assert X.profile() == {-1: (0,), 0: (0,)}
    assert X.rank() == 2
    assert X.d(-1) == ((monomial(A, "x"),),)


def test_nonzero_square_is_rejected():
    A = truncated_poly(3)
    x = monomial(A, "x")
    with pytest.raises(StructuralError):
        ProjComplex(A, {-1: (0,), 0: (0,), 1: (0,)}, {-1: [[x]], 0: [[x]]})


def test_shift_negates_differential():
    A = truncated_poly(3)
    X = two_term(A, monomial(A, "x"))
    Y = shift(X, 1)
    assert Y.profile() == {-2: (0,), -1: (0,)}
    assert Y.d(-2) == ((A.scale(A.field(-1), monomial(A, "x")),),)


def test_non_chain_map_is_rejected():
    A = truncated_poly(3)
    X, P = two_term(A, monomial(A, "x")), stalk(A)
    f = ChainMap(P, X, 0, {0: [[monomial(A, "x")]]})
    assert f.is_chain_map()
    g = ChainMap(X, P, 0, {-1: [[A.unit]]})
    assert g.is_chain_map()
    with pytest.raises(ContractViolation):
        ChainMap(X, P, 0, {0: [[A.unit]]}).check()


def test_cone_of_identity_is_contractible():
    A = truncated_poly(3)
    X = direct_sum(stalk(A), two_term(A, monomial(A, "x")))
    C = cone(identity(X))
    Cmin, cert = minimize(C)
    assert Cmin.is_zero
    assert len(cert.steps) == X.rank()


def test_cone_of_zero_map_is_direct_sum():
    A = truncated_poly(3)
    X, Y = stalk(A), two_term(A, monomial(A, "x^2"))
    C = cone(zero_map(X, Y))
    assert C.profile() == direct_sum(shift(X, 1), Y).profile()


def test_cone_needs_degree_zero():
    A = truncated_poly(3)
    X = two_term(A, monomial(A, "x"))
    f = hom_k(X, stalk(A), 1).rep(0)
    with pytest.raises(ContractViolation):
        cone(f)


def test_cone_triangle_maps_compose_to_zero():
    A = truncated_poly(3)
    P = stalk(A)
    f = ChainMap(P, P, 0, {0: [[monomial(A, "x")]]}).check()
    C, incl, proj = cone_maps(f)
    assert C.profile() == two_term(A, monomial(A, "x")).profile()
    assert incl.is_chain_map() and proj.is_chain_map()
    assert not compose(incl, f).is_zero()
    assert homotopic(compose(incl, f), ChainMap(P, C, 0, {}))
    assert compose(proj, incl).is_zero()


@PROPS
@given(complexes(), st.integers(-2, 2), st.integers(-2, 2))
def test_shift_is_additive(X, a, b):
    assert shift(shift(X, a), b) == shift(X, a + b)
    assert shift(X, 0) == X


@PROPS
@given(complexes(max_parts=3))
def test_minimize_preserves_homotopy_type(X):
    A = X.algebra
    Xmin, cert = minimize(X)
    assert compose(cert.projection, cert.inclusion) == identity(Xmin)
    assert homotopic(compose(cert.inclusion, cert.projection), identity(X))
    P = stalk(A)
    assert graded_dims(P, X) == graded_dims(P, Xmin)
    assert Xmin.rank() <= X.rank()


@PROPS
@given(st.data())
def test_cone_is_a_complex_with_long_exact_sequence(data):
    X, Y = data.draw(complex_pairs())
    f = data.draw(chain_maps(X, Y, 0))
    if f is None:
        return
    C, incl, proj = cone_maps(f)
    assert incl.is_chain_map() and proj.is_chain_map()
    assert compose(proj, incl).is_zero()
    # rank of C is the sum of ranks; Euler characteristic of Hom(P, -) is additive
    assert C.rank() == X.rank() + Y.rank()
    P = stalk(X.algebra)

    def euler(Z):
        return sum((-1) ** i * d for i, d in graded_dims(P, Z).items())

    assert euler(C) == euler(Y) - euler(X)


@PROPS
@given(st.data())
def test_composition_is_associative(data):
    A = ALGEBRAS[3]
    X, Y, Z, W = (data.draw(complexes(A)) for _ in range(4))
    f, g, h = data.draw(chain_maps(X, Y, 0)), data.draw(chain_maps(Y, Z, 0)), data.draw(chain_maps(Z, W, 0))
    if f is None or g is None or h is None:
        return
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose(identity(Y), f) == f == compose(f, identity(X))
