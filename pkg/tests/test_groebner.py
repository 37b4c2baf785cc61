import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rrlab.groebner import (
    INFINITE,
    is_reduced_basis,
    k_dimension,
    normal_form,
    reduced_groebner,
    spair_residues,
    standard_monomials,
)
from rrlab.poly import GREVLEX, LEX, Polynomial, PolyRing, monomials_of_degree

from strategies import RING2, RING3, polys

R2 = PolyRing(("x", "y"), 32003)
R2Q = PolyRing(("x", "y"), 0)


def gb(srcs, ring=R2, order=GREVLEX, truncate=None):
    return reduced_groebner([ring.parse(s) for s in srcs], order, truncate=truncate, ring=ring)


def _exps(monos):
    return sorted(next(iter(m.terms)) for m in monos)


def test_normal_form_of_product_is_zero():
    G = gb(["x^2", "y^2"])
    assert normal_form(R2.parse("x^3*y + x*y^3"), G).is_zero()


def test_normal_form_of_standard_monomial_is_itself():
    G = gb(["x^2", "y^2"])
    assert normal_form(R2.parse("x*y + 3"), G) == R2.parse("x*y + 3")


def test_pair_of_binomials_grevlex():
    G = gb(["x^2 - y", "x*y - 1"])
    assert is_reduced_basis(G)
    assert k_dimension(G) == 3


def test_pair_of_binomials_lex_eliminates():
    G = gb(["x^2 - y", "y^2 - x"], order=LEX)
    assert R2.parse("y^4 - y") in G.gens
    assert R2.parse("x - y^2") in G.gens


@pytest.mark.parametrize("srcs,dim", [
    (["x^2", "y^2"], 4),
    (["x"], INFINITE),
    (["x^6", "y^6"], 36),
    (["x^2+y^5", "y^2"], 4),
    (["1"], 0),
    (["x", "y"], 1),
])
def test_k_dimension(srcs, dim):
    assert k_dimension(gb(srcs)) == dim


def test_unit_ideal():
    G = gb(["x*y - 1", "x"])
    assert G.is_unit()
    assert G.gens == [R2.one()]


def test_standard_monomials():
    G = gb(["x^2", "x*y", "y^3"])
    assert _exps(standard_monomials(G, 10)) == sorted([(0, 0), (1, 0), (0, 1), (0, 2)])


def test_standard_monomials_degree_cap_on_infinite_quotient():
    G = gb(["x"])
    assert _exps(standard_monomials(G, 3)) == [(0, 0), (0, 1), (0, 2), (0, 3)]


def test_truncation_adds_power_of_maximal_ideal():
    G = gb(["x*y"], truncate=3)
    explicit = gb(["x*y", "x^3", "x^2*y", "x*y^2", "y^3"])
    assert G == explicit
    assert k_dimension(G) == 5


def test_truncation_at_zero_is_unit():
    assert gb(["x^5"], truncate=0).is_unit()


def test_empty_generators_need_ring():
    with pytest.raises(ValueError):
        reduced_groebner([])
    assert k_dimension(reduced_groebner([], ring=R2)) == INFINITE


def test_rational_coefficients():
    G = gb(["2*x - 3", "3*y^2 - x"], ring=R2Q)
    assert R2Q.parse("y^2 - 1/2") in G.gens


ideal_gens = st.lists(polys(RING3, max_exp=3, max_terms=3), min_size=1, max_size=3)


@settings(max_examples=60)
@given(ideal_gens)
def test_basis_is_reduced_and_closed(gens):
    assume(any(not g.is_zero() for g in gens))
    G = reduced_groebner(gens, ring=RING3)
    assert is_reduced_basis(G)
    assert spair_residues(G) == []


@settings(max_examples=60)
@given(ideal_gens, st.lists(polys(RING3, max_exp=2, max_terms=3), min_size=3, max_size=3))
def test_combinations_are_members(gens, mults):
    assume(any(not g.is_zero() for g in gens))
    G = reduced_groebner(gens, ring=RING3)
    f = RING3.zero()
    for g, m in zip(gens, mults):
        f = f + g * m
    assert G.contains(f)
    assert all(G.contains(g) for g in gens)


@settings(max_examples=40)
@given(st.lists(polys(RING2, max_exp=4, max_terms=3), min_size=1, max_size=3))
def test_orders_agree_on_colength(gens):
    # adding pure powers keeps the quotient finite
    extra = [RING2.parse("x^5"), RING2.parse("y^5")]
    a = reduced_groebner(gens + extra, GREVLEX, ring=RING2)
    b = reduced_groebner(gens + extra, LEX, ring=RING2)
    assert k_dimension(a) == k_dimension(b)
    assert all(b.contains(g) for g in a.gens)


@settings(max_examples=40)
@given(ideal_gens, st.integers(1, 5))
def test_truncation_matches_explicit_power(gens, N):
    explicit = gens + [Polynomial(RING3, {m: 1}) for m in monomials_of_degree(3, N)]
    assert reduced_groebner(gens, truncate=N, ring=RING3) == reduced_groebner(explicit, ring=RING3)
