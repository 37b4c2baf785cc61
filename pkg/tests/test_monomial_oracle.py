import pytest
from hypothesis import given, settings

from rrlab.errors import NoStabilization
from rrlab.groebner import INFINITE, k_dimension
from rrlab.ideals import IdealHandle, colon, intersect
from rrlab.invariants.filtration import ratliff_rush
from rrlab.local import local_equal
from rrlab.monomial_oracle import (
    Staircase,
    minimalize,
    stair_length,
    stair_op,
    stair_power,
    stair_rr,
)
from rrlab.poly import RingCtx

from strategies import monomial_gens, seeded_monomial_ideals

CTX = RingCtx.make(["x", "y"])
EX215 = ((6, 0), (4, 2), (3, 3), (2, 4), (1, 5), (0, 6))


def S(*gens, n=2):
    return Staircase(n, tuple(gens))


def handle(st):
    return IdealHandle(CTX, [CTX.ring.monomial(e) for e in st.gens])


def test_minimalize_drops_multiples():
    assert minimalize([(2, 1), (1, 1), (0, 3), (1, 1)]) == ((0, 3), (1, 1))


def test_lengths():
    assert stair_length(S((2, 0), (0, 2))) == 4
    assert stair_length(S((1, 0))) == INFINITE
    assert stair_length(S((0, 0))) == 0


def test_sextic_staircase_count():
    # 1+2+3+4+5+6 monomials below degree 6, then x^5y and x^4y^3.. are checked by hand:
    # degree 6 leaves x^5*y; degree 7 leaves nothing else
    assert stair_length(S(*EX215)) == 22


def test_three_variables():
    assert stair_length(S((1, 0, 0), (0, 1, 0), (0, 0, 1), n=3)) == 1
    assert stair_length(stair_power(S((1, 0, 0), (0, 1, 0), (0, 0, 1), n=3), 2)) == 4


def test_ops():
    assert stair_op(S((2, 0)), S((1, 0)), "colon") == S((1, 0))
    assert stair_op(S((1, 0)), S((0, 1)), "intersect") == S((1, 1))
    m = S((1, 0), (0, 1))
    assert stair_op(m, m, "product") == S((2, 0), (1, 1), (0, 2))
    assert stair_op(S((1, 0)), S((0, 1)), "sum") == m


def test_colon_intersects_over_generators():
    # (x^2, y^2) : (x, y) = (x^2, x*y, y^2)
    assert stair_op(S((2, 0), (0, 2)), S((1, 0), (0, 1)), "colon") == S((2, 0), (1, 1), (0, 2))


def test_colon_by_empty_is_unit():
    assert stair_op(S((1, 0)), S(), "colon").is_unit()


def test_bad_inputs():
    with pytest.raises(ValueError):
        Staircase(4, ())
    with pytest.raises(ValueError):
        stair_op(S((1, 0)), S((1, 0, 0), n=3), "sum")
    with pytest.raises(ValueError):
        stair_op(S((1, 0)), S((1, 0)), "quotient")
    with pytest.raises(ValueError):
        stair_rr(S((1, 0)))


def test_refuses_non_monomial():
    with pytest.raises(ValueError):
        Staircase.from_ideal(IdealHandle.parse(CTX, ["x+y"]))


def test_rr_examples():
    assert stair_rr(S((1, 0), (0, 1))) == S((1, 0), (0, 1))
    I = S((4, 0), (3, 1), (1, 3), (0, 4))
    assert stair_rr(I) == stair_op(I, S((2, 2)), "sum")
    assert stair_rr(S((2, 0), (0, 2))) == S((2, 0), (0, 2))
    assert stair_rr(S(*EX215)) == S(*EX215)


def test_rr_hard_cap():
    with pytest.raises(NoStabilization):
        stair_rr(S((4, 0), (3, 1), (1, 3), (0, 4)), cap=4, hard_cap=2)


def test_named_instance_on_groebner_path():
    I = IdealHandle.parse(CTX, ["x^4", "x^3*y", "x*y^3", "y^4"])
    closure = ratliff_rush(I).rr_closure
    assert local_equal(closure, I + IdealHandle.parse(CTX, ["x^2*y^2"]))
    assert Staircase.from_ideal(IdealHandle(CTX, closure.gens)) == stair_rr(Staircase.from_ideal(I))


@settings(max_examples=100)
@given(monomial_gens(max_deg=6), monomial_gens(max_deg=6))
def test_colon_product_adjunction(a, b):
    A, B = S(*a), S(*b)
    assert stair_op(stair_op(A, B, "colon"), B, "product") <= A


CORPUS = seeded_monomial_ideals()


def test_corpus_has_nontrivial_closures():
    finite = [S(*g) for g in CORPUS if stair_length(S(*g)) != INFINITE]
    assert len(finite) >= 100
    assert any(stair_rr(I) != I for I in finite)


@pytest.mark.parametrize("i", range(len(CORPUS)))
def test_oracle_agrees_with_groebner_path(i):
    A = S(*CORPUS[i])
    B = S(*CORPUS[(i + 1) % len(CORPUS)])
    HA, HB = handle(A), handle(B)
    assert stair_length(A) == k_dimension(HA.groebner())
    assert Staircase.from_ideal(HA * HB) == stair_op(A, B, "product")
    assert Staircase.from_ideal(HA + HB) == stair_op(A, B, "sum")
    assert handle(stair_op(A, B, "intersect")) == intersect(HA, HB)
    assert handle(stair_op(A, B, "colon")) == colon(HA, HB)
    if stair_length(A) != INFINITE:
        assert local_equal(ratliff_rush(HA, per_n_cap=1).rr_closure, handle(stair_rr(A)))
