from __future__ import annotations

import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclotome import poly as P
from cyclotome.field import construct_field
from cyclotome.poly import NEG_INF, Poly, poly_gcd

F7 = construct_field(7, 1)
F9 = construct_field(3, 2)


def coeff_lists(ctx, max_len=7):
    return st.lists(st.integers(0, ctx.q - 1), max_size=max_len)


def test_neg_inf_orders_below_ints_and_pickles():
    assert NEG_INF < -10**9 and not NEG_INF > 0
    assert P.degree([]) is NEG_INF and P.degree(P.trim([0, 0])) is NEG_INF
    assert pickle.loads(pickle.dumps(NEG_INF)) is NEG_INF
    with pytest.raises(TypeError):
        NEG_INF + 1  # noqa: B018


@pytest.mark.parametrize("ctx", [F7, F9], ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_divmod_identity(ctx, data):
    f = data.draw(coeff_lists(ctx))
    g = P.trim(data.draw(coeff_lists(ctx, 4)))
    if not g:
        g = [1]
    qq, r = P.pdivmod(ctx, f, g)
    assert P.padd(ctx, P.pmul(ctx, qq, g), r) == P.trim(f)
    assert P.degree(r) < P.degree(g)


@pytest.mark.parametrize("ctx", [F7, F9], ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_gcd_divides_both_and_bezout(ctx, data):
    f = P.trim(data.draw(coeff_lists(ctx)))
    g = P.trim(data.draw(coeff_lists(ctx)))
    d, s, t = P.pgcdex(ctx, f, g)
    assert d == P.pgcd(ctx, f, g)
    assert P.padd(ctx, P.pmul(ctx, s, f), P.pmul(ctx, t, g)) == d
    if d:
        assert d[-1] == 1
        assert P.pmod(ctx, f, d) == [] and P.pmod(ctx, g, d) == []


def test_gcd_of_zero():
    assert P.pgcd(F7, [], []) == []
    assert P.pgcd(F7, [0, 3], []) == [0, 1]


def test_gcd_common_factor():
    # (X-1)(X-2) and (X-1)(X-3) over GF(7) share X-1
    a = P.pmul(F7, [6, 1], [5, 1])
    b = P.pmul(F7, [6, 1], [4, 1])
    assert P.pgcd(F7, a, b) == [6, 1]


def test_powmod_and_eval():
    m = [1, 0, 1]  # X^2 + 1
    assert P.ppowmod(F7, [0, 1], 2, m) == [6]
    assert P.peval(F7, [1, 2, 3], 2) == (1 + 4 + 12) % 7


def test_poly_object_api():
    x = Poly.x(F7)
    f = (x + 1) ** 3
    assert f.coeffs == (1, 3, 3, 1)
    assert f(F7(1)) == 8 % 7
    g = Poly.from_codes(F7, [2, 0, 2])
    assert g.monic().coeffs == (1, 0, 1)
    qq, r = divmod(f, x + 1)
    assert r.is_zero and qq == (x + 1) ** 2
    assert Poly(F7, []).degree is NEG_INF
    with pytest.raises(ValueError):
        poly_gcd(f, Poly.x(F9))
