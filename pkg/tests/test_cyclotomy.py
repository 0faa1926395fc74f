from __future__ import annotations

from fractions import Fraction

import pytest

from cyclotome.config import ParameterError
from cyclotome.cyclotomy import (
    Method,
    build_cyclo_matrix,
    coset_index,
    cyclotomic_number_enum,
    cyclotomic_number_gcd,
    cyclotomic_number_rank,
    cyclotomic_table,
    make_params,
    phi_psi,
    sum_identities,
    sum_identity_values,
    tri_method_mismatches,
    variance_identity,
    variance_values,
    wilson_bijection_check,
)
from cyclotome.field import construct_field, field_for_order


def brute_table(ctx, alpha, e):
    """|C_b cap (C_a + 1)| by discrete logs from repeated multiplication."""
    q = ctx.q
    log = {}
    x = ctx.one
    for i in range(q - 1):
        log[x.code] = i
        x = x * alpha
    coset = {c: i % e for c, i in log.items()}
    table = [[0] * e for _ in range(e)]
    for c, a in coset.items():
        y = ctx.add(c, 1)
        if y:
            table[a][coset[y]] += 1
    return table


def params(q, k):
    return make_params(field_for_order(q), k=k)


def test_make_params_validation():
    ctx = field_for_order(5)
    with pytest.raises(ParameterError):
        make_params(ctx, k=3)
    with pytest.raises(ParameterError):
        make_params(ctx, k=2, e=3)
    with pytest.raises(ParameterError):
        make_params(ctx, k=2, alpha=ctx.element(4))  # 4 has order 2
    p = make_params(ctx, e=2)
    assert (p.e, p.k, p.alpha.code) == (2, 2, 2)


def test_coset_index_examples():
    p = params(5, 2)
    ctx = p.ctx
    assert coset_index(p, ctx.one) == 0
    assert coset_index(p, p.alpha) == 1
    assert coset_index(p, ctx.element(3)) == 1
    with pytest.raises(ParameterError):
        coset_index(p, ctx.zero)


def test_small_tables():
    assert cyclotomic_table(params(5, 2)).entries == ((0, 1), (1, 1))
    assert cyclotomic_table(params(7, 6)).entries == ((5,),)
    for q in (7, 9, 11, 25):
        t = cyclotomic_table(params(q, 1))
        assert t.total() == q - 2 and t.max_entry() <= 1


@pytest.mark.parametrize("q", [5, 7, 9, 13, 25, 27, 49, 81])
def test_every_method_against_brute_force(q):
    ctx = field_for_order(q)
    for k in [k for k in range(1, q) if (q - 1) % k == 0]:
        p = make_params(ctx, k=k)
        want = brute_table(ctx, p.alpha, p.e)
        for method in Method:
            assert [list(r) for r in cyclotomic_table(p, method).entries] == want, (q, k, method)


def test_scalar_methods_on_examples():
    p = params(5, 2)
    assert cyclotomic_number_enum(p, 0, 1) == 1
    assert cyclotomic_number_rank(p, 0, 0) == 0
    assert cyclotomic_number_gcd(p, 0, 1) == 1
    p = params(7, 6)
    assert cyclotomic_number_enum(p, 0, 0) == cyclotomic_number_rank(p, 0, 0) == cyclotomic_number_gcd(p, 0, 0) == 5
    p = params(13, 4)
    assert cyclotomic_number_gcd(p, 0, 0) == cyclotomic_number_enum(p, 0, 0)


def test_cyclo_matrix_examples():
    p = params(5, 2)
    m = build_cyclo_matrix(p, 0, 0)
    assert [[x.code for x in row] for row in m.entries()] == [[1, 2], [2, 1]]
    p = params(13, 4)
    for a in range(p.e):
        m = build_cyclo_matrix(p, a, a)
        assert all(m.entries()[i][i].code == 1 for i in range(p.k))
    p = params(11, 1)
    m = build_cyclo_matrix(p, 2, 3)
    assert len(m.entries()) == 1 and m.entries()[0][0].code == m.gamma


def test_phi_psi_shape():
    p = params(13, 4)
    phi, psi = phi_psi(p, 1, 2)
    assert len(phi) == 5 and phi[-1] == 1
    assert len(psi) == 5 and psi[-1] == 1 and psi[1:4] == [0, 0, 0]


def test_identities_q5():
    t = cyclotomic_table(params(5, 2))
    v = sum_identity_values(t)
    assert (v["sum"], v["sum_sq"]) == (3, 3)
    assert sum_identities(t)
    lhs, rhs = variance_values(t)
    assert lhs == rhs == Fraction(3, 4)
    assert variance_identity(t)


def test_identities_reject_foreign_params():
    t = cyclotomic_table(params(13, 4))
    with pytest.raises(ParameterError):
        sum_identities(t, params(13, 3))


@pytest.mark.parametrize("q,k,size", [(5, 2, 0), (7, 6, 20), (13, 4, 6), (9, 4, 6), (25, 8, 42)])
def test_bijection_sizes(q, k, size):
    rep = wilson_bijection_check(params(q, k))
    assert rep.ok
    assert rep.size_x == rep.size_y == rep.expected == size


def test_alternative_alpha_and_seed():
    ctx = construct_field(5, 2, seed=7)
    p = make_params(ctx, k=6)
    assert tri_method_mismatches(p) == []
    # another primitive element permutes rows and columns but keeps the multiset
    other = next(x for x in ctx.elements() if x.code > p.alpha.code and x and
                 all(x ** ((ctx.q - 1) // r) != 1 for r in (2, 3)))
    p2 = make_params(ctx, k=6, alpha=other)
    a = sorted(cyclotomic_table(p).array.ravel().tolist())
    b = sorted(cyclotomic_table(p2).array.ravel().tolist())
    assert a == b
