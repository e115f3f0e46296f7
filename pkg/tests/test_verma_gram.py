import pytest
from hypothesis import given, settings, strategies as st

from typea_irreps.freudenthal import weyl_multiplicity
from typea_irreps.root_system import root_coordinates
from typea_irreps.verma_gram import (
    ResourceExceeded,
    format_gram,
    gram_matrix,
    gram_on_combinations,
    irreducible_multiplicity,
    kostant_count,
    parse_gram,
    rank_mod_p,
    rational_rank,
    smith_normal_form,
    spanning_monomials,
)

weights = st.integers(2, 4).flatmap(
    lambda l: st.tuples(*[st.integers(0, 2)] * l))


@pytest.mark.parametrize("c,n", [
    ((0,), 1),
    ((1,), 1),
    ((1, 1), 2),
    ((1, 1, 1), 4),
    ((2, 1), 2),
    ((1, 2, 1), 5),
    ((2, 2), 3),
])
def test_kostant_count(c, n):
    assert kostant_count(c) == n


def test_kostant_count_saturates_at_cap():
    assert kostant_count((3, 3, 3, 3), cap=10) == 11


def test_spanning_monomials_match_kostant():
    lam = (2, 1, 1)
    for mu in ((1, 1, 0), (0, 0, 1), (0, 2, 1)):
        c = root_coordinates(lam, mu)
        assert c is not None
        assert len(spanning_monomials(lam, mu)) == kostant_count(c)


def test_spanning_monomials_ascending_root_order():
    # factors inside each monomial never step backwards
    for mon in spanning_monomials((1, 1, 1), (0, 1, 0)):
        roots = [r for r, _ in mon]
        assert roots == sorted(roots)


def test_gram_matrix_small_cell():
    gm = gram_matrix((1, 1, 0), (0, 0, 1))
    assert gm.rows == [[2, -1], [-1, 2]]


def test_gram_matrix_symmetric():
    gm = gram_matrix((2, 1, 1), (0, 0, 1))
    n = len(gm.rows)
    for a in range(n):
        for b in range(n):
            assert gm.rows[a][b] == gm.rows[b][a]


def test_gram_methods_agree():
    lam, mu = (1, 1, 1), (0, 1, 0)
    auto = gram_matrix(lam, mu, method="auto")
    straight = gram_matrix(lam, mu, method="straighten")
    assert auto.rows == straight.rows


def test_gram_on_combinations_diagonal():
    lam = (1, 1, 0)
    mons = spanning_monomials(lam, (0, 0, 1))
    sub = gram_on_combinations(lam, (0, 0, 1), [{mons[0]: 1}])
    assert sub == [[2]]


def test_rank_helpers():
    A = [[2, -1], [-1, 2]]
    assert rational_rank(A) == 2
    assert rank_mod_p(A, 3) == 1
    assert rank_mod_p(A, 2) == 2


def test_smith_normal_form_known():
    assert smith_normal_form([[2, -1], [-1, 2]]) == [1, 3]
    assert smith_normal_form([[2, 0], [0, 4]]) == [2, 4]


def test_smith_normal_form_divisibility():
    divs = smith_normal_form([[6, 4, 2], [4, 6, 4], [2, 4, 6]])
    for a, b in zip(divs, divs[1:]):
        assert b % a == 0


@given(weights)
@settings(max_examples=25, deadline=None)
def test_rational_rank_equals_weyl_multiplicity(lam):
    from typea_irreps.weyl_orbits import subdominant_weights
    for mu in subdominant_weights(lam)[:3]:
        try:
            gm = gram_matrix(lam, mu, cap=400)
        except ResourceExceeded:
            continue
        assert rational_rank(gm) == weyl_multiplicity(lam, mu)


@pytest.mark.parametrize("lam,mu,p,m", [
    ((1, 1, 0), (0, 0, 1), 3, 1),
    ((1, 1, 0), (0, 0, 1), 2, 2),
    ((1, 0, 1), (0, 0, 0), 2, 2),
    ((1, 0, 1), (0, 0, 0), 3, 3),
    ((0, 1, 1, 0, 0), (0, 0, 0, 0, 1), 2, 4),
    ((2, 0, 0, 0, 0, 0, 2), (0, 0, 0, 0, 0, 0, 0), 3, 27),
])
def test_irreducible_multiplicity(lam, mu, p, m):
    assert irreducible_multiplicity(lam, mu, p) == m


def test_irreducible_multiplicity_methods_agree():
    lam, mu = (1, 1, 1), (0, 1, 0)
    for p in (2, 3, 5):
        stream = irreducible_multiplicity(lam, mu, p)
        dense = irreducible_multiplicity(lam, mu, p, method="dense")
        assert stream == dense


def test_irreducible_multiplicity_rejects_composite_char():
    with pytest.raises(ValueError):
        irreducible_multiplicity((1, 1, 0), (0, 0, 1), 6)


def test_cap_raises_with_blocking():
    with pytest.raises(ResourceExceeded) as info:
        irreducible_multiplicity((2, 2, 2), (0, 0, 0), 2, cap=3)
    assert info.value.blocking == (0, 0, 0)


def test_format_parse_round_trip():
    gm = gram_matrix((1, 1, 0), (0, 0, 1))
    assert parse_gram(format_gram(gm)) == gm.rows
