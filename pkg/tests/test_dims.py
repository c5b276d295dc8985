import pytest
from hypothesis import given, strategies as st

from modforms import dims
from modforms.errors import BadN, BadWeight
from modforms.forms import mk_basis
from modforms.linalg import rank


def monomial_count(k):
    return sum(1 for a in range(k // 4 + 1) if (k - 4 * a) % 6 == 0)


def test_level_one_against_monomial_count():
    for k in range(0, 101, 2):
        assert dims.dim_mk_level1(k) == monomial_count(k)
        assert dims.dim_gamma0(1, k) == dims.dim_mk_level1(k)
        assert dims.dim_gamma0(1, k, "cusp") == dims.dim_sk_level1(k)


def test_level_one_monomials_independent():
    for k in (12, 24, 36, 48):
        basis = mk_basis(k, dims.dim_mk_level1(k) + 2)
        assert rank([b.series.coeffs for b in basis]) == len(basis)


def test_printed_values():
    assert dims.dim_gamma0(4, 2) == 2
    assert dims.dim_gamma0(11, 2, "cusp") == 1
    assert dims.dim_new(22, 2) == 0
    assert dims.dim_gamma0(2, 2, "cusp") == 0
    assert dims.dim_gamma0(4, 2, "cusp") == 0
    assert dims.dim_gamma0(11, 2) == 2
    assert dims.dim_mk_level1(2) == 0


def test_gamma0_terms_level_11():
    t = dims.gamma0_terms(11, 2)
    assert t["A1"] == 1 and t["A3"] == 1
    # -3 and -4 are both non-residues mod 11
    assert t["A23"] == 0 and t["A24"] == 0


def test_old_new_decomposition():
    for N in range(1, 201):
        for k in (2, 4, 6, 12):
            assert dims.olddecomp_check(N, k), (N, k)


@given(st.integers(1, 500), st.sampled_from([0, 2, 4, 6, 8, 10, 12]))
def test_nonnegative_and_cusp_below_full(N, k):
    full = dims.dim_gamma0(N, k)
    cusp = dims.dim_gamma0(N, k, "cusp")
    assert 0 <= cusp <= full


def test_beta():
    assert [dims.beta(n) for n in (1, 2, 4, 8, 6, 12, 36)] == [1, -2, 1, 0, 4, -2, 1]


@pytest.mark.parametrize("k", [-2, 3, 2.0])
def test_bad_weight(k):
    with pytest.raises(BadWeight):
        dims.dim_gamma0(3, k)


def test_bad_level():
    with pytest.raises(BadN):
        dims.dim_gamma0(0, 2)
