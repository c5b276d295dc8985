from fractions import Fraction

import pytest

from modforms import hecke
from modforms.errors import BadInput, BadWeight, MissingPrime, UnsupportedDimension
from modforms.forms import delta, eisenstein_E, eta_form, sk_basis
from modforms.linalg import poly_str
from modforms.tau import tau_table


def naive_hecke(a, k, n, m):
    """b(m) straight from the coset formula (level 1); every d divides m = 0."""
    return sum(Fraction(d) ** (k - 1) * a[m * n // (d * d)]
               for d in range(1, n + 1) if m % d == 0 and n % d == 0)


def test_hecke_action_against_coset_formula():
    e = eisenstein_E(6, 200).series
    a = list(e.coeffs)
    for n in (2, 3, 4, 6, 7):
        t = hecke.hecke_action(e, 6, n)
        for m in range(0, int(t.bound)):
            assert t.coefficient(m) == naive_hecke(a, 6, n, m)


def test_eisenstein_eigenvalue_is_sigma():
    e = eisenstein_E(12, 300).series
    for n in (2, 3, 5, 6, 10):
        t = hecke.hecke_action(e, 12, n)
        lam = sum(d ** 11 for d in range(1, n + 1) if n % d == 0)
        assert t.agrees(e.scale(lam))


def test_delta_eigenvalues_are_tau():
    d = delta(600).series
    tt = tau_table(50)
    for n in range(1, 51):
        t = hecke.hecke_action(d, 12, n)
        assert t.agrees(d.scale(tt[n])), n


def test_precision_of_action():
    d = delta(100).series
    assert hecke.hecke_action(d, 12, 3).bound == 34


def test_composition():
    for n in range(1, 13):
        for m in range(1, 13):
            assert hecke.hecke_compose_check(n, m, 12, 3)
    assert hecke.hecke_compose_check(4, 6, 16, 4)
    assert hecke.hecke_compose_check(2, 2, 12, 10)


def test_matrices_on_s24():
    T2, T3 = hecke.hecke_matrix(24, 2), hecke.hecke_matrix(24, 3)
    assert T2 @ T3 == T3 @ T2
    cp = T2.charpoly()
    assert poly_str(cp) == "x^2 - 1080*x - 20468736"
    disc = cp[1] ** 2 - 4 * cp[2]
    assert disc % 144169 == 0 and disc == 24 ** 2 * 144169
    assert hecke.is_rational_square(Fraction(disc, 144169))


def test_eigenforms_s24_exact():
    efs = hecke.eigenforms(24, 2, 60)
    assert len(efs) == 2
    T3 = hecke.hecke_matrix(24, 3)
    for ef in efs:
        assert ef.coefficient(1) == hecke.Quad(1, 0, 144169)
        assert ef.coefficient(2) == ef.eigenvalue
        # a(2)a(3) = a(6), a(2)^2 = a(4) + 2^23
        assert ef.coefficient(2) * ef.coefficient(3) == ef.coefficient(6)
        assert ef.coefficient(2) * ef.coefficient(2) == ef.coefficient(4) + hecke.Quad(2 ** 23, 0, 144169)
        # a(3) is a root of the T(3) characteristic polynomial
        c = T3.charpoly()
        a3 = ef.coefficient(3)
        assert a3 * a3 + a3 * hecke.Quad(c[1], 0, 144169) + hecke.Quad(c[2], 0, 144169) == hecke.Quad(0, 0, 144169)


def test_eigenform_coefficients_equal_eigenvalues():
    k = 24
    ef = hecke.eigenforms(k, 2, 120)[0]
    series_a = ef.rational_part
    series_b = ef.irrational_part
    for n in (2, 3, 5):
        ta = hecke.hecke_action(series_a, k, n)
        tb = hecke.hecke_action(series_b, k, n)
        lam = ef.coefficient(n)
        # T(n)(A + sqrt(d) B) = lam (A + sqrt(d) B)
        for m in range(1, 10):
            lhs = hecke.Quad(ta.coefficient(m), tb.coefficient(m), ef.d)
            assert lhs == lam * ef.coefficient(m)


def test_dimension_one_eigenforms():
    for k in (12, 16, 18, 20, 22, 26):
        (ef,) = hecke.eigenforms(k, 2, 60)
        f = ef.rational_part
        assert ef.coefficient(1) == hecke.Quad(1)
        assert hecke.hecke_action(f, k, 2).agrees(f.scale(ef.eigenvalue.a))


def test_maeda():
    assert hecke.maeda_check(24)
    assert hecke.maeda_check(12)
    with pytest.raises(BadWeight):
        hecke.maeda_check(14)
    with pytest.raises(UnsupportedDimension):
        hecke.maeda_check(36)


def test_higher_dimension_eigenvalues_numeric():
    efs = hecke.eigenforms(36, 2)
    assert len(efs) == 3 and not any(e.exact for e in efs)


def test_t_n_on_j():
    assert hecke.tn_on_j(2) == [Fraction(1, 2), -744, 81000]
    assert hecke.tn_on_j(3) == [Fraction(1, 3), -744, 356652, -12288000]
    for n in range(1, 7):
        for c in hecke.tn_on_j(n):
            assert (c * n).denominator == 1


def test_quad_arithmetic():
    a = hecke.Quad(1, 2, 5)
    b = hecke.Quad(3, -1, 5)
    assert (a * b) / b == a
    assert a.norm() == 1 - 20
    assert str(hecke.Quad(Fraction(1, 2), -3, 7)) == "1/2 - 3*sqrt(7)"


def test_euler_factor_recovers_tau():
    tt = tau_table(200)
    ap = {p: tt[p] for p in range(2, 201) if all(p % q for q in range(2, p))}
    assert hecke.coefficients_from_euler(ap, 12, 200)[1:] == tt.as_list()
    with pytest.raises(MissingPrime):
        hecke.coefficients_from_euler({2: -24}, 12, 5)


def test_euler_factor_bad_prime():
    assert hecke.euler_factor(-1, 11, 2, N=11) == (1, 1, 0)
    assert hecke.euler_factor(-2, 2, 2, N=11)[2] == 2


def test_level_11_multiplicative():
    f = eta_form([(1, 2), (11, 2)], 200).series
    a = {p: f.coefficient(p) for p in range(2, 200) if all(p % q for q in range(2, p))}
    coeffs = hecke.coefficients_from_euler(a, 2, 199, N=11)
    assert all(coeffs[n] == f.coefficient(n) for n in range(1, 200))


def test_fricke_sign_level_11():
    f = eta_form([(1, 2), (11, 2)], 300)
    assert hecke.fricke_sign(f) == -1


def test_fricke_eta_identity():
    e4 = eisenstein_E(4, 400)
    assert hecke.fricke_eta_identity_check(6, 4, e4)
    assert hecke.fricke_eta_identity_check(10, 4, e4)
    with pytest.raises(BadInput):
        hecke.fricke_eta_identity_check(4, 4, e4)


def test_basis_dimension():
    assert len(sk_basis(24, 3)) == 2
