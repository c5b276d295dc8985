from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from modforms import qexp
from modforms.errors import OutOfGrid, OutOfPrecision, ZeroLeadingCoefficient
from modforms.qexp import QExp

from oracles import partitions_naive, product_series, school_mul

small = st.integers(-50, 50)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def series(draw, min_len=1, max_len=40, offset=None, nonzero_lead=False):
    n = draw(st.integers(min_len, max_len))
    cs = draw(st.lists(fracs, min_size=n, max_size=n))
    if nonzero_lead and cs[0] == 0:
        cs[0] = Fraction(1)
    off = draw(st.integers(-3, 3)) if offset is None else offset
    return QExp(cs, off)


@given(st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=1, max_size=200),
       st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=1, max_size=200))
def test_fast_convolution_matches_schoolbook(a, b):
    n = len(a) + len(b) - 1
    assert qexp._conv(a, b, n) == school_mul(a, b, n)


@given(series(), series(), series())
def test_ring_axioms(f, g, h):
    assert (f + g).agrees(g + f)
    assert ((f * g) * h).agrees(f * (g * h))
    assert (f * (g + h)).agrees(f * g + f * h)
    assert (f - f).is_zero()


@given(series(offset=0, nonzero_lead=True))
def test_inverse(f):
    one = f * f.inv()
    assert one.coefficient(0) == 1
    assert all(one.coefficient(e) == 0 for e in range(1, int(one.bound)))


@given(series(offset=0), st.integers(2, 5))
def test_pow_is_repeated_product(f, m):
    ref = f
    for _ in range(m - 1):
        ref = ref * f
    assert f ** m == ref


@given(series(), st.integers(2, 5))
def test_substitute_then_precision(f, d):
    g = f.substitute_qm(d)
    assert g.offset == f.offset * d
    assert g.prec == d * f.prec
    for e in range(int(g.offset), int(g.bound)):
        want = f.coefficient(Fraction(e, d)) if (e - g.offset) % d == 0 else 0
        assert g.coefficient(e) == want


def test_precision_propagation_of_product():
    f = QExp([1, 2, 3], 0)          # known below q^3
    g = QExp([0, 0, 1, 1, 1, 1], 0)  # valuation 2, known below q^6
    h = f * g
    assert h.bound == min(3 + 2, 6 + 0)


def test_add_keeps_the_smaller_bound():
    assert (QExp([1] * 5, 0) + QExp([1] * 10, -2)).bound == 5


def test_coefficient_errors():
    f = QExp([1, 2, 3], Fraction(1, 24))
    assert f.coefficient(Fraction(1, 24)) == 1
    assert f.coefficient(Fraction(-23, 24)) == 0
    with pytest.raises(OutOfGrid):
        f.coefficient(1)
    with pytest.raises(OutOfPrecision):
        f.coefficient(Fraction(73, 24))
    with pytest.raises(ValueError):
        QExp([1], Fraction(1, 5))


def test_inverse_of_zero_series():
    with pytest.raises(ZeroLeadingCoefficient):
        QExp([0, 0, 0]).inv()


def test_laurent_inverse_moves_offset():
    g = QExp([0, 2, 4, 6], 0).inv()
    assert g.offset == -1 and g.coefficient(-1) == Fraction(1, 2)


def test_derivative():
    f = QExp([5, 1, 1, 1], -1)
    d = f.qderive()
    assert [d.coefficient(e) for e in range(-1, 3)] == [-5, 0, 1, 2]


@given(series())
def test_json_roundtrip(f):
    assert QExp.from_json(f.to_json()) == f


def test_pentagonal_matches_literal_product():
    P = 400
    assert list(qexp.pentagonal_eta(P).coeffs) == product_series([(1, 1)], P)


def test_eta_head_and_cube_head():
    assert [int(x) for x in qexp.pentagonal_eta(16).coeffs] == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]
    cube = qexp.jacobi_eta_cube(11)
    assert cube.offset == Fraction(1, 8)
    assert [int(x) for x in cube.coeffs] == [1, -3, 0, 5, 0, 0, -7, 0, 0, 0, 9]


def test_eta_powers_agree():
    P = 500
    e24 = qexp.eta_quotient([(1, 24)], P)
    assert (qexp.pentagonal_eta(P) ** 24).with_offset(1) == e24
    cube = qexp.jacobi_eta_cube(P)
    assert (cube ** 8).agrees(e24)
    assert e24.offset == 1


def test_eta_quotient_against_literal_product():
    P = 120
    q = qexp.eta_quotient([(1, 2), (11, 2)], P)
    assert q.offset == 1
    assert list(q.coeffs) == product_series([(1, 2), (11, 2)], P)
    r = qexp.eta_quotient([(2, 5), (1, -2), (4, -2)], P)
    assert list(r.coeffs) == product_series([(2, 5), (1, -2), (4, -2)], P)


def test_half_shift():
    ph, s = qexp.half_shift(qexp.eta_quotient([(1, 1)], 10))
    assert ph == Fraction(1, 48)
    assert list(s.coeffs)[:4] == [1, 1, -1, 0]


@pytest.mark.parametrize("a", ["1", "-1", "-1/q", "q^(1/2)", "-q^(1/2)", "sqrt(q)"])
def test_pochhammer(a):
    assert qexp.pochhammer_identity_check(a, 60)


def test_pochhammer_unknown():
    with pytest.raises(ValueError):
        qexp.pochhammer_identity_check("2", 10)


def test_partitions():
    p = qexp.partition_series(201)
    assert p.coefficient(100) == 190569292 == partitions_naive(100)
    assert [int(p.coefficient(n)) for n in range(30)] == [partitions_naive(n) for n in range(30)]
    assert qexp.partition_identity_check(200)


def test_triple_product_and_mutation():
    assert qexp.triple_product_check(8, 40)
    assert qexp.triple_product_check(2, 5)
    assert not qexp.triple_product_check(8, 40, flip_u=True)


def test_immutable():
    f = QExp([1, 2])
    with pytest.raises(AttributeError):
        f._prec = 5
