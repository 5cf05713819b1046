import random

import pytest

from lensprod.algebra import (
    GF,
    GradedAbGroup,
    INFINITY,
    PoincareSeries,
    QQ,
    TruncPoly,
    TupleSpec,
    ZZ,
    binom_mod2_expand,
    binom_expand,
    elementary_divisors,
    nu_p,
)


def test_nu_p_examples():
    assert nu_p(2, 48) == 4
    assert nu_p(3, 7) == 0
    assert nu_p(5, 125) == 3


def test_nu_p_rejects_bad_input():
    with pytest.raises(ValueError):
        nu_p(4, 10)
    with pytest.raises(ValueError):
        nu_p(2, 0)
    with pytest.raises(ValueError):
        nu_p(2, -8)


def test_nu_p_multiplicative():
    rng = random.Random(7)
    for _ in range(300):
        a = rng.randint(1, 10_000)
        b = rng.randint(1, 10_000)
        for p in (2, 3, 5, 7):
            assert nu_p(p, a * b) == nu_p(p, a) + nu_p(p, b)


def test_binom_mod2_expand_examples():
    assert str(binom_mod2_expand(4, 8)) == "1 + z^4"
    assert str(binom_mod2_expand(0, 8)) == "1"
    assert str(binom_mod2_expand(3, 8)) == "1 + z + z^2 + z^3"


def test_binom_mod2_matches_integer_expansion():
    # Lucas vs exact binomials reduced mod 2
    for k in range(0, 20):
        for prec in (0, 3, 8):
            lucas = binom_mod2_expand(k, prec)
            exact = binom_expand(k, prec)
            reduced = TruncPoly.of(GF(2), exact.coeffs, prec)
            assert lucas == reduced


def test_poly_ops_examples():
    f2 = GF(2)
    one_plus_z = TruncPoly.of(f2, (1, 1), 4)
    assert str(one_plus_z * one_plus_z) == "1 + z^2"

    f = TruncPoly.of(ZZ, (0, 1, 1), 3)
    assert f.compose(f).coeffs == (0, 1, 2, 2)

    g = TruncPoly.of(QQ, (1, 1), 2)
    assert [int(c) for c in g.pow(5).coeffs] == [1, 5, 10]


def test_poly_precision_mismatch_truncates_to_min():
    a = TruncPoly.of(ZZ, (1, 1, 1, 1), 3)
    b = TruncPoly.of(ZZ, (1, 1), 5)
    assert (a + b).prec == 3
    assert (a * b).prec == 3


def test_poly_compose_needs_zero_constant_term():
    a = TruncPoly.of(ZZ, (0, 1), 4)
    b = TruncPoly.of(ZZ, (1, 1), 4)
    with pytest.raises(ValueError):
        a.compose(b)


def test_poly_ring_axioms_randomized():
    rng = random.Random(11)
    for dom in (ZZ, QQ, GF(5)):
        for _ in range(40):
            prec = rng.randint(1, 6)
            a, b, c = (
                TruncPoly.of(dom, [rng.randint(-4, 4) for _ in range(prec + 1)], prec)
                for _ in range(3)
            )
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert a + b == b + a


def test_elementary_divisors():
    assert elementary_divisors([2, 3]) == (6,)
    assert elementary_divisors([2, 4, 3]) == (2, 12)
    assert elementary_divisors([1, 1]) == ()
    assert elementary_divisors([6, 4]) == (2, 12)
    assert elementary_divisors([]) == ()


def test_graded_group_normalized_comparison():
    a = GradedAbGroup.of({2: (0, (2, 3)), 5: (1, ())})
    b = GradedAbGroup.of({2: (0, (6,)), 5: (1, ())})
    assert a == b
    assert a != GradedAbGroup.of({2: (0, (4,)), 5: (1, ())})


def test_poincare_series():
    p = PoincareSeries.of((1, 0, 1))
    q = PoincareSeries.of((1, 0, 0, 1))
    assert (p * q).coeffs == (1, 0, 1, 1, 0, 1)
    assert (p * q).is_palindromic()
    assert str(p) == "1 + s^2"


def test_tuple_spec_derived_quantities():
    s = TupleSpec((1, 1), 2)
    assert (s.r, s.size_sum, s.delta, s.dim) == (2, 2, 0, 6)
    s = TupleSpec((1, 2), INFINITY)
    assert (s.r, s.size_sum, s.delta, s.dim) == (2, 3, 1, 7)


def test_tuple_spec_rejects_unsorted_and_sorts_on_request():
    with pytest.raises(ValueError):
        TupleSpec((2, 1), 4)
    assert TupleSpec.make((2, 1), 4, sort=True).n == (1, 2)
    with pytest.raises(ValueError):
        TupleSpec((), 4)
    with pytest.raises(ValueError):
        TupleSpec((-1,), 4)
    with pytest.raises(ValueError):
        TupleSpec((1,), 0)
