import random
from fractions import Fraction

import pytest

from a2twist.scalar import (
    EchelonBasis,
    ExactMatrix,
    GaussianRational,
    I,
    ONE,
    QuarterInt,
    ZERO,
    i_power,
    span_membership,
)


def rand_scalar(rng, span=9):
    return GaussianRational(
        Fraction(rng.randint(-span, span), rng.randint(1, 5)),
        Fraction(rng.randint(-span, span), rng.randint(1, 5)),
    )


def test_field_examples():
    one_plus = GaussianRational(1, 1)
    one_minus = GaussianRational(1, -1)
    assert one_plus * one_minus == GaussianRational(2)
    assert one_plus.inverse() == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    assert I ** 4 == ONE
    assert I * I == GaussianRational(-1)


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_field_axioms_random():
    rng = random.Random(20240817)
    for _ in range(250):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == ONE
            assert a ** -2 == (a.inverse()) ** 2


def test_i_power_cycle():
    assert [i_power(k) for k in range(4)] == [ONE, I, GaussianRational(-1), GaussianRational(0, -1)]
    assert i_power(-1) == GaussianRational(0, -1)
    assert i_power(7) == i_power(3)


def test_quarter_int_classification_exhaustive():
    for q in range(-17, 18):
        x = QuarterInt(q)
        flags = [x.is_integer(), x.is_half_odd(), x.is_quarter_class(), x.is_three_quarter_class()]
        assert sum(flags) == 1


def test_quarter_int_arithmetic():
    a = QuarterInt.of(Fraction(3, 4))
    b = QuarterInt.of(Fraction(-1, 2))
    assert (a + b).as_fraction() == Fraction(1, 4)
    assert (-a).q == -3
    assert b < a
    with pytest.raises(ValueError):
        QuarterInt.of(Fraction(1, 3))


def test_rank_examples():
    assert ExactMatrix.identity(3).rank() == 3
    assert ExactMatrix(4, 5).rank() == 0
    m = ExactMatrix(2, 2, {(0, 0): ONE, (0, 1): I, (1, 0): I, (1, 1): GaussianRational(-1)})
    assert m.rank() == 1


def rand_sparse(rng, rows, cols, density=0.3):
    m = ExactMatrix(rows, cols)
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                m[r, c] = GaussianRational(rng.randint(-4, 4), rng.randint(-2, 2))
    return m


def test_rank_transpose_and_nullity():
    rng = random.Random(7)
    sizes = [(5, 7), (10, 10), (20, 14), (50, 50)]
    for rows, cols in sizes:
        m = rand_sparse(rng, rows, cols, density=0.15)
        r = m.rank()
        assert r == m.transpose().rank()
        kernel = m.kernel_basis()
        assert r + len(kernel) == cols
        for vec in kernel:
            assert not m.apply(vec)


def test_span_membership():
    b1 = {0: ONE, 1: GaussianRational(2)}
    b2 = {1: ONE, 2: GaussianRational(-1)}
    v = {0: ONE, 1: GaussianRational(3), 2: GaussianRational(-1)}
    coeffs = span_membership(v, [b1, b2])
    assert coeffs == [ONE, ONE]
    assert span_membership({0: I, 1: GaussianRational(0, 2)}, [b1, b2]) == [I, ZERO]
    assert span_membership({3: ONE}, [b1, b2]) is None


def test_echelon_basis_incremental():
    basis = EchelonBasis()
    assert basis.insert({0: ONE, 1: ONE})
    assert basis.insert({1: ONE})
    assert not basis.insert({0: GaussianRational(2), 1: GaussianRational(5)})
    assert basis.contains({0: I, 1: I})
    assert not basis.contains({2: ONE})
