import random
from fractions import Fraction

import pytest

from a2twist.envelope import (
    EnvElement,
    IdealSlice,
    ModeGen,
    R1,
    R12,
    R121,
    bracket,
    bracket_uu_coeff,
    check_ideal_stability,
    generator_list,
    make_R0,
    monomial_charge,
    monomial_qweight4,
    pbw_monomials,
    u_canonical,
)
from a2twist.fock import TwistedFock
from a2twist.scalar import EchelonBasis, GaussianRational, I, ONE


@pytest.fixture(scope="module")
def fock():
    return TwistedFock()


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def test_mode_gen_parity_checked():
    ModeGen.u(-1)
    ModeGen.z(-4)
    with pytest.raises(ValueError):
        ModeGen.u(-2)
    with pytest.raises(ValueError):
        ModeGen.z(-3)


def test_bracket_classes():
    assert bracket_uu_coeff(-3, -1) == Fraction(-1, 2)  # first index in the 1/4 class
    assert bracket_uu_coeff(-1, -3) == Fraction(1, 2)
    assert bracket_uu_coeff(-1, -5) is None  # sum not integral
    assert bracket_uu_coeff(1, -1) == Fraction(-1, 2)
    assert bracket(ModeGen.u(-1), ModeGen.u(-3)) == EnvElement.monomial([-4], [], gr(Fraction(1, 2)))
    assert bracket(ModeGen.u(-1), ModeGen.u(-5)).is_zero()
    assert bracket(ModeGen.z(-4), ModeGen.u(-1)).is_zero()


def test_bracket_antisymmetry_and_jacobi():
    for m4 in range(-16, 17):
        if m4 % 2 == 0:
            continue
        for n4 in range(-16, 17):
            if n4 % 2 == 0:
                continue
            a = bracket_uu_coeff(m4, n4)
            b = bracket_uu_coeff(n4, m4)
            if a is None:
                assert b is None
            else:
                assert a == -b
    # the derived subalgebra is central, so all double brackets vanish and
    # the Jacobi identity is the statement that z is central: check by
    # normal ordering u(a)u(b)u(c) both ways
    rng = random.Random(5)
    odd = [n for n in range(-9, 10) if n % 2]
    for _ in range(30):
        a4, b4, c4 = rng.choice(odd), rng.choice(odd), rng.choice(odd)
        x = EnvElement.monomial([], [a4]) * (
            EnvElement.monomial([], [b4]) * EnvElement.monomial([], [c4])
        )
        y = (EnvElement.monomial([], [a4]) * EnvElement.monomial([], [b4])) * EnvElement.monomial(
            [], [c4]
        )
        assert x == y


def test_u_canonical_order():
    assert u_canonical([-3, -1]) == (-1, -3)
    assert u_canonical([1, -1, -1]) == (-1, -1, 1)
    assert u_canonical([3, 1, -5]) == (-5, 3, 1)


def test_normal_order_examples(fock):
    # u(-3/4) u(-1/4) = u(-1/4) u(-3/4) - (1/2) z(-1)
    e = EnvElement.monomial([], [-3, -1])
    assert e.terms == {
        ((), (-1, -3)): ONE,
        ((-4,), ()): gr(Fraction(-1, 2)),
    }
    # operator fidelity of the same rewriting
    vac = fock.vacuum()
    direct = fock.apply("a1", -3, fock.apply("a1", -1, vac))
    assert e.evaluate(fock) == direct
    # already canonical forms pass through
    e2 = EnvElement.monomial([-4], [-1])
    assert e2.terms == {((-4,), (-1,)): ONE}
    # annihilator straightening: u(1/4) u(-1/4) u(-1/4)
    e3 = EnvElement.monomial([], [1, -1, -1])
    assert set(e3.terms) == {((), (-1, -1, 1)), ((0,), (-1,))}
    assert e3.terms[((0,), (-1,))] == gr(-1)  # two transpositions, -1/2 each


def test_normal_order_operator_fidelity_random(fock):
    rng = random.Random(11)
    odd = [-1, -3, -5, 1, 3]
    vac = fock.vacuum()
    for _ in range(25):
        word = [rng.choice(odd) for _ in range(rng.randint(2, 4))]
        elt = EnvElement.monomial([], word)
        direct = vac
        for n4 in reversed(word):
            direct = fock.apply("a1", n4, direct)
        assert elt.evaluate(fock) == direct


def test_bracket_matches_operator_commutators(fock):
    vac = fock.vacuum()
    test_vectors = [vac, fock.apply("a1", -5, vac), fock.apply("a12", -4, vac)]
    odd = [-5, -3, -1, 1, 3]
    for m4 in odd:
        for n4 in odd:
            coeff = bracket_uu_coeff(m4, n4)
            for v in test_vectors:
                lhs = fock.apply("a1", m4, fock.apply("a1", n4, v)) - fock.apply(
                    "a1", n4, fock.apply("a1", m4, v)
                )
                if coeff is None:
                    assert lhs.is_zero()
                else:
                    assert lhs == fock.apply("a12", m4 + n4, v).scale(gr(coeff))


def test_R0_frozen_forms():
    r = make_R0(R1, 2)
    assert r.terms == {((), (-1, -1)): gr(2), ((), (-3, 1)): gr(2)}
    assert make_R0(R12, 8).terms == {((-4, -4), ()): ONE}
    assert make_R0(R121, 5).terms == {((-4,), (-1,)): ONE}
    # weight-one generator after projection: 4 u(-1/4)u(-3/4) - (3/2) z(-1)
    proj = make_R0(R1, 4).project_negative()
    assert proj.terms == {
        ((), (-1, -3)): gr(4),
        ((-4,), ()): gr(Fraction(-3, 2)),
    }


def test_R0_admissibility():
    with pytest.raises(ValueError):
        make_R0(R1, 1)
    with pytest.raises(ValueError):
        make_R0(R12, 6)
    with pytest.raises(ValueError):
        make_R0(R121, 4)
    names = [(k, t4) for k, t4, _ in generator_list(8)]
    assert (R1, 2) in names and (R12, 8) in names and (R121, 5) in names


def test_R0_gradings():
    for kind, t4, gen in generator_list(12):
        grade = gen.grade()
        assert grade is not None
        charge, q4 = grade
        assert q4 == t4
        assert charge == {R1: 2, R12: 4, R121: 3}[kind]


def test_R0_kill_vacuum(fock):
    for kind, t4, gen in generator_list(16):
        assert gen.evaluate(fock).is_zero(), (kind, t4)


def test_pbw_enumeration():
    assert pbw_monomials(1, 1) == [((), (-1,))]
    assert pbw_monomials(2, 2) == [((), (-1, -1))]
    assert sorted(pbw_monomials(2, 4)) == sorted([((-4,), ()), ((), (-1, -3))])
    # three pure odd-mode words plus two with one central factor
    assert len(pbw_monomials(3, 9)) == 5
    for mono in pbw_monomials(3, 9):
        assert monomial_charge(mono) == 3
        assert monomial_qweight4(mono) == 9


def test_ideal_bucket_examples(fock):
    slice_ = IdealSlice()

    def rank(charge, q4):
        basis = EchelonBasis()
        for elt in slice_.bucket_span(charge, q4):
            basis.insert(elt.terms)
        return len(basis)

    assert rank(1, 1) == 0
    assert rank(2, 2) == 1  # the square of the lowest mode is a relation
    assert rank(2, 4) == 1
    assert rank(4, 8) == 4
    # evaluation kills every ideal vector
    for key in ((2, 2), (2, 4), (3, 9), (4, 8)):
        for elt in slice_.bucket_span(*key):
            assert elt.evaluate(fock).is_zero()


def test_ideal_dressing_bound_saturates():
    for key in ((2, 4), (2, 8), (3, 9), (4, 12)):
        ranks = []
        for slack in (0, 4):
            basis = EchelonBasis()
            for elt in IdealSlice(slack4=slack).bucket_span(*key):
                basis.insert(elt.terms)
            ranks.append(len(basis))
        assert ranks[0] == ranks[1], key


def test_shift_is_algebra_homomorphism():
    rng = random.Random(3)
    odd = [-1, -3, -5, 1]
    zmodes = [-4, -8, 0]
    for _ in range(20):
        a = EnvElement.monomial(
            [rng.choice(zmodes)], [rng.choice(odd) for _ in range(rng.randint(0, 2))]
        )
        b = EnvElement.monomial([], [rng.choice(odd) for _ in range(rng.randint(1, 2))])
        for direction in (1, -1):
            assert (a * b).shift(direction) == a.shift(direction) * b.shift(direction)
        assert a.shift(1).shift(-1) == a


def test_shift_examples():
    e = EnvElement.monomial([], [-3])
    assert e.shift(1) == EnvElement.monomial([], [-1], gr(0, -1))
    e2 = EnvElement.monomial([-8], [-5])
    assert e2.shift(1) == EnvElement.monomial([-4], [-3], gr(0, -1))


def test_shift_grading():
    for mono in pbw_monomials(3, 9) + pbw_monomials(2, 6):
        e = EnvElement({mono: ONE})
        k, q4 = e.grade()
        img = e.shift(1)
        for m in img.terms:
            assert monomial_charge(m) == k
            assert monomial_qweight4(m) == q4 - 2 * k


def test_companion_map(fock):
    one = EnvElement.unit()
    assert one.psi() == EnvElement.monomial([], [-1])
    rng = random.Random(9)
    for _ in range(15):
        word = [rng.choice([-1, -3, -5]) for _ in range(rng.randint(0, 3))]
        a = EnvElement.monomial([], word)
        assert a.shift(1).psi() == a.right_mul_gen(ModeGen.u(-1))
    # evaluation example
    got = EnvElement.monomial([], [-1]).psi().evaluate(fock)
    want = fock.apply("a1", -3, fock.apply("a1", -1, fock.vacuum())).scale(I)
    assert got == want


def test_ideal_stability():
    rep = check_ideal_stability(24)
    assert rep.passed
    bs = set(tuple(sorted(v.items())) for v in rep.details["solved_b"].values())
    ds = set(tuple(sorted(v.items())) for v in rep.details["solved_d"].values())
    assert len(bs) == 1 and len(ds) == 1  # constants independent of the degree
    assert rep.details["solved_b"]["1"] == {"re": "-2", "im": "0"}
    assert rep.details["solved_d"]["7/4"] == {"re": "-1/2", "im": "0"}
