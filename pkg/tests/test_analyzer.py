import itertools

import pytest

from a2twist.analyzer import (
    GradedTable,
    PrincipalSubspace,
    check_exact_sequence,
    check_morphisms,
    check_oracle,
    check_presentation,
    check_recursion,
    distinct_odd_partitions,
    graded_dimension,
    partition_oracle,
    solve_raising_constant,
)
from a2twist.fock import TwistedFock
from a2twist.scalar import GaussianRational


@pytest.fixture(scope="module")
def fock():
    return TwistedFock()


@pytest.fixture(scope="module")
def space(fock):
    return PrincipalSubspace(fock, 16)


def test_partition_oracle_values():
    assert partition_oracle(2, 8) == 2  # {1,7}, {3,5}
    assert sorted(distinct_odd_partitions(8, 2)) == [(5, 3), (7, 1)]
    assert partition_oracle(0, 0) == 1
    assert partition_oracle(1, 6) == 0
    assert partition_oracle(3, 9) == 1  # {5,3,1}
    assert partition_oracle(2, 40) == 10
    assert partition_oracle(1, 7) == 1
    assert partition_oracle(-1, 3) == 0


def test_oracle_against_brute_enumeration():
    # cross-check the counting against a second, independent enumeration
    for n in range(0, 22):
        by_m = {}
        odds = [p for p in range(1, n + 1) if p % 2]
        for r in range(0, 5):
            count = 0
            for combo in itertools.combinations(odds, r):
                if sum(combo) == n:
                    count += 1
            by_m[r] = count
        for m, want in by_m.items():
            assert partition_oracle(m, n) == want


def test_small_dimensions(space):
    table = space.table()
    assert table.dim(0, 0) == 1
    for l in range(1, 17):
        assert table.dim(1, l) == (1 if l % 2 else 0)
    assert table.dim(2, 4) == 1
    assert table.dim(2, 2) == 0
    assert table.dim(2, 8) == 2
    assert table.dim(3, 9) == 1
    assert table.dim(4, 16) == 1


def test_oracle_and_recursion(space):
    table = space.table()
    assert check_oracle(table).passed
    assert check_recursion(table).passed


def test_recursion_detects_corruption(space):
    dims = dict(space.dims())
    dims[(2, 8)] = 5
    broken = GradedTable(16, dims)
    assert not check_recursion(broken).passed
    assert not check_oracle(broken).passed


def test_exact_sequence(fock, space):
    rep = check_exact_sequence(fock, space, 14)
    assert rep.passed
    assert rep.checked > 100


def test_presentation(fock, space):
    rep = check_presentation(fock, space.table(), 10)
    assert rep.passed
    finding = rep.details["distinct_mode_basis_finding"]
    # the distinct-odd-mode words happen to give a per-bucket basis
    assert all(v["independent"] and v["spanning"] for v in finding.values())


def test_morphisms(fock):
    rep = check_morphisms(fock, 10)
    assert rep.passed
    assert rep.details["constant_charge_zero"] == {"re": "2", "im": "2"}
    constants = rep.details["constants_by_charge"]
    assert constants["0"] == {"re": "2", "im": "2"}
    assert constants["1"] == {"re": "2", "im": "-2"}
    # the raising/companion constant genuinely depends on the charge
    assert rep.details["single_global_constant_exists"] is False


def test_raising_constant(fock):
    assert solve_raising_constant(fock) == GaussianRational(2, 2)


def test_determinism_across_parallelism(fock):
    a = PrincipalSubspace(fock, 12, jobs=1)
    b = PrincipalSubspace(fock, 12, jobs=2)
    assert a.dims() == b.dims()
    for key in a.bases:
        assert [v.terms for v in a.bases[key]] == [v.terms for v in b.bases[key]]


def test_graded_dimension_helper(fock):
    table = graded_dimension(fock, 8)
    assert table.dim(2, 6) == 1
    assert table.entries[(5, 7)] == 0
