"""Partition monoid, the type collapse map, fibers and dimensions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import jcforge as jf
from jcforge.errors import BudgetExceeded, NotInImage, ParseError, TypeMismatch
from jcforge.partitions import (Partition, enumerate_preimages, existence_check,
                                has_multiple_preimages, jc_dimension, mult_of,
                                parse_partition, partitions_of, splice,
                                standard_preimage, weight, zeta_apply,
                                zeta_generator)

from conftest import seeded

partition_st = st.lists(st.integers(1, 9), max_size=7).map(
    lambda parts: Partition(sorted(parts, reverse=True)))


def test_partition_type():
    assert Partition([3, 1, 1]).part(1) == 3
    assert Partition([3, 1, 1]).part(4) == 0
    assert str(Partition([])) == "[]"
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([0])
    assert parse_partition("[4,2]") == Partition([4, 2])
    with pytest.raises(ParseError):
        parse_partition("4,2")


def test_partitions_of_counts():
    # partition numbers p(0)..p(10)
    expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for m, count in enumerate(expected):
        assert len(list(partitions_of(m))) == count
    fibers = list(partitions_of(6))
    assert fibers == sorted(fibers, reverse=True)


def test_splice():
    phi = Partition([5, 2])
    assert splice(phi, Partition([])) == phi
    assert splice(Partition([3, 1, 1]), Partition([4, 2])) == Partition([4, 3, 2, 1, 1])
    assert splice(Partition([2]), Partition([2])) == Partition([2, 2])


@given(partition_st, partition_st)
def test_splice_commutative(a, b):
    assert splice(a, b) == splice(b, a)
    assert sum(splice(a, b)) == sum(a) + sum(b)


def test_mult_of():
    phi = Partition([2, 1, 1])
    assert mult_of(1, phi) == 2
    assert mult_of(3, phi) == 0
    assert mult_of(2, Partition([2, 2, 2])) == 3


def test_weight():
    assert weight(Partition([])) == 0
    assert weight(Partition([1] * 6)) == 36
    assert weight(Partition([4, 2])) == 10


def test_zeta_generator():
    assert zeta_generator(5, 1) == Partition([5])
    assert zeta_generator(3, 2) == Partition([2, 1])
    assert zeta_generator(6, 2) == Partition([3, 3])
    assert zeta_generator(1, 3) == Partition([1])


def test_zeta_apply():
    assert zeta_apply(Partition([2, 1]), 2) == Partition([1, 1, 1])
    assert zeta_apply(Partition([1, 1, 1]), 2) == Partition([1, 1, 1])
    assert zeta_apply(Partition([5, 1]), 2) == Partition([3, 2, 1])
    phi = Partition([4, 2, 1])
    assert zeta_apply(phi, 1) == phi


@given(partition_st, partition_st, st.integers(1, 6))
@settings(max_examples=300)
def test_zeta_monoid_homomorphism(a, b, q):
    assert zeta_apply(splice(a, b), q) == splice(zeta_apply(a, q), zeta_apply(b, q))


def test_zeta_monoid_homomorphism_bulk():
    """10^4 random pairs, q <= 6."""
    rng = seeded(20)
    for _ in range(10_000):
        q = rng.randint(1, 6)
        a = Partition(sorted((rng.randint(1, 8) for _ in range(rng.randint(0, 5))),
                             reverse=True))
        b = Partition(sorted((rng.randint(1, 8) for _ in range(rng.randint(0, 5))),
                             reverse=True))
        assert zeta_apply(splice(a, b), q) == splice(zeta_apply(a, q),
                                                     zeta_apply(b, q))
        assert sum(zeta_apply(a, q)) == sum(a)


def test_existence_check():
    assert existence_check(Partition([4, 3, 1]), 1)
    assert not existence_check(Partition([2]), 2)
    assert not existence_check(Partition([2, 2, 2]), 2)
    assert existence_check(Partition([2, 2, 1, 1]), 2)


def test_standard_preimage():
    assert standard_preimage(Partition([1] * 6), 2) == Partition([2, 2, 2])
    assert standard_preimage(Partition([3, 2, 1]), 2) == Partition([5, 1])
    psi = Partition([3, 1])
    assert standard_preimage(psi, 1) == psi
    with pytest.raises(NotInImage):
        standard_preimage(Partition([2]), 2)


def test_enumerate_preimages():
    fiber = enumerate_preimages(Partition([1] * 6), 2)
    assert fiber == [Partition([2, 2, 2]), Partition([2, 2, 1, 1]),
                     Partition([2, 1, 1, 1, 1]), Partition([1, 1, 1, 1, 1, 1])]
    assert enumerate_preimages(Partition([2, 2, 2]), 2) == []
    psi = Partition([4, 1])
    assert enumerate_preimages(psi, 1) == [psi]
    with pytest.raises(BudgetExceeded):
        enumerate_preimages(Partition([31]), 2)
    assert enumerate_preimages(Partition([31]), 2, bound=31) == []


def test_has_multiple_preimages():
    assert not has_multiple_preimages(Partition([3, 2, 1]), 2)
    assert has_multiple_preimages(Partition([1] * 6), 2)
    assert has_multiple_preimages(Partition([2, 1, 1, 1, 1]), 2)
    assert not has_multiple_preimages(Partition([2, 1]), 1)
    with pytest.raises(NotInImage):
        has_multiple_preimages(Partition([2]), 2)


def _stride_uniqueness_holds(phi, q):
    """At most one part strictly between rq and (r+1)q, for every r >= 0."""
    for r in range(0, max(phi, default=0) // q + 1):
        strict = [a for a in phi if r * q < a < (r + 1) * q]
        if len(strict) > 1:
            return False
    return True


def test_combinatorial_oracle_small():
    """Closed-form criteria vs exhaustive fibers for m <= 8, q <= 4."""
    for m in range(0, 9):
        for q in range(1, 5):
            for psi in partitions_of(m):
                fiber = enumerate_preimages(psi, q)
                assert existence_check(psi, q) == bool(fiber)
                for phi in fiber:
                    assert zeta_apply(phi, q) == psi
                if fiber:
                    std = standard_preimage(psi, q)
                    assert std in fiber
                    assert _stride_uniqueness_holds(std, q)
                    assert has_multiple_preimages(psi, q) == (len(fiber) >= 2)
                    for phi in fiber:
                        assert weight(phi) <= weight(psi)


def test_jc_dimension():
    psi = Partition([3, 1])
    assert jc_dimension(psi, psi, 5) == 0
    assert jc_dimension(Partition([1] * 6), Partition([2, 1, 1, 1, 1]), 2) == 20
    assert jc_dimension(Partition([3, 3]), Partition([6]), 2) == 12
    with pytest.raises(TypeMismatch):
        jc_dimension(Partition([2]), Partition([1]), 2)
