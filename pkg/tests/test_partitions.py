"""Partitions, hook lengths, symmetric-group characters, dimensions."""
from fractions import Fraction
from math import factorial

import pytest

from haarmoments.partitions import (character, class_size, compose, conjugate,
                                    cycle_type, dim_symmetric, dim_unitary,
                                    dim_unitary_at, hook_lengths, identity,
                                    inverse, partitions_of)


def test_partitions_of_small():
    assert partitions_of(0) == ((),)
    assert partitions_of(1) == ((1,),)
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


@pytest.mark.parametrize("p,count", [(1, 1), (2, 2), (3, 3), (4, 5), (5, 7),
                                     (6, 11), (7, 15)])
def test_partition_counts(p, count):
    assert len(partitions_of(p)) == count


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((2, 2)) == (2, 2)
    assert conjugate(()) == ()


def test_permutation_helpers():
    assert identity(3) == (0, 1, 2)
    f = (1, 2, 0)
    g = (1, 0, 2)
    # (f∘g)(x) = f[g[x]]
    assert compose(f, g) == (2, 1, 0)
    assert compose(f, inverse(f)) == identity(3)
    assert cycle_type((1, 2, 0)) == (3,)
    assert cycle_type((1, 0, 2)) == (2, 1)
    assert cycle_type(()) == ()


def test_class_sizes_s3_s4():
    assert class_size((1, 1, 1)) == 1
    assert class_size((2, 1)) == 3
    assert class_size((3,)) == 2
    assert class_size((2, 2)) == 3
    assert class_size((4,)) == 6
    for p in range(1, 8):
        assert sum(class_size(c) for c in partitions_of(p)) == factorial(p)


def test_hook_lengths():
    assert sorted(hook_lengths((2, 1))) == [1, 1, 3]
    assert sorted(hook_lengths((3, 2))) == [1, 1, 2, 3, 4]


@pytest.mark.parametrize("shape,dim", [
    ((3,), 1), ((2, 1), 2), ((1, 1, 1), 1),
    ((4,), 1), ((3, 1), 3), ((2, 2), 2), ((2, 1, 1), 3), ((1, 1, 1, 1), 1),
])
def test_dim_symmetric(shape, dim):
    assert dim_symmetric(shape) == dim


S3_TABLE = {
    # classes:        (1,1,1)  (2,1)  (3,)
    (3,):            (1,       1,     1),
    (2, 1):          (2,       0,    -1),
    (1, 1, 1):       (1,      -1,     1),
}

S4_TABLE = {
    # classes:     (1,1,1,1)  (2,1,1)  (2,2)  (3,1)  (4,)
    (4,):            (1,        1,      1,     1,     1),
    (3, 1):          (3,        1,     -1,     0,    -1),
    (2, 2):          (2,        0,      2,    -1,     0),
    (2, 1, 1):       (3,       -1,     -1,     0,     1),
    (1, 1, 1, 1):    (1,       -1,      1,     1,    -1),
}


def test_character_table_s3():
    classes = ((1, 1, 1), (2, 1), (3,))
    for shape, row in S3_TABLE.items():
        assert tuple(character(shape, c) for c in classes) == row


def test_character_table_s4():
    classes = ((1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,))
    for shape, row in S4_TABLE.items():
        assert tuple(character(shape, c) for c in classes) == row


def test_character_orthogonality_p5():
    shapes = partitions_of(5)
    for f in shapes:
        for g in shapes:
            inner = sum(class_size(c) * character(f, c) * character(g, c)
                        for c in shapes)
            assert inner == (factorial(5) if f == g else 0)


def test_dim_unitary_closed_forms():
    assert str(dim_unitary((1,))) == "(n)/(1)"
    assert str(dim_unitary((2,))) == "(n^2 + n)/(2)"
    assert str(dim_unitary((1, 1))) == "(n^2 - n)/(2)"
    assert dim_unitary((2, 1)).eval_at(3) == 8  # adjoint of U(3)
    assert dim_unitary_at((1, 1), 1) == 0


def _vandermonde(shape, n):
    padded = tuple(shape) + (0,) * (n - len(shape))
    ell = [padded[i] + n - 1 - i for i in range(n)]
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= ell[i] - ell[j]
            den *= j - i
    return Fraction(num, den)


def test_dim_unitary_matches_vandermonde_ratio():
    for p in range(0, 6):
        for shape in partitions_of(p):
            start = max(len(shape), 1)
            for n in range(start, start + 4):
                assert dim_unitary(shape).eval_at(n) == _vandermonde(shape, n)


def test_dim_identity_consistency():
    for p in range(0, 8):
        for shape in partitions_of(p):
            assert character(shape, (1,) * p) == dim_symmetric(shape)
            assert sum(dim_symmetric(f) ** 2
                       for f in partitions_of(p)) == factorial(p)
