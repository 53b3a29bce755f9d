"""Group-theoretic moment engine: class integrals, pair counts, moments."""
from fractions import Fraction

import pytest

from haarmoments import weingarten
from haarmoments.queries import MomentQuery, canonicalize
from haarmoments.ratfun import Poly, RationalFunction


def _rf(num_coeffs, den_coeffs, validity=0):
    return RationalFunction(Poly(num_coeffs), Poly(den_coeffs), validity)


def test_xi_p1():
    assert weingarten.xi_symbolic((1,)) == _rf((1,), (0, 1))
    assert weingarten.xi_at((1,), 5) == Fraction(1, 5)


def test_xi_p2_closed_forms():
    assert weingarten.xi_symbolic((1, 1)) == _rf((1,), (-1, 0, 1))
    assert weingarten.xi_symbolic((2,)) == _rf((-1,), (0, -1, 0, 1))
    assert str(weingarten.xi_symbolic((2,))) == "(-1)/(n^3 - n)"


def test_xi_p3_closed_forms():
    n2 = Poly((-2, 0, 1))  # n^2 - 2
    den5 = Poly((0, 1))
    for k in (-2, -1, 1, 2):
        den5 = den5 * Poly.n_plus(k)
    assert weingarten.xi_symbolic((1, 1, 1)) == RationalFunction(n2, den5)
    den4 = Poly((1,))
    for k in (-2, -1, 1, 2):
        den4 = den4 * Poly.n_plus(k)
    assert weingarten.xi_symbolic((2, 1)) == RationalFunction(Poly((-1,)), den4)
    assert weingarten.xi_symbolic((3,)) == RationalFunction(Poly((2,)), den5)


def test_xi_symbolic_validity_floor():
    assert weingarten.xi_symbolic((2, 1)).validity_min_n == 3
    with pytest.raises(ValueError, match="outside validity domain"):
        weingarten.xi_symbolic((2, 1)).eval_at(2)


def test_xi_fixed_n_row_restriction():
    # below the symbolic validity floor (n=2 < p=3) only shapes with at most
    # n rows contribute; check against the defining sum, restricted by hand
    from haarmoments.partitions import (character, dim_symmetric,
                                        dim_unitary_at, partitions_of)
    for ct in ((3,), (2, 1), (1, 1, 1)):
        want = Fraction(0)
        for f in partitions_of(3):
            if len(f) > 2:
                continue
            want += Fraction(dim_symmetric(f) ** 2 * character(f, ct),
                             36 * dim_unitary_at(f, 2))
        assert weingarten.xi_at(ct, 2) == want


def test_class_counts_trivial_stabilizers():
    counts = weingarten.class_counts((1, 2), (1, 2), (0, 1))
    assert counts == {(1, 1): 1}
    counts = weingarten.class_counts((1, 2), (1, 2), (1, 0))
    assert counts == {(2,): 1}


def test_class_counts_repeated_rows_and_columns():
    counts = weingarten.class_counts((1, 1), (1, 1), (0, 1))
    assert counts == {(1, 1): 2, (2,): 2}
    counts = weingarten.class_counts((1, 1), (1, 2), (0, 1))
    assert counts == {(1, 1): 1, (2,): 1}


def test_class_counts_total_is_group_product():
    from haarmoments.stabilizer import stabilizer
    I, J, Q = (1, 1, 2), (2, 2, 2), (0, 1, 2)
    counts = weingarten.class_counts(I, J, Q)
    assert sum(counts.values()) == stabilizer(I).order * stabilizer(J).order


def test_class_counts_cap():
    with pytest.raises(ValueError, match="use Monte Carlo"):
        weingarten.class_counts((1,) * 9, (1,) * 9, tuple(range(9)))


def test_moment_from_counts_reproduces_f2():
    q = MomentQuery.make(2, (1, 1), (1, 1), (1, 1), (1, 1))
    got = weingarten.evaluate(q, symbolic=True)
    assert got == _rf((2,), (0, 1, 1))  # 2/(n(n+1))
    assert weingarten.evaluate(q) == Fraction(1, 3)


def test_zero_and_empty_queries():
    assert weingarten.evaluate(
        MomentQuery.make(2, (1,), (1,), (2,), (1,))) == 0
    assert weingarten.evaluate(MomentQuery.make(2, (), (), (), ())) == 1
    sym = weingarten.evaluate(
        MomentQuery.make(2, (1,), (1,), (2,), (1,)), symbolic=True)
    assert sym == 0


def test_symbolic_validity_is_degree():
    q = MomentQuery.make(3, (1, 2, 3), (1, 2, 3), (1, 2, 3), (2, 3, 1))
    assert weingarten.evaluate(q, symbolic=True).validity_min_n == 3


def test_symbolic_matches_fixed_n_above_floor():
    qs = [
        MomentQuery.make(4, (1, 1, 2), (1, 2, 3), (1, 2, 1), (3, 2, 1)),
        MomentQuery.make(4, (1, 2), (1, 1), (2, 1), (1, 1)),
        MomentQuery.make(4, (1, 1, 1), (1, 2, 2), (1, 1, 1), (2, 1, 2)),
    ]
    for q in qs:
        sym = weingarten.evaluate(q, symbolic=True)
        for n in range(sym.validity_min_n, sym.validity_min_n + 4):
            fixed = weingarten.evaluate(
                MomentQuery.make(n, q.I, q.J, q.K, q.L))
            assert sym.eval_at(n) == fixed


def test_backends_agree(monkeypatch):
    cases = [
        ((1, 1, 2), (1, 2, 2), (0, 1, 2)),
        ((1, 1, 1), (1, 2, 3), (2, 0, 1)),
        ((1, 2, 1, 2), (1, 1, 2, 2), (3, 2, 1, 0)),
        ((1,) * 5, (1, 1, 2, 2, 3), (0, 1, 2, 3, 4)),
    ]
    fast = [weingarten.class_counts(*c) for c in cases]
    monkeypatch.setattr(weingarten, "_kernel", None)
    slow = [weingarten._class_counts_cached.__wrapped__(*c) for c in cases]
    assert fast == [dict(s) for s in slow]


def test_backend_name_reports():
    assert weingarten.backend_name() in ("compiled", "pure-python")


def test_moment_at_accepts_canonical_directly():
    q = MomentQuery.make(3, (1, 2), (1, 2), (2, 1), (2, 1))
    m = canonicalize(q)
    assert weingarten.moment_at(m, 3) == weingarten.evaluate(q)
