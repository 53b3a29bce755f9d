"""The group-sum engine for exact unitary moments.

A canonical moment <I,J | I,J_Q> is evaluated as

    sum_c  N(I, J, Q | c) * xi_p(c)

where c runs over cycle types of degree p, N counts the pairs (R, S) over the
stabilizers of I and J whose composition S∘Q∘R falls in class c, and xi_p is
the class integral

    xi_p(c) = sum_f  d_f^2 chi_f(c) / ((p!)^2 dbar_f)

over irreps f of the symmetric group (at fixed dimension n, restricted to f
with at most n rows; symbolically, over all f, valid for n >= p).

The pair enumeration is the hot path: a compiled kernel handles it when
available, with a pure-Python fallback selected at import time
(HAAR_MOMENTS_PURE=1 forces the fallback).  The double sum is refused above
PAIR_CAP pairs; Monte Carlo estimation is the intended tool at that size.
"""
from __future__ import annotations

import os
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from . import _countpy
from .partitions import (
    Partition,
    character,
    class_size,
    dim_symmetric,
    dim_unitary,
    dim_unitary_at,
    partitions_of,
)
from .queries import CanonicalMoment, MomentQuery, canonicalize, orient, relabel
from .ratfun import Poly, RationalFunction
from .stabilizer import stabilizer

PAIR_CAP = 10**8
_CHUNK = 1 << 14

if os.environ.get("HAAR_MOMENTS_PURE"):
    _kernel = None
else:
    try:
        from . import _countkernel as _kernel  # type: ignore[attr-defined]
    except ImportError:
        _kernel = None


def backend_name() -> str:
    return "compiled" if _kernel is not None else "pure-python"


# ---------------------------------------------------------------------------
# class integrals

@lru_cache(maxsize=None)
def _xi_table_symbolic(p: int) -> dict[Partition, RationalFunction]:
    shapes = partitions_of(p)
    fact_sq = factorial(p) ** 2
    bases = []
    for f in shapes:
        d = dim_symmetric(f)
        du = dim_unitary(f)  # P_f(n) / hook_product
        # d^2 / ((p!)^2 dbar_f) = d^2 * hooks / ((p!)^2 * P_f(n))
        hooks = du.den  # constant polynomial
        bases.append(
            RationalFunction(Poly.const(d * d) * hooks,
                             du.num * Poly.const(fact_sq))
        )
    table: dict[Partition, RationalFunction] = {}
    for ct in shapes:
        acc = RationalFunction.zero()
        for f, base in zip(shapes, bases):
            chi = character(f, ct)
            if chi:
                acc = acc + base * chi
        table[ct] = acc.with_validity(p)
    return table


def xi_symbolic(ct: Partition) -> RationalFunction:
    """Class integral as a rational function of n, valid for n >= p."""
    return _xi_table_symbolic(sum(ct))[ct]


@lru_cache(maxsize=None)
def xi_at(ct: Partition, n: int) -> Fraction:
    """Class integral at fixed dimension; shapes with more than n rows drop."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    p = sum(ct)
    fact_sq = factorial(p) ** 2
    total = Fraction(0)
    for f in partitions_of(p):
        if len(f) > n:
            continue
        chi = character(f, ct)
        if not chi:
            continue
        d = dim_symmetric(f)
        total += Fraction(d * d * chi) / (fact_sq * dim_unitary_at(f, n))
    return total


# ---------------------------------------------------------------------------
# stabilizer pair counts

def pair_count(m: CanonicalMoment) -> int:
    """Size of the double sum the engine would perform."""
    return stabilizer(m.I).order * stabilizer(m.J).order


@lru_cache(maxsize=4096)
def _class_counts_cached(I: tuple, J: tuple, Q: tuple) -> dict[Partition, int]:
    p = len(I)
    GI = stabilizer(I)
    GJ = stabilizer(J)
    total = GI.order * GJ.order
    if total > PAIR_CAP:
        raise ValueError(
            f"stabilizer double sum has {total} terms (cap {PAIR_CAP}); "
            "use Monte Carlo estimation for this query"
        )

    # Hold the smaller group (<= sqrt(cap) elements when both are nontrivial),
    # stream the larger; the composed element is always S∘Q∘R with R from the
    # stabilizer of I and S from that of J.
    small_is_I = GI.order <= GJ.order
    small, large = (GI, GJ) if small_is_I else (GJ, GI)

    if _kernel is not None:
        shapes = partitions_of(p)
        base = p + 1
        keys = []
        for ct in shapes:
            k = 0
            for part in ct:
                k = k * base + part
            keys.append(k)
        order = np.argsort(keys)
        keys_arr = np.array([keys[i] for i in order], dtype=np.uint64)
        counts_arr = np.zeros(len(keys), dtype=np.int64)
        small_rows = np.array(list(small) or [()], dtype=np.uint8).reshape(
            small.order, p
        )
        Qarr = np.array(Q, dtype=np.uint8)
        if small_is_I:
            mid = Qarr[small_rows] if p else small_rows  # Q∘R for each R
            mid = np.ascontiguousarray(mid)
            for chunk in large.chunks(_CHUNK):
                _kernel.count_pairs(chunk, mid, keys_arr, counts_arr)
        else:
            mid = small_rows[:, Qarr] if p else small_rows  # S∘Q for each S
            mid = np.ascontiguousarray(mid)
            for chunk in large.chunks(_CHUNK):
                _kernel.count_pairs(mid, chunk, keys_arr, counts_arr)
        return {
            shapes[order[i]]: int(c)
            for i, c in enumerate(counts_arr)
            if c
        }

    out: Counter[Partition] = Counter()
    if small_is_I:
        mids = [tuple(Q[r[x]] for x in range(p)) for r in small]
        buf: list = []
        for s in large:
            buf.append(s)
            if len(buf) == _CHUNK:
                _countpy.count_pairs(buf, mids, out)
                buf.clear()
        if buf:
            _countpy.count_pairs(buf, mids, out)
    else:
        mids = [tuple(s[Q[x]] for x in range(p)) for s in small]
        buf = []
        for r in large:
            buf.append(r)
            if len(buf) == _CHUNK:
                _countpy.count_pairs(mids, buf, out)
                buf.clear()
        if buf:
            _countpy.count_pairs(mids, buf, out)
    return dict(out)


def class_counts(I, J, Q) -> dict[Partition, int]:
    """Counts, by cycle type of S∘Q∘R, of stabilizer pairs (R, S)."""
    return dict(_class_counts_cached(tuple(I), tuple(J), tuple(Q)))


# ---------------------------------------------------------------------------
# moments

def moment_symbolic(m: CanonicalMoment) -> RationalFunction:
    if m.zero:
        return RationalFunction.zero()
    if m.p == 0:
        return RationalFunction.one()
    m = orient(relabel(m))
    counts = _class_counts_cached(m.I, m.J, m.Q)
    acc = RationalFunction.zero()
    for ct, cnt in counts.items():
        acc = acc + xi_symbolic(ct) * cnt
    return acc.with_validity(m.p)


def moment_at(m: CanonicalMoment, n: int | None = None) -> Fraction:
    if m.zero:
        return Fraction(0)
    if n is None:
        n = m.n
    if m.p == 0:
        return Fraction(1)
    m = orient(relabel(m))
    counts = _class_counts_cached(m.I, m.J, m.Q)
    return sum(
        (xi_at(ct, n) * cnt for ct, cnt in counts.items()), Fraction(0)
    )


def evaluate(q: MomentQuery, symbolic: bool = False):
    """Full pipeline: canonicalize, relabel, orient, evaluate.

    Returns a Fraction (fixed n) or a RationalFunction (symbolic, valid for
    n >= p).
    """
    m = canonicalize(q)
    if symbolic:
        return moment_symbolic(m)
    return moment_at(m, q.n)
