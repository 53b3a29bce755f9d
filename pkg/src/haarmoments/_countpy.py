"""Pure-Python counting backend, used when the compiled kernel is absent
(or forced via HAAR_MOMENTS_PURE=1).  Same contract as the Cython kernel but
operating on sequences of permutation tuples and keying buckets by the cycle
type itself.
"""
from __future__ import annotations

from collections import Counter
from typing import Sequence

from .partitions import Partition, Perm, cycle_type


def count_pairs(A: Sequence[Perm], B: Sequence[Perm],
                out: Counter[Partition]) -> None:
    """Add cycle-type counts of a∘b over all pairs (a in A, b in B)."""
    if A and len(A[0]) == 0:
        out[()] += len(A) * len(B)
        return
    for a in A:
        for b in B:
            out[cycle_type(tuple(a[x] for x in b))] += 1
