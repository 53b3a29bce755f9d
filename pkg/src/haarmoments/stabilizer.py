"""Young subgroups: the permutations of slots that fix an index sequence.

The subgroup of all R with values[R[a]] == values[a] is a direct product of
symmetric groups on the position blocks of equal values.  It is never
materialized as a whole; elements stream lazily (optionally pre-packed into
fixed-size uint8 arrays for the compiled counting kernel).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Hashable, Iterator, Sequence

import numpy as np

from .partitions import Perm


@dataclass(frozen=True)
class YoungSubgroup:
    degree: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for b in self.blocks:
            out *= factorial(len(b))
        return out

    def __iter__(self) -> Iterator[Perm]:
        base = list(range(self.degree))
        nontrivial = [b for b in self.blocks if len(b) > 1]
        if not nontrivial:
            yield tuple(base)
            return
        for combo in product(*(permutations(b) for b in nontrivial)):
            img = base[:]
            for block, targets in zip(nontrivial, combo):
                for pos, tgt in zip(block, targets):
                    img[pos] = tgt
            yield tuple(img)

    def chunks(self, size: int) -> Iterator[np.ndarray]:
        """Elements packed into (k, degree) uint8 arrays, k <= size."""
        buf = np.empty((size, max(self.degree, 1)), dtype=np.uint8)
        fill = 0
        for perm in self:
            buf[fill, : self.degree] = perm
            fill += 1
            if fill == size:
                yield buf[:, : self.degree].copy()
                fill = 0
        if fill:
            yield buf[:fill, : self.degree].copy()


def stabilizer(values: Sequence[Hashable]) -> YoungSubgroup:
    groups: dict[Hashable, list[int]] = {}
    for pos, v in enumerate(values):
        groups.setdefault(v, []).append(pos)
    return YoungSubgroup(len(values), tuple(tuple(b) for b in groups.values()))
