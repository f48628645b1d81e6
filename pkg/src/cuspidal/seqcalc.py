"""Exact calculus on integer sequences.

Provides the four primitives everything else is built from: the difference
operator, partial sums, ordinary convolution, and the min-plus ("minimum")
convolution of counting functions.  All arithmetic is exact integer
arithmetic; the min-plus inner loop runs on 64-bit numpy integers, which is
exact at the coefficient sizes that occur here (values are bounded by the
total gap count of the cusp collection).
"""

from __future__ import annotations

import dataclasses
from functools import reduce
from typing import Iterable

import numpy as np


@dataclasses.dataclass(frozen=True)
class IntSeq:
    """A finitely supported integer sequence indexed from 0.

    Stored densely as a tuple of values; trailing zeros are trimmed so that
    equality is value equality.  Indexing outside the stored range (including
    negative indices) yields 0, matching the convention that the "(-1)st"
    element of any sequence is zero.
    """

    values: tuple[int, ...] = ()

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        while vals and vals[-1] == 0:
            vals = vals[:-1]
        object.__setattr__(self, "values", vals)

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.values):
            return self.values[j]
        return 0

    def __len__(self) -> int:
        return len(self.values)

    @property
    def degree(self) -> int:
        """Index of the last nonzero entry, -1 for the zero sequence."""
        return len(self.values) - 1

    def window(self, n: int) -> tuple[int, ...]:
        """Values on [0, n], zero-padded past the support."""
        return tuple(self[j] for j in range(n + 1))


def diff(a: IntSeq, window: int | None = None) -> IntSeq:
    """Difference sequence (a_j - a_{j-1}) with a_{-1} = 0.

    Evaluated on [0, window]; the window defaults to the support of `a`, so
    e.g. diff of (1, 1, 2, 3, 4) is (1, 0, 1, 1, 1).
    """
    n = a.degree if window is None else window
    return IntSeq(tuple(a[j] - a[j - 1] for j in range(n + 1)))


def partial_sums(a: IntSeq, window: int | None = None) -> IntSeq:
    """Partial-sum sequence (a_0 + ... + a_j) evaluated on [0, window]."""
    n = a.degree if window is None else window
    out = []
    total = 0
    for j in range(n + 1):
        total += a[j]
        out.append(total)
    return IntSeq(tuple(out))


def convolve(a: IntSeq, b: IntSeq) -> IntSeq:
    """Exact convolution (a * b)_j = sum_k a_k b_{j-k}."""
    if not a.values or not b.values:
        return IntSeq()
    out = [0] * (len(a.values) + len(b.values) - 1)
    for i, x in enumerate(a.values):
        if x == 0:
            continue
        for j, y in enumerate(b.values):
            out[i + j] += x * y
    return IntSeq(tuple(out))


@dataclasses.dataclass(frozen=True)
class CountingFn:
    """An eventually-linear nondecreasing step function on the integers.

    value(k) = 0 for k <= 0, head[k] for 0 <= k <= cutoff, and k - offset
    beyond the cutoff.  Successive values differ by 0 or 1; for the counting
    function of a numerical semigroup the offset is the gap count and the
    cutoff is twice that.  These constraints are exactly the ones satisfied
    by semigroup counting functions and are preserved by min_convolve.
    """

    head: tuple[int, ...]
    offset: int

    def __post_init__(self):
        head = tuple(int(v) for v in self.head)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "offset", int(self.offset))
        if not head or head[0] != 0:
            raise ValueError("counting function must start at value 0")
        for u, v in zip(head, head[1:]):
            if v - u not in (0, 1):
                raise ValueError("counting function steps must be 0 or 1")
        if head[-1] != self.cutoff - self.offset:
            raise ValueError("head and linear tail disagree at the cutoff")

    @property
    def cutoff(self) -> int:
        return len(self.head) - 1

    def __call__(self, k: int) -> int:
        if k <= 0:
            return 0
        if k <= self.cutoff:
            return self.head[k]
        return k - self.offset

    def values(self, lo: int, hi: int) -> list[int]:
        """Values on the inclusive range [lo, hi]."""
        return [self(k) for k in range(lo, hi + 1)]


def min_convolve(f: CountingFn, g: CountingFn) -> CountingFn:
    """Min-plus convolution: result(j) = min over j1+j2=j of f(j1) + g(j2).

    The offsets add and the new cutoff is twice the combined offset.  Since
    both arguments vanish on k <= 0, are nondecreasing and have unit steps,
    the minimum over all integer splits is attained with the second argument
    in [0, cutoff(g)], which keeps the scan window small.
    """
    if g.cutoff > f.cutoff:
        f, g = g, f
    offset = f.offset + g.offset
    cut = 2 * offset
    b = g.cutoff
    # fv[i] = f(i - b) on i in [0, cut + b]
    fv = np.fromiter((f(i - b) for i in range(cut + b + 1)), dtype=np.int64)
    gv = np.fromiter((g(b - i) for i in range(b + 1)), dtype=np.int64)
    windows = np.lib.stride_tricks.sliding_window_view(fv, b + 1)
    head = (windows + gv).min(axis=1)
    return CountingFn(tuple(int(v) for v in head), offset)


def min_convolve_all(fns: Iterable[CountingFn]) -> CountingFn:
    """Fold min_convolve over one or more counting functions."""
    fns = list(fns)
    if not fns:
        raise ValueError("need at least one counting function")
    return reduce(min_convolve, fns)
