"""Shared test helpers: independent oracles and golden table data.

The oracles here deliberately avoid the production code paths: semigroups
are generated by repeated-addition closure instead of the sieve, counting
values by direct enumeration, and min-plus convolutions by scanning every
split.  Golden rows are transcriptions of the published tables for the
curves they describe.
"""

from __future__ import annotations

import random

import pytest

from cuspidal import (
    CuspCollection,
    MultSeq,
    is_admissible,
    parse_cusp,
    resolve_semigroup,
)


# ---------------------------------------------------------------------------
# independent oracles

def naive_elements(gens, bound):
    """Semigroup elements up to `bound` by repeated-addition closure."""
    els = {0}
    frontier = {0}
    while frontier:
        new = set()
        for e in frontier:
            for g in gens:
                v = e + g
                if v <= bound and v not in els:
                    els.add(v)
                    new.add(v)
        frontier = new
    return els

def naive_gaps(gens, bound=400):
    els = naive_elements(gens, bound)
    gaps = [k for k in range(bound + 1) if k not in els]
    # the tail of the scan range must be gap-free
    assert all(g <= bound - 50 for g in gaps), "bound too small for naive_gaps"
    return gaps


def brute_count(elements_or_gaps, k, *, gaps=False):
    """#\\{s in S : s < k\\} by direct counting."""
    if gaps:
        return max(k, 0) - sum(1 for g in elements_or_gaps if g < k)
    return sum(1 for s in elements_or_gaps if s < k)


def brute_min_convolve(fns, j):
    """min over all splits j_1 + ... + j_n = j of sum f_i(j_i), scanned directly."""
    if len(fns) == 1:
        return fns[0](j)
    head, rest = fns[0], fns[1:]
    return min(head(i) + brute_min_convolve(rest, j - i) for i in range(0, j + 1))


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divide(num, den):
    """Exact polynomial division; asserts the remainder is zero."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        coeff = num[i + len(den) - 1]
        assert coeff % den[-1] == 0
        q[i] = coeff // den[-1]
        for k, dv in enumerate(den):
            num[i + k] -= q[i] * dv
    assert all(v == 0 for v in num), "inexact polynomial division"
    return q


def cyclotomic_quotient(numerators, denominators):
    """Product of (t^a - 1) over numerators divided by the denominator product."""
    num = [1]
    for a in numerators:
        num = poly_mul(num, [-1] + [0] * (a - 1) + [1])
    den = [1]
    for a in denominators:
        den = poly_mul(den, [-1] + [0] * (a - 1) + [1])
    return poly_divide(num, den)


def random_admissible(rng: random.Random, max_len=5, max_entry=9) -> MultSeq:
    while True:
        r = rng.randint(1, max_len)
        entries = tuple(sorted((rng.randint(2, max_entry) for _ in range(r)),
                               reverse=True))
        if is_admissible(entries):
            return MultSeq(entries)


def collection(*literals: str) -> CuspCollection:
    return CuspCollection(tuple(resolve_semigroup(parse_cusp(t)) for t in literals))


# ---------------------------------------------------------------------------
# golden rows (H(k+1) and F(k) tables of specific curves / candidates)

# tricuspidal quartic, three simple cusps [2],[2],[2]; k = 0..4
QUARTIC_H = [1, 1, 2, 2, 3]
QUARTIC_F = [1, -1, 3, 0, 3]

# tricuspidal quintic [3],[2_2],[2]; k = 0..10
QUINTIC_H = [1, 1, 1, 2, 2, 3, 3, 4, 4, 5, 6]
QUINTIC_F = [1, -1, 2, 0, 2, 1, 3, 2, 5, 3, 6]

# degree-8 tricuspidal curve [6],[2_4],[2_2]; values at k = 0, 8, ..., 40
OCTIC_H = [1, 3, 6, 10, 15, 21]
OCTIC_F = [1, 4, 5, 9, 16, 21]

# nonexistent degree-5 candidate [3,2],[2],[2]; k = 0..10
GHOST_QUINTIC_F = [1, -1, 2, 1, 0, 4, 1, 3, 5, 3, 6]

# sporadic quintics; k = 0..10 (H row shared)
SPORADIC_H = [1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6]
SPORADIC3_F = [1, -1, 3, -3, 6, -3, 7, -1, 6, 3, 6]
SPORADIC4_F = [1, -2, 5, -5, 8, -5, 9, -3, 8, 2, 6]

# detailed C-series data: label -> (d, u, [H(jd+1) - F(jd)] for j = 0..d-3, eu diff)
C_SERIES_ROWS = {
    "C(4,1)": (4, 1, [0, 0], 0),
    "C(5,1)": (5, 1, [0, 2, 0], 2),
    "C(6,1)": (6, 1, [0, 0, 0, 0], 0),
    "C(6,2)": (6, 2, [0, 0, 0, 0], 0),
    "C(7,1)": (7, 1, [0, 3, 0, 3, 0], 6),
    "C(7,2)": (7, 2, [0, 3, 0, 3, 0], 6),
    "C(8,1)": (8, 1, [0, 0, 1, 1, 0, 0], 2),
    "C(8,2)": (8, 2, [0, -1, 1, 1, -1, 0], 0),
    "C(8,3)": (8, 3, [0, -1, 1, 1, -1, 0], 0),
    "C(9,1)": (9, 1, [0, 3, 1, 4, 1, 3, 0], 12),
    "C(9,2)": (9, 2, [0, 4, 0, 4, 0, 4, 0], 12),
    "C(9,3)": (9, 3, [0, 4, 0, 4, 0, 4, 0], 12),
}


@pytest.fixture
def rng():
    return random.Random(0xC05A17)
