"""Invariants of a cusp collection.

For a collection of plane-branch cusps with semigroups G_1..G_nu and total
gap count delta, this module computes:

* the Alexander polynomial of each cusp, Delta_i(t) = (1-t) sum_{k in G_i} t^k,
  and the product Delta of all of them (degree 2*delta, Delta(1) = 1);
* the quotient Q with Delta(t) = 1 + delta(t-1) + (t-1)^2 Q(t) and its
  coefficient sequence q_0..q_{2delta-2};
* the sequence F(j), the double partial sum of the convolution of the second
  differences of the shifted counting sequences h_j = H_i(j+1), which equals
  the reversed q sequence;
* H, the min-plus convolution of the cusp counting functions;
* the sparse polynomial R supported on multiples of a degree d, whose
  coefficients compare q at multiples of d against triangular numbers; and
* the normalized Euler characteristics eu_h0 / eu_hstar of the lattice
  cohomology of the (-d)-surgery on the connected sum of the cusp knots, per
  Spin^c index a, as explicit finite sums over H and F.
"""

from __future__ import annotations

import dataclasses

from .semigroup import (
    MultSeq,
    Semigroup,
    SemigroupError,
    counting_fn,
    multseq_from_semigroup,
)
from .seqcalc import CountingFn, IntSeq, convolve, diff, min_convolve_all, partial_sums


class NotCandidateError(ValueError):
    """An operation that requires 2*delta = (d-1)(d-2) was refused."""


@dataclasses.dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in t, coefficients stored as an IntSeq."""

    coeffs: IntSeq

    @property
    def degree(self) -> int:
        return self.coeffs.degree

    def coefficient(self, j: int) -> int:
        return self.coeffs[j]

    def __call__(self, t: int) -> int:
        return sum(c * t**j for j, c in enumerate(self.coeffs.values))

    def support(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs of the nonzero terms."""
        return tuple((j, c) for j, c in enumerate(self.coeffs.values) if c != 0)


@dataclasses.dataclass(frozen=True)
class CuspCollection:
    """An immutable collection of cusp semigroups, each a plane branch.

    Validates every cusp on construction by extracting its multiplicity
    sequence; smooth points are rejected.
    """

    cusps: tuple[Semigroup, ...]
    multseqs: tuple[MultSeq, ...] = dataclasses.field(init=False)

    def __post_init__(self):
        cusps = tuple(self.cusps)
        object.__setattr__(self, "cusps", cusps)
        if not cusps:
            raise SemigroupError("a cusp collection needs at least one cusp")
        seqs = []
        for s in cusps:
            if not s.gaps:
                raise SemigroupError("smooth point is not a cusp")
            seqs.append(multseq_from_semigroup(s))
        object.__setattr__(self, "multseqs", tuple(seqs))

    @property
    def nu(self) -> int:
        return len(self.cusps)

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(s.delta for s in self.cusps)

    @property
    def delta(self) -> int:
        return sum(self.deltas)


@dataclasses.dataclass(frozen=True)
class EuReport:
    """Per-Spin^c Euler characteristics with the per-j summands.

    terms holds (j, H(j+1) + delta-1-j, F(j) + delta-1-j) for the indices j
    in the congruence class; eu_h0 and eu_hstar are the two column sums.
    """

    d: int
    a: int
    eu_h0: int
    eu_hstar: int
    terms: tuple[tuple[int, int, int], ...]


def geometric_genus(d: int) -> int:
    """d(d-1)(d-2)/6, the geometric genus of the associated surface germ."""
    return d * (d - 1) * (d - 2) // 6


def alexander(s: Semigroup) -> IntPoly:
    """Alexander polynomial (1-t) * sum_{k in s} t^k, of degree 2*delta."""
    two_delta = 2 * s.delta
    co = [0] * (two_delta + 1)
    for k in range(two_delta):
        if k in s:
            co[k] += 1
            co[k + 1] -= 1
    co[two_delta] += 1
    return IntPoly(IntSeq(tuple(co)))


def alexander_product(c: CuspCollection) -> IntPoly:
    """Product of the cusp Alexander polynomials; degree 2*delta, value 1 at t=1."""
    out = IntSeq((1,))
    for s in c.cusps:
        out = convolve(out, alexander(s).coeffs)
    return IntPoly(out)


def _divide_by_t_minus_1(co: list[int]) -> list[int]:
    # co = (t - 1) * q, i.e. co_j = q_{j-1} - q_j with q_{-1} = 0
    q = []
    prev = 0
    for v in co[:-1]:
        prev = prev - v
        q.append(prev)
    if not co or co[-1] != prev:
        raise ArithmeticError("inexact division by t - 1")
    return q


def q_coefficients(c: CuspCollection) -> IntSeq:
    """Coefficients of Q where Delta(t) = 1 + delta(t-1) + (t-1)^2 Q(t).

    Degree 2*delta - 2, with q_0 = delta and top coefficient 1.  The division
    is exact; a nonzero remainder signals an internal inconsistency.
    """
    d = c.delta
    co = list(alexander_product(c).coeffs.window(2 * d))
    co[0] -= 1 - d
    co[1] -= d
    q = _divide_by_t_minus_1(_divide_by_t_minus_1(co))
    return IntSeq(tuple(q))


def f_sequence(c: CuspCollection, window: int | None = None) -> IntSeq:
    """The sequence F: double partial sums of the product of second differences.

    Computed purely by sequence calculus: for each cusp, take the counting
    values h_j = H_i(j+1), difference twice (this recovers the Alexander
    coefficients), convolve across cusps, then apply partial sums twice.
    The default window is [0, 2*delta - 2].
    """
    n = 2 * c.delta - 2 if window is None else window
    conv = IntSeq((1,))
    for s in c.cusps:
        hi = counting_fn(s)
        h = IntSeq(tuple(hi(j + 1) for j in range(2 * s.delta + 3)))
        conv = convolve(conv, diff(diff(h)))
    return partial_sums(partial_sums(conv, n), n)


def h_function(c: CuspCollection) -> CountingFn:
    """Min-plus convolution of the cusp counting functions."""
    return min_convolve_all(counting_fn(s) for s in c.cusps)


def r_poly(c: CuspCollection, d: int) -> IntPoly:
    """Sparse polynomial comparing q at multiples of d with triangular numbers.

    R(t) = sum_{j=0}^{d-3} (q_{(d-3-j)d} - (j+1)(j+2)/2) t^{(d-3-j)d}, with
    q read as 0 outside [0, 2*delta-2].
    """
    if d < 3:
        raise ValueError(f"invalid degree {d}: need d >= 3")
    q = q_coefficients(c)
    co = [0] * (d * (d - 3) + 1)
    for j in range(d - 2):
        idx = (d - 3 - j) * d
        co[idx] = q[idx] - (j + 1) * (j + 2) // 2
    return IntPoly(IntSeq(tuple(co)))


def r_poly_series(c: CuspCollection, d: int) -> IntPoly:
    """Power-series route to R, as an independent cross-check of r_poly.

    Averaging Delta(xt)/(1-xt)^2 over the d-th roots of unity x keeps every
    d-th coefficient of the series Delta(t)/(1-t)^2; subtracting the series
    (1-t^{d*d})/(1-t^d)^3 must then leave a polynomial supported on multiples
    of d up to d(d-3).  Only valid when 2*delta = (d-1)(d-2), where the tail
    cancels.
    """
    if d < 3:
        raise ValueError(f"invalid degree {d}: need d >= 3")
    if 2 * c.delta != (d - 1) * (d - 2):
        raise NotCandidateError(
            f"series route needs 2*delta = (d-1)(d-2); got delta={c.delta}, d={d}")
    top = d * (d - 3)
    n = top + d
    dd = alexander_product(c).coeffs
    # g = Delta(t) / (1-t)^2 truncated at degree n
    g = [0] * (n + 1)
    for k in range(n + 1):
        g[k] = sum(dd[i] * (k - i + 1) for i in range(0, k + 1))
    co = [0] * (top + 1)
    for k in range(0, n + 1, d):
        i = k // d
        sub = (i + 1) * (i + 2) // 2
        if k >= d * d and (k - d * d) % d == 0:
            ii = (k - d * d) // d
            sub -= (ii + 1) * (ii + 2) // 2
        value = g[k] - sub
        if k <= top:
            co[k] = value
        elif value != 0:
            raise ArithmeticError(f"series tail does not cancel at degree {k}")
    return IntPoly(IntSeq(tuple(co)))


def eu_h0(c: CuspCollection, d: int, a: int) -> int:
    """eu of the zeroth lattice cohomology of the (-d)-surgery at Spin^c index a.

    Sum of H(j+1) + delta-1-j over 0 <= j <= 2*delta-2 with j = a (mod d).
    """
    if not 0 <= a < d:
        raise ValueError(f"Spin^c index {a} not in [0, {d})")
    h = h_function(c)
    dl = c.delta
    return sum(h(j + 1) + dl - 1 - j for j in range(a, 2 * dl - 1, d))


def eu_hstar(c: CuspCollection, d: int, a: int) -> int:
    """eu of the full lattice cohomology; same sum as eu_h0 with F in place of H."""
    if not 0 <= a < d:
        raise ValueError(f"Spin^c index {a} not in [0, {d})")
    f = f_sequence(c)
    dl = c.delta
    return sum(f[j] + dl - 1 - j for j in range(a, 2 * dl - 1, d))


def spinc_report(c: CuspCollection, d: int, a: int) -> EuReport:
    """Both Euler characteristics at Spin^c index a, with per-j summands."""
    if not 0 <= a < d:
        raise ValueError(f"Spin^c index {a} not in [0, {d})")
    h = h_function(c)
    f = f_sequence(c)
    dl = c.delta
    terms = tuple(
        (j, h(j + 1) + dl - 1 - j, f[j] + dl - 1 - j)
        for j in range(a, 2 * dl - 1, d)
    )
    return EuReport(
        d=d,
        a=a,
        eu_h0=sum(t[1] for t in terms),
        eu_hstar=sum(t[2] for t in terms),
        terms=terms,
    )


def eu_canonical(c: CuspCollection, d: int) -> tuple[int, int]:
    """Canonical-Spin^c Euler characteristics when 2*delta = (d-1)(d-2).

    Returns (sum_j H(jd+1), sum_j F(jd)) over j = 0..d-3; these agree with
    eu_h0/eu_hstar at a = 0 and satisfy R(1) = eu_hstar - eu_h0.
    """
    if 2 * c.delta != (d - 1) * (d - 2):
        raise NotCandidateError(
            f"2*delta = {2*c.delta} != (d-1)(d-2) = {(d-1)*(d-2)}; "
            "use the per-Spin^c operations for general d")
    h = h_function(c)
    f = f_sequence(c)
    e0 = sum(h(j * d + 1) for j in range(d - 2))
    es = sum(f[j * d] for j in range(d - 2))
    return e0, es
