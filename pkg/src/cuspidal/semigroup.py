"""Numerical semigroups of plane-branch cusp types.

A cusp type can be given as a multiplicity sequence like ``[3,2]`` or
``[2_4]``, as Newton pairs like ``(2,3)(2,1)``, or as semigroup generators
like ``<4,6,13>``.  This module converts between the three descriptions:
multiplicity sequences are folded into semigroups through the Apery-set
un-blowup step (append a multiplicity m by shifting the j-th smallest Apery
representative up by j*m), and recovered by running the shift backwards.

A semigroup is stored by its finite gap set; membership above the conductor
is implicit.  All values are immutable and all operations are pure, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import dataclasses
import re
from bisect import bisect_left
from functools import lru_cache
from itertools import groupby
from math import gcd

from .seqcalc import CountingFn


class SemigroupError(ValueError):
    """Invalid construction or operation on a numerical semigroup."""


class InadmissibleSequenceError(SemigroupError):
    """A multiplicity sequence whose un-blowup chain fails."""


class NotPlaneBranchError(SemigroupError):
    """A semigroup whose blowup chain does not behave like a plane branch."""


@dataclasses.dataclass(frozen=True)
class MultSeq:
    """A plane-branch multiplicity sequence, non-increasing entries >= 2.

    The empty sequence is the explicit smooth-point sentinel; it is a valid
    value but rejected by every operation that expects an actual cusp.
    """

    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(int(n) for n in self.entries)
        object.__setattr__(self, "entries", entries)
        for n in entries:
            if n < 2:
                raise SemigroupError(f"multiplicity {n} < 2")
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise SemigroupError(f"multiplicity sequence {entries} is not non-increasing")

    @property
    def delta(self) -> int:
        """Gap count of the associated semigroup: sum of n(n-1)/2 over entries."""
        return sum(n * (n - 1) // 2 for n in self.entries)

    def literal(self) -> str:
        """Bracket literal with u_n repetition shorthand, e.g. '[2_4]' or '[3,2]'."""
        parts = []
        for value, run in groupby(self.entries):
            count = len(list(run))
            parts.append(f"{value}_{count}" if count > 1 else f"{value}")
        return "[" + ",".join(parts) + "]"

    def __str__(self) -> str:
        return self.literal()


@dataclasses.dataclass(frozen=True)
class NewtonPairs:
    """Newton pairs (p_k, q_k): coprime, p_k >= 2, q_k >= 1 and q_1 > p_1."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(p), int(q)) for p, q in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise SemigroupError("empty Newton pair list")
        for p, q in pairs:
            if p < 2:
                raise SemigroupError(f"Newton pair ({p},{q}) has p < 2")
            if q < 1:
                raise SemigroupError(f"Newton pair ({p},{q}) has q < 1")
            if gcd(p, q) != 1:
                raise SemigroupError(f"Newton pair ({p},{q}) is not coprime")
        p1, q1 = pairs[0]
        if q1 <= p1:
            raise SemigroupError(f"first Newton pair ({p1},{q1}) needs q > p")

    def literal(self) -> str:
        return "".join(f"({p},{q})" for p, q in self.pairs)

    def __str__(self) -> str:
        return self.literal()


@dataclasses.dataclass(frozen=True)
class Semigroup:
    """A numerical semigroup, stored by its finite sorted gap set.

    The constructor checks that the complement of the gap set really is
    closed under addition, so a Semigroup value is a semigroup by
    construction.
    """

    gaps: tuple[int, ...] = ()

    def __post_init__(self):
        gaps = tuple(int(g) for g in self.gaps)
        object.__setattr__(self, "gaps", gaps)
        if any(g < 1 for g in gaps):
            raise SemigroupError("gaps must be positive")
        if any(a >= b for a, b in zip(gaps, gaps[1:])):
            raise SemigroupError("gaps must be strictly increasing")
        gapset = set(gaps)
        cond = self.conductor
        elements = [s for s in range(1, cond) if s not in gapset]
        for i, s in enumerate(elements):
            for t in elements[i:]:
                u = s + t
                if u >= cond:
                    break
                if u in gapset:
                    raise SemigroupError(
                        f"not a semigroup: {s} + {t} = {u} is a gap")

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        if k >= self.conductor:
            return True
        i = bisect_left(self.gaps, k)
        return not (i < len(self.gaps) and self.gaps[i] == k)

    @property
    def delta(self) -> int:
        return len(self.gaps)

    @property
    def conductor(self) -> int:
        return self.gaps[-1] + 1 if self.gaps else 0

    @property
    def multiplicity(self) -> int:
        """Smallest positive element (1 for the full semigroup)."""
        m = 1
        while m not in self:
            m += 1
        return m

    def count_below(self, k: int) -> int:
        """Number of semigroup elements strictly below k."""
        if k <= 0:
            return 0
        return k - bisect_left(self.gaps, k)

    def min_generators(self) -> tuple[int, ...]:
        """The unique minimal generating set."""
        if not self.gaps:
            return (1,)
        bound = self.conductor + self.multiplicity
        elements = [s for s in range(1, bound) if s in self]
        sums = set()
        for i, s in enumerate(elements):
            for t in elements[i:]:
                if s + t >= bound:
                    break
                sums.add(s + t)
        return tuple(s for s in elements if s not in sums)

    def literal(self) -> str:
        return "<" + ",".join(str(g) for g in self.min_generators()) + ">"

    def __str__(self) -> str:
        return self.literal()


#: The full semigroup of all nonnegative integers (a smooth point).
SMOOTH = Semigroup(())


@dataclasses.dataclass(frozen=True)
class AperySet:
    """Smallest semigroup element in each residue class modulo `modulus`."""

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if len(self.elements) != self.modulus:
            raise SemigroupError("Apery set must have one element per residue class")
        if self.elements[0] != 0:
            raise SemigroupError("Apery set must contain 0")


def semigroup_from_generators(gens) -> Semigroup:
    """Semigroup generated by `gens`; requires gcd of the generators to be 1."""
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise SemigroupError("empty generator list")
    if any(g < 1 for g in gens):
        raise SemigroupError("generators must be positive")
    g = 0
    for x in gens:
        g = gcd(g, x)
    if g != 1:
        raise SemigroupError(f"not numerical: gcd of generators is {g}")
    if gens[0] == 1:
        return SMOOTH
    # Erdos-Graham bounds the Frobenius number below (largest)*(second largest).
    bound = gens[-1] * gens[-2] + 1
    reachable = bytearray(bound)
    reachable[0] = 1
    for k in range(1, bound):
        for gen in gens:
            if gen <= k and reachable[k - gen]:
                reachable[k] = 1
                break
    return Semigroup(tuple(k for k in range(bound) if not reachable[k]))


def delta(s: Semigroup) -> int:
    """Number of gaps."""
    return s.delta


def apery_set(s: Semigroup, m: int) -> AperySet:
    """Apery set of `s` with respect to an element m of `s`."""
    if m < 1 or m not in s:
        raise SemigroupError(f"modulus {m} not in semigroup")
    out = []
    for r in range(m):
        k = r
        while k not in s:
            k += m
        out.append(k)
    return AperySet(m, tuple(sorted(out)))


def _from_apery_layers(b: tuple[int, ...], m: int, context: str) -> Semigroup:
    # the set union of the arithmetic progressions b_j + m*Z>=0
    gaps = []
    for bj in b:
        g = bj - m
        while g >= 0:
            gaps.append(g)
            g -= m
    try:
        return Semigroup(tuple(sorted(gaps)))
    except SemigroupError as exc:
        raise SemigroupError(f"{context}: {exc}") from exc


def unblowup(s: Semigroup, m: int) -> Semigroup:
    """Inverse blowup: the semigroup whose blowup is `s` and whose multiplicity is m.

    With Ap(m, s) = {a_0 < ... < a_{m-1}}, the result has Apery set
    {a_j + j*m}.  Fails if m is not in `s`, if m is below the multiplicity
    of `s`, or if the shifted layers are not closed under addition.
    """
    if m < 1 or m not in s:
        raise SemigroupError(f"invalid multiplicity: {m} not in semigroup")
    if s.gaps and m < s.multiplicity:
        raise SemigroupError(
            f"invalid multiplicity: {m} < multiplicity {s.multiplicity}")
    a = apery_set(s, m).elements
    b = tuple(aj + j * m for j, aj in enumerate(a))
    return _from_apery_layers(b, m, "un-blowup is not a semigroup")


def blowup(s: Semigroup) -> Semigroup:
    """Blowup of a plane-branch semigroup: shift the j-th Apery element down by j*m."""
    if not s.gaps:
        raise SemigroupError("already smooth")
    m = s.multiplicity
    b = apery_set(s, m).elements
    a = tuple(bj - j * m for j, bj in enumerate(b))
    if any(x >= y for x, y in zip(a, a[1:])):
        raise NotPlaneBranchError(
            "blowup does not preserve the Apery order; not a plane-branch semigroup")
    return _from_apery_layers(a, m, "blowup is not a semigroup")


@lru_cache(maxsize=None)
def _semigroup_from_entries(entries: tuple[int, ...]) -> Semigroup:
    s = SMOOTH
    for m in reversed(entries):
        try:
            s = unblowup(s, m)
        except SemigroupError as exc:
            raise InadmissibleSequenceError(
                f"inadmissible multiplicity sequence {list(entries)}: {exc}") from exc
    return s


def semigroup_from_multseq(ms: MultSeq) -> Semigroup:
    """Fold the un-blowup step over the multiplicity sequence, right to left.

    The one-entry sequence [m] gives the semigroup generated by m and m+1;
    un-blowing up the full semigroup reproduces exactly that base case.
    """
    if not ms.entries:
        raise SemigroupError("smooth point: empty multiplicity sequence has no cusp semigroup")
    return _semigroup_from_entries(ms.entries)


def multseq_from_semigroup(s: Semigroup) -> MultSeq:
    """Record multiplicities along the blowup chain down to the full semigroup."""
    entries = []
    while s.gaps:
        entries.append(s.multiplicity)
        try:
            s = blowup(s)
        except SemigroupError as exc:
            raise NotPlaneBranchError(f"not a plane-branch semigroup: {exc}") from exc
    return MultSeq(tuple(entries))


@lru_cache(maxsize=None)
def is_admissible(entries: tuple[int, ...]) -> bool:
    """Whether a non-increasing entry tuple is a valid multiplicity sequence.

    Admissibility is operational: the un-blowup chain must succeed with all
    membership and closure checks.
    """
    try:
        _semigroup_from_entries(tuple(entries))
    except SemigroupError:
        return False
    return True


def semigroup_from_newton_pairs(np_: NewtonPairs) -> Semigroup:
    """Semigroup of the branch with the given Newton pairs.

    Uses the generator recursion b0 = p_1...p_r, b1 = q_1 p_2...p_r,
    b_{k+1} = p_k b_k + q_{k+1} p_{k+2}...p_r.  The conversion is cross
    checked in the test suite by round-tripping through multiplicity
    sequences and the gap-count formula.
    """
    pairs = np_.pairs
    r = len(pairs)
    ps = [p for p, _ in pairs]

    def ptail(k):  # p_{k+1} * ... * p_r with 1-based k
        out = 1
        for i in range(k, r):
            out *= ps[i]
        return out

    beta = [ptail(0), pairs[0][1] * ptail(1)]
    for k in range(1, r):
        beta.append(ps[k - 1] * beta[k] + pairs[k][1] * ptail(k + 1))
    return semigroup_from_generators(beta)


def counting_fn(s: Semigroup) -> CountingFn:
    """Counting function H with H(k) = #{elements of s below k}.

    H(k) = k - delta for k >= 2*delta, so the head on [0, 2*delta] together
    with the linear tail determines H everywhere.
    """
    d = s.delta
    head = tuple(s.count_below(k) for k in range(2 * d + 1))
    return CountingFn(head, d)


# ---------------------------------------------------------------------------
# cusp-type literal grammar shared by the CLI and candidate files

_MULT_TOKEN = re.compile(r"^(\d+)(?:_(\d+))?$")
_NEWTON = re.compile(r"^(?:\(\d+,\d+\))+$")
_NEWTON_PAIR = re.compile(r"\((\d+),(\d+)\)")


def parse_cusp(text: str) -> MultSeq | NewtonPairs | Semigroup:
    """Parse a cusp-type literal: '[2_4]', '[3,2]', '(2,3)(2,1)' or '<4,6,13>'."""
    text = text.strip()
    if not text:
        raise SemigroupError("empty cusp literal")
    if text.startswith("[") and text.endswith("]"):
        body = text[1:-1]
        if not body:
            raise SemigroupError(f"empty multiplicity sequence in {text!r}")
        entries = []
        for token in body.split(","):
            m = _MULT_TOKEN.match(token)
            if not m:
                raise SemigroupError(f"bad multiplicity token {token!r} in {text!r}")
            value = int(m.group(1))
            count = int(m.group(2)) if m.group(2) else 1
            if count < 1:
                raise SemigroupError(f"bad repetition count in {token!r}")
            entries.extend([value] * count)
        return MultSeq(tuple(entries))
    if text.startswith("<") and text.endswith(">"):
        body = text[1:-1]
        try:
            gens = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise SemigroupError(f"bad generator list {text!r}") from None
        return semigroup_from_generators(gens)
    if _NEWTON.match(text):
        pairs = tuple((int(p), int(q)) for p, q in _NEWTON_PAIR.findall(text))
        return NewtonPairs(pairs)
    raise SemigroupError(f"unrecognized cusp literal {text!r}")


def resolve_semigroup(cusp: MultSeq | NewtonPairs | Semigroup) -> Semigroup:
    """The semigroup of a cusp type in any of the three descriptions."""
    if isinstance(cusp, Semigroup):
        return cusp
    if isinstance(cusp, MultSeq):
        return semigroup_from_multseq(cusp)
    if isinstance(cusp, NewtonPairs):
        return semigroup_from_newton_pairs(cusp)
    raise TypeError(f"not a cusp type: {cusp!r}")
