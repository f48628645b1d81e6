"""Candidate tests, existence criteria and the known-curve catalog.

A collection of cusp types is a *candidate* of degree d when twice its total
gap count equals (d-1)(d-2).  The four decision procedures compare values of
H and F at multiples of d against triangular numbers:

* bezout:         H(jd+1) >= (j+1)(j+2)/2  for j = 0..d-3  (necessary);
* bl:             H(jd+1)  = (j+1)(j+2)/2  (the sharper necessary condition);
* conj_original:  F(jd)   <= (j+1)(j+2)/2  per j (fails for some real curves);
* conj_index:     sum_j F(jd) <= sum_j (j+1)(j+2)/2, i.e. the canonical
                  eu_hstar <= eu_h0 (holds on every curve in the catalog).

The catalog reproduces the three classical tricuspidal series C(d,u), D(l),
E(l) and the two sporadic quintics, together with the closed forms for
eu_h0 - eu_hstar on the three series.
"""

from __future__ import annotations

import dataclasses
from collections import Counter
from typing import Iterable, Iterator

from .invariants import (
    CuspCollection,
    NotCandidateError,
    eu_canonical,
    f_sequence,
    h_function,
)
from .semigroup import MultSeq, NewtonPairs, is_admissible, semigroup_from_multseq


@dataclasses.dataclass(frozen=True)
class Candidate:
    """A cusp collection together with a proposed curve degree."""

    collection: CuspCollection
    d: int

    def __post_init__(self):
        if self.d < 3:
            raise ValueError(f"degree {self.d} < 3")

    @property
    def is_candidate(self) -> bool:
        return 2 * self.collection.delta == (self.d - 1) * (self.d - 2)


@dataclasses.dataclass(frozen=True)
class CriterionRow:
    j: int
    lhs: int
    rhs: int
    ok: bool


@dataclasses.dataclass(frozen=True)
class CriterionReport:
    """Per-j comparison rows plus the aggregate verdict for one criterion."""

    criterion: str
    rows: tuple[CriterionRow, ...]
    passed: bool
    difference: int | None = None


def candidate_degree(c: CuspCollection) -> int | None:
    """The unique d >= 3 with 2*delta = (d-1)(d-2), if it exists."""
    target = 2 * c.delta
    d = 3
    while (d - 1) * (d - 2) < target:
        d += 1
    return d if (d - 1) * (d - 2) == target else None


def _require_candidate(cand: Candidate, force: bool):
    if not cand.is_candidate and not force:
        raise NotCandidateError(
            f"2*delta = {2 * cand.collection.delta} != (d-1)(d-2) = "
            f"{(cand.d - 1) * (cand.d - 2)} for d = {cand.d}; pass force to compute anyway")


def _triangular(j: int) -> int:
    return (j + 1) * (j + 2) // 2


def check_bezout(cand: Candidate, force: bool = False) -> CriterionReport:
    """H(jd+1) >= (j+1)(j+2)/2 for each j = 0..d-3."""
    _require_candidate(cand, force)
    h = h_function(cand.collection)
    d = cand.d
    rows = tuple(
        CriterionRow(j, h(j * d + 1), _triangular(j), h(j * d + 1) >= _triangular(j))
        for j in range(d - 2)
    )
    return CriterionReport("bezout", rows, all(r.ok for r in rows))


def check_bl(cand: Candidate, force: bool = False) -> CriterionReport:
    """H(jd+1) = (j+1)(j+2)/2 for each j = 0..d-3."""
    _require_candidate(cand, force)
    h = h_function(cand.collection)
    d = cand.d
    rows = tuple(
        CriterionRow(j, h(j * d + 1), _triangular(j), h(j * d + 1) == _triangular(j))
        for j in range(d - 2)
    )
    return CriterionReport("bl", rows, all(r.ok for r in rows))


def check_conj_original(cand: Candidate, force: bool = False) -> CriterionReport:
    """F(jd) <= (j+1)(j+2)/2 for each j = 0..d-3."""
    _require_candidate(cand, force)
    f = f_sequence(cand.collection, window=max(2 * cand.collection.delta - 2,
                                               cand.d * (cand.d - 3)))
    d = cand.d
    rows = tuple(
        CriterionRow(j, f[j * d], _triangular(j), f[j * d] <= _triangular(j))
        for j in range(d - 2)
    )
    return CriterionReport("conj_original", rows, all(r.ok for r in rows))


def check_conj_index(cand: Candidate, force: bool = False) -> CriterionReport:
    """Single verdict: canonical eu_hstar <= eu_h0, with the difference."""
    _require_candidate(cand, force)
    if cand.is_candidate:
        e0, es = eu_canonical(cand.collection, cand.d)
    else:
        h = h_function(cand.collection)
        f = f_sequence(cand.collection, window=max(2 * cand.collection.delta - 2,
                                                   cand.d * (cand.d - 3)))
        e0 = sum(h(j * cand.d + 1) for j in range(cand.d - 2))
        es = sum(f[j * cand.d] for j in range(cand.d - 2))
    row = CriterionRow(0, es, e0, es <= e0)
    return CriterionReport("conj_index", (row,), row.ok, difference=e0 - es)


ALL_CRITERIA = ("bezout", "bl", "conj_original", "conj_index")

_CHECKS = {
    "bezout": check_bezout,
    "bl": check_bl,
    "conj_original": check_conj_original,
    "conj_index": check_conj_index,
}


def run_criterion(name: str, cand: Candidate, force: bool = False) -> CriterionReport:
    try:
        fn = _CHECKS[name]
    except KeyError:
        raise ValueError(f"unknown criterion {name!r}") from None
    return fn(cand, force)


def multiplicity_multiset(c: CuspCollection) -> Counter:
    """Bag union of all multiplicity-sequence entries of the collection."""
    out: Counter = Counter()
    for ms in c.multseqs:
        out.update(ms.entries)
    return out


@dataclasses.dataclass(frozen=True)
class Regroupings:
    collections: tuple[tuple[MultSeq, ...], ...]
    truncated: bool

    def cusp_collections(self) -> list[CuspCollection]:
        return [
            CuspCollection(tuple(semigroup_from_multseq(ms) for ms in parts))
            for parts in self.collections
        ]


def _multiset_partitions(items: tuple[int, ...]) -> set[tuple[tuple[int, ...], ...]]:
    # distinct partitions of a small multiset; parts and partitions canonically
    # sorted so duplicates coming from equal entries collapse
    if not items:
        return {()}
    first, rest = items[0], items[1:]
    out = set()
    for sub in _multiset_partitions(rest):
        out.add(tuple(sorted(sub + ((first,),), reverse=True)))
        for i, part in enumerate(sub):
            grown = tuple(sorted(part + (first,), reverse=True))
            out.add(tuple(sorted(sub[:i] + (grown,) + sub[i + 1:], reverse=True)))
    return out


def regroupings(
    multiset: Counter | Iterable[int],
    max_parts: int | None = None,
    cap: int = 10_000,
) -> Regroupings:
    """All ways to split the multiplicity multiset into admissible sequences.

    Each part is arranged non-increasingly and must pass the un-blowup
    admissibility check.  Enumeration is capped at `cap` partitions; the flag
    reports whether the cap truncated the list.
    """
    if isinstance(multiset, Counter):
        items = tuple(sorted(multiset.elements(), reverse=True))
    else:
        items = tuple(sorted(multiset, reverse=True))
    if not items:
        raise ValueError("empty multiplicity multiset")
    partitions = sorted(_multiset_partitions(items))
    truncated = len(partitions) > cap
    partitions = partitions[:cap]
    out = []
    for parts in partitions:
        if max_parts is not None and len(parts) > max_parts:
            continue
        if all(is_admissible(part) for part in parts):
            out.append(tuple(MultSeq(part) for part in parts))
    return Regroupings(tuple(out), truncated)


# ---------------------------------------------------------------------------
# catalog of known curves with at least three cusps

FAMILIES = ("C", "D", "E", "sporadic3", "sporadic4")


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    family: str
    label: str
    d: int
    params: tuple[int, ...]
    cusps: tuple[MultSeq, ...]
    newton: tuple[NewtonPairs, ...]

    def __post_init__(self):
        total = sum(ms.delta for ms in self.cusps)
        if 2 * total != (self.d - 1) * (self.d - 2):
            raise AssertionError(
                f"catalog entry {self.label}: 2*delta = {2 * total} != (d-1)(d-2)")

    def collection(self) -> CuspCollection:
        return CuspCollection(tuple(semigroup_from_multseq(ms) for ms in self.cusps))


def _rep(value: int, count: int) -> tuple[int, ...]:
    return (value,) * count


def catalog(family: str, d: int | None = None, u: int | None = None,
            l: int | None = None) -> CatalogEntry:
    """Build one catalog entry; parameters are validated against the series ranges."""
    if family == "C":
        if d is None or u is None:
            raise ValueError("family C needs d and u")
        if d < 4 or not 1 <= u <= d - 3:
            raise ValueError(f"family C needs d >= 4 and 1 <= u <= d-3; got d={d}, u={u}")
        # the series is symmetric in u <-> d-2-u; emit the longer double-point
        # chain first, the order the published tables use
        v1, v2 = max(u, d - 2 - u), min(u, d - 2 - u)
        cusps = (MultSeq((d - 2,)), MultSeq(_rep(2, v1)), MultSeq(_rep(2, v2)))
        newton = (
            NewtonPairs(((d - 2, d - 1),)),
            NewtonPairs(((2, 2 * v1 + 1),)),
            NewtonPairs(((2, 2 * v2 + 1),)),
        )
        return CatalogEntry("C", f"C({d},{u})", d, (d, u), cusps, newton)
    if family == "D":
        if l is None or l < 1:
            raise ValueError("family D needs l >= 1")
        d_ = 2 * l + 3
        cusps = (MultSeq((2 * l,) + _rep(2, l)), MultSeq(_rep(3, l)), MultSeq((2,)))
        # l = 1 degenerates: [2,2] is the one-pair cusp (2,5)
        first = NewtonPairs(((2, 5),)) if l == 1 else NewtonPairs(((l, l + 1), (2, 1)))
        newton = (first, NewtonPairs(((3, 3 * l + 1),)), NewtonPairs(((2, 3),)))
        return CatalogEntry("D", f"D({l})", d_, (l,), cusps, newton)
    if family == "E":
        if l is None or l < 1:
            raise ValueError("family E needs l >= 1")
        d_ = 3 * l + 4
        cusps = (
            MultSeq((3 * l,) + _rep(3, l)),
            MultSeq(_rep(4, l) + (2, 2)),
            MultSeq((2,)),
        )
        # l = 1 degenerates: [3,3] is the one-pair cusp (3,7)
        first = NewtonPairs(((3, 7),)) if l == 1 else NewtonPairs(((l, l + 1), (3, 1)))
        newton = (first, NewtonPairs(((2, 2 * l + 1), (2, 1))), NewtonPairs(((2, 3),)))
        return CatalogEntry("E", f"E({l})", d_, (l,), cusps, newton)
    if family == "sporadic3":
        cusps = (MultSeq((2, 2)),) * 3
        newton = (NewtonPairs(((2, 5),)),) * 3
        return CatalogEntry("sporadic3", "sporadic3", 5, (), cusps, newton)
    if family == "sporadic4":
        cusps = (MultSeq((2, 2, 2)), MultSeq((2,)), MultSeq((2,)), MultSeq((2,)))
        newton = (NewtonPairs(((2, 7),)),) + (NewtonPairs(((2, 3),)),) * 3
        return CatalogEntry("sporadic4", "sporadic4", 5, (), cusps, newton)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def catalog_entries(max_d: int) -> Iterator[CatalogEntry]:
    """Every catalog entry of degree at most max_d, both sporadics included."""
    for d in range(4, max_d + 1):
        for u in range(1, d - 2):
            yield catalog("C", d=d, u=u)
    l = 1
    while 2 * l + 3 <= max_d:
        yield catalog("D", l=l)
        l += 1
    l = 1
    while 3 * l + 4 <= max_d:
        yield catalog("E", l=l)
        l += 1
    if max_d >= 5:
        yield catalog("sporadic3")
        yield catalog("sporadic4")


def expected_eu_difference(entry: CatalogEntry) -> int:
    """Closed form for eu_h0 - eu_hstar on the C, D, E series."""
    if entry.family == "C":
        d, u = entry.params
        if d % 2 == 1:
            l = (d - 1) // 2
            return l * (l - 1)
        l = d // 2
        uu = max(u, d - 2 - u)  # the series is symmetric in u <-> d-2-u
        return (uu - l) * (uu - l + 1)
    if entry.family == "D":
        (l,) = entry.params
        if l % 3 == 2:
            p = (l + 1) // 3
            return 4 * p * (3 * p - 1) + 2
        if l % 3 == 0:
            p = l // 3
            return 4 * p * (3 * p - 1)
        p = (l - 1) // 3
        return 12 * p * (p + 1) + 2
    if entry.family == "E":
        (l,) = entry.params
        p, r = divmod(l, 4)
        return (
            60 * p * p - 2 * p,
            60 * p * p + 46 * p + 10,
            60 * p * p + 62 * p + 16,
            60 * p * p + 100 * p + 42,
        )[r]
    raise ValueError(f"no closed form for family {entry.family!r}")
