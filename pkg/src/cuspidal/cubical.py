"""Brute-force cubical lattice-cohomology oracle.

Builds the weighted rectangle [0,m_1] x ... x [0,m_nu] for a cusp collection,
assigns each lattice point x either

    w_a(x) = sum_i H_i(x_i) + min(0, 1 + a - |x|)      (surgery weight), or
    W(x)   = delta - |x| + sum_i H_i(x_i)              (degree-free weight),

gives every cube the maximum weight of its vertices, and computes the reduced
Betti numbers of every sublevel complex S_n exactly over the rationals.  The
normalized Euler characteristics

    eu_h0    = -min(w) + sum_n btilde_0(S_n)
    eu_hstar = -min(w) + sum_n sum_q (-1)^q btilde_q(S_n)

are the oracle values the closed-form H/F formulas are checked against.

Rank computation is exact: integer sparse column elimination with gcd
normalization (cross-multiplication instead of fractions), processed in
filtration order so that one pass yields the rank of every sublevel boundary
matrix at once.  Pivot rows of the (q+1)-boundary clear the corresponding
q-columns, which is valid level-by-level because row order equals filtration
order.  Rank of the edge boundary is taken from a union-find instead.
"""

from __future__ import annotations

import dataclasses
from bisect import bisect_right
from itertools import product
from math import gcd

from .invariants import CuspCollection
from .semigroup import counting_fn


class RectangleTooLarge(RuntimeError):
    """Predicted rectangle size exceeds the configured cap."""

    def __init__(self, points: int, cap: int):
        super().__init__(
            f"rectangle too large: {points} lattice points exceed cap {cap}")
        self.points = points
        self.cap = cap


DEFAULT_CAP = 2_000_000


@dataclasses.dataclass(frozen=True)
class WeightedRectangle:
    """A weighted lattice rectangle: dims m_i and one weight per lattice point.

    Vertex weights are stored flat in row-major order (last coordinate
    fastest).  `kind` records which weight function was evaluated ("w_a" with
    its index, or "W").
    """

    dims: tuple[int, ...]
    weights: tuple[int, ...]
    kind: str
    index: int | None

    @property
    def nu(self) -> int:
        return len(self.dims)

    @property
    def min_weight(self) -> int:
        return min(self.weights)

    def strides(self) -> tuple[int, ...]:
        out = [1] * self.nu
        for i in range(self.nu - 2, -1, -1):
            out[i] = out[i + 1] * (self.dims[i + 1] + 1)
        return tuple(out)

    def weight_at(self, x: tuple[int, ...]) -> int:
        s = self.strides()
        return self.weights[sum(xi * si for xi, si in zip(x, s))]


@dataclasses.dataclass(frozen=True)
class BettiTable:
    """Reduced Betti numbers of every level set S_n, n from min_level upward.

    Row q-entries run over q = 0..nu; rows become all-zero at the stable
    level where S_n is the full (contractible) rectangle.
    """

    min_level: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def max_level(self) -> int:
        return self.min_level + len(self.rows) - 1

    def row(self, n: int) -> tuple[int, ...]:
        if n < self.min_level:
            raise ValueError(f"level {n} below the minimum weight {self.min_level}")
        if n > self.max_level:
            return (0,) * len(self.rows[0])
        return self.rows[n - self.min_level]

    def to_tsv(self) -> str:
        lines = []
        for i, row in enumerate(self.rows):
            lines.append("\t".join(str(v) for v in (self.min_level + i, *row)))
        return "\n".join(lines)


@dataclasses.dataclass(frozen=True)
class EuOracle:
    """Euler characteristics summed from a BettiTable."""

    eu_h0: int
    eu_hstar: int
    min_weight: int
    table: BettiTable


def default_dims(c: CuspCollection, box_margin: int = 0) -> tuple[int, ...]:
    """m_i = 2*delta_i + 1 + margin, the smallest box with m_i > 2*delta_i."""
    return tuple(2 * d + 1 + box_margin for d in c.deltas)


def build_rectangle(
    c: CuspCollection,
    j: int,
    box_margin: int = 0,
    dims: tuple[int, ...] | None = None,
    cap: int = DEFAULT_CAP,
    kind: str = "w_a",
) -> WeightedRectangle:
    """Evaluate a weight function on every lattice point of the rectangle.

    kind "w_a" gives the surgery weight with index a = j; kind "W" gives the
    degree-free weight (j is then ignored).
    """
    if dims is None:
        dims = default_dims(c, box_margin)
    if len(dims) != c.nu:
        raise ValueError(f"need {c.nu} box sizes, got {len(dims)}")
    points = 1
    for m in dims:
        points *= m + 1
    if points > cap:
        raise RectangleTooLarge(points, cap)
    hs = [counting_fn(s) for s in c.cusps]
    h_tables = [[h(x) for x in range(m + 1)] for h, m in zip(hs, dims)]
    delta = c.delta
    weights = []
    if kind == "w_a":
        for x in product(*(range(m + 1) for m in dims)):
            base = sum(t[v] for t, v in zip(h_tables, x))
            weights.append(base + min(0, 1 + j - sum(x)))
        return WeightedRectangle(tuple(dims), tuple(weights), "w_a", j)
    if kind == "W":
        for x in product(*(range(m + 1) for m in dims)):
            base = sum(t[v] for t, v in zip(h_tables, x))
            weights.append(delta - sum(x) + base)
        return WeightedRectangle(tuple(dims), tuple(weights), "W", None)
    raise ValueError(f"unknown weight kind {kind!r}")


def _enumerate_cells(rect: WeightedRectangle):
    """All cubes as (weight, dim, point_index, axis_mask), weights = vertex max."""
    nu = rect.nu
    dims = rect.dims
    strides = rect.strides()
    vw = rect.weights
    cells = []
    for mask in range(1 << nu):
        axes = [i for i in range(nu) if mask >> i & 1]
        dim = len(axes)
        corner_offsets = []
        for sub in range(1 << dim):
            corner_offsets.append(
                sum(strides[axes[t]] for t in range(dim) if sub >> t & 1))
        ranges = [
            range(dims[i] + (0 if mask >> i & 1 else 1)) for i in range(nu)
        ]
        for x in product(*ranges):
            p = sum(xi * si for xi, si in zip(x, strides))
            w = max(vw[p + off] for off in corner_offsets)
            cells.append((w, dim, p, mask))
    return cells


def _boundary(p: int, mask: int, strides: tuple[int, ...]):
    """Signed codimension-1 faces of the cube (p, mask)."""
    out = []
    sign = 1
    for i in range(len(strides)):
        if mask >> i & 1:
            sub = mask & ~(1 << i)
            out.append((p + strides[i], sub, sign))
            out.append((p, sub, -sign))
            sign = -sign
    return out


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self):
        self.parent: dict[int, int] = {}

    def add(self, v: int):
        self.parent.setdefault(v, v)

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        self.parent[ru] = rv
        return True


def _reduce_column(col: dict[int, int], pivots: dict[int, dict[int, int]]) -> bool:
    """Eliminate `col` against the pivot columns; register it if independent.

    Exact integer arithmetic: to kill the leading row r shared with pivot P,
    replace col by (P_r/g)*col - (col_r/g)*P with g = gcd.  Returns True when
    the column carries a new pivot (rank grows by one).
    """
    while col:
        r = max(col)
        piv = pivots.get(r)
        if piv is None:
            g = 0
            for v in col.values():
                g = gcd(g, v)
            if g > 1:
                for k in col:
                    col[k] //= g
            pivots[r] = col
            return True
        a = piv[r]
        b = col[r]
        g = gcd(a, b)
        ma = a // g
        mb = b // g
        if ma != 1:
            for k in col:
                col[k] *= ma
        for k, v in piv.items():
            nv = col.get(k, 0) - mb * v
            if nv:
                col[k] = nv
            else:
                col.pop(k, None)
    return False


def _rank_profile(rect: WeightedRectangle):
    """One filtration pass; per dimension, sorted weight lists of cells and pivots.

    Returns (cell_weights, pivot_weights, min_w, max_w) where cell_weights[q]
    lists the weights of all q-cells in increasing order and pivot_weights[q]
    the weights of the columns of the q-boundary that carry a pivot, i.e.
    rank of the q-boundary restricted to S_n is the number of entries <= n.
    """
    nu = rect.nu
    strides = rect.strides()
    cells = _enumerate_cells(rect)
    cells.sort()
    min_w = cells[0][0]
    max_w = cells[-1][0]

    by_dim: list[list[tuple[int, int, int]]] = [[] for _ in range(nu + 1)]
    for w, dim, p, mask in cells:
        by_dim[dim].append((w, p, mask))

    cell_weights = [[w for w, _, _ in group] for group in by_dim]

    # filtration position of each cell within its dimension (rows of the
    # boundary one dimension up); dict key packs point and axis mask
    pos: list[dict[int, int]] = [dict() for _ in range(nu + 1)]
    for dim, group in enumerate(by_dim):
        table = pos[dim]
        for i, (_, p, mask) in enumerate(group):
            table[p << nu | mask] = i

    pivot_weights: list[list[int]] = [[] for _ in range(nu + 2)]

    # rank of the edge boundary via union-find: tree edges are the pivots
    uf = _UnionFind()
    for _, p, _ in by_dim[0]:
        uf.add(p)
    for w, p, mask in by_dim[1]:
        i = mask.bit_length() - 1
        if uf.union(p, p + strides[i]):
            pivot_weights[1].append(w)

    # higher boundaries by exact sparse elimination, top dimension first so
    # that pivot rows clear the matching columns one dimension down
    cleared: set[int] = set()
    for q in range(nu, 1, -1):
        rows = pos[q - 1]
        pivots: dict[int, dict[int, int]] = {}
        next_cleared: set[int] = set()
        for idx, (w, p, mask) in enumerate(by_dim[q]):
            if idx in cleared:
                continue
            col = {}
            for fp, fmask, sign in _boundary(p, mask, strides):
                col[rows[fp << nu | fmask]] = sign
            if _reduce_column(col, pivots):
                pivot_weights[q].append(w)
        for r in pivots:
            next_cleared.add(r)
        cleared = next_cleared
    return cell_weights, [sorted(ws) for ws in pivot_weights], min_w, max_w


def betti_table(rect: WeightedRectangle) -> BettiTable:
    """Reduced Betti numbers of S_n for every level n up to stabilization."""
    cell_weights, pivot_weights, min_w, max_w = _rank_profile(rect)
    nu = rect.nu
    rows = []
    for n in range(min_w, max_w + 1):
        counts = [bisect_right(ws, n) for ws in cell_weights]
        ranks = [bisect_right(ws, n) for ws in pivot_weights]
        row = []
        for q in range(nu + 1):
            b = counts[q] - ranks[q] - ranks[q + 1]
            if q == 0:
                b -= 1
            row.append(b)
        rows.append(tuple(row))
    return BettiTable(min_w, tuple(rows))


def level_betti(rect: WeightedRectangle, n: int) -> tuple[int, ...]:
    """Reduced Betti vector (btilde_0 .. btilde_nu) of the level set S_n."""
    if n < rect.min_weight:
        raise ValueError(f"level {n} below the minimum weight {rect.min_weight}")
    return betti_table(rect).row(n)


def oracle_eu(
    c: CuspCollection,
    j: int,
    box_margin: int = 0,
    dims: tuple[int, ...] | None = None,
    cap: int = DEFAULT_CAP,
) -> EuOracle:
    """Euler characteristics of the rectangle with surgery weight w_j.

    For 0 <= j <= 2*delta-2 these must equal H(j+1) + delta-1-j and
    F(j) + delta-1-j respectively.
    """
    rect = build_rectangle(c, j, box_margin=box_margin, dims=dims, cap=cap)
    table = betti_table(rect)
    min_w = rect.min_weight
    e0 = -min_w
    es = -min_w
    for row in table.rows:
        e0 += row[0]
        for q, b in enumerate(row):
            es += b if q % 2 == 0 else -b
    return EuOracle(e0, es, min_w, table)


def min_w_over_diagonal(
    c: CuspCollection,
    j: int,
    box_margin: int = 0,
    dims: tuple[int, ...] | None = None,
) -> int:
    """Minimum of the degree-free weight W over the diagonal slice |x| = j+1.

    Equals delta - j - 1 + H(j+1); in particular 0 once j exceeds
    2*delta - 2.  An empty slice (j + 1 beyond the box total) yields 0.
    """
    if dims is None:
        dims = default_dims(c, box_margin)
    hs = [counting_fn(s) for s in c.cusps]
    target = j + 1
    if target > sum(dims) or target < 0:
        return 0
    best = None

    def scan(i: int, remaining: int, acc: int):
        nonlocal best
        if i == len(dims) - 1:
            if 0 <= remaining <= dims[i]:
                total = acc + hs[i](remaining)
                if best is None or total < best:
                    best = total
            return
        lo = max(0, remaining - sum(dims[i + 1:]))
        hi = min(dims[i], remaining)
        for x in range(lo, hi + 1):
            scan(i + 1, remaining - x, acc + hs[i](x))

    scan(0, target, 0)
    assert best is not None
    return c.delta - target + best


def check_vanishing(rect: WeightedRectangle) -> bool:
    """Whether btilde_q(S_n) = 0 for all q >= nu at every level."""
    table = betti_table(rect)
    return all(all(b == 0 for b in row[rect.nu:]) for row in table.rows)
