"""Scrambles: egg collections, hitting numbers, egg cuts, and orders.

A scramble is a collection of eggs (nonempty connected vertex sets) on a
host graph.  The hitting number is computed exactly through a maximum
avoidance set; the minimum egg cut through pairwise max-flow with an
early-terminating incumbent, helped by an exact cut floor available on
two-factor rook hosts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, NamedTuple, Optional, Sequence

from . import graphs
from .graphs import MultiGraph, connected_subsets, cut_weight, rook_graph


class Scramble:
    """Eggs over a host graph, stored sorted and deduplicated.

    ``uniform_size`` / ``with_squares`` are fast-path hints set by the
    constructors in this module; they promise the egg list is exactly
    every connected subset of that size (plus every 2x2 square).  Leave
    them unset for hand-built egg lists.
    """

    __slots__ = ("host", "eggs", "uniform_size", "with_squares", "_validated")

    def __init__(self, host: MultiGraph, eggs: Iterable[Iterable[int]],
                 uniform_size: Optional[int] = None, with_squares: bool = False):
        normed = set()
        for egg in eggs:
            t = tuple(sorted(set(egg)))
            for v in t:
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < host.n:
                    raise ValueError(f"egg vertex {v!r} out of range")
            normed.add(t)
        self.host = host
        self.eggs = tuple(sorted(normed))
        self.uniform_size = uniform_size
        self.with_squares = with_squares
        self._validated = False


def validate_scramble(s: Scramble) -> list:
    """List of violations (empty means the scramble is valid)."""
    out = []
    for idx, egg in enumerate(s.eggs):
        if not egg:
            out.append(f"egg {idx} is empty")
        elif not graphs.is_connected_subset(s.host, egg):
            out.append(f"egg {idx} is not connected: {list(egg)}")
    return out


def _require_valid(s: Scramble) -> None:
    if s._validated:
        return
    problems = validate_scramble(s)
    if problems:
        raise ValueError("invalid scramble: " + "; ".join(problems))
    s._validated = True


# ======================================================================
# hitting number via maximum avoidance
# ======================================================================

def hitting_number(s: Scramble):
    """Exact minimum hitting set size with witnesses.

    Returns (number, hitting set, maximum avoidance set).  The avoidance
    maximum comes from a column-sweep DP when the scramble is all
    connected k-subsets of a two-factor rook graph (optionally plus all
    2x2 squares), else from branch and bound over vertex inclusion.
    """
    _require_valid(s)
    host = s.host
    n = host.n
    if not s.eggs:
        return 0, (), tuple(range(n))
    avoid = None
    if (s.uniform_size is not None and host.dims is not None
            and len(host.dims) == 2):
        maxcomp = s.uniform_size - 1
        if not s.with_squares or maxcomp <= 4:
            avoid = _max_avoidance_grid(
                host.dims[0], host.dims[1], maxcomp,
                s.with_squares and maxcomp == 4,
            )
    if avoid is None:
        avoid = _max_avoidance_branch_bound(s)
    aset = set(avoid)
    for egg in s.eggs:
        if all(v in aset for v in egg):
            raise RuntimeError("avoidance solver returned a set containing an egg")
    hit = tuple(v for v in range(n) if v not in aset)
    return len(hit), hit, tuple(sorted(avoid))


def _max_avoidance_branch_bound(s: Scramble) -> tuple:
    """Exact maximum egg-free set by include/exclude search.

    Vertices are decided in order of descending egg membership; a branch
    dies when even taking every remaining vertex cannot beat the best.
    """
    host = s.host
    n = host.n
    egg_masks = [sum(1 << v for v in e) for e in s.eggs]
    member = [[] for _ in range(n)]
    for ei, e in enumerate(s.eggs):
        for v in e:
            member[v].append(ei)
    order = sorted(range(n), key=lambda v: (-len(member[v]), v))
    best_size = -1
    best_mask = 0

    def dfs(pos, mask, count):
        nonlocal best_size, best_mask
        if count + (n - pos) <= best_size:
            return
        if pos == n:
            best_size = count
            best_mask = mask
            return
        v = order[pos]
        newmask = mask | (1 << v)
        ok = True
        for ei in member[v]:
            if egg_masks[ei] & ~newmask == 0:
                ok = False
                break
        if ok:
            dfs(pos + 1, newmask, count + 1)
        dfs(pos + 1, mask, count)

    dfs(0, 0, 0)
    return tuple(v for v in range(n) if best_mask >> v & 1)


def _max_avoidance_grid(nrows: int, ncols: int, maxcomp: int,
                        no_squares: bool) -> tuple:
    """Exact maximum vertex set on an nrows x ncols rook graph whose
    induced components all have at most maxcomp vertices (and, when
    no_squares is set, which contains no full 2x2 square).

    Column sweep.  The cells picked in one column form a clique, so they
    join exactly one component; a live component is summarized by how
    many rows it owns and its cell count, and rows are interchangeable,
    so a DP state is the sorted multiset of (rowcount, size) pairs.

    A component with two cells in two rows is necessarily a single
    column's pair, so with maxcomp 4 a 2x2 square appears exactly when a
    (2,2) component alone takes two cells in both its rows and no fresh
    row; that one transition is what no_squares forbids.
    """
    if maxcomp <= 0:
        return ()
    if no_squares and maxcomp > 4:
        raise ValueError("square-free avoidance supports component caps up to 4 only")

    dp = {(): 0}
    parents = []
    for _col in range(ncols):
        ndp = {}
        npar = {}
        for state in sorted(dp):
            val = dp[state]
            old = ndp.get(state)
            if old is None or val > old:
                ndp[state] = val
                npar[state] = (state, None)
            free = nrows - sum(rc for rc, _ in state)
            seen_groups = set()
            for r in range(len(state) + 1):
                for idxs in itertools.combinations(range(len(state)), r):
                    chosen = tuple(sorted(state[i] for i in idxs))
                    if chosen in seen_groups:
                        continue
                    seen_groups.add(chosen)
                    rc_sum = sum(e[0] for e in chosen)
                    sz_sum = sum(e[1] for e in chosen)
                    a_range = range(len(idxs), rc_sum + 1) if idxs else (0,)
                    rest = [state[i] for i in range(len(state)) if i not in idxs]
                    for a_tot in a_range:
                        for u in range(free + 1):
                            cells = a_tot + u
                            if cells == 0:
                                continue
                            new_sz = sz_sum + cells
                            if new_sz > maxcomp:
                                continue
                            if (no_squares and len(chosen) == 1
                                    and chosen[0] == (2, 2)
                                    and a_tot == 2 and u == 0):
                                continue
                            new_state = tuple(sorted(rest + [(rc_sum + u, new_sz)]))
                            nv = val + cells
                            old = ndp.get(new_state)
                            if old is None or nv > old:
                                ndp[new_state] = nv
                                npar[new_state] = (state, (chosen, a_tot, u))
        dp = ndp
        parents.append(npar)

    best_state = None
    best_val = -1
    for state in sorted(dp):
        if dp[state] > best_val:
            best_val = dp[state]
            best_state = state

    # walk parents back, then replay forward with concrete rows
    trail = []
    cur = best_state
    for col in range(ncols - 1, -1, -1):
        prev, move = parents[col][cur]
        trail.append(move)
        cur = prev
    trail.reverse()

    comps: List[list] = []  # [rowset, size]
    used_rows = set()
    cells_out = []
    for col, move in enumerate(trail):
        if move is None:
            continue
        chosen, a_tot, u = move
        picked = []
        taken = set()
        for rc, sz in chosen:
            for ci in range(len(comps)):
                if ci not in taken and len(comps[ci][0]) == rc and comps[ci][1] == sz:
                    picked.append(ci)
                    taken.add(ci)
                    break
            else:
                raise RuntimeError("avoidance replay lost a component")
        rows_sel = []
        remaining = a_tot
        for pos, ci in enumerate(picked):
            later = len(picked) - pos - 1
            take = min(len(comps[ci][0]), remaining - later)
            rows_sel.extend(sorted(comps[ci][0])[:take])
            remaining -= take
        if remaining:
            raise RuntimeError("avoidance replay mis-split a merge")
        fresh = [r for r in range(nrows) if r not in used_rows][:u]
        rows_sel.extend(fresh)
        for rr in rows_sel:
            cells_out.append((rr, col))
        new_rows = set(fresh)
        new_size = a_tot + u
        for ci in picked:
            new_rows |= comps[ci][0]
            new_size += comps[ci][1]
        comps = [c for i, c in enumerate(comps) if i not in taken]
        comps.append([new_rows, new_size])
        used_rows |= new_rows

    verts = tuple(sorted(r * ncols + c for r, c in cells_out))
    if len(verts) != best_val:
        raise RuntimeError("avoidance replay dropped cells")
    return verts


# ======================================================================
# egg cuts
# ======================================================================

class EggCutResult(NamedTuple):
    value: Optional[int]      # None means no two eggs are disjoint (+infinity)
    exact: bool               # False: value is a certified lower bound
    pair: Optional[tuple]     # the egg pair attaining the minimum
    side: Optional[tuple]     # minimal source side of the minimum cut


def _partitions_desc(total: int, max_parts: int, max_val: int) -> tuple:
    out = []
    parts: List[int] = []

    def rec(rem, most):
        if rem == 0:
            out.append(tuple(parts))
            return
        if len(parts) == max_parts:
            return
        for v in range(min(most, rem), 0, -1):
            parts.append(v)
            rec(rem - v, v)
            parts.pop()

    rec(total, max_val)
    return tuple(out)


def _gale_ryser(rows: tuple, cols: tuple) -> bool:
    """Feasibility of a 0/1 matrix with the given (descending) margins."""
    for k in range(1, len(rows) + 1):
        if sum(rows[:k]) > sum(min(c, k) for c in cols):
            return False
    return True


@lru_cache(maxsize=None)
def _max_induced_edges(n: int, m: int, size: int) -> int:
    """Maximum edge count induced by `size` vertices of the n x m rook
    graph; depends only on the row/column occupancy profiles."""
    best = -1
    col_parts = _partitions_desc(size, m, n)
    for rows in _partitions_desc(size, n, m):
        base = sum(r * (r - 1) // 2 for r in rows)
        for cols in col_parts:
            if _gale_ryser(rows, cols):
                e = base + sum(c * (c - 1) // 2 for c in cols)
                if e > best:
                    best = e
    return best


@lru_cache(maxsize=None)
def min_side_cut_floor(n: int, m: int, min_side: int) -> Optional[int]:
    """Exact minimum cut weight of the n x m rook graph over partitions
    with both sides of at least min_side vertices (None if impossible).

    Cut weight depends only on the side's row/column occupancy profile,
    so the minimum is a small scan over feasible profile pairs.
    """
    total = n * m
    if min_side < 1 or 2 * min_side > total:
        return None
    deg = n + m - 2
    best = None
    for size in range(min_side, total - min_side + 1):
        w = deg * size - 2 * _max_induced_edges(n, m, size)
        if best is None or w < best:
            best = w
    return best


def egg_cut_floor(s: Scramble) -> Optional[int]:
    """A certified lower bound on the minimum egg cut, when the host is a
    two-factor rook graph: every egg-separating partition has both sides
    at least as large as the smallest egg."""
    host = s.host
    if host.dims is None or len(host.dims) != 2 or not s.eggs:
        return None
    smallest = min(len(e) for e in s.eggs)
    return min_side_cut_floor(host.dims[0], host.dims[1], smallest)


def min_egg_cut(s: Scramble, floor: Optional[int] = None) -> EggCutResult:
    """Minimum over disjoint egg pairs of the min cut separating them.

    Flows terminate early at the incumbent; when a known floor is given
    the pair scan stops as soon as the incumbent reaches it.  The witness
    is the first pair (in egg order) attaining the minimum.
    """
    _require_valid(s)
    host = s.host
    eggs = s.eggs
    masks = [sum(1 << v for v in e) for e in eggs]
    best = None
    best_pair = None
    done = False
    for i in range(len(eggs)):
        mi = masks[i]
        for j in range(i + 1, len(eggs)):
            if mi & masks[j]:
                continue
            if best is None:
                value, _ = graphs.min_cut_value(host, eggs[i], eggs[j])
                best = value
                best_pair = (i, j)
            else:
                value, exact = graphs.min_cut_value(host, eggs[i], eggs[j], cutoff=best)
                if exact and value < best:
                    best = value
                    best_pair = (i, j)
            if floor is not None and best <= floor:
                done = True
                break
        if done:
            break
    if best is None:
        return EggCutResult(None, True, None, None)
    fr = graphs.min_cut_between(host, eggs[best_pair[0]], eggs[best_pair[1]])
    if fr.value != best:
        raise RuntimeError("flow re-solve disagreed with the pair scan")
    return EggCutResult(best, True, (eggs[best_pair[0]], eggs[best_pair[1]]),
                        fr.source_side)


# ======================================================================
# order
# ======================================================================

@dataclass
class OrderReport:
    hitting_number: int
    hitting_set: tuple
    max_avoidance: tuple
    min_egg_cut: Optional[int]  # None means no disjoint egg pair exists
    cut_exact: bool             # False: min_egg_cut is a certified lower bound
    cut_pair: Optional[tuple]
    cut_side: Optional[tuple]
    order: int


def scramble_order(s: Scramble, cut_mode: str = "exact") -> OrderReport:
    """Order = min(hitting number, minimum egg cut).

    ``cut_mode`` "exact" runs the pairwise flow scan; "floor" uses the
    certified cut floor alone (valid only when it is at least the hitting
    number, which already pins the order); "auto" picks "floor" when that
    condition holds.  No disjoint egg pair means the cut is +infinity and
    the order equals the hitting number.
    """
    if cut_mode not in ("exact", "floor", "auto"):
        raise ValueError("cut_mode must be exact, floor, or auto")
    hn, hit, avoid = hitting_number(s)
    floor = egg_cut_floor(s)
    if cut_mode == "auto":
        cut_mode = "floor" if (floor is not None and floor >= hn) else "exact"
    if cut_mode == "floor":
        if floor is None:
            raise ValueError("no cut floor is available for this scramble; use exact mode")
        if floor < hn:
            raise ValueError("cut floor is below the hitting number; exact cut needed")
        return OrderReport(hn, hit, avoid, floor, False, None, None, hn)
    res = min_egg_cut(s, floor=floor)
    order = hn if res.value is None else min(hn, res.value)
    return OrderReport(hn, hit, avoid, res.value, res.exact, res.pair,
                       res.side, order)


# ======================================================================
# scramble families
# ======================================================================

def star_scramble(n: int, m: int) -> Scramble:
    """All connected (n-1)-subsets of the n x m rook graph."""
    if not (2 <= n <= m):
        raise ValueError("star scramble needs 2 <= n <= m")
    host = rook_graph([n, m])
    return Scramble(host, connected_subsets(host, n - 1), uniform_size=n - 1)


def uniform_scramble(g: MultiGraph, k: int) -> Scramble:
    """All connected k-subsets of an arbitrary host."""
    return Scramble(g, connected_subsets(g, k), uniform_size=k)


def square_augmented_scramble(dims: Sequence[int] = (6, 6)) -> Scramble:
    """All connected (n-1)-subsets of the n x m rook graph plus every
    axis-aligned 2x2 square.

    The interesting host is 6x6, where the squares raise the hitting
    number without lowering the cut floor; other sizes are accepted but
    experimental.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != 2 or any(d < 2 for d in dims):
        raise ValueError("square-augmented scrambles need two dims of at least 2")
    n, m = dims
    host = rook_graph([n, m])
    eggs = list(connected_subsets(host, n - 1))
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            for c1 in range(m):
                for c2 in range(c1 + 1, m):
                    eggs.append((r1 * m + c1, r1 * m + c2,
                                 r2 * m + c1, r2 * m + c2))
    return Scramble(host, eggs, uniform_size=n - 1, with_squares=True)


# ======================================================================
# avoidance constructions
# ======================================================================

def induced_components(g: MultiGraph, verts: Iterable[int]) -> list:
    """Connected components of the induced subgraph, as sorted tuples."""
    vs = set(graphs._check_subset(g, verts))
    comps = []
    left = set(vs)
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w, _ in g.adj[u]:
                if w in vs and w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
        left -= comp
    comps.sort()
    return comps


def staircase_avoidance(n: int, m: int) -> tuple:
    """An (m+1)-vertex set on the n x m rook graph whose components all
    have fewer than n-1 vertices, so it avoids every connected
    (n-1)-subset.  Exists exactly for n-1 <= m < (n-2)(n-1), n >= 4.

    Writing m = k(n-2) + r: the first k rows take n-2 cells each across
    disjoint column blocks; the leftover columns take a short run in the
    next row, joined by one cell below its first column.  When r = 0 the
    last full run gives up its final cell, and the freed column takes a
    vertical pair in the two rows below the runs.
    """
    if n < 4:
        raise ValueError("staircase avoidance needs n >= 4")
    if not (n - 1 <= m < (n - 2) * (n - 1)):
        raise ValueError("staircase avoidance needs n-1 <= m < (n-2)(n-1)")
    k, r = divmod(m, n - 2)
    cells = []
    if r >= 1:
        for i in range(k):
            for c in range(i * (n - 2), (i + 1) * (n - 2)):
                cells.append((i, c))
        lead = k * (n - 2)
        for t in range(r):
            cells.append((k, lead + t))
        cells.append((k + 1, lead))
    else:
        for i in range(k - 1):
            for c in range(i * (n - 2), (i + 1) * (n - 2)):
                cells.append((i, c))
        for c in range((k - 1) * (n - 2), k * (n - 2) - 1):
            cells.append((k - 1, c))
        cells.append((k, m - 1))
        cells.append((k + 1, m - 1))
    verts = tuple(sorted(i * m + j for i, j in cells))
    host = rook_graph([n, m])
    if len(verts) != m + 1:
        raise RuntimeError("staircase construction produced the wrong size")
    comps = induced_components(host, verts)
    if any(len(c) >= n - 1 for c in comps):
        raise RuntimeError("staircase construction is not egg-free")
    return verts


def cube_diagonal_avoidance(n: int) -> tuple:
    """A (n+2)(n-1)-vertex set on the n x n x n rook graph splitting into
    n+2 components of n-1 vertices each: two axis runs off a corner plus
    a diagonal wall of runs."""
    if n < 3:
        raise ValueError("cube diagonal avoidance needs n >= 3")
    host = rook_graph([n, n, n])
    cells = set()
    for c in range(1, n):
        cells.add((0, 0, c))
        cells.add((0, c, 0))
    for a in range(1, n):
        for c in range(n):
            cells.add((a, c, c))
    verts = tuple(sorted(host.label_to_index(t) for t in cells))
    comps = induced_components(host, verts)
    if len(verts) != (n + 2) * (n - 1) or len(comps) != n + 2 \
            or any(len(c) != n - 1 for c in comps):
        raise RuntimeError("cube diagonal construction came out malformed")
    return verts


# ======================================================================
# cut bound sweep
# ======================================================================

@dataclass
class CutBoundReport:
    ok: bool
    bound: int
    checked: int
    violation: Optional[dict]
    tight_side: tuple
    tight_weight: int


def exhaustive_cut_bound_check(n: int, m: int) -> CutBoundReport:
    """Sweep every cut of the n x m rook graph with both sides of at
    least n-1 vertices and confirm the weight is at least (n-1)m, with
    tightness witnessed by a full row.  Gray-code order keeps the sweep
    incremental."""
    if not 2 <= n <= m:
        raise ValueError("needs 2 <= n <= m")
    total = n * m
    if total > 20:
        raise ValueError(
            "board too large for the exhaustive cut sweep (limit nm <= 20); "
            "check smaller boards or sample cuts instead"
        )
    g = rook_graph([n, m])
    bound = (n - 1) * m
    inset = bytearray(total)
    cut = 0
    size = 0
    checked = 0
    violation = None
    for i in range(1, 1 << total):
        v = (i & -i).bit_length() - 1
        e_in = 0
        for w, mm in g.adj[v]:
            if inset[w]:
                e_in += mm
        if inset[v]:
            inset[v] = 0
            size -= 1
            cut += 2 * e_in - g.degrees[v]
        else:
            inset[v] = 1
            size += 1
            cut += g.degrees[v] - 2 * e_in
        if size >= n - 1 and total - size >= n - 1:
            checked += 1
            if cut < bound and violation is None:
                side = tuple(u for u in range(total) if inset[u])
                violation = {"side": side, "weight": cut}
    row = tuple(range(m))
    tight = cut_weight(g, row)
    if violation is None and tight != bound:
        raise RuntimeError("full-row cut missed the bound it should attain")
    return CutBoundReport(
        ok=violation is None,
        bound=bound,
        checked=checked,
        violation=violation,
        tight_side=row,
        tight_weight=tight,
    )


# ======================================================================
# JSON interchange
# ======================================================================

def scramble_to_json(s: Scramble) -> dict:
    return {
        "host": graphs.graph_to_json(s.host),
        "eggs": [list(e) for e in s.eggs],
    }


def scramble_from_json(data: dict) -> Scramble:
    if not isinstance(data, dict):
        raise ValueError("scramble JSON must be an object")
    try:
        host = data["host"]
        eggs = data["eggs"]
    except KeyError as exc:
        raise ValueError(f"scramble JSON is missing key {exc}") from None
    if isinstance(host, (list, tuple)):
        hostg = rook_graph(host)
    elif isinstance(host, dict):
        hostg = graphs.graph_from_json(host)
    else:
        raise ValueError("host must be a graph object or a dims list")
    if not isinstance(eggs, list):
        raise ValueError("eggs must be a list of vertex lists")
    return Scramble(hostg, eggs)
