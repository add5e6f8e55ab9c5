"""Divisors on multigraphs: set-firing, burning, reduction, rank.

A divisor is a plain integer vector indexed by vertex; every operation
takes the host graph explicitly so copies stay cheap inside searches.
"""

from __future__ import annotations

from typing import Iterable, List, NamedTuple, Optional, Sequence

from .graphs import MultiGraph, _check_subset
from .symmetry import (
    GroupTooLarge,
    SymmetryGroup,
    _iter_canonical_explicit,
    iter_degree_vectors,
)


class BurnReport(NamedTuple):
    burnt: tuple
    unburnt: tuple
    source: int
    burning_edges: tuple  # final tally for unburnt vertices; tally at ignition for burnt


class ReductionResult(NamedTuple):
    reduced: list
    firing_counts: list  # net fires per vertex, normalized so the base fires 0 times


def _check_divisor(g: MultiGraph, d: Sequence[int]) -> list:
    chips = list(d)
    if len(chips) != g.n:
        raise ValueError("divisor length does not match the vertex count")
    for x in chips:
        if not isinstance(x, int) or isinstance(x, bool):
            raise ValueError("chip counts must be integers")
    return chips


def _check_vertex(g: MultiGraph, v: int) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < g.n:
        raise ValueError(f"vertex {v!r} out of range")


def degree(d: Sequence[int]) -> int:
    """Sum of all chip counts."""
    return sum(d)


def is_effective_away_from(d: Sequence[int], v: Optional[int] = None) -> bool:
    """True iff every entry is nonnegative, excepting index v when given."""
    for i, x in enumerate(d):
        if x < 0 and i != v:
            return False
    return True


def fire_set(g: MultiGraph, d: Sequence[int], a: Iterable[int]) -> list:
    """Fire every vertex of a: one chip crosses each edge leaving a."""
    chips = _check_divisor(g, d)
    verts = _check_subset(g, a)
    inside = bytearray(g.n)
    for v in verts:
        inside[v] = 1
    for u in verts:
        for w, m in g.adj[u]:
            if not inside[w]:
                chips[u] -= m
                chips[w] += m
    return chips


# ======================================================================
# burning
# ======================================================================

def _burn(g: MultiGraph, chips: Sequence[int], source: int):
    """Fixed point of the burning process from source.

    Returns (burnt flags, per-vertex burning-edge tallies).  A vertex
    ignites when the multiplicity of its burning incident edges exceeds
    its chips; the fixed point is independent of examination order.
    """
    n = g.n
    adj = g.adj
    burnt = bytearray(n)
    cnt = [0] * n
    burnt[source] = 1
    stack = [source]
    while stack:
        u = stack.pop()
        for v, m in adj[u]:
            if not burnt[v]:
                c = cnt[v] + m
                cnt[v] = c
                if c > chips[v]:
                    burnt[v] = 1
                    stack.append(v)
    return burnt, cnt


def dhar_burn(g: MultiGraph, d: Sequence[int], source: int) -> BurnReport:
    """Run the burning process from source on a divisor that is effective
    away from it; the unburnt set is the maximal subset that can fire
    without sending any of its members negative."""
    chips = _check_divisor(g, d)
    _check_vertex(g, source)
    if not is_effective_away_from(chips, source):
        raise ValueError("divisor must be effective away from the source")
    burnt, cnt = _burn(g, chips, source)
    b = tuple(u for u in range(g.n) if burnt[u])
    ub = tuple(u for u in range(g.n) if not burnt[u])
    return BurnReport(b, ub, source, tuple(cnt))


# ======================================================================
# reduction
# ======================================================================

def _distance_info(g: MultiGraph, v: int):
    key = ("dist", v)
    info = g._cache.get(key)
    if info is not None:
        return info
    n = g.n
    dist = [-1] * n
    dist[v] = 0
    frontier = [v]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w, _ in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    levels = {}
    for lvl in sorted(set(dist[u] for u in range(n) if u != v)):
        delta = [0] * n
        for u in range(n):
            if dist[u] < lvl:
                for w, m in g.adj[u]:
                    if dist[w] >= lvl:
                        delta[u] -= m
                        delta[w] += m
        ball = tuple(u for u in range(n) if dist[u] < lvl)
        levels[lvl] = (tuple(delta), ball)
    info = (tuple(dist), levels)
    g._cache[key] = info
    return info


def _reduce(g: MultiGraph, chips: list, v: int, counts: Optional[list]) -> None:
    """Reduce chips toward v in place.

    Phase 1 clears debt away from v: repeatedly pick an indebted vertex
    of maximum distance (smallest index on ties) and fire the ball of
    strictly closer vertices; the farthest-first debt profile strictly
    decreases lexicographically, so this terminates.  Phase 2 runs the
    burning loop, firing the unburnt set once per round.
    """
    n = g.n
    adj = g.adj
    if any(chips[u] < 0 for u in range(n) if u != v):
        dist, levels = _distance_info(g, v)
        while True:
            worst = -1
            wd = -1
            for u in range(n):
                if u != v and chips[u] < 0 and dist[u] > wd:
                    wd = dist[u]
                    worst = u
            if worst < 0:
                break
            delta, ball = levels[wd]
            for i in range(n):
                chips[i] += delta[i]
            if counts is not None:
                for i in ball:
                    counts[i] += 1
    while True:
        burnt, cnt = _burn(g, chips, v)
        if all(burnt):
            return
        for u in range(n):
            if not burnt[u]:
                chips[u] -= cnt[u]
                if counts is not None:
                    counts[u] += 1
                for w, m in adj[u]:
                    if burnt[w]:
                        chips[w] += m


def _reduced_tuple(g: MultiGraph, chips: list) -> tuple:
    """Reduce at base vertex 0, mutating chips; returns the result tuple."""
    _reduce(g, chips, 0, None)
    return tuple(chips)


def v_reduce(g: MultiGraph, d: Sequence[int], v: int) -> ReductionResult:
    """The unique v-reduced divisor equivalent to d, plus net firing counts."""
    chips = _check_divisor(g, d)
    _check_vertex(g, v)
    counts = [0] * g.n
    _reduce(g, chips, v, counts)
    base = counts[v]
    if base:
        counts = [c - base for c in counts]
    return ReductionResult(chips, counts)


def is_winnable(g: MultiGraph, d: Sequence[int]) -> bool:
    """True iff d is equivalent to an effective divisor."""
    chips = _check_divisor(g, d)
    if all(x >= 0 for x in chips):
        return True
    if sum(chips) < 0:
        return False
    return _reduced_tuple(g, chips)[0] >= 0


def equivalent(g: MultiGraph, d1: Sequence[int], d2: Sequence[int]) -> bool:
    """True iff the divisors differ by a sequence of set firings."""
    c1 = _check_divisor(g, d1)
    c2 = _check_divisor(g, d2)
    if sum(c1) != sum(c2):
        return False
    return _reduced_tuple(g, c1) == _reduced_tuple(g, c2)


# ======================================================================
# rank
# ======================================================================

def rank(g: MultiGraph, d: Sequence[int]) -> int:
    """Baker–Norine rank: -1 when unwinnable, else the largest r such
    that d survives the removal of every effective divisor of degree r."""
    chips = _check_divisor(g, d)
    if sum(chips) < 0:
        return -1
    memo = g._cache.setdefault("rank", {})
    rd = _reduced_tuple(g, chips)
    return _rank_reduced(g, rd, memo)


def _rank_reduced(g: MultiGraph, rd: tuple, memo: dict) -> int:
    val = memo.get(rd)
    if val is not None:
        return val
    if rd[0] < 0:
        memo[rd] = -1
        return -1
    best = None
    for u in range(g.n):
        child = list(rd)
        child[u] -= 1
        r = _rank_reduced(g, _reduced_tuple(g, child), memo)
        if r < 0:
            best = -1
            break
        if best is None or r < best:
            best = r
    val = best + 1
    memo[rd] = val
    return val


def rank_at_least(g: MultiGraph, d: Sequence[int], k: int) -> bool:
    """Decide rank(d) >= k without computing the exact rank."""
    chips = _check_divisor(g, d)
    if k <= -1:
        return True
    if sum(chips) < k:
        return False
    memo = g._cache.setdefault("rank_ge", {})
    rd = _reduced_tuple(g, chips)
    return _rank_ge(g, rd, k, memo)


def _rank_ge(g: MultiGraph, rd: tuple, k: int, memo: dict) -> bool:
    if rd[0] < 0:
        return False
    if k <= 0:
        return True
    key = (rd, k)
    val = memo.get(key)
    if val is not None:
        return val
    if sum(rd) < k:
        memo[key] = False
        return False
    ok = True
    for u in range(g.n):
        child = list(rd)
        child[u] -= 1
        if not _rank_ge(g, _reduced_tuple(g, child), k - 1, memo):
            ok = False
            break
    memo[key] = ok
    return ok


def verify_rank_at_least(g: MultiGraph, d: Sequence[int], k: int,
                         sym: Optional[SymmetryGroup] = None):
    """Check that d minus every effective divisor of degree k stays
    winnable; on failure, return the first offending placement.

    Returns (ok, counterexample-or-None).  A symmetry group restricts the
    enumeration to orbit representatives under the stabilizer of d, which
    is sound because stabilizing permutations preserve winnability.
    Generators must be automorphisms of g.
    """
    chips = _check_divisor(g, d)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    if k == 0:
        if is_winnable(g, chips):
            return True, None
        return False, [0] * g.n
    reps = None
    if sym is not None:
        if sym.n != g.n:
            raise ValueError("group degree does not match the graph")
        try:
            els = sym.elements()
        except GroupTooLarge:
            els = None
        if els is not None:
            stab = [p for p in els
                    if all(chips[p[i]] == chips[i] for i in range(g.n))]
            reps = _iter_canonical_explicit(k, g.n, stab)
    if reps is None:
        reps = iter_degree_vectors(k, g.n)
    for e in reps:
        rem = [a - b for a, b in zip(chips, e)]
        if not is_winnable(g, rem):
            return False, list(e)
    return True, None


# ======================================================================
# JSON interchange
# ======================================================================

def divisor_to_json(d: Sequence[int]) -> dict:
    return {"chips": list(d)}


def divisor_from_json(data: dict) -> list:
    if not isinstance(data, dict) or "chips" not in data:
        raise ValueError('divisor JSON must be an object with a "chips" list')
    chips = data["chips"]
    if not isinstance(chips, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in chips
    ):
        raise ValueError("chips must be a list of integers")
    return list(chips)
