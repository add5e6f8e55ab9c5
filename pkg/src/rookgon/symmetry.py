"""Vertex-permutation symmetry for product graphs.

Provides automorphism generators for rook graphs, explicit group closure
(bounded), exact canonical forms for chip vectors, and a stream of
lexicographically minimal orbit representatives used to prune searches.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, List, Optional, Sequence


class GroupTooLarge(RuntimeError):
    """Raised when explicit element enumeration would exceed the cap."""


_EXPLICIT_LIMIT = 200_000


class SymmetryGroup:
    """A permutation group on vertices, given by generators.

    ``dims`` is set for rook-graph groups; it unlocks the closed-form
    order and a backtracking canonical form that avoids enumerating the
    whole group.
    """

    def __init__(self, generators: Iterable[Sequence[int]], n: int,
                 dims: Optional[Sequence[int]] = None):
        gens = []
        for p in generators:
            p = tuple(p)
            if sorted(p) != list(range(n)):
                raise ValueError("generator is not a permutation of the vertices")
            gens.append(p)
        self.generators = tuple(gens)
        self.n = n
        self.dims = tuple(dims) if dims is not None else None
        self._elements = None

    def elements(self, limit: int = _EXPLICIT_LIMIT) -> tuple:
        """Every group element as a vertex permutation (BFS closure)."""
        if self._elements is not None:
            return self._elements
        ident = tuple(range(self.n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for q in self.generators:
                    r = tuple(p[q[i]] for i in range(self.n))
                    if r not in seen:
                        if len(seen) >= limit:
                            raise GroupTooLarge(
                                f"group exceeds {limit} explicit elements"
                            )
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        self._elements = tuple(sorted(seen))
        return self._elements

    def order(self) -> int:
        if self.dims is not None:
            total = math.prod(math.factorial(d) for d in self.dims)
            for _, run in itertools.groupby(self.dims):
                total *= math.factorial(len(tuple(run)))
            return total
        return len(self.elements())


def rook_symmetry(dims: Sequence[int]) -> SymmetryGroup:
    """Automorphism generators of a rook graph.

    Adjacent value transpositions within each coordinate factor, plus a
    swap of neighbouring coordinate axes whenever their sizes agree.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2 or any(d < 2 for d in dims):
        raise ValueError("invalid rook dimensions")
    n = math.prod(dims)
    strides = []
    acc = 1
    for d in reversed(dims):
        strides.append(acc)
        acc *= d
    strides.reverse()

    def decode(v):
        return tuple((v // strides[a]) % dims[a] for a in range(len(dims)))

    def encode(coords):
        return sum(c * s for c, s in zip(coords, strides))

    gens = []
    for a, d in enumerate(dims):
        for i in range(d - 1):
            perm = []
            for v in range(n):
                c = list(decode(v))
                if c[a] == i:
                    c[a] = i + 1
                elif c[a] == i + 1:
                    c[a] = i
                perm.append(encode(c))
            gens.append(tuple(perm))
    for a in range(len(dims) - 1):
        if dims[a] == dims[a + 1]:
            perm = []
            for v in range(n):
                c = list(decode(v))
                c[a], c[a + 1] = c[a + 1], c[a]
                perm.append(encode(c))
            gens.append(tuple(perm))
    return SymmetryGroup(gens, n, dims=dims)


# ======================================================================
# composition streams
# ======================================================================

def iter_degree_vectors(total: int, size: int) -> Iterator[tuple]:
    """All nonnegative integer vectors of the given length summing to total,
    in ascending lexicographic order."""
    if size < 1:
        raise ValueError("vector length must be positive")
    if total < 0:
        raise ValueError("total must be nonnegative")
    c = [0] * size

    def rec(pos, rem):
        if pos == size - 1:
            c[pos] = rem
            yield tuple(c)
            return
        for v in range(rem + 1):
            c[pos] = v
            yield from rec(pos + 1, rem - v)

    yield from rec(0, total)


def iter_orbit_min_vectors(total: int, size: int,
                           sym: Optional[SymmetryGroup]) -> Iterator[tuple]:
    """One lexicographically minimal representative per orbit of degree
    vectors under the group, streamed in ascending order.

    With no group this is every degree vector.  Groups small enough to
    enumerate use an orderly backtracking generator; anything larger
    falls back to filtering by canonical form.
    """
    if sym is None:
        yield from iter_degree_vectors(total, size)
        return
    if sym.n != size:
        raise ValueError("group degree does not match the vector length")
    try:
        elements = sym.elements()
    except GroupTooLarge:
        for c in iter_degree_vectors(total, size):
            if canonical_divisor_form(c, sym) == c:
                yield c
        return
    yield from _iter_canonical_explicit(total, size, elements)


def _iter_canonical_explicit(total: int, size: int,
                             elements: Iterable[Sequence[int]]) -> Iterator[tuple]:
    """Orderly generation of lex-min orbit representatives.

    Each live group element tracks the first position where the permuted
    image is still undecided or equal to the prefix; elements whose image
    turns out larger are dropped, ones whose image turns out smaller kill
    the branch.
    """
    ident = tuple(range(size))
    invs = []
    for p in set(tuple(p) for p in elements):
        if p == ident:
            continue
        q = [0] * size
        for i, pi in enumerate(p):
            q[pi] = i
        invs.append(tuple(q))
    invs.sort()
    c = [0] * size

    def rec(pos: int, rem: int, live: List[tuple]) -> Iterator[tuple]:
        if pos == size:
            yield tuple(c)
            return
        vals = (rem,) if pos == size - 1 else range(rem + 1)
        for v in vals:
            c[pos] = v
            end = pos + 1
            ok = True
            fresh = []
            for q, j in live:
                drop = False
                while j < end:
                    qj = q[j]
                    if qj >= end:
                        break  # image coordinate not assigned yet
                    a = c[qj]
                    b = c[j]
                    if a < b:
                        ok = False  # image is lex-smaller: prefix not canonical
                        break
                    if a > b:
                        drop = True  # image is lex-larger for any completion
                        break
                    j += 1
                if not ok:
                    break
                if not drop:
                    fresh.append((q, j))
            if ok:
                yield from rec(end, rem - v, fresh)

    yield from rec(0, total, [(q, 0) for q in invs])


# ======================================================================
# canonical forms
# ======================================================================

def canonical_divisor_form(d: Sequence[int], sym: SymmetryGroup) -> tuple:
    """Lexicographically smallest image of d under the group (exact)."""
    d = tuple(d)
    if len(d) != sym.n:
        raise ValueError("vector length does not match the group")
    if sym.dims is not None:
        return _canonical_dims(d, sym.dims)
    best = d
    for p in sym.elements():
        img = tuple(d[p[i]] for i in range(sym.n))
        if img < best:
            best = img
    return best


def _axis_orders(dims: tuple) -> Iterator[tuple]:
    """Axis permutations allowed by the group: reorder only within
    maximal runs of equal sizes."""
    runs = []
    start = 0
    for i in range(1, len(dims) + 1):
        if i == len(dims) or dims[i] != dims[start]:
            runs.append(tuple(range(start, i)))
            start = i
    for combo in itertools.product(*(itertools.permutations(r) for r in runs)):
        order = []
        for block in combo:
            order.extend(block)
        yield tuple(order)


def _canonical_dims(d: tuple, dims: tuple) -> tuple:
    n = len(d)
    strides = []
    acc = 1
    for s in reversed(dims):
        strides.append(acc)
        acc *= s
    strides.reverse()
    best = None
    for order in _axis_orders(dims):
        od = tuple(dims[a] for a in order)
        ost = tuple(strides[a] for a in order)
        cand = _min_value_image(d, od, ost, best)
        if best is None or cand < best:
            best = cand
    return best


def _min_value_image(d: tuple, dims: tuple, strides: tuple, best):
    """Minimize the flattened tensor over independent per-axis value
    relabelings, by backtracking over flat positions.

    ``dims``/``strides`` describe the axis order being tried; ``best`` is
    the incumbent (or None).  Candidate old indices with identical slice
    content are interchangeable, so only one per signature is branched on.
    """
    k = len(dims)
    n = len(d)

    # signature groups: old indices along an axis with equal slices
    sig_rep = []
    for a in range(k):
        groups = {}
        reps = []
        for old in range(dims[a]):
            sl = []
            for v in range(n):
                if (v // strides[a]) % dims[a] == old:
                    sl.append(d[v])
            key = tuple(sl)
            if key in groups:
                reps.append(groups[key])
            else:
                groups[key] = old
                reps.append(old)
        sig_rep.append(reps)

    maps = [[-1] * dims[a] for a in range(k)]   # new index -> old index
    used = [[False] * dims[a] for a in range(k)]
    filled = [0] * k
    out = [0] * n
    found = [best]

    # coordinates of each flat position in the new axis order
    coords = []
    for p in range(n):
        cs = []
        rest = p
        for a in range(k):
            size = 1
            for b in range(a + 1, k):
                size *= dims[b]
            cs.append(rest // size)
            rest %= size
        coords.append(tuple(cs))

    def place(p: int, tight: bool):
        if p == n:
            cand = tuple(out)
            if found[0] is None or cand < found[0]:
                found[0] = cand
            return
        cs = coords[p]
        pending = [a for a in range(k) if cs[a] == filled[a]]

        def assign(idx: int, t: bool):
            if idx == len(pending):
                old = 0
                for a in range(k):
                    old += maps[a][cs[a]] * strides[a]
                val = d[old]
                if t and found[0] is not None:
                    ref = found[0][p]
                    if val > ref:
                        return
                    if val < ref:
                        t2 = False
                    else:
                        t2 = True
                else:
                    t2 = t
                out[p] = val
                place(p + 1, t2)
                return
            a = pending[idx]
            seen = set()
            for old in range(dims[a]):
                if used[a][old]:
                    continue
                rep = sig_rep[a][old]
                if rep in seen:
                    continue
                seen.add(rep)
                maps[a][cs[a]] = old
                used[a][old] = True
                filled[a] += 1
                assign(idx + 1, t)
                filled[a] -= 1
                used[a][old] = False
                maps[a][cs[a]] = -1

        assign(0, tight)

    place(0, True)
    return found[0]
