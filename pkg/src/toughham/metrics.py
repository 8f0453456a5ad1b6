"""Exact structural quantities with witnesses.

Toughness, scattering number, vertex connectivity, independence number.
All ratio comparisons use fractions.Fraction; nothing here ever touches a
float except the math.inf sentinel for complete graphs, which is only ever
compared, never computed with.

Complete multipartite inputs get closed-form answers: removing anything that
leaves vertices in two different parts keeps the graph connected, so every
cutset leaves a remainder inside a single part and the optima are attained
at full parts.  That structured route is what makes the 11-tough acceptance
instance (clique joined to two isolated vertices, n = 24) tractable, where
blind subset enumeration would pay for 2^24 masks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph, bit, bits, mask_of
from .recognition import Multipartition, multipartite_decompose

INF = math.inf

DEFAULT_SUBSET_CAP = 24
DEFAULT_INDEPENDENCE_CAP = 64


class OracleLimitExceeded(Exception):
    """An exact solver was asked to run beyond its configured size cap."""

    def __init__(self, stage: str):
        super().__init__(stage)
        self.stage = stage


@dataclass(frozen=True)
class ToughnessWitness:
    """Cutset whose removal shatters the graph too cheaply: |S|/c(G-S) < t."""

    cutset: int
    component_count: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.cutset.bit_count(), self.component_count)


@dataclass(frozen=True)
class ScatteringSet:
    cutset: int
    value: int


def _multipartition_or_none(g: Graph) -> Multipartition | None:
    mp = multipartite_decompose(g)
    return mp if isinstance(mp, Multipartition) else None


def toughness(g: Graph, cap: int = DEFAULT_SUBSET_CAP):
    """Exact min of |S|/c(G-S) over cutsets, with an optimal witness.

    Returns (math.inf, None) for complete graphs.  Enumeration runs by
    cutset size with the standard bound: once k/(n-k) cannot beat the
    incumbent no larger size can either.
    """
    n = g.n
    if g.is_complete():
        return INF, None
    mp = _multipartition_or_none(g)
    if mp is not None:
        part = mp.largest_part()
        c = part.bit_count()
        witness = ToughnessWitness(cutset=g.full & ~part, component_count=c)
        return Fraction(n - c, c), witness
    if n > cap:
        raise OracleLimitExceeded("toughness")
    best: Fraction | None = None
    best_witness: ToughnessWitness | None = None
    verts = range(n)
    for k in range(0, n - 1):
        if best is not None and Fraction(k, n - k) >= best:
            break
        for combo in combinations(verts, k):
            s = mask_of(combo)
            c = g.component_count(s)
            if c < 2:
                continue
            ratio = Fraction(k, c)
            if best is None or ratio < best:
                best = ratio
                best_witness = ToughnessWitness(s, c)
    assert best is not None  # noncomplete graphs always have a cutset
    return best, best_witness


def probe_tough(g: Graph, t) -> ToughnessWitness | None:
    """Cheap, incomplete violator search: the empty set, every open
    neighborhood, and the closed multipartite form when it applies.

    None means nothing was found, not that the graph is t-tough.
    """
    if g.is_complete():
        return None
    c = g.component_count(0)
    if c >= 2 and Fraction(0, c) < t:
        return ToughnessWitness(0, c)
    for v in range(g.n):
        s = g.adj[v]
        c = g.component_count(s)
        if c >= 2 and Fraction(s.bit_count(), c) < t:
            return ToughnessWitness(s, c)
    mp = _multipartition_or_none(g)
    if mp is not None:
        part = mp.largest_part()
        c = part.bit_count()
        if Fraction(g.n - c, c) < t:
            return ToughnessWitness(g.full & ~part, c)
    return None


def verify_tough(g: Graph, t: Fraction, cap: int = DEFAULT_SUBSET_CAP):
    """None if no cutset S has |S|/c(G-S) < t; otherwise a violating witness.

    Probes run before the cap check, so a violator can be reported even on
    graphs too large for the exhaustive sweep.
    """
    if g.is_complete():
        return None
    probe = probe_tough(g, t)
    if probe is not None:
        return probe
    if _multipartition_or_none(g) is not None:
        return None  # the probe's closed form was exhaustive
    n = g.n
    if n > cap:
        raise OracleLimitExceeded("verify-tough")
    for k in range(0, n - 1):
        # a violator of size k needs c > k/t, so k/(n-k) >= t rules it out
        if Fraction(k, n - k) >= t:
            break
        for combo in combinations(range(n), k):
            s = mask_of(combo)
            c = g.component_count(s)
            if c >= 2 and Fraction(k, c) < t:
                return ToughnessWitness(s, c)
    return None


def scattering(g: Graph, cap: int = DEFAULT_SUBSET_CAP):
    """Exact max of c(G-S) - |S| over cutsets, with a scattering set.

    Returns (math.inf, None) for complete graphs.
    """
    n = g.n
    if g.is_complete():
        return INF, None
    mp = _multipartition_or_none(g)
    if mp is not None:
        part = mp.largest_part()
        c = part.bit_count()
        cutset = g.full & ~part
        return 2 * c - n, ScatteringSet(cutset, 2 * c - n)
    if n > cap:
        raise OracleLimitExceeded("scattering")
    best: int | None = None
    best_set: ScatteringSet | None = None
    for k in range(0, n - 1):
        if best is not None and (n - k) - k <= best:
            break
        for combo in combinations(range(n), k):
            s = mask_of(combo)
            c = g.component_count(s)
            if c < 2:
                continue
            val = c - k
            if best is None or val > best:
                best = val
                best_set = ScatteringSet(s, val)
    assert best is not None
    return best, best_set


# --- vertex connectivity via max flow ----------------------------------------

def _min_vertex_cut_pair(g: Graph, s: int, t: int) -> int:
    """Mask of a minimum vertex cut separating non-adjacent s and t.

    Vertex-split digraph: node 2v is v_in, 2v+1 is v_out; v_in->v_out has
    capacity one, edge arcs are effectively uncapacitated so the min cut
    crosses vertex arcs only.  Max flow equals the number of internally
    disjoint s-t paths (Menger).
    """
    n = g.n
    big = n + 1
    cap: list[dict[int, int]] = [{} for _ in range(2 * n)]
    for v in range(n):
        cap[2 * v][2 * v + 1] = 1
        for w in bits(g.adj[v]):
            cap[2 * v + 1][2 * w] = big
    source, sink = 2 * s + 1, 2 * t
    while True:
        prev = {source: -1}
        queue = [source]
        qi = 0
        while qi < len(queue) and sink not in prev:
            x = queue[qi]
            qi += 1
            for y, c in cap[x].items():
                if c > 0 and y not in prev:
                    prev[y] = x
                    queue.append(y)
        if sink not in prev:
            break
        # augment one unit (every s-t path crosses some vertex arc)
        y = sink
        while y != source:
            x = prev[y]
            cap[x][y] -= 1
            cap[y][x] = cap[y].get(x, 0) + 1
            y = x
    reach = {source}
    stack = [source]
    while stack:
        x = stack.pop()
        for y, c in cap[x].items():
            if c > 0 and y not in reach:
                reach.add(y)
                stack.append(y)
    cut = 0
    for v in range(n):
        if 2 * v in reach and 2 * v + 1 not in reach:
            cut |= bit(v)
    return cut


def connectivity(g: Graph):
    """(kappa, minimum cutset mask) with the n-1 convention for complete graphs."""
    n = g.n
    if g.is_complete():
        return max(n - 1, 0), None
    if len(g.components()) >= 2:
        return 0, 0
    mp = _multipartition_or_none(g)
    if mp is not None:
        part = mp.largest_part()
        return n - part.bit_count(), g.full & ~part
    best_cut = None
    for s in range(n):
        others = (g.full & ~g.adj[s] & ~bit(s)) >> (s + 1) << (s + 1)
        for t in bits(others):
            cut = _min_vertex_cut_pair(g, s, t)
            if best_cut is None or cut.bit_count() < best_cut.bit_count():
                best_cut = cut
    assert best_cut is not None
    return best_cut.bit_count(), best_cut


def independence(g: Graph, cap: int = DEFAULT_INDEPENDENCE_CAP):
    """Exact independence number and one maximum independent set (as a mask).

    An independent set of g is a clique of the complement, so it lives
    inside one connected component of the complement; the solver therefore
    decomposes along complement components (for dense graphs these are
    tiny) and only runs branch-and-bound within each.  The size cap applies
    to the irreducible subproblems.
    """
    comp_parts = g.complement().components()
    best_size, best_set = 0, 0
    for part in comp_parts:
        if part.bit_count() <= best_size:
            continue
        sub, vmap = g.induced(part)
        size, local = _mis_branch_bound(sub, cap)
        if size > best_size:
            best_size = size
            best_set = mask_of(vmap[i] for i in bits(local))
    return best_size, best_set


def _mis_branch_bound(g: Graph, cap: int):
    n = g.n
    if n > cap:
        raise OracleLimitExceeded("independence")
    if g.edge_count() == 0:
        return n, g.full
    adj = g.adj
    best_size = 0
    best_set = 0

    def greedy(candidates: int) -> int:
        chosen = 0
        while candidates:
            v = (candidates & -candidates).bit_length() - 1
            chosen |= bit(v)
            candidates &= ~(adj[v] | bit(v))
        return chosen

    seed = greedy(g.full)
    best_size, best_set = seed.bit_count(), seed

    def cover_bound(candidates: int) -> int:
        # a clique contributes at most one vertex to an independent set, so
        # a greedy clique cover of the candidates bounds what is reachable
        count = 0
        rem = candidates
        while rem:
            v = (rem & -rem).bit_length() - 1
            grow = adj[v] & rem
            rem &= ~bit(v)
            while grow:
                u = (grow & -grow).bit_length() - 1
                rem &= ~bit(u)
                grow &= adj[u] & rem
            count += 1
        return count

    def expand(candidates: int, current: int, size: int):
        nonlocal best_size, best_set
        if size + candidates.bit_count() <= best_size:
            return
        if candidates == 0:
            best_size, best_set = size, current
            return
        if size + cover_bound(candidates) <= best_size:
            return
        # branch on a maximum-degree candidate (smallest id on ties)
        pivot, pivot_deg = -1, -1
        for v in bits(candidates):
            d = (adj[v] & candidates).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        expand(candidates & ~(adj[pivot] | bit(pivot)), current | bit(pivot), size + 1)
        expand(candidates & ~bit(pivot), current, size)

    expand(g.full, 0, 0)
    return best_size, best_set


def is_independent(g: Graph, s: int) -> bool:
    return all(g.adj[v] & s == 0 for v in bits(s))


def validate_toughness_witness(g: Graph, w: ToughnessWitness, t) -> bool:
    """Checker-grade validation: recomputes c(G - cutset) and the exact ratio."""
    if w.cutset & ~g.full:
        return False
    c = g.component_count(w.cutset)
    if c != w.component_count or c < 2:
        return False
    return Fraction(w.cutset.bit_count(), c) < t


def validate_scattering_set(g: Graph, s: ScatteringSet) -> bool:
    if s.cutset & ~g.full:
        return False
    c = g.component_count(s.cutset)
    return c >= 2 and c - s.cutset.bit_count() == s.value


def witness_from_independent_set(g: Graph, indep: int, t) -> ToughnessWitness | None:
    """Toughness witness from an independent set larger than n/(t+1).

    Removing N(A) isolates each vertex of A, so the ratio is at most
    (n - |A|)/|A| < t.  Returns None when the candidate fails validation
    (only possible when |A| < 2 or A is not independent).
    """
    k = indep.bit_count()
    if k < 2 or not is_independent(g, indep):
        return None
    cutset = g.set_neighborhood(indep)
    c = g.component_count(cutset)
    w = ToughnessWitness(cutset, c)
    return w if validate_toughness_witness(g, w, t) else None
