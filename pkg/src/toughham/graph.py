"""Bitset-backed simple undirected graphs.

Vertices are dense integers 0..n-1.  Vertex sets are plain Python ints used
as bit masks (bit v set <=> vertex v in the set), so every set operation is
word-parallel for free.  Graphs are immutable after construction; all the
solvers in this package share them freely.
"""

from __future__ import annotations

from itertools import combinations

MAX_VERTICES = 512


class GraphError(ValueError):
    """Malformed graph construction or out-of-range argument."""


def bit(v: int) -> int:
    return 1 << v


def bits(mask: int):
    """Iterate set bit positions of a mask in increasing order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def lex_key(mask: int) -> tuple[int, ...]:
    """Sorted vertex tuple of a mask, used as the canonical ordering key."""
    return tuple(bits(mask))


def edge(u: int, v: int) -> tuple[int, int]:
    """Normalized edge (u < v)."""
    if u == v:
        raise GraphError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph; ``adj[u]`` is the neighbor mask of u."""

    __slots__ = ("n", "adj", "full")

    def __init__(self, n: int, adj):
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = tuple(adj)
        if len(adj) != n:
            raise GraphError("adjacency list length does not match n")
        full = (1 << n) - 1
        for u, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"adjacency row {u} has bits beyond n")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
        for u in range(n):
            for w in bits(adj[u]):
                if not adj[w] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {w}")
        self.n = n
        self.adj = adj
        self.full = full

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop edge at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_multipartite(cls, sizes) -> "Graph":
        n = sum(sizes)
        rows = [0] * n
        start = 0
        full = (1 << n) - 1
        for size in sizes:
            part = ((1 << size) - 1) << start
            for v in range(start, start + size):
                rows[v] = full & ~part
            start += size
        return cls(n, rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def _check_mask(self, mask: int):
        if mask & ~self.full:
            raise GraphError("vertex set has bits beyond n")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(row.bit_count() for row in self.adj)

    def edges(self):
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_complete(self) -> bool:
        return all(self.adj[v] == self.full ^ (1 << v) for v in range(self.n))

    def set_neighborhood(self, s: int) -> int:
        """Union of neighborhoods of s, minus s itself."""
        self._check_mask(s)
        out = 0
        for v in bits(s):
            out |= self.adj[v]
        return out & ~s

    def closed_neighborhood(self, s: int) -> int:
        return self.set_neighborhood(s) | s

    def components(self, removed: int = 0) -> list[int]:
        """Connected components of G - removed, ordered by minimum vertex."""
        self._check_mask(removed)
        remaining = self.full & ~removed
        adj = self.adj
        comps = []
        while remaining:
            comp = remaining & -remaining
            frontier = comp
            while frontier:
                grow = 0
                for v in bits(frontier):
                    grow |= adj[v]
                frontier = grow & remaining & ~comp
                comp |= frontier
            comps.append(comp)
            remaining &= ~comp
        return comps

    def component_count(self, removed: int = 0) -> int:
        remaining = self.full & ~removed
        adj = self.adj
        count = 0
        while remaining:
            comp = remaining & -remaining
            frontier = comp
            while frontier:
                grow = 0
                for v in bits(frontier):
                    grow |= adj[v]
                frontier = grow & remaining & ~comp
                comp |= frontier
            count += 1
            remaining &= ~comp
        return count

    def is_connected_within(self, mask: int) -> bool:
        """True if the induced subgraph on mask is connected (empty mask counts)."""
        self._check_mask(mask)
        if mask == 0:
            return True
        comp = mask & -mask
        frontier = comp
        adj = self.adj
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= adj[v]
            frontier = grow & mask & ~comp
            comp |= frontier
        return comp == mask

    def induced(self, s: int) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph plus relabeling map (new id -> original id).

        The map lets certificates computed on the subgraph be lifted back to
        the parent graph.
        """
        self._check_mask(s)
        vmap = tuple(bits(s))
        index = {v: i for i, v in enumerate(vmap)}
        rows = []
        for v in vmap:
            row = 0
            for w in bits(self.adj[v] & s):
                row |= 1 << index[w]
            rows.append(row)
        return Graph(len(vmap), rows), vmap

    def bipartite_between(self, a: int, b: int) -> "Graph":
        """Subgraph on the same vertices keeping only edges with one end in a, one in b."""
        self._check_mask(a)
        self._check_mask(b)
        if a & b:
            raise GraphError("bipartition sides overlap")
        rows = []
        for v in range(self.n):
            if a >> v & 1:
                rows.append(self.adj[v] & b)
            elif b >> v & 1:
                rows.append(self.adj[v] & a)
            else:
                rows.append(0)
        return Graph(self.n, rows)

    def complement(self) -> "Graph":
        return Graph(self.n, [self.full & ~self.adj[v] & ~(1 << v) for v in range(self.n)])

    def add_edges(self, edges) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise GraphError(f"loop edge at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)


def all_graphs(n: int):
    """Every labeled simple graph on n vertices (2^C(n,2) of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if code >> i & 1])
