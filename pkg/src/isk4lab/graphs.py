"""Immutable simple graphs over dense vertices 0..n-1 with bitset adjacency.

Vertex sets are plain Python ints used as bitmasks (bit v set <=> vertex v in
the set), which keeps every neighbourhood/intersection query a single integer
operation and makes exhaustive small-graph scans cheap.

graph6 I/O is short form only (n <= 62, no header, one graph per line).
"""

from __future__ import annotations

from typing import Iterable, Iterator

GRAPH6_MAX_N = 62


class GraphFormatError(ValueError):
    """Malformed graph6 / edge-list input. Carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple undirected graph.

    adj[v] is the neighbour bitmask of v.  Construction validates symmetry,
    irreflexivity and that no bits beyond n-1 are set.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Iterable[int]):
        adj = tuple(adj)
        if n < 0 or len(adj) != n:
            raise ValueError(f"adjacency length {len(adj)} != n={n}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has neighbours out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v, row in enumerate(adj):
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("Graph is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop {u}-{v}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_multipartite(cls, sizes: Iterable[int]) -> "Graph":
        """Parts are consecutive vertex ranges in the given order."""
        sizes = list(sizes)
        n = sum(sizes)
        part = []
        for i, s in enumerate(sizes):
            part.extend([i] * s)
        return cls(n, [mask_of(u for u in range(n) if part[u] != part[v])
                       for v in range(n)])

    @classmethod
    def from_code(cls, n: int, code: int) -> "Graph":
        """Build from the column-major upper-triangle bit code (graph6 bit order)."""
        adj = [0] * n
        p = 0
        for j in range(1, n):
            for i in range(j):
                if code >> p & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                p += 1
        return cls(n, adj)

    # -- basic queries -----------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def code(self) -> int:
        """Column-major upper-triangle bit code; inverse of from_code."""
        c = 0
        p = 0
        for j in range(1, self.n):
            row = self.adj[j]
            for i in range(j):
                c |= (row >> i & 1) << p
                p += 1
        return c

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph(self.n, [full ^ self.adj[v] ^ (1 << v) for v in range(self.n)])

    def relabel(self, perm: list[int]) -> "Graph":
        """perm[v] = new label of old vertex v."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = mask_of(perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, adj)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.n, self.adj))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- subgraphs, components, attachments -----------------------------------


def induced_subgraph(g: Graph, vset: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on the vertex mask, plus the order-preserving
    relabelling map: new vertex i corresponds to old vertex vmap[i]."""
    vmap = list(bits(vset))
    index = {v: i for i, v in enumerate(vmap)}
    adj = [mask_of(index[u] for u in bits(g.adj[v] & vset)) for v in vmap]
    return Graph(len(vmap), adj), vmap


def components(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of g[within] as masks, ordered by smallest vertex."""
    if within is None:
        within = g.vertex_mask
    remaining = within
    out = []
    adj = g.adj
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= within & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        remaining &= ~comp
    return out


def is_connected(g: Graph, within: int | None = None) -> bool:
    if within is None:
        within = g.vertex_mask
    if within == 0:
        return True
    return len(components(g, within)) == 1


def neighborhood(g: Graph, vset: int) -> int:
    """Union of neighbourhoods, minus vset itself."""
    m = 0
    for v in bits(vset):
        m |= g.adj[v]
    return m & ~vset


def attachment(g: Graph, target: int, source: int) -> int:
    """Vertices of `target` with at least one neighbour in `source`.

    The two sets must be disjoint.
    """
    if target & source:
        raise ValueError("attachment: target and source overlap")
    return neighborhood(g, source) & target


def is_induced_path(g: Graph, vertices: tuple[int, ...] | list[int]) -> bool:
    """Pairwise-distinct vertex sequence, consecutive adjacent, no chords."""
    k = len(vertices)
    if len(set(vertices)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(vertices[i], vertices[j])
            if adjacent != (j == i + 1):
                return False
    return True


def is_induced_cycle(g: Graph, vertices: tuple[int, ...] | list[int]) -> bool:
    """Cyclic sequence of length >= 3: consecutive (mod k) adjacent, no chords."""
    k = len(vertices)
    if k < 3 or len(set(vertices)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(vertices[i], vertices[j])
            consecutive = (j == i + 1) or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


# -- graph6 ----------------------------------------------------------------


def parse_graph6(line: str) -> Graph:
    """Decode a short-form graph6 string (no header, n <= 62)."""
    s = line.rstrip("\n")
    if not s:
        raise GraphFormatError("empty graph6 line", 0)
    for off, ch in enumerate(s):
        o = ord(ch)
        if o < 63 or o > 126:
            raise GraphFormatError(f"character {ch!r} outside graph6 range", off)
    n = ord(s[0]) - 63
    if n == 63:
        # 0x7e introduces the long form, which short-form parsing rejects
        raise GraphFormatError("long-form graph6 (n > 62) not supported", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - 1 < nbytes:
        raise GraphFormatError(
            f"truncated graph6 body: need {nbytes} bytes, have {len(s) - 1}",
            len(s))
    if len(s) - 1 > nbytes:
        raise GraphFormatError("trailing garbage after graph6 body", 1 + nbytes)
    code = 0
    p = 0
    for off in range(1, 1 + nbytes):
        group = ord(s[off]) - 63
        for b in range(5, -1, -1):
            if p < nbits:
                code |= (group >> b & 1) << p
            elif group >> b & 1:
                raise GraphFormatError("nonzero padding bits", off)
            p += 1
    return Graph.from_code(n, code)


def write_graph6(g: Graph) -> str:
    """Encode in canonical short-form graph6 (minimal length, no header)."""
    if g.n > GRAPH6_MAX_N:
        raise GraphFormatError(f"n={g.n} exceeds graph6 short form limit {GRAPH6_MAX_N}")
    return code_to_graph6(g.n, g.code())


def code_to_graph6(n: int, code: int) -> str:
    """Encode an upper-triangle bit code directly (used by the enumerator)."""
    out = [chr(n + 63)]
    nbits = n * (n - 1) // 2
    for start in range(0, nbits, 6):
        group = 0
        for b in range(6):
            p = start + b
            if p < nbits and code >> p & 1:
                group |= 1 << (5 - b)
        out.append(chr(group + 63))
    return "".join(out)


# -- edge-list text --------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse "n m" header plus m lines "u v" (0-based, whitespace-tolerant)."""
    tokens = text.split()
    if len(tokens) < 2:
        raise GraphFormatError("edge list needs an 'n m' header")
    try:
        n, m = int(tokens[0]), int(tokens[1])
    except ValueError as e:
        raise GraphFormatError(f"bad edge list header: {e}") from None
    if len(tokens) != 2 + 2 * m:
        raise GraphFormatError(
            f"edge list declares {m} edges but has {(len(tokens) - 2) // 2}")
    try:
        pairs = [(int(tokens[2 + 2 * i]), int(tokens[3 + 2 * i])) for i in range(m)]
    except ValueError as e:
        raise GraphFormatError(f"bad edge entry: {e}") from None
    try:
        return Graph.from_edges(n, pairs)
    except ValueError as e:
        raise GraphFormatError(str(e)) from None


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
