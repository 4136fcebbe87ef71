"""Cutset finders and base-class recognizers the coloring pipeline dispatches on.

Each finding is a small certificate dataclass that can re-validate itself
against the host graph, independently of the search that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .graphs import Graph, bits, components, is_connected, mask_of


@dataclass(frozen=True)
class CliqueCutset:
    """Pairwise adjacent vertex set (possibly empty) whose removal disconnects.

    Size 0 covers an already disconnected graph, size 1 a cutvertex.
    """

    vertices: tuple[int, ...]

    def validate(self, g: Graph) -> bool:
        if any(not g.has_edge(u, v) for u, v in combinations(self.vertices, 2)):
            return False
        rest = g.vertex_mask & ~mask_of(self.vertices)
        return len(components(g, rest)) >= 2


@dataclass(frozen=True)
class Proper2Cutset:
    """Non-adjacent cut pair {a,b} plus a side partition (x, y) of the rest,
    anticomplete to each other, neither side-with-{a,b} inducing an (a,b)-path."""

    a: int
    b: int
    x: int
    y: int

    def validate(self, g: Graph) -> bool:
        if self.a == self.b or g.has_edge(self.a, self.b):
            return False
        ab = 1 << self.a | 1 << self.b
        if self.x == 0 or self.y == 0 or self.x & self.y:
            return False
        if (self.x | self.y | ab) != g.vertex_mask or (self.x | self.y) & ab:
            return False
        if any(g.adj[v] & self.y for v in bits(self.x)):
            return False
        return not _is_ab_path(g, self.x, self.a, self.b) and \
            not _is_ab_path(g, self.y, self.a, self.b)


CutsetFinding = Union[CliqueCutset, Proper2Cutset]


def _is_ab_path(g: Graph, side: int, a: int, b: int) -> bool:
    """Does g[side ∪ {a,b}] induce a single path with ends a and b?"""
    sub = side | 1 << a | 1 << b
    for v in bits(side):
        if (g.adj[v] & sub).bit_count() != 2:
            return False
    if (g.adj[a] & sub).bit_count() != 1 or (g.adj[b] & sub).bit_count() != 1:
        return False
    return is_connected(g, sub)


def find_clique_cutset(g: Graph, kmax: int = 3) -> Optional[CliqueCutset]:
    """Least clique cutset of size <= kmax: smallest size first, then by
    sorted vertex list. Size 0 (disconnected input) and 1 (cutvertex) count."""
    for size in range(kmax + 1):
        for combo in combinations(range(g.n), size):
            if any(not g.has_edge(u, v) for u, v in combinations(combo, 2)):
                continue
            rest = g.vertex_mask & ~mask_of(combo)
            if len(components(g, rest)) >= 2:
                return CliqueCutset(combo)
    return None


def find_proper_2cutset(g: Graph) -> Optional[Proper2Cutset]:
    """Least non-adjacent pair {a,b} whose removal splits g into component
    groups (x, y) with neither side-plus-{a,b} an (a,b)-path.

    All 2^(#components) groupings are tried; the first admissible one wins.
    """
    for a, b in combinations(range(g.n), 2):
        if g.has_edge(a, b):
            continue
        rest = g.vertex_mask & ~(1 << a | 1 << b)
        comps = components(g, rest)
        if len(comps) < 2:
            continue  # one component cannot split into anticomplete halves
        for pick in range(1, (1 << len(comps)) - 1):
            x = 0
            for i, c in enumerate(comps):
                if pick >> i & 1:
                    x |= c
            y = rest & ~x
            if not _is_ab_path(g, x, a, b) and not _is_ab_path(g, y, a, b):
                return Proper2Cutset(a, b, x, y)
    return None


@dataclass(frozen=True)
class MultipartiteCert:
    """Partition of V into >= 2 independent parts, complete to each other,
    ordered by smallest vertex."""

    parts: tuple[int, ...]

    def validate(self, g: Graph) -> bool:
        if len(self.parts) < 2 or any(p == 0 for p in self.parts):
            return False
        seen = 0
        for p in self.parts:
            if seen & p:
                return False
            seen |= p
        if seen != g.vertex_mask:
            return False
        for p in self.parts:
            for v in bits(p):
                if g.adj[v] & p or g.adj[v] | p != g.vertex_mask:
                    return False
        return True


def recognize_complete_multipartite(g: Graph) -> Optional[MultipartiteCert]:
    """Certificate iff the complement of g is a disjoint union of >= 2 cliques;
    the parts are those cliques."""
    co = g.complement()
    parts = components(co, co.vertex_mask)
    if len(parts) < 2:
        return None
    for p in parts:
        for v in bits(p):
            if g.adj[v] & p:
                return None
    return MultipartiteCert(tuple(parts))


@dataclass(frozen=True)
class SubcubicRootCert:
    """Root graph with max degree <= 3 whose line graph is g: g-vertex v
    corresponds to the root edge edge_of[v], adjacency iff shared endpoint."""

    root: Graph
    edge_of: tuple[tuple[int, int], ...]

    def validate(self, g: Graph) -> bool:
        if len(self.edge_of) != g.n:
            return False
        if sorted(self.edge_of) != self.root.edges():
            return False
        if any(self.root.degree(v) > 3 for v in range(self.root.n)):
            return False
        return all(
            g.has_edge(u, v) == bool(set(self.edge_of[u]) & set(self.edge_of[v]))
            for u, v in combinations(range(g.n), 2)
        )


def recognize_line_graph_subcubic(g: Graph) -> Optional[SubcubicRootCert]:
    """Backtracking search for a partition of g's edges into cliques of size
    <= 3 with every vertex in at most two of them, then root reconstruction.

    Isolated vertices of g become their own pendant root edges, so K1 maps to
    a root P2.
    """
    edges = g.edges()
    owner: dict[tuple[int, int], int] = {}
    cliques: list[tuple[int, ...]] = []
    load = [0] * g.n

    def commit(c: tuple[int, ...]) -> None:
        idx = len(cliques)
        cliques.append(c)
        for u, v in combinations(c, 2):
            owner[(u, v)] = idx
        for v in c:
            load[v] += 1

    def undo(c: tuple[int, ...]) -> None:
        cliques.pop()
        for u, v in combinations(c, 2):
            del owner[(u, v)]
        for v in c:
            load[v] -= 1

    def place(i: int) -> bool:
        while i < len(edges) and edges[i] in owner:
            i += 1
        if i == len(edges):
            return True
        u, v = edges[i]
        if load[u] == 2 or load[v] == 2:
            return False
        for w in bits(g.adj[u] & g.adj[v]):
            if load[w] == 2:
                continue
            tri = tuple(sorted((u, v, w)))
            if any(e in owner for e in combinations(tri, 2) if e != (u, v)):
                continue
            commit(tri)
            if place(i + 1):
                return True
            undo(tri)
        commit((u, v))
        if place(i + 1):
            return True
        undo((u, v))
        return False

    if not place(0):
        return None

    in_cliques: list[list[int]] = [[] for _ in range(g.n)]
    for idx, c in enumerate(cliques):
        for v in c:
            in_cliques[v].append(idx)
    nroot = len(cliques)
    edge_of = []
    for v in range(g.n):
        ends = in_cliques[v]
        while len(ends) < 2:  # pendant root vertex per missing clique
            ends = ends + [nroot]
            nroot += 1
        edge_of.append((min(ends), max(ends)))
    cert = SubcubicRootCert(Graph.from_edges(nroot, edge_of), tuple(edge_of))
    assert cert.validate(g)
    return cert
