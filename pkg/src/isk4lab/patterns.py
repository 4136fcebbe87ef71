"""Exact detectors for the induced structures the coloring pipeline dispatches on.

All detectors are exponential-time subset/backtracking searches meant for small
graphs, and all of them return the lexicographically least witness under
ascending vertex order so repeated runs and reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .graphs import Graph, bits, components, induced_subgraph, is_connected, mask_of


@dataclass(frozen=True)
class PatternWitness:
    """Induced embedding: pattern vertex i sits on host vertex mapping[i]."""

    pattern: Graph
    mapping: tuple[int, ...]

    def vertex_mask(self) -> int:
        return mask_of(self.mapping)

    def validate(self, g: Graph) -> bool:
        m = self.mapping
        if len(set(m)) != len(m) or len(m) != self.pattern.n:
            return False
        return all(
            g.has_edge(m[u], m[v]) == self.pattern.has_edge(u, v)
            for u in range(self.pattern.n)
            for v in range(u + 1, self.pattern.n)
        )


def contains_induced(g: Graph, pattern: Graph) -> Optional[PatternWitness]:
    """Least injective map pattern->g that is an induced embedding, or None."""
    k = pattern.n
    if k > g.n:
        return None
    image = [0] * k

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        for h in range(g.n):
            if used >> h & 1:
                continue
            if g.degree(h) < pattern.degree(i):
                continue
            if all(
                g.has_edge(image[j], h) == pattern.has_edge(j, i)
                for j in range(i)
            ):
                image[i] = h
                if place(i + 1, used | 1 << h):
                    return True
        return False

    if place(0, 0):
        return PatternWitness(pattern, tuple(image))
    return None


# -- ISK4 / prism / wheel: subset searches ---------------------------------
#
# The subset tree (extend by vertices larger than the current max) is walked
# in preorder, which visits vertex sets in lexicographic order of their sorted
# tuples; the first structural hit is therefore the least witness.


def _chain_pairs(g: Graph, mask: int, branch: list[int]) -> Optional[list]:
    """Trace maximal degree-2 chains of g[mask] from each branch vertex.

    Returns one (small end, large end) pair per traversal, i.e. every chain
    twice, or None if some chain returns to its start.
    """
    branch_set = set(branch)
    pairs = []
    for b in branch:
        for x in bits(g.adj[b] & mask):
            prev, cur = b, x
            while cur not in branch_set:
                nxt = g.adj[cur] & mask & ~(1 << prev)
                prev, cur = cur, nxt.bit_length() - 1
            if cur == b:
                return None
            pairs.append((min(b, cur), max(b, cur)))
    return pairs


def is_k4_subdivision(g: Graph, mask: int) -> bool:
    """Does g[mask] smooth to a K4? Four degree-3 vertices, the rest degree 2,
    connected, and the six branch pairs each joined by exactly one chain."""
    branch = []
    for v in bits(mask):
        d = (g.adj[v] & mask).bit_count()
        if d == 3:
            branch.append(v)
        elif d != 2:
            return False
    if len(branch) != 4 or not is_connected(g, mask):
        return False
    pairs = _chain_pairs(g, mask, branch)
    if pairs is None:
        return False
    want = [(u, v) for u, v in combinations(branch, 2)]
    return sorted(pairs) == sorted(want + want)


def is_prism(g: Graph, mask: int) -> bool:
    """Does g[mask] induce a (possibly subdivided) prism: two triangles joined
    by three chains, no other edges?"""
    branch = []
    for v in bits(mask):
        d = (g.adj[v] & mask).bit_count()
        if d == 3:
            branch.append(v)
        elif d != 2:
            return False
    if len(branch) != 6 or not is_connected(g, mask):
        return False
    for t1 in combinations(branch, 3):
        if branch[0] not in t1:
            continue  # fix the least branch vertex in t1: halves the partitions
        t2 = [v for v in branch if v not in t1]
        if not all(g.has_edge(u, v) for u, v in combinations(t1, 2)):
            continue
        if not all(g.has_edge(u, v) for u, v in combinations(t2, 2)):
            continue
        # each triangle vertex has one non-triangle edge; its chain must land
        # on the other triangle, and distinct starts get distinct landings
        t2_set = set(t2)
        hit = set()
        ok = True
        for x in t1:
            others = g.adj[x] & mask & ~mask_of(t1)
            if others.bit_count() != 1:
                ok = False
                break
            prev, cur = x, others.bit_length() - 1
            while (g.adj[cur] & mask).bit_count() == 2:
                nxt = g.adj[cur] & mask & ~(1 << prev)
                prev, cur = cur, nxt.bit_length() - 1
            if cur not in t2_set or cur in hit:
                ok = False
                break
            hit.add(cur)
        if ok:
            return True
    return False


def _is_wheel(g: Graph, mask: int) -> bool:
    for h in bits(mask):
        rest = mask & ~(1 << h)
        if rest.bit_count() < 4 or (g.adj[h] & rest).bit_count() < 3:
            continue
        if all((g.adj[v] & rest).bit_count() == 2 for v in bits(rest)) and \
                is_connected(g, rest):
            return True
    return False


def _subset_search(g: Graph, min_size: int, check, high_degree_cap: int) -> Optional[int]:
    """Preorder subset DFS; subsets where more than high_degree_cap members
    have induced degree >= 4 are dead (degrees only grow downward)."""
    result = None

    def visit(mask: int, nxt: int):
        nonlocal result
        if result is not None:
            return
        if mask.bit_count() >= min_size and check(g, mask):
            result = mask
            return
        for v in range(nxt, g.n):
            new = mask | 1 << v
            high = sum(1 for u in bits(new) if (g.adj[u] & new).bit_count() >= 4)
            if high > high_degree_cap:
                continue
            visit(new, v + 1)
            if result is not None:
                return

    visit(0, 0)
    return result


def contains_isk4(g: Graph) -> Optional[int]:
    """Least vertex set whose induced subgraph is a subdivision of K4."""
    return _subset_search(g, 4, is_k4_subdivision, 0)


def _mask_witness(g: Graph, mask: int) -> PatternWitness:
    sub, vmap = induced_subgraph(g, mask)
    return PatternWitness(sub, tuple(vmap))


_FIXED = {
    "K33": (3, 3),
    "K222": (2, 2, 2),
}


def contains_fixed(g: Graph, which: str) -> Optional[PatternWitness]:
    """Detect one of K33, K222, prism (subdivided allowed), wheel."""
    if which in _FIXED:
        return contains_induced(g, Graph.complete_multipartite(_FIXED[which]))
    if which == "prism":
        mask = _subset_search(g, 6, is_prism, 0)
    elif which == "wheel":
        # a wheel has at most one vertex (the hub) of induced degree above 3
        mask = _subset_search(g, 5, _is_wheel, 1)
    else:
        raise ValueError(f"unknown pattern {which!r}")
    return _mask_witness(g, mask) if mask is not None else None


# -- complete tripartite K_{1,2,n} embeddings ------------------------------


@dataclass(frozen=True)
class K12nEmbedding:
    """Sides {a}, {b_1,b_2}, {c_1..c_n} of an induced complete tripartite
    subgraph; b and c are sorted ascending."""

    a: int
    b: tuple[int, int]
    c: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.c)

    def vertex_mask(self) -> int:
        return 1 << self.a | mask_of(self.b) | mask_of(self.c)

    def validate(self, g: Graph) -> bool:
        vs = (self.a,) + self.b + self.c
        if len(set(vs)) != len(vs) or self.n < 2:
            return False
        part = {self.a: 0, self.b[0]: 1, self.b[1]: 1}
        part.update({v: 2 for v in self.c})
        return all(
            g.has_edge(u, v) == (part[u] != part[v])
            for u, v in combinations(vs, 2)
        )


def _swap_extension_exists(g: Graph, a: int, b: tuple[int, int], c_mask: int) -> bool:
    # for n = 2 the roles of the 2-side and the c-side are interchangeable:
    # a vertex complete to {a} and the c-side but anticomplete to the b-side
    # grows the b-side into a new 3-vertex side
    cand = g.adj[a] & ~g.adj[b[0]] & ~g.adj[b[1]]
    for v in bits(c_mask):
        cand &= g.adj[v]
    cand &= ~(1 << a | mask_of(b) | c_mask)
    return cand != 0


def is_maximal_k12n(g: Graph, emb: K12nEmbedding) -> bool:
    """No single vertex extends the embedding to a larger K_{1,2,m}: nothing
    joins the c-side, and for n = 2 nothing absorbs the b-side either."""
    c_mask = mask_of(emb.c)
    cand = g.adj[emb.a] & g.adj[emb.b[0]] & g.adj[emb.b[1]]
    for v in bits(cand & ~c_mask):
        if g.adj[v] & c_mask == 0:
            return False
    if emb.n == 2 and _swap_extension_exists(g, emb.a, emb.b, c_mask):
        return False
    return True


def iter_maximal_k12n(g: Graph, n_min: int) -> Iterator[K12nEmbedding]:
    """All maximal embeddings with n >= n_min, lexicographic by (a, b, c)."""
    if n_min < 2:
        raise ValueError("n_min must be at least 2")
    for a in range(g.n):
        nbrs = list(bits(g.adj[a]))
        for b1, b2 in combinations(nbrs, 2):
            if g.has_edge(b1, b2):
                continue
            cn = g.adj[a] & g.adj[b1] & g.adj[b2]
            cset = list(bits(cn))
            if len(cset) < n_min:
                continue
            yield from _maximal_csides(g, a, (b1, b2), cn, cset, n_min)


def _maximal_csides(g, a, b, cn, cset, n_min) -> Iterator[K12nEmbedding]:
    # maximal independent sets of g[cn], preorder (= lex on sorted tuples)
    out = []

    def visit(chosen: tuple, chosen_mask: int, rest: list[int]):
        if len(chosen) >= n_min and all(g.adj[v] & chosen_mask for v in bits(cn & ~chosen_mask)):
            emb = K12nEmbedding(a, b, chosen)
            if emb.n > 2 or not _swap_extension_exists(g, a, b, chosen_mask):
                out.append(emb)
        for i, v in enumerate(rest):
            if g.adj[v] & chosen_mask:
                continue
            visit(chosen + (v,), chosen_mask | 1 << v, rest[i + 1:])

    visit((), 0, cset)
    return iter(out)


def find_maximal_k12n(g: Graph, n_min: int) -> Optional[K12nEmbedding]:
    """Least maximal K_{1,2,n} embedding with n >= n_min, or None."""
    return next(iter_maximal_k12n(g, n_min), None)


# -- squares and links -----------------------------------------------------


@dataclass(frozen=True)
class SquareLink:
    """One component hanging off a square: either a single vertex complete to
    the square (center=True) or a path whose first end sees exactly
    {v_1,v_2} and last end exactly {v_3,v_4}, interiors seeing nothing."""

    path: tuple[int, ...]
    center: bool


@dataclass(frozen=True)
class SquareLinkStructure:
    square: tuple[int, int, int, int]
    links: tuple[SquareLink, ...]
    whole: bool

    def validate(self, g: Graph) -> bool:
        v1, v2, v3, v4 = self.square
        smask = mask_of(self.square)
        ring = [(v1, v2), (v2, v3), (v3, v4), (v4, v1)]
        if not all(g.has_edge(u, v) for u, v in ring):
            return False
        if g.has_edge(v1, v3) or g.has_edge(v2, v4):
            return False
        if len(self.links) < 2:
            return False
        comps = components(g, g.vertex_mask & ~smask)
        link_masks = {mask_of(l.path) for l in self.links}
        if not link_masks <= {c for c in comps}:
            return False
        if self.whole and link_masks != set(comps):
            return False
        for l in self.links:
            if _classify_link(g, mask_of(l.path), smask,
                              1 << v1 | 1 << v2, 1 << v3 | 1 << v4) is None:
                return False
        return True


def _classify_link(g: Graph, comp: int, smask: int, e1: int, e2: int) -> Optional[SquareLink]:
    vs = list(bits(comp))
    if len(vs) == 1:
        p = vs[0]
        if g.adj[p] & smask == smask:
            return SquareLink((p,), True)
        return None
    ends = [v for v in vs if (g.adj[v] & comp).bit_count() == 1]
    if len(ends) != 2 or not is_connected(g, comp):
        return None
    if any((g.adj[v] & comp).bit_count() != 2 for v in vs if v not in ends):
        return None
    p, q = ends
    ap, aq = g.adj[p] & smask, g.adj[q] & smask
    if ap == e1 and aq == e2:
        first = p
    elif ap == e2 and aq == e1:
        first = q
    else:
        return None
    order = [first]
    seen = 1 << first
    while len(order) < len(vs):
        nxt = g.adj[order[-1]] & comp & ~seen
        v = nxt.bit_length() - 1
        order.append(v)
        seen |= 1 << v
    if any(g.adj[v] & smask for v in order[1:-1]):
        return None
    return SquareLink(tuple(order), False)


def find_rich_square(g: Graph, whole_only: bool = False) -> Optional[SquareLinkStructure]:
    """Least induced square with at least two link components off it.

    whole=True when every component off the square is a link (the form the
    direct colorer accepts); otherwise only containment is certified.
    With whole_only, containment-mode hits are skipped and the scan keeps
    going, so a whole-mode structure under a later square is still found.
    """
    for quad in combinations(range(g.n), 4):
        smask = mask_of(quad)
        degs = [(g.adj[v] & smask).bit_count() for v in quad]
        if degs != [2, 2, 2, 2]:
            continue
        v1 = quad[0]
        nb = sorted(bits(g.adj[v1] & smask))
        v2, v4 = nb[0], nb[1]
        v3 = (smask & ~(1 << v1 | 1 << v2 | 1 << v4)).bit_length() - 1
        comps = components(g, g.vertex_mask & ~smask)
        # the two opposite-edge pairings correspond to the two rotations of
        # the square's labeling; a center vertex is a link under either
        for order in ((v1, v2, v3, v4), (v2, v3, v4, v1)):
            e1 = 1 << order[0] | 1 << order[1]
            e2 = 1 << order[2] | 1 << order[3]
            links = []
            for comp in comps:
                l = _classify_link(g, comp, smask, e1, e2)
                if l is not None:
                    links.append(l)
            if len(links) >= 2:
                out = SquareLinkStructure(order, tuple(links),
                                          whole=len(links) == len(comps))
                if out.whole or not whole_only:
                    return out
    return None
