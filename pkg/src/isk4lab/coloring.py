"""Exact chromatic search, leaf-class colourers, and the structural
4-colouring recursion.

`structural_four_coloring` applies the first matching rule at each level:
trivial size, connectivity split, clique cutset, proper 2-cutset, complete
multipartite, subcubic line graph / whole rich square, K_{1,2,n} peel, and a
bounded exact search as the safety net.  It returns the colouring together
with a replayable trace of the applied rules, or a structured failure
naming the expectation that broke.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from .decompose import (
    CliqueCutset,
    MultipartiteCert,
    Proper2Cutset,
    SubcubicRootCert,
    find_clique_cutset,
    find_proper_2cutset,
    recognize_complete_multipartite,
    recognize_line_graph_subcubic,
)
from .graphs import Graph, attachment, bits, components, induced_subgraph, mask_of
from .patterns import (
    K12nEmbedding,
    SquareLink,
    SquareLinkStructure,
    contains_fixed,
    contains_isk4,
    find_maximal_k12n,
    find_rich_square,
)

RULES = ("Trivial", "CliqueCutsetSplit", "Proper2CutsetSplit", "Multipartite",
         "SubcubicLineGraph", "RichSquare", "K12nPeel", "ExactFallback")


@dataclass(frozen=True)
class Coloring:
    """Total colour map as a tuple indexed by vertex, palette 0..k-1."""

    color: tuple[int, ...]
    k: int

    def validate(self, g: Graph) -> bool:
        """Propriety straight off the adjacency, independent of the producer."""
        if len(self.color) != g.n:
            return False
        if sorted(set(self.color)) != list(range(self.k)):
            return False
        return all(self.color[u] != self.color[v] for u, v in g.edges())


@dataclass(frozen=True)
class BoundExceeded:
    """Every colouring needs more colours than the requested bound."""

    bound: int


@dataclass(frozen=True)
class TraceStep:
    rule: str
    scope: int  # vertex mask the rule applied to, in original ids
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ColoringTrace:
    """Pre-order record of the rules applied by structural_four_coloring."""

    steps: tuple[TraceStep, ...]

    def rules(self) -> list[str]:
        return [s.rule for s in self.steps]


@dataclass(frozen=True)
class ColoringFailure:
    """Structured refusal: which expectation broke, where, and the witnesses."""

    kind: str  # "hypothesis_violation" or "chromatic_bound_exceeded"
    rule: Optional[int]
    scope: int
    evidence: dict
    conjecture_counterexample: bool = False


class _Fail(Exception):
    def __init__(self, kind: str, rule: Optional[int], scope: int, evidence: dict):
        super().__init__(kind)
        self.kind = kind
        self.rule = rule
        self.scope = scope
        self.evidence = evidence


# -- exact search ----------------------------------------------------------


def _backtrack(h: Graph, k: int, pair: Optional[tuple[int, int]] = None,
               equal: bool = False) -> Optional[list[int]]:
    """First k-colouring under saturation-degree ordering, or None.

    Colours are tried ascending and capped at one above the count already
    used, which is sound: any colouring can be renamed into that form, and
    the optional pair constraint (colour equality or inequality on two
    vertices) is invariant under renaming.
    """
    n = h.n
    col = [-1] * n
    if n == 0:
        return col
    adj = h.adj

    def pick() -> int:
        best, bkey = -1, None
        for v in range(n):
            if col[v] >= 0:
                continue
            sat = len({col[u] for u in bits(adj[v]) if col[u] >= 0})
            key = (sat, adj[v].bit_count(), -v)
            if bkey is None or key > bkey:
                best, bkey = v, key
        return best

    def go(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        banned = {col[u] for u in bits(adj[v]) if col[u] >= 0}
        other = -1
        if pair is not None and v in pair:
            other = pair[1] if v == pair[0] else pair[0]
        for c in range(min(k, used + 1)):
            if c in banned:
                continue
            if other >= 0 and col[other] >= 0 and equal != (c == col[other]):
                continue
            col[v] = c
            if go(done + 1, used + (c == used)):
                return True
            col[v] = -1
        return False

    return col if go(0, 0) else None


def _canon_list(colors: list[int]) -> list[int]:
    ren: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in ren:
            ren[c] = len(ren)
        out.append(ren[c])
    return out


def chromatic_number_exact(g: Graph, upper_bound: Optional[int] = None
                           ) -> Union[tuple[int, Coloring], BoundExceeded]:
    """Minimum colour count by iterative deepening on k.

    With upper_bound set, a graph needing more colours yields
    BoundExceeded(upper_bound) instead of a colouring.
    """
    hi = g.n if upper_bound is None else min(upper_bound, g.n)
    for k in range(min(1, g.n), hi + 1):
        raw = _backtrack(g, k)
        if raw is not None:
            out = Coloring(tuple(_canon_list(raw)), k)
            assert out.validate(g)
            return k, out
    assert upper_bound is not None
    return BoundExceeded(upper_bound)


# -- leaf colourers --------------------------------------------------------


def color_complete_multipartite(cert: MultipartiteCert) -> Coloring:
    """Parts become colour classes; k is the number of parts."""
    union = 0
    col: dict[int, int] = {}
    for i, part in enumerate(cert.parts):
        union |= part
        for v in bits(part):
            col[v] = i
    n = union.bit_count()
    assert union == (1 << n) - 1, "certificate must cover the vertex range"
    return Coloring(tuple(col[v] for v in range(n)), len(cert.parts))


def color_subcubic_line_graph(g: Graph, cert: SubcubicRootCert) -> Coloring:
    """Properly 4-edge-colour the subcubic root and pull the colours back
    through the edge map; vertices of g sharing a root endpoint differ."""
    redges = cert.root.edges()
    m = len(redges)
    incident: list[list[int]] = [[] for _ in range(cert.root.n)]
    for i, (u, v) in enumerate(redges):
        incident[u].append(i)
        incident[v].append(i)
    ecol = [-1] * m

    def go(i: int, used: int) -> bool:
        if i == m:
            return True
        u, v = redges[i]
        banned = {ecol[j] for j in incident[u] + incident[v] if ecol[j] >= 0}
        for c in range(min(4, used + 1)):
            if c in banned:
                continue
            ecol[i] = c
            if go(i + 1, used + (c == used)):
                return True
            ecol[i] = -1
        return False

    # max degree 3 guarantees a 4-edge-colouring exists
    assert go(0, 0), "subcubic root failed to 4-edge-colour"
    at = {e: ecol[i] for i, e in enumerate(redges)}
    col = _canon_list([at[e] for e in cert.edge_of])
    out = Coloring(tuple(col), len(set(col)))
    assert out.validate(g)
    return out


def color_rich_square(g: Graph, s: SquareLinkStructure) -> Coloring:
    """Fixed palette for a whole-graph square-and-links structure: square
    corners 0/1 by opposite pairs, link paths alternate 2/3, centres take 2."""
    if not s.whole:
        raise ValueError("only whole-graph structures can be coloured directly")
    v1, v2, v3, v4 = s.square
    col = {v1: 0, v3: 0, v2: 1, v4: 1}
    for link in s.links:
        if link.center:
            col[link.path[0]] = 2
        else:
            for i, p in enumerate(link.path):
                col[p] = 2 + i % 2
    assert len(col) == g.n, "whole mode must cover every vertex"
    out = Coloring(tuple(col[v] for v in range(g.n)), len(set(col.values())))
    assert out.validate(g)
    return out


# -- structural recursion --------------------------------------------------


def _lift(mask_new: int, back: list[int]) -> int:
    return mask_of(back[v] for v in bits(mask_new))


def _canon(col: dict[int, int]) -> dict[int, int]:
    """Renumber colours by first occurrence in ascending vertex order."""
    ren: dict[int, int] = {}
    out = {}
    for v in sorted(col):
        c = col[v]
        if c not in ren:
            ren[c] = len(ren)
        out[v] = ren[c]
    assert len(ren) <= 4
    return out


def _merge(base: dict[int, int], other: dict[int, int],
           shared: list[int]) -> dict[int, int]:
    """Overlay `other` onto `base` after permuting its colours so the shared
    vertices agree; leftover colours go to the lowest free ids."""
    pi: dict[int, int] = {}
    targets: set[int] = set()
    for v in shared:
        src, dst = other[v], base[v]
        if src in pi:
            assert pi[src] == dst
            continue
        assert dst not in targets
        pi[src] = dst
        targets.add(dst)
    nxt = 0
    for c in sorted(set(other.values())):
        if c in pi:
            continue
        while nxt in targets:
            nxt += 1
        pi[c] = nxt
        targets.add(nxt)
    out = dict(base)
    for v, c in other.items():
        out[v] = pi[c]
    return out


def _emit(steps: Optional[list], feed: Optional[deque], rule: str,
          scope: int, detail: dict) -> dict:
    if feed is None:
        steps.append(TraceStep(rule, scope, detail))
        return detail
    if not feed:
        raise ValueError("trace ended before the recursion did")
    st = feed.popleft()
    if st.rule != rule or st.scope != scope:
        raise ValueError("trace step does not match the recursion")
    return st.detail


def _solve(g: Graph, mask: int, depth: int, steps: Optional[list],
           feed: Optional[deque]) -> dict[int, int]:
    assert depth <= g.n, "every rule must shrink its instance"
    h, back = induced_subgraph(g, mask)

    # rule 1: small instances take distinct colours
    if h.n <= 4:
        _emit(steps, feed, "Trivial", mask, {})
        return {v: i for i, v in enumerate(back)}

    # rule 2: colour components independently, palettes overlap freely
    comps = components(h)
    if len(comps) > 1:
        out: dict[int, int] = {}
        for cm in comps:
            out.update(_solve(g, _lift(cm, back), depth + 1, steps, feed))
        return _canon(out)

    if feed is None:
        return _search(g, mask, depth, steps, h, back)
    if not feed:
        raise ValueError("trace ended before the recursion did")
    st = feed.popleft()
    if st.scope != mask:
        raise ValueError("trace scope does not match the recursion")
    return _replay_step(g, mask, depth, feed, h, back, st)


def _search(g: Graph, mask: int, depth: int, steps: list, h: Graph,
            back: list[int]) -> dict[int, int]:
    # rule 3
    cc = find_clique_cutset(h, kmax=3)
    if cc is not None:
        steps.append(TraceStep("CliqueCutsetSplit", mask,
                               {"cutset": [back[v] for v in cc.vertices]}))
        return _apply_clique(g, mask, depth, steps, None, h, back, cc.vertices)

    # rule 4
    pc = find_proper_2cutset(h)
    if pc is not None:
        detail = {"a": back[pc.a], "b": back[pc.b],
                  "x": [back[v] for v in bits(pc.x)],
                  "y": [back[v] for v in bits(pc.y)]}
        steps.append(TraceStep("Proper2CutsetSplit", mask, detail))
        return _apply_p2c(g, mask, depth, steps, None, h, back,
                          pc.a, pc.b, pc.x, pc.y, detail)

    # rule 5: a K_{3,3} forces complete multipartite here, but recognition is
    # attempted unconditionally so plain multipartite graphs are also kept
    # off the peel rule (which would waste a colour on them)
    mp = recognize_complete_multipartite(h)
    if mp is not None and len(mp.parts) <= 4:
        steps.append(TraceStep("Multipartite", mask,
                               {"parts": [[back[v] for v in bits(p)]
                                          for p in mp.parts]}))
        return _apply_multipartite(back, mp)
    k33 = contains_fixed(h, "K33")
    if k33 is not None:
        raise _Fail("hypothesis_violation", 5, mask, {
            "expectation": "with K_{3,3} present and no clique cutset the "
                           "graph must be complete multipartite on at most "
                           "four parts",
            "k33_vertices": sorted(back[v] for v in k33.mapping),
            "parts": None if mp is None else len(mp.parts),
        })

    # rule 6
    prism = contains_fixed(h, "prism")
    rich = find_rich_square(h)
    if prism is not None or rich is not None:
        lg = recognize_line_graph_subcubic(h)
        if lg is not None:
            steps.append(TraceStep("SubcubicLineGraph", mask, {
                "root_n": lg.root.n,
                "root_edges": [list(e) for e in lg.root.edges()],
                "edge_of": [list(e) for e in lg.edge_of]}))
            return _apply_linegraph(h, back, lg)
        whole = rich if rich is not None and rich.whole else \
            find_rich_square(h, whole_only=True)
        if whole is not None:
            steps.append(TraceStep("RichSquare", mask, {
                "square": [back[v] for v in whole.square],
                "links": [{"path": [back[v] for v in l.path],
                           "center": l.center} for l in whole.links]}))
            return _apply_richsquare(h, back, whole)
        raise _Fail("hypothesis_violation", 6, mask, {
            "expectation": "with a prism or rich square present and no "
                           "cutset the graph must be the line graph of a "
                           "max-degree-3 graph or a whole rich square",
            "prism_vertices": None if prism is None
            else sorted(back[v] for v in prism.mapping),
            "square": None if rich is None
            else [back[v] for v in rich.square],
        })

    # rule 7
    emb = find_maximal_k12n(h, 3)
    if emb is not None:
        hm = emb.vertex_mask()
        need = 1 << emb.a | mask_of(emb.b)
        for cm in components(h, h.vertex_mask & ~hm):
            att = attachment(h, hm, cm)
            if att != need:
                raise _Fail("hypothesis_violation", 7, mask, {
                    "expectation": "every component outside a maximal "
                                   "K_{1,2,n} must attach exactly at the "
                                   "K_{1,2} side",
                    "embedding": {"a": back[emb.a],
                                  "b": [back[v] for v in emb.b],
                                  "c": [back[v] for v in emb.c]},
                    "component": sorted(back[v] for v in bits(cm)),
                    "attachment": sorted(back[v] for v in bits(att)),
                })
        steps.append(TraceStep("K12nPeel", mask,
                               {"a": back[emb.a],
                                "b": [back[v] for v in emb.b],
                                "c": [back[v] for v in emb.c]}))
        return _apply_peel(g, mask, depth, steps, None, back, emb)

    # rule 8
    res = chromatic_number_exact(h, 4)
    if isinstance(res, BoundExceeded):
        raise _Fail("chromatic_bound_exceeded", 8, mask,
                    {"bound": 4, "vertices": sorted(back)})
    k, col = res
    steps.append(TraceStep("ExactFallback", mask, {"k": k}))
    return {back[v]: col.color[v] for v in range(h.n)}


def _replay_step(g: Graph, mask: int, depth: int, feed: deque, h: Graph,
                 back: list[int], st: TraceStep) -> dict[int, int]:
    index = {v: i for i, v in enumerate(back)}
    d = st.detail
    try:
        if st.rule == "CliqueCutsetSplit":
            vs = tuple(sorted(index[v] for v in d["cutset"]))
            if not CliqueCutset(vs).validate(h):
                raise ValueError("recorded clique cutset no longer applies")
            return _apply_clique(g, mask, depth, None, feed, h, back, vs)
        if st.rule == "Proper2CutsetSplit":
            a, b = index[d["a"]], index[d["b"]]
            x = mask_of(index[v] for v in d["x"])
            y = mask_of(index[v] for v in d["y"])
            if not Proper2Cutset(a, b, x, y).validate(h):
                raise ValueError("recorded proper 2-cutset no longer applies")
            return _apply_p2c(g, mask, depth, None, feed, h, back, a, b, x, y, d)
        if st.rule == "Multipartite":
            cert = MultipartiteCert(tuple(mask_of(index[v] for v in part)
                                          for part in d["parts"]))
            if len(cert.parts) > 4 or not cert.validate(h):
                raise ValueError("recorded partition no longer applies")
            return _apply_multipartite(back, cert)
        if st.rule == "SubcubicLineGraph":
            cert = SubcubicRootCert(
                Graph.from_edges(d["root_n"],
                                 [tuple(e) for e in d["root_edges"]]),
                tuple(tuple(e) for e in d["edge_of"]))
            if not cert.validate(h):
                raise ValueError("recorded line graph root no longer applies")
            return _apply_linegraph(h, back, cert)
        if st.rule == "RichSquare":
            s = SquareLinkStructure(
                tuple(index[v] for v in d["square"]),
                tuple(SquareLink(tuple(index[v] for v in l["path"]),
                                 l["center"]) for l in d["links"]),
                whole=True)
            if not s.validate(h):
                raise ValueError("recorded rich square no longer applies")
            return _apply_richsquare(h, back, s)
        if st.rule == "K12nPeel":
            emb = K12nEmbedding(index[d["a"]],
                                tuple(sorted(index[v] for v in d["b"])),
                                tuple(sorted(index[v] for v in d["c"])))
            if not emb.validate(h):
                raise ValueError("recorded embedding no longer applies")
            hm = emb.vertex_mask()
            need = 1 << emb.a | mask_of(emb.b)
            for cm in components(h, h.vertex_mask & ~hm):
                if attachment(h, hm, cm) != need:
                    raise ValueError("recorded embedding has a stray attachment")
            return _apply_peel(g, mask, depth, None, feed, back, emb)
        if st.rule == "ExactFallback":
            res = chromatic_number_exact(h, 4)
            if isinstance(res, BoundExceeded) or res[0] != d["k"]:
                raise ValueError("recorded fallback does not reproduce")
            return {back[v]: res[1].color[v] for v in range(h.n)}
    except KeyError as exc:
        raise ValueError("trace step is missing a witness field") from exc
    raise ValueError(f"unknown trace rule {st.rule!r}")


def _apply_clique(g, mask, depth, steps, feed, h, back, vs) -> dict[int, int]:
    smask = mask_of(vs)
    shared = [back[v] for v in vs]
    merged: Optional[dict[int, int]] = None
    for cm in components(h, h.vertex_mask & ~smask):
        part = _solve(g, _lift(cm | smask, back), depth + 1, steps, feed)
        merged = part if merged is None else _merge(merged, part, shared)
    return _canon(merged)


def _recolor(h: Graph, back: list[int], block: int, pair: tuple[int, int],
             equal: bool) -> Optional[dict[int, int]]:
    """Cheapest colouring of h[block] with the pair relation imposed, bound 4."""
    hb, bb = induced_subgraph(h, block)
    idx = {v: i for i, v in enumerate(bb)}
    pr = (idx[pair[0]], idx[pair[1]])
    for k in range(1, 5):
        raw = _backtrack(hb, k, pair=pr, equal=equal)
        if raw is not None:
            return {back[bb[i]]: raw[i] for i in range(hb.n)}
    return None


def _apply_p2c(g, mask, depth, steps, feed, h, back, a, b, x, y,
               detail) -> dict[int, int]:
    A, B = back[a], back[b]
    bx = x | 1 << a | 1 << b
    by = y | 1 << a | 1 << b
    cx = _solve(g, _lift(bx, back), depth + 1, steps, feed)
    cy = _solve(g, _lift(by, back), depth + 1, steps, feed)
    if (cx[A] == cx[B]) == (cy[A] == cy[B]):
        res = "agree"
        merged = _merge(cx, cy, [A, B])
    else:
        # recolour the smaller block to match the larger block's relation on
        # (a, b); failing that the larger block; failing both, the whole scope
        small_is_x = x.bit_count() <= y.bit_count()
        bs, bl = (bx, by) if small_is_x else (by, bx)
        cl = cy if small_is_x else cx
        cs = cx if small_is_x else cy
        redo = _recolor(h, back, bs, (a, b), equal=cl[A] == cl[B])
        if redo is not None:
            res = "recolor_x" if small_is_x else "recolor_y"
            merged = _merge(cl, redo, [A, B])
        else:
            redo = _recolor(h, back, bl, (a, b), equal=cs[A] == cs[B])
            if redo is not None:
                res = "recolor_y" if small_is_x else "recolor_x"
                merged = _merge(cs, redo, [A, B])
            else:
                raw = _backtrack(h, 4)
                if raw is None:
                    raise _Fail("chromatic_bound_exceeded", 4, mask,
                                {"bound": 4, "vertices": sorted(back)})
                res = "whole_exact"
                merged = {back[v]: raw[v] for v in range(h.n)}
    if feed is None:
        detail["resolution"] = res
    elif detail.get("resolution") != res:
        raise ValueError("trace resolution does not match the recursion")
    return _canon(merged)


def _apply_multipartite(back, cert) -> dict[int, int]:
    out = {}
    for i, part in enumerate(cert.parts):
        for v in bits(part):
            out[back[v]] = i
    return _canon(out)


def _apply_linegraph(h, back, cert) -> dict[int, int]:
    col = color_subcubic_line_graph(h, cert)
    return _canon({back[v]: col.color[v] for v in range(h.n)})


def _apply_richsquare(h, back, s) -> dict[int, int]:
    col = color_rich_square(h, s)
    return _canon({back[v]: col.color[v] for v in range(h.n)})


def _apply_peel(g, mask, depth, steps, feed, back, emb) -> dict[int, int]:
    sub = _solve(g, mask & ~_lift(mask_of(emb.c), back), depth + 1, steps, feed)
    tri = {sub[back[emb.a]], sub[back[emb.b[0]]], sub[back[emb.b[1]]]}
    free = min(set(range(4)) - tri)
    out = dict(sub)
    for v in emb.c:
        out[back[v]] = free
    return _canon(out)


def structural_four_coloring(g: Graph, *, check_isk4_free: bool = False
                             ) -> Union[tuple[Coloring, ColoringTrace],
                                        ColoringFailure]:
    """Colour g with at most four colours by structural recursion.

    Returns (Coloring, ColoringTrace), or a ColoringFailure carrying the
    violated expectation.  The intended domain is graphs with no induced K4
    subdivision; with check_isk4_free the (expensive) freeness test runs up
    front instead of being assumed.
    """
    if check_isk4_free:
        w = contains_isk4(g)
        if w is not None:
            return ColoringFailure(
                "hypothesis_violation", None, g.vertex_mask,
                {"expectation": "input graph free of induced K4 subdivisions",
                 "isk4_vertices": sorted(bits(w))})
    steps: list[TraceStep] = []
    try:
        col = _solve(g, g.vertex_mask, 0, steps, None)
    except _Fail as f:
        ev = dict(f.evidence)
        conj = False
        if f.kind == "chromatic_bound_exceeded":
            conj = contains_isk4(g) is None
            if conj:
                ev["note"] = ("needs five colours yet has no induced K4 "
                              "subdivision: counterexample candidate")
        return ColoringFailure(f.kind, f.rule, f.scope, ev, conj)
    out = Coloring(tuple(col[v] for v in range(g.n)), len(set(col.values())))
    assert out.k <= 4 and out.validate(g)
    return out, ColoringTrace(tuple(steps))


def replay_trace(g: Graph, trace: ColoringTrace) -> Coloring:
    """Re-run the recorded rules without searching.

    On the graph that produced the trace this reproduces the identical
    colouring; a trace that does not fit raises ValueError.
    """
    feed = deque(trace.steps)
    col = _solve(g, g.vertex_mask, 0, None, feed)
    if feed:
        raise ValueError("trace has unused steps")
    out = Coloring(tuple(col[v] for v in range(g.n)), len(set(col.values())))
    if not out.validate(g):
        raise ValueError("replayed colouring is not proper")
    return out
