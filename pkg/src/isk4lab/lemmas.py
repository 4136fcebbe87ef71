"""Linkage detection and attachment-shape checks, plus whole-graph verifiers.

`check_lemma` runs one of three statements against a graph: L-LINK (no vertex
of an ISK4-free graph is linked to an induced cycle), L-VOH (single-vertex
attachments to a maximal K_{1,2,n} are empty, one vertex or one edge) and
L-COMP (component attachments are empty, a clique or {a,b_1,b_2}).  Each run
reports whether the statement's hypotheses held and, if so, whether the
conclusion survived exhaustive checking; a counterwitness would be evidence of
an implementation bug and is returned in full.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .graphs import Graph, bits, components, is_induced_cycle, is_induced_path, mask_of
from .patterns import (
    K12nEmbedding,
    contains_fixed,
    contains_isk4,
    iter_maximal_k12n,
)

LEMMA_IDS = ("L-LINK", "L-VOH", "L-COMP")


@dataclass(frozen=True)
class LinkWitness:
    """Three induced paths from one vertex to an induced cycle, satisfying the
    five linkage conditions (see validate for the literal transcription)."""

    paths: tuple[tuple[int, ...], ...]

    @property
    def v(self) -> int:
        return self.paths[0][0]

    def ends(self) -> tuple[int, ...]:
        return tuple(p[-1] for p in self.paths)

    def validate(self, g: Graph, cycle: tuple[int, ...]) -> bool:
        """Literal re-check of the five conditions, independent of the search."""
        if len(self.paths) != 3 or not is_induced_cycle(g, cycle):
            return False
        cset = set(cycle)
        v = self.v
        if v in cset:
            return False
        for p in self.paths:
            if len(p) < 2 or p[0] != v or p[-1] not in cset:
                return False
            if not is_induced_path(g, p):
                return False
            # interiors avoid the cycle ...
            if any(u in cset for u in p[1:-1]):
                return False
            # ... and contribute no edges to it beyond the final path edge
            for u in p[1:-1]:
                allowed = {p[-1]} if u == p[-2] else set()
                if any(c in cset and c not in allowed for c in bits(g.adj[u])):
                    return False
        for i in range(3):
            for j in range(i + 1, 3):
                pi, pj = self.paths[i], self.paths[j]
                if set(pi) & set(pj) != {v}:
                    return False
                for x in pi:
                    for y in pj:
                        if g.has_edge(x, y) and v not in (x, y) \
                                and not (x in cset and y in cset):
                            return False
        ends = set(self.ends())
        return all(c in ends for c in cycle if g.has_edge(v, c))


def is_linked(g: Graph, cycle: tuple[int, ...], v: int) -> Optional[LinkWitness]:
    """Exhaustive backtracking for a linkage of v to the cycle, or None.

    Raises ValueError when the cycle is not induced or v lies on it.
    """
    if not is_induced_cycle(g, cycle):
        raise ValueError("cycle argument is not an induced cycle")
    if not 0 <= v < g.n or v in cycle:
        raise ValueError("linked vertex must exist and avoid the cycle")
    cmask = mask_of(cycle)
    if (g.adj[v] & cmask).bit_count() > 3:
        return None  # three path ends cannot absorb four cycle neighbours

    found: list[LinkWitness] = []

    def close(e: int, pmask: int, prev: int, done: list, nonv: int, endm: int) -> bool:
        if pmask >> e & 1 or nonv >> e & 1:
            return False
        if g.adj[e] & pmask != 1 << prev:
            return False
        return g.adj[e] & nonv & ~endm == 0

    def grow(path: tuple, pmask: int, done: list, nonv: int, endm: int):
        # path always has >= 2 vertices here; single-edge paths close in start
        if found:
            return
        last = path[-1]
        cn = g.adj[last] & cmask
        if cn:  # interior touched the cycle: the path must stop right here
            if cn.bit_count() == 1:
                e = cn.bit_length() - 1
                if close(e, pmask, last, done, nonv, endm):
                    finish(path + (e,), done)
            return
        for w in bits(g.adj[last] & ~cmask & ~nonv & ~pmask):
            if g.adj[w] & pmask != 1 << last or g.adj[w] & nonv:
                continue
            grow(path + (w,), pmask | 1 << w, done, nonv, endm)
            if found:
                return

    def finish(path: tuple, done: list) -> None:
        done = done + [path]
        if len(done) == 3:
            endm = mask_of(p[-1] for p in done)
            if g.adj[v] & cmask & ~endm == 0:
                found.append(LinkWitness(tuple(done)))
            return
        nonv = mask_of(u for p in done for u in p[1:])
        endm = mask_of(p[-1] for p in done)
        for first in bits(g.adj[v] & ~nonv):
            if first <= done[-1][1]:
                continue  # fix ascending first steps: kills permuted repeats
            start(first, done, nonv, endm)
            if found:
                return

    def start(first: int, done: list, nonv: int, endm: int) -> None:
        if found:
            return
        if 1 << first & cmask:
            if close(first, 1 << v, v, done, nonv, endm):
                finish((v, first), done)
        else:
            if g.adj[first] & nonv:
                return
            grow((v, first), 1 << v | 1 << first, done, nonv, endm)

    for f1 in bits(g.adj[v]):
        start(f1, [], 0, 0)
        if found:
            break
    result = found[0] if found else None
    if result is not None:
        assert result.validate(g, tuple(cycle))
    return result


# -- attachment classification ---------------------------------------------


@dataclass(frozen=True)
class AttachmentClass:
    """Shape of N(v) ∩ V(H): empty, one_vertex, one_edge or other."""

    tag: str
    witness: tuple[int, ...]

    def consistent(self, g: Graph) -> bool:
        w = self.witness
        return {
            "empty": len(w) == 0,
            "one_vertex": len(w) == 1,
            "one_edge": len(w) == 2 and g.has_edge(*w),
            "other": True,
        }.get(self.tag, False)


@dataclass(frozen=True)
class ComponentAttachmentClass:
    """Shape of N(comp) ∩ V(H): empty, clique, a1a2 (= {a,b_1,b_2}) or other."""

    tag: str
    witness: tuple[int, ...]

    def consistent(self, g: Graph, h: K12nEmbedding) -> bool:
        w = self.witness
        if self.tag == "empty":
            return len(w) == 0
        if self.tag == "clique":
            return all(g.has_edge(w[i], w[j])
                       for i in range(len(w)) for j in range(i + 1, len(w)))
        if self.tag == "a1a2":
            return set(w) == {h.a, *h.b}
        return self.tag == "other"


def classify_vertex_attachment(g: Graph, h: K12nEmbedding, v: int) -> AttachmentClass:
    hmask = h.vertex_mask()
    if not h.validate(g) or not 0 <= v < g.n or hmask >> v & 1:
        raise ValueError("need a valid embedding and an outside vertex")
    att = tuple(bits(g.adj[v] & hmask))
    if len(att) == 0:
        return AttachmentClass("empty", att)
    if len(att) == 1:
        return AttachmentClass("one_vertex", att)
    if len(att) == 2 and g.has_edge(*att):
        return AttachmentClass("one_edge", att)
    return AttachmentClass("other", att)


def classify_component_attachment(
    g: Graph, h: K12nEmbedding, comp: int
) -> ComponentAttachmentClass:
    hmask = h.vertex_mask()
    if not h.validate(g) or h.n < 3:
        raise ValueError("need a valid embedding with n >= 3")
    if comp not in components(g, g.vertex_mask & ~hmask):
        raise ValueError("comp is not a component of g - V(H)")
    am = 0
    for u in bits(comp):
        am |= g.adj[u]
    att = tuple(bits(am & hmask))
    if not att:
        return ComponentAttachmentClass("empty", att)
    if all(g.has_edge(att[i], att[j])
           for i in range(len(att)) for j in range(i + 1, len(att))):
        return ComponentAttachmentClass("clique", att)
    if set(att) == {h.a, *h.b}:
        return ComponentAttachmentClass("a1a2", att)
    return ComponentAttachmentClass("other", att)


# -- whole-graph lemma verification ----------------------------------------


def iter_induced_cycles(g: Graph) -> Iterator[tuple[int, ...]]:
    """Every induced cycle once, anchored at its least vertex, second vertex
    smaller than the last (fixes traversal direction)."""

    def extend(path: list[int], pmask: int) -> Iterator[tuple[int, ...]]:
        s, last = path[0], path[-1]
        for w in bits(g.adj[last]):
            if w <= s or pmask >> w & 1:
                continue
            inter = g.adj[w] & pmask
            if len(path) == 1:
                yield from extend(path + [w], pmask | 1 << w)
            elif inter == 1 << last:
                yield from extend(path + [w], pmask | 1 << w)
            elif inter == (1 << last | 1 << s) and path[1] < w:
                yield tuple(path) + (w,)

    for s in range(g.n):
        yield from extend([s], 1 << s)


@dataclass
class LemmaReport:
    lemma: str
    hypothesis_satisfied: bool
    conclusion_holds: Optional[bool] = None
    counterwitness: Optional[dict] = None
    budget_exceeded: bool = False
    checked: int = 0

    def consistent(self) -> bool:
        has_cw = self.counterwitness is not None
        return has_cw == (self.hypothesis_satisfied and self.conclusion_holds is False)


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.left = limit
        self.spent = 0

    def take(self) -> bool:
        if self.left is not None and self.left <= 0:
            return False
        if self.left is not None:
            self.left -= 1
        self.spent += 1
        return True


def check_lemma(g: Graph, lemma_id: str, budget: Optional[int] = None) -> LemmaReport:
    """Test one lemma's conclusion over all its instances in g.

    budget caps the number of checked instances (cycles and (cycle, vertex)
    pairs for L-LINK, (embedding, vertex/component) pairs otherwise); running
    out yields an explicit budget_exceeded report, never a silent pass.
    """
    if lemma_id == "L-LINK":
        return _check_link(g, _Budget(budget))
    if lemma_id == "L-VOH":
        return _check_voh(g, _Budget(budget))
    if lemma_id == "L-COMP":
        return _check_comp(g, _Budget(budget))
    raise ValueError(f"unknown lemma id {lemma_id!r}")


def _report(lemma, hyp, budget, holds=None, cw=None) -> LemmaReport:
    return LemmaReport(lemma, hyp, holds, cw,
                       budget_exceeded=holds is None and hyp, checked=budget.spent)


def _check_link(g: Graph, budget: _Budget) -> LemmaReport:
    if contains_isk4(g) is not None:
        return LemmaReport("L-LINK", False, checked=budget.spent)
    for cycle in iter_induced_cycles(g):
        if not budget.take():
            return _report("L-LINK", True, budget)
        cmask = mask_of(cycle)
        for v in bits(g.vertex_mask & ~cmask):
            if not budget.take():
                return _report("L-LINK", True, budget)
            w = is_linked(g, cycle, v)
            if w is not None:
                return _report("L-LINK", True, budget, holds=False,
                               cw={"cycle": cycle, "vertex": v, "paths": w.paths})
    return _report("L-LINK", True, budget, holds=True)


def _k12n_free_hypothesis(g: Graph, with_prism: bool) -> bool:
    if contains_isk4(g) is not None:
        return False
    if contains_fixed(g, "K33") is not None or contains_fixed(g, "K222") is not None:
        return False
    return not (with_prism and contains_fixed(g, "prism") is not None)


def _check_voh(g: Graph, budget: _Budget) -> LemmaReport:
    embs = list(iter_maximal_k12n(g, 2)) if _k12n_free_hypothesis(g, False) else []
    if not embs:
        return LemmaReport("L-VOH", False, checked=budget.spent)
    for h in embs:
        hmask = h.vertex_mask()
        for v in bits(g.vertex_mask & ~hmask):
            if not budget.take():
                return _report("L-VOH", True, budget)
            att = classify_vertex_attachment(g, h, v)
            if att.tag == "other":
                return _report("L-VOH", True, budget, holds=False,
                               cw={"embedding": (h.a, h.b, h.c), "vertex": v,
                                   "attachment": att.witness})
    return _report("L-VOH", True, budget, holds=True)


def _check_comp(g: Graph, budget: _Budget) -> LemmaReport:
    embs = []
    if _k12n_free_hypothesis(g, True):
        embs = [h for h in iter_maximal_k12n(g, 3)
                if h.vertex_mask() != g.vertex_mask]
    if not embs:
        return LemmaReport("L-COMP", False, checked=budget.spent)
    for h in embs:
        hmask = h.vertex_mask()
        for comp in components(g, g.vertex_mask & ~hmask):
            if not budget.take():
                return _report("L-COMP", True, budget)
            att = classify_component_attachment(g, h, comp)
            if att.tag == "other":
                return _report("L-COMP", True, budget, holds=False,
                               cw={"embedding": (h.a, h.b, h.c),
                                   "component": tuple(bits(comp)),
                                   "attachment": att.witness})
    return _report("L-COMP", True, budget, holds=True)
