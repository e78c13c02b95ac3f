"""Fast solvers for structured graph classes and the cut-vertex split.

For trees and block graphs the mandatory set (plus a single vertex in the
degenerate cases) is already an optimal connected power dominating set.
For cactus graphs the optimum is the whole vertex set minus all pendant
paths and, per cycle, minus one largest excludable segment. For arbitrary
graphs with a cut vertex, the problem splits over the nontrivial blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from . import exact
from .decomposition import (
    BlockDecomposition,
    CutVertexTaxonomy,
    blocks,
    classify_cut_vertices,
    cycle_order,
    recognize,
)
from .errors import DecompositionError, GraphClassError, GraphError
from .exact import Budget, DEFAULT_BUDGET, SolveResult, certify
from .graphs import Graph, attach_leaves, bits_of


def tree_cpds(g: Graph) -> SolveResult:
    """Optimal connected power dominating set of a tree.

    Paths need a single vertex; any other tree has the mandatory set as its
    unique optimum.
    """
    info = recognize(g)
    if not info.tree:
        raise GraphClassError("input is not a tree")
    if info.path:
        return certify(g, (0,), exact.METHOD_TREE, connected=True)
    taxonomy = classify_cut_vertices(g)
    return certify(g, taxonomy.mandatory, exact.METHOD_TREE, connected=True)


def tree_pd_equals_cpd(g: Graph) -> bool:
    """Does the tree have equal power domination and connected power
    domination numbers?

    True exactly for paths and for trees in which every degree-2 vertex
    lies on a pendant path and every vertex of degree >= 3 has at least two
    pendant paths attached.
    """
    info = recognize(g)
    if not info.tree:
        raise GraphClassError("input is not a tree")
    if info.path:
        return True
    taxonomy = classify_cut_vertices(g)
    for v in range(g.n):
        d = g.degree(v)
        if d == 2 and taxonomy.pendant_count[v] != 1:
            return False
        if d >= 3 and taxonomy.pendant_count[v] < 2:
            return False
    return True


def block_graph_cpds(g: Graph) -> SolveResult:
    """Optimal connected power dominating set of a block graph."""
    dec = blocks(g)
    info = recognize(g, dec)
    if not info.block_graph:
        raise GraphClassError("input is not a block graph")
    taxonomy = classify_cut_vertices(g, dec)
    if taxonomy.mandatory:
        return certify(g, taxonomy.mandatory, exact.METHOD_BLOCK, connected=True)
    big = [blk for blk in dec.blocks if len(blk) >= 3]
    # no mandatory vertices: either a path, or one clique wearing pendant paths
    witness = (min(big[0]),) if big else (0,)
    return certify(g, witness, exact.METHOD_BLOCK, connected=True)


@dataclass(frozen=True)
class Segment:
    """Open run of consecutive cycle vertices between two anchor positions.

    ``interior`` lists the vertices strictly between ``start`` and ``end``
    in traversal order; a segment anchored at a single vertex covers the
    whole cycle except that vertex.
    """

    cycle: tuple[int, ...]
    start: int
    end: int
    interior: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.interior)

    @property
    def interior_mask(self) -> int:
        return bits_of(self.interior)


@dataclass(frozen=True)
class FeasibleSegmentFamily:
    """Maximal excludable segments of one cycle block, grouped by how many
    cut vertices they swallow (zero, one in class r1, or two adjacent in
    class r1)."""

    zero_cut: tuple[Segment, ...]
    one_cut: tuple[Segment, ...]
    two_cut: tuple[Segment, ...]
    max_size: int
    best: Segment

    def all_segments(self) -> tuple[Segment, ...]:
        return self.zero_cut + self.one_cut + self.two_cut


def _arc(cycle: Sequence[int], a: int, b: int) -> tuple[int, ...]:
    """Positions strictly between a and b walking forward; a == b wraps to
    everything except that position."""
    size = len(cycle)
    out = []
    i = (a + 1) % size
    while i != b:
        out.append(cycle[i])
        i = (i + 1) % size
    return tuple(out)


def feasible_segments(
    g: Graph, cycle: Sequence[int], taxonomy: CutVertexTaxonomy
) -> FeasibleSegmentFamily:
    """Candidate segment families for one cycle block with >= 1 cut vertex.

    Both traversal directions are scanned and duplicates (as vertex sets)
    merged, so the maximum does not depend on the stored orientation.
    """
    cycle = tuple(cycle)
    for i, v in enumerate(cycle):
        if not g.has_edge(v, cycle[(i + 1) % len(cycle)]):
            raise GraphError("vertex list is not a cycle in traversal order")
    cut_set = set(taxonomy.r1) | set(taxonomy.r2) | set(taxonomy.r3)
    r1_set = set(taxonomy.r1)
    families: list[dict[frozenset[int], Segment]] = [{}, {}, {}]
    for direction in (cycle, (cycle[0],) + tuple(reversed(cycle[1:]))):
        pos = [i for i, v in enumerate(direction) if v in cut_set]
        k = len(pos)
        if k == 0:
            raise GraphError("cycle block has no cut vertex")

        def anchor(i: int) -> int:
            return direction[pos[i % k]]

        def record(level: int, i: int, j: int) -> None:
            seg = Segment(
                cycle,
                anchor(i),
                anchor(j),
                _arc(direction, pos[i % k], pos[j % k]),
            )
            families[level].setdefault(frozenset(seg.interior), seg)

        for i in range(k):
            record(0, i, i + 1)
        if k >= 2:
            for i in range(k):
                if anchor(i + 1) in r1_set:
                    record(1, i, i + 2)
        if k >= 3:
            size = len(direction)
            for i in range(k):
                first, second = anchor(i + 1), anchor(i + 2)
                adjacent = (pos[(i + 1) % k] + 1) % size == pos[(i + 2) % k]
                if first in r1_set and second in r1_set and adjacent:
                    record(2, i, i + 3)
    groups = tuple(
        tuple(sorted(fam.values(), key=lambda s: s.interior))
        for fam in families
    )
    every = [seg for fam in groups for seg in fam]
    max_size = max(seg.size for seg in every)
    # among maximum segments prefer the one avoiding small vertex ids,
    # which lexicographically minimizes the complementary solution set
    best = max(
        (seg for seg in every if seg.size == max_size),
        key=lambda s: tuple(sorted(s.interior)),
    )
    return FeasibleSegmentFamily(groups[0], groups[1], groups[2], max_size, best)


def cactus_cpds(g: Graph) -> SolveResult:
    """Optimal connected power dominating set of a cactus graph.

    Keep every vertex except the pendant paths and, in each cycle, one
    largest excludable segment; pure paths and pure cycles need just one
    vertex.
    """
    dec = blocks(g)
    info = recognize(g, dec)
    if not info.cactus:
        raise GraphClassError("input is not a cactus graph")
    if info.path or info.cycle:
        return certify(g, (0,), exact.METHOD_CACTUS, connected=True)
    taxonomy = classify_cut_vertices(g, dec)
    excluded = taxonomy.pendant_vertex_mask
    for blk in dec.blocks:
        if len(blk) < 3:
            continue
        family = feasible_segments(g, cycle_order(g, blk), taxonomy)
        excluded |= family.best.interior_mask
    witness = tuple(v for v in range(g.n) if not (excluded >> v) & 1)
    return certify(g, witness, exact.METHOD_CACTUS, connected=True)


SubSolver = Callable[[Graph], SolveResult]


def _auto_subsolver(budget: Budget) -> SubSolver:
    def solve(sub: Graph) -> SolveResult:
        info = recognize(sub)
        if info.tree:
            return tree_cpds(sub)
        if info.block_graph:
            return block_graph_cpds(sub)
        if info.cactus:
            return cactus_cpds(sub)
        return exact.min_cpds(sub, budget)

    return solve


def nontrivial_block_subgraphs(
    g: Graph,
    dec: BlockDecomposition | None = None,
    taxonomy: CutVertexTaxonomy | None = None,
) -> list[tuple[tuple[int, ...], Graph, dict[int, int]]]:
    """Materialize each nontrivial block together with the pendant paths
    attached to its vertices. Returns (core vertices, subgraph, index map)."""
    dec = dec if dec is not None else blocks(g)
    taxonomy = taxonomy if taxonomy is not None else classify_cut_vertices(g, dec)
    attached: dict[int, list[tuple[int, ...]]] = {}
    for attach, chain in taxonomy.pendant_paths:
        attached.setdefault(attach, []).append(chain)
    out = []
    for blk, trivial in zip(dec.blocks, dec.trivial):
        if trivial:
            continue
        verts = set(blk)
        for v in blk:
            for chain in attached.get(v, ()):
                verts.update(chain)
        sub, remap = g.induced_subgraph(verts)
        out.append((blk, sub, remap))
    return out


def decompose_cpds(
    g: Graph,
    subsolver: SubSolver | None = None,
    budget: Budget = DEFAULT_BUDGET,
) -> SolveResult:
    """Split the problem over nontrivial blocks and recombine.

    Each nontrivial block (with its pendant paths) is solved subject to the
    mandatory vertices it contains, the witnesses are unioned, and the
    double-counted mandatory vertices are discounted. The recombined witness
    is re-certified; an inconsistent recombination raises instead of
    returning a wrong answer.
    """
    if not g.is_connected():
        raise GraphClassError("decomposition requires a connected graph")
    dec = blocks(g)
    if not dec.cut_vertices:
        raise GraphClassError("decomposition requires at least one cut vertex")
    taxonomy = classify_cut_vertices(g, dec)
    info = recognize(g, dec)
    if info.path:
        raise GraphClassError("decomposition does not apply to paths")
    solve = subsolver if subsolver is not None else _auto_subsolver(budget)
    mandatory = set(taxonomy.mandatory)
    membership = {v: 0 for v in mandatory}
    total = 0
    union: set[int] = set()
    for blk, sub, remap in nontrivial_block_subgraphs(g, dec, taxonomy):
        anchors = [remap[v] for v in blk if v in mandatory]
        for v in blk:
            if v in mandatory:
                membership[v] += 1
        expanded = attach_leaves(sub, anchors, 3)
        result = solve(expanded)
        if any(v >= sub.n for v in result.witness):
            raise DecompositionError("block solution uses an added leaf")
        back = {new: old for old, new in remap.items()}
        union.update(back[v] for v in result.witness)
        total += result.optimum
    overlap = sum(membership[v] - 1 for v in mandatory)
    optimum = total - overlap
    # vertices of the mandatory set lying in no nontrivial block occur only
    # when the whole graph is one hub with pendant paths; the hub itself is
    # then the solution piece the block sum cannot see
    union.update(v for v in mandatory if membership[v] == 0)
    if len(union) != optimum:
        raise DecompositionError(
            f"recombined witness has {len(union)} vertices, formula says {optimum}"
        )
    result = certify(g, union, exact.METHOD_DECOMPOSITION, connected=True)
    return result


def solve_cpds(g: Graph, method: str = "auto", budget: Budget = DEFAULT_BUDGET) -> SolveResult:
    """Dispatch to the strongest applicable solver.

    ``auto`` tries tree, block graph, cactus, then the cut-vertex
    decomposition, and falls back to plain enumeration on biconnected
    general graphs.
    """
    if method == "tree":
        return tree_cpds(g)
    if method == "block":
        return block_graph_cpds(g)
    if method == "cactus":
        return cactus_cpds(g)
    if method == "decompose":
        return decompose_cpds(g, budget=budget)
    if method == "brute":
        return exact.min_cpds(g, budget)
    if method != "auto":
        raise GraphError(f"unknown method {method!r}")
    dec = blocks(g)
    info = recognize(g, dec)
    if info.tree:
        return tree_cpds(g)
    if info.block_graph:
        return block_graph_cpds(g)
    if info.cactus:
        return cactus_cpds(g)
    if dec.cut_vertices:
        return decompose_cpds(g, budget=budget)
    return exact.min_cpds(g, budget)
