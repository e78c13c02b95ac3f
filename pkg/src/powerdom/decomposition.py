"""Cut vertices, biconnected components, pendant paths, graph classes.

The cut-vertex taxonomy splits the cut vertices of a connected non-path
graph into three classes by the number of components their removal leaves
and by the number of pendant paths attached to them:

* class r1: removal leaves 2 components and one attached pendant path,
* class r2: removal leaves 2 components and no pendant path,
* class r3: removal leaves 3 or more components.

The union r2 | r3 is the mandatory set: it is contained in every connected
power dominating set, which is what makes the fast solvers work.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DisconnectedError, GraphError
from .graphs import Graph, bits_of


@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected components of a connected graph.

    ``blocks`` holds each component as a sorted vertex tuple; every edge of
    the graph lies in exactly one block, and two blocks share at most one
    vertex, necessarily a cut vertex. ``block_tree`` is the bipartite
    incidence between block indices and cut vertices. ``trivial`` flags
    blocks that are single edges lying on a pendant path (including the
    edge that joins the path to its attachment vertex).
    """

    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: tuple[int, ...]
    block_tree: tuple[tuple[int, int], ...]
    trivial: tuple[bool, ...]

    def blocks_containing(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.blocks) if v in b)


@dataclass(frozen=True)
class CutVertexTaxonomy:
    """Cut-vertex classes plus the pendant-path inventory.

    ``pendant_paths`` lists (attachment vertex, chain) pairs with the chain
    ordered base first, leaf last. ``pendant_count`` follows the usual
    convention: for an attachment vertex it counts attached pendant paths,
    and a cut vertex lying inside a pendant path gets count 1.
    """

    r1: tuple[int, ...]
    r2: tuple[int, ...]
    r3: tuple[int, ...]
    mandatory: tuple[int, ...]
    pendant_paths: tuple[tuple[int, tuple[int, ...]], ...]
    pendant_count: tuple[int, ...]

    @property
    def mandatory_mask(self) -> int:
        return bits_of(self.mandatory)

    @property
    def pendant_vertex_mask(self) -> int:
        mask = 0
        for _, chain in self.pendant_paths:
            mask |= bits_of(chain)
        return mask


@dataclass(frozen=True)
class GraphClass:
    """Multi-flag recognition result; path implies tree, tree implies both
    block_graph and cactus."""

    path: bool
    cycle: bool
    tree: bool
    block_graph: bool
    cactus: bool

    @property
    def general(self) -> bool:
        return not (self.block_graph or self.cactus)


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedError("operation requires a connected graph")


def is_path_graph(g: Graph) -> bool:
    """True for P_n (including the one- and two-vertex cases)."""
    if not g.is_connected():
        return False
    if g.n == 1:
        return True
    return g.m == g.n - 1 and max(g.degree(v) for v in range(g.n)) <= 2


def pendant_path_inventory(g: Graph) -> tuple[tuple[tuple[int, tuple[int, ...]], ...], tuple[int, ...]]:
    """All pendant paths of a connected graph plus per-vertex counts.

    A pendant path is a maximal chain of degree-<=2 vertices ending in a
    leaf and hanging from a vertex of degree >= 3 by a single edge. Path
    graphs have none by convention.
    """
    if is_path_graph(g):
        return (), tuple(0 for _ in range(g.n))
    paths: list[tuple[int, tuple[int, ...]]] = []
    count = [0] * g.n
    on_chain = [False] * g.n
    for leaf in range(g.n):
        if g.degree(leaf) != 1:
            continue
        chain = [leaf]
        prev, cur = leaf, g.adj[leaf][0]
        while g.degree(cur) == 2:
            chain.append(cur)
            a, b = g.adj[cur]
            prev, cur = cur, (b if a == prev else a)
        # cur has degree >= 3: attachment vertex; chain runs leaf -> base
        chain.reverse()
        paths.append((cur, tuple(chain)))
        count[cur] += 1
        for v in chain:
            on_chain[v] = True
    for v in range(g.n):
        # interior chain vertices are cut vertices lying on a pendant path
        if on_chain[v] and g.degree(v) == 2:
            count[v] = 1
    paths.sort(key=lambda p: (p[0], p[1][0]))
    return tuple(paths), tuple(count)


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components and cut vertices (linear-time DFS)."""
    _require_connected(g)
    if g.n == 1:
        return BlockDecomposition((), (), (), ())
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    edge_stack: list[tuple[int, int]] = []
    block_sets: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    root = 0
    counter = 0
    disc[root] = low[root] = counter
    counter += 1
    root_children = 0
    stack: list[list[int]] = [[root, 0]]
    while stack:
        v, i = stack[-1]
        if i < len(g.adj[v]):
            stack[-1][1] += 1
            w = g.adj[v][i]
            if disc[w] == -1:
                parent[w] = v
                disc[w] = low[w] = counter
                counter += 1
                if v == root:
                    root_children += 1
                edge_stack.append((v, w))
                stack.append([w, 0])
            elif w != parent[v] and disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        else:
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                members: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    members.add(a)
                    members.add(b)
                    if (a, b) == (u, v):
                        break
                block_sets.append(tuple(sorted(members)))
                if u != root:
                    cuts.add(u)
    if root_children > 1:
        cuts.add(root)
    block_sets.sort()
    cut_tuple = tuple(sorted(cuts))
    tree = tuple(
        (i, v) for i, blk in enumerate(block_sets) for v in blk if v in cuts
    )
    pendant_paths, _ = pendant_path_inventory(g)
    chain_mask = 0
    for _, chain in pendant_paths:
        chain_mask |= bits_of(chain)
    trivial = tuple(
        len(blk) == 2 and bool(chain_mask & bits_of(blk)) for blk in block_sets
    )
    return BlockDecomposition(tuple(block_sets), cut_tuple, tree, trivial)


def classify_cut_vertices(g: Graph, decomposition: BlockDecomposition | None = None) -> CutVertexTaxonomy:
    """Partition the cut vertices into the r1/r2/r3 classes.

    For a path graph every field is empty by convention. Removal component
    counts come from block membership: deleting a cut vertex leaves one
    component per block containing it.
    """
    _require_connected(g)
    pendant_paths, counts = pendant_path_inventory(g)
    if is_path_graph(g):
        return CutVertexTaxonomy((), (), (), (), (), tuple(counts))
    dec = decomposition if decomposition is not None else blocks(g)
    membership = [0] * g.n
    for blk in dec.blocks:
        for v in blk:
            membership[v] += 1
    r1, r2, r3 = [], [], []
    for v in dec.cut_vertices:
        pieces = membership[v]
        if pieces >= 3:
            r3.append(v)
        elif counts[v] >= 1:
            r1.append(v)
        else:
            r2.append(v)
    mandatory = tuple(sorted(r2 + r3))
    return CutVertexTaxonomy(
        tuple(r1), tuple(r2), tuple(r3), mandatory, pendant_paths, tuple(counts)
    )


def recognize(g: Graph, decomposition: BlockDecomposition | None = None) -> GraphClass:
    """Classify ``g`` as path / cycle / tree / block graph / cactus."""
    _require_connected(g)
    path = is_path_graph(g)
    cycle = g.n >= 3 and g.m == g.n and all(g.degree(v) == 2 for v in range(g.n))
    tree = g.m == g.n - 1
    dec = decomposition if decomposition is not None else blocks(g)
    block_graph = True
    cactus = True
    for blk in dec.blocks:
        k = len(blk)
        inner = sum(1 for u in blk for w in g.adj[u] if w in set(blk)) // 2
        if inner != k * (k - 1) // 2:
            block_graph = False
        if k > 2 and inner != k:
            cactus = False
    return GraphClass(path=path, cycle=cycle, tree=tree, block_graph=block_graph, cactus=cactus)


def cycle_order(g: Graph, block: tuple[int, ...]) -> tuple[int, ...]:
    """Vertices of a cycle block in traversal order.

    The walk starts at the smallest-index vertex and moves toward its
    smaller-index neighbor inside the block, which fixes a deterministic
    orientation for segment scans.
    """
    members = set(block)
    if len(members) < 3:
        raise GraphError("cycle block needs at least three vertices")
    start = min(members)
    in_block = [w for w in g.adj[start] if w in members]
    if len(in_block) != 2:
        raise GraphError("block is not a cycle")
    order = [start, min(in_block)]
    while len(order) < len(members):
        prev, cur = order[-2], order[-1]
        nxt = [w for w in g.adj[cur] if w in members and w != prev]
        if len(nxt) != 1:
            raise GraphError("block is not a cycle")
        order.append(nxt[0])
    if not g.has_edge(order[-1], start):
        raise GraphError("block is not a cycle")
    return tuple(order)
