"""Immutable simple undirected graphs over dense integer vertex ids.

Vertices are indexed 0..n-1 and carry an external string label. Neighbor
lists are kept sorted and mirrored as bitmasks so that set-heavy algorithms
(propagation, subset enumeration) run on plain integers.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import GraphError


def bits_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitmask."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def fresh_label(existing: Iterable[str], stem: str) -> str:
    """Return ``stem``, suffixed with underscores until it is unused."""
    taken = set(existing)
    label = stem
    while label in taken:
        label += "_"
    return label


class Graph:
    """Simple undirected graph. Instances are never mutated after __init__."""

    __slots__ = ("n", "labels", "adj", "nbr_bits", "_index")

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int]]):
        labels = tuple(labels)
        n = len(labels)
        if n == 0:
            raise GraphError("graph must have at least one vertex")
        index: dict[str, int] = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise GraphError(f"duplicate vertex label {lab!r}")
            index[lab] = i
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue  # loops dropped
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        self.n = n
        self.labels = labels
        self.adj = tuple(tuple(sorted(s)) for s in neighbor_sets)
        self.nbr_bits = tuple(bits_of(s) for s in neighbor_sets)
        self._index = index

    @classmethod
    def from_labeled_edges(
        cls,
        pairs: Iterable[tuple[str, str]],
        isolated: Iterable[str] = (),
    ) -> "Graph":
        """Build a graph from label pairs; indices follow first appearance."""
        labels: list[str] = []
        index: dict[str, int] = {}

        def vid(lab: str) -> int:
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
            return index[lab]

        edges = [(vid(a), vid(b)) for a, b in pairs]
        for lab in isolated:
            vid(lab)
        return cls(labels, edges)

    # -- basic accessors ------------------------------------------------

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr_bits[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def label(self, v: int) -> str:
        return self.labels[v]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def labels_of(self, vertices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[v] for v in vertices)

    def indices_of(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index(lab) for lab in labels)

    # -- connectivity ----------------------------------------------------

    def reach_mask(self, start: int, within: int | None = None) -> int:
        """Bitmask of vertices reachable from ``start`` inside ``within``."""
        allowed = self.full_mask if within is None else within
        if not (allowed >> start) & 1:
            return 0
        reach = 1 << start
        frontier = reach
        while frontier:
            grown = 0
            for v in iter_bits(frontier):
                grown |= self.nbr_bits[v]
            frontier = grown & allowed & ~reach
            reach |= frontier
        return reach

    def is_connected(self) -> bool:
        return self.reach_mask(0) == self.full_mask

    def is_connected_mask(self, mask: int) -> bool:
        """True iff ``mask`` is nonempty and induces a connected subgraph."""
        if mask == 0:
            return False
        start = (mask & -mask).bit_length() - 1
        return self.reach_mask(start, within=mask) == mask

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``within``."""
        remaining = self.full_mask if within is None else within
        out = []
        while remaining:
            start = (remaining & -remaining).bit_length() - 1
            comp = self.reach_mask(start, within=remaining)
            out.append(comp)
            remaining &= ~comp
        return out

    def components(self) -> list[list[int]]:
        return [list(iter_bits(mask)) for mask in self.component_masks()]

    # -- derived graphs ---------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph plus the old-index -> new-index map."""
        keep = sorted(set(vertices))
        remap = {old: new for new, old in enumerate(keep)}
        labels = [self.labels[v] for v in keep]
        edges = [
            (remap[u], remap[v])
            for u in keep
            for v in self.adj[u]
            if v in remap and u < v
        ]
        return Graph(labels, edges), remap

    def delete_vertex(self, v: int) -> "Graph":
        if not 0 <= v < self.n:
            raise GraphError(f"no vertex {v}")
        if self.n == 1:
            raise GraphError("cannot delete the only vertex")
        sub, _ = self.induced_subgraph(u for u in range(self.n) if u != v)
        return sub

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"no edge ({u}, {v})")
        drop = {(u, v), (v, u)}
        edges = [e for e in self.edges() if e not in drop]
        return Graph(self.labels, edges)

    def contract_edge(self, u: int, v: int) -> "Graph":
        """Merge the endpoints of an edge; the smaller index keeps its label.

        Parallel edges created by the merge collapse and the loop is dropped,
        so the result is again simple.
        """
        if not self.has_edge(u, v):
            raise GraphError(f"no edge ({u}, {v})")
        keep, drop = min(u, v), max(u, v)
        remap = {}
        for w in range(self.n):
            if w != drop:
                remap[w] = w if w < drop else w - 1
        remap[drop] = remap[keep]
        labels = [self.labels[w] for w in range(self.n) if w != drop]
        edges = [(remap[a], remap[b]) for a, b in self.edges()]
        return Graph(labels, edges)

    def subdivide_edge(self, u: int, v: int) -> "Graph":
        """Replace edge uv by a path u-w-v through a new vertex w."""
        if not self.has_edge(u, v):
            raise GraphError(f"no edge ({u}, {v})")
        stem = f"sub_{self.labels[u]}_{self.labels[v]}"
        labels = list(self.labels) + [fresh_label(self.labels, stem)]
        w = self.n
        edges = [e for e in self.edges() if e != (min(u, v), max(u, v))]
        edges += [(u, w), (v, w)]
        return Graph(labels, edges)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.labels, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def attach_leaves(g: Graph, x: Iterable[int], r: int) -> Graph:
    """Attach ``r`` new degree-1 vertices to every vertex in ``x``.

    Leaf labels are generated deterministically from the host label.
    """
    if r < 1:
        raise GraphError("r must be at least 1")
    targets = sorted(set(x))
    for v in targets:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph")
    labels = list(g.labels)
    edges = list(g.edges())
    for v in targets:
        for j in range(1, r + 1):
            lab = fresh_label(labels, f"{g.labels[v]}_leaf{j}")
            labels.append(lab)
            edges.append((v, len(labels) - 1))
    return Graph(labels, edges)


def path_graph(n: int, prefix: str = "v") -> Graph:
    if n < 1:
        raise GraphError("path needs at least one vertex")
    return Graph([f"{prefix}{i + 1}" for i in range(n)], [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int, prefix: str = "v") -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least three vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph([f"{prefix}{i + 1}" for i in range(n)], edges)


def complete_graph(n: int, prefix: str = "v") -> Graph:
    if n < 1:
        raise GraphError("complete graph needs at least one vertex")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph([f"{prefix}{i + 1}" for i in range(n)], edges)
