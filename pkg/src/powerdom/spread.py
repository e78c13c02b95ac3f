"""How graph surgery moves the connected power domination number.

The spread of an operation is the before-minus-after difference of the
optimum (after-minus-before for subdivision, which can never lose). The
two generators build families where a single deletion, contraction, or
subdivision shifts the optimum by any requested amount.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import GraphError, SolverInternalError
from .exact import Budget, DEFAULT_BUDGET, SolveResult
from .graphs import Graph
from . import structural

DELETE_VERTEX = "delete_vertex"
DELETE_EDGE = "delete_edge"
CONTRACT_EDGE = "contract_edge"
SUBDIVIDE_EDGE = "subdivide_edge"

Solver = Callable[[Graph], SolveResult]


@dataclass(frozen=True)
class SpreadReport:
    """Certified before/after optima for one surgical operation.

    ``spread`` is before minus after except for subdivision, where it is
    the (provably nonnegative) increase after minus before.
    """

    operation: str
    target: tuple[str, ...]
    before: SolveResult
    after: SolveResult
    spread: int

    def summary(self) -> str:
        tgt = ",".join(self.target)
        return (
            f"{self.operation} {tgt}: before={self.before.optimum} "
            f"after={self.after.optimum} spread={self.spread}"
        )


def _default_solver(budget: Budget) -> Solver:
    return lambda h: structural.solve_cpds(h, "auto", budget)


def _resolve(g: Graph, solver: Solver | None, budget: Budget) -> Solver:
    return solver if solver is not None else _default_solver(budget)


def vertex_spread(g: Graph, v: int, solver: Solver | None = None,
                  budget: Budget = DEFAULT_BUDGET) -> SpreadReport:
    """Spread under deletion of a non-cut vertex."""
    if g.n < 2:
        raise GraphError("cannot delete the only vertex")
    from .decomposition import blocks

    if v in blocks(g).cut_vertices:
        raise GraphError(f"vertex {g.labels[v]} is a cut vertex; deletion disconnects")
    solve = _resolve(g, solver, budget)
    before = solve(g)
    after = solve(g.delete_vertex(v))
    return SpreadReport(DELETE_VERTEX, (g.labels[v],), before, after,
                        before.optimum - after.optimum)


def edge_spread(g: Graph, u: int, v: int, solver: Solver | None = None,
                budget: Budget = DEFAULT_BUDGET) -> SpreadReport:
    """Spread under deletion of a non-cut edge."""
    if not g.has_edge(u, v):
        raise GraphError("no such edge")
    removed = g.delete_edge(u, v)
    if not removed.is_connected():
        raise GraphError("edge is a cut edge; deletion disconnects")
    solve = _resolve(g, solver, budget)
    before = solve(g)
    after = solve(removed)
    return SpreadReport(DELETE_EDGE, (g.labels[u], g.labels[v]), before, after,
                        before.optimum - after.optimum)


def contract_edge_spread(g: Graph, u: int, v: int, solver: Solver | None = None,
                         budget: Budget = DEFAULT_BUDGET) -> SpreadReport:
    """Spread under contraction of an edge (result kept simple)."""
    solve = _resolve(g, solver, budget)
    before = solve(g)
    after = solve(g.contract_edge(u, v))
    return SpreadReport(CONTRACT_EDGE, (g.labels[u], g.labels[v]), before, after,
                        before.optimum - after.optimum)


def subdivide_edge_delta(g: Graph, u: int, v: int, solver: Solver | None = None,
                         budget: Budget = DEFAULT_BUDGET) -> SpreadReport:
    """Increase of the optimum when one edge is subdivided.

    Subdividing can never decrease the connected power domination number;
    a negative delta therefore means a solver bug and raises.
    """
    solve = _resolve(g, solver, budget)
    before = solve(g)
    after = solve(g.subdivide_edge(u, v))
    delta = after.optimum - before.optimum
    if delta < 0:
        raise SolverInternalError(
            f"subdivision lowered the optimum from {before.optimum} to {after.optimum}"
        )
    return SpreadReport(SUBDIVIDE_EDGE, (g.labels[u], g.labels[v]), before, after, delta)


def make_path_gadget(c: int) -> Graph:
    """Deletion gadget with tunable swing ``c``.

    A path a1..a{c+3} plus three extra vertices: b1 adjacent to a1 and a2,
    a chain b1-b2-b3, and b3 adjacent to a{c+2}. The whole graph needs one
    vertex; deleting b2 (or either of its incident edges near b1) exposes a
    long chain of mandatory vertices, raising the optimum to c + 1.
    """
    if c < 1:
        raise GraphError("c must be positive")
    n = c + 3
    labels = [f"a{i + 1}" for i in range(n)] + ["b1", "b2", "b3"]
    b1, b2, b3 = n, n + 1, n + 2
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(b1, 0), (b1, 1), (b1, b2), (b2, b3), (b3, n - 2)]
    return Graph(labels, edges)


def make_cycle_gadget(c: int) -> Graph:
    """Contraction/subdivision gadget with tunable swing ``c``.

    An odd cycle c1..c{2c+1} with two leaves t1, t2 on the vertex opposite
    the edge c1-c2, plus leaves t3 on c1 and t4 on c2. One vertex suffices,
    but subdividing or contracting c1-c2 moves the optimum to c + 1.
    """
    if c < 1:
        raise GraphError("c must be positive")
    size = 2 * c + 1
    far = c + 1  # index of the cycle vertex at maximum distance from c1-c2
    labels = [f"c{i + 1}" for i in range(size)] + ["t1", "t2", "t3", "t4"]
    t1, t2, t3, t4 = size, size + 1, size + 2, size + 3
    edges = [(i, (i + 1) % size) for i in range(size)]
    edges += [(far, t1), (far, t2), (0, t3), (1, t4)]
    return Graph(labels, edges)
