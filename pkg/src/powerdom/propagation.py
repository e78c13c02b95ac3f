"""The color-change engine.

Two rules drive everything here. The domination step colors the closed
neighborhood of the chosen set. The forcing rule lets a colored vertex
with exactly one uncolored neighbor color that neighbor. A set is power
dominating when one domination step followed by exhaustive forcing colors
the whole graph; it is zero forcing when forcing alone suffices.

Forcing runs in synchronized rounds: every force eligible at the start of
a round fires in that round. That convention makes the propagation time of
a set well defined (round 1 is the domination step). Within a round, when
several vertices could force the same target, the trace credits the
smallest-index source, so traces are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotPowerDominatingError, PowerDomError
from .graphs import Graph, bits_of, iter_bits

DOMINATE = "dominate"
FORCE = "force"


@dataclass(frozen=True)
class Force:
    timestep: int
    source: int
    target: int
    kind: str


@dataclass(frozen=True)
class ColorState:
    """Colored-vertex bitmask together with the round that produced it."""

    colored: int
    timestep: int

    def vertices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.colored))


@dataclass(frozen=True)
class PropagationTrace:
    """Chronological record of one propagation run.

    Every target appears exactly once and never lies in the initial set;
    all domination entries carry timestep 1 and forces come strictly later
    (or from 1 upward when there was no domination step).
    """

    initial: tuple[int, ...]
    forces: tuple[Force, ...]
    final_colored: tuple[int, ...]

    @property
    def final_mask(self) -> int:
        return bits_of(self.final_colored)

    def rounds(self) -> int:
        """Last round that colored a vertex (at least 1)."""
        last = max((f.timestep for f in self.forces), default=1)
        return max(last, 1)


def _as_mask(g: Graph, s: Iterable[int] | int) -> int:
    if isinstance(s, int):
        if s < 0 or s >> g.n:
            raise PowerDomError("vertex mask out of range")
        return s
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise PowerDomError(f"vertex {v} not in graph")
        mask |= 1 << v
    return mask


def dominate_step(g: Graph, s: Iterable[int] | int) -> ColorState:
    """Apply the domination rule once: color the closed neighborhood of s."""
    mask = _as_mask(g, s)
    colored = mask
    for v in iter_bits(mask):
        colored |= g.nbr_bits[v]
    return ColorState(colored, 1)


def _closure(g: Graph, colored: int, start_time: int) -> tuple[int, list[Force]]:
    """Run synchronized forcing rounds until no force is possible."""
    full = g.full_mask
    nbr = g.nbr_bits
    forces: list[Force] = []
    t = start_time
    while colored != full:
        fired: dict[int, int] = {}
        for v in iter_bits(colored):
            uncolored = nbr[v] & ~colored
            if uncolored and uncolored & (uncolored - 1) == 0:
                tgt = uncolored.bit_length() - 1
                if tgt not in fired:
                    fired[tgt] = v
        if not fired:
            break
        for tgt in sorted(fired):
            forces.append(Force(t, fired[tgt], tgt, FORCE))
            colored |= 1 << tgt
        t += 1
    return colored, forces


def forcing_closure(
    g: Graph, colored: Iterable[int] | int, start_time: int = 1
) -> tuple[ColorState, tuple[Force, ...]]:
    """Close ``colored`` under the forcing rule; returns state and forces."""
    mask = _as_mask(g, colored)
    final, forces = _closure(g, mask, start_time)
    last = forces[-1].timestep if forces else start_time - 1
    return ColorState(final, max(last, start_time - 1)), tuple(forces)


def is_power_dominating(g: Graph, s: Iterable[int] | int) -> tuple[bool, PropagationTrace]:
    """Check rule 1 once plus rule 2 to exhaustion; the trace is always
    returned, on failure it records the partial run."""
    mask = _as_mask(g, s)
    entries: list[Force] = []
    colored = mask
    if mask:
        for v in iter_bits(mask):
            for w in g.adj[v]:
                if not (colored >> w) & 1:
                    entries.append(Force(1, v, w, DOMINATE))
                    colored |= 1 << w
    final, forces = _closure(g, colored, 2)
    entries.extend(forces)
    trace = PropagationTrace(
        tuple(iter_bits(mask)), tuple(entries), tuple(iter_bits(final))
    )
    return final == g.full_mask, trace


def is_zero_forcing(g: Graph, s: Iterable[int] | int) -> bool:
    """True iff forcing alone (no domination step) colors every vertex."""
    mask = _as_mask(g, s)
    final, _ = _closure(g, mask, 1)
    return final == g.full_mask


def colors_within(g: Graph, s: Iterable[int] | int, rounds: int) -> bool:
    """True iff s power dominates g in at most ``rounds`` rounds."""
    if rounds < 1:
        return False
    mask = _as_mask(g, s)
    if mask == 0:
        return False
    colored = dominate_step(g, mask).colored
    full = g.full_mask
    t = 1
    while colored != full and t < rounds:
        new = 0
        for v in iter_bits(colored):
            uncolored = g.nbr_bits[v] & ~colored
            if uncolored and uncolored & (uncolored - 1) == 0:
                new |= uncolored
        if not new:
            return False
        colored |= new
        t += 1
    return colored == full


def ppt_of_set(g: Graph, s: Iterable[int] | int) -> int:
    """Power propagation time of a power dominating set (rounds to color V)."""
    ok, trace = is_power_dominating(g, s)
    if not ok:
        raise NotPowerDominatingError("set does not power dominate the graph")
    return trace.rounds()


def is_connected_set(g: Graph, s: Iterable[int] | int) -> bool:
    """True iff s is nonempty and induces a connected subgraph."""
    mask = _as_mask(g, s)
    return g.is_connected_mask(mask)


def trace_lines(g: Graph, trace: PropagationTrace) -> list[str]:
    """Line-oriented serialization: ``t=<k> <src> -> <tgt> [kind]``."""
    return [
        f"t={f.timestep} {g.labels[f.source]} -> {g.labels[f.target]} [{f.kind}]"
        for f in trace.forces
    ]


def replay_trace(g: Graph, trace: PropagationTrace) -> int:
    """Re-run a trace step by step, validating every entry.

    Returns the final colored mask; raises PowerDomError on any entry that
    is not legal at its recorded timestep (synchronized semantics).
    """
    colored = bits_of(trace.initial)
    seen_targets: set[int] = set()
    by_time: dict[int, list[Force]] = {}
    for f in trace.forces:
        if f.target in seen_targets or (colored >> f.target) & 1:
            raise PowerDomError(f"target {f.target} colored twice")
        seen_targets.add(f.target)
        by_time.setdefault(f.timestep, []).append(f)
    for t in sorted(by_time):
        snapshot = colored
        for f in by_time[t]:
            if f.kind == DOMINATE:
                if t != 1 or not (bits_of(trace.initial) >> f.source) & 1:
                    raise PowerDomError("domination entry outside round 1")
                if not g.has_edge(f.source, f.target):
                    raise PowerDomError("domination along a non-edge")
            else:
                if not (snapshot >> f.source) & 1:
                    raise PowerDomError(f"source {f.source} not colored at t={t}")
                uncolored = g.nbr_bits[f.source] & ~snapshot
                if uncolored != 1 << f.target:
                    raise PowerDomError(
                        f"source {f.source} cannot force {f.target} at t={t}"
                    )
            colored |= 1 << f.target
    if colored != trace.final_mask:
        raise PowerDomError("replay does not reproduce the recorded final set")
    return colored
