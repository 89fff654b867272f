"""Deterministic shortest-path machinery over composition graphs.

Costs are (observable length, transition count) pairs added componentwise and
compared lexicographically, so a minimal path is shortest by observable steps
first and by transition count second. Ties between equally cheap paths are
broken by natural state-name order, which pins witness extraction to a single
reproducible answer.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .automaton import Run, natural_key
from .composition import CcAutomaton, CcState, CcTransition

Cost = tuple[int, int]


def _edge_cost(observable: bool) -> Cost:
    return (1, 1) if observable else (0, 1)


def cc_observable_costs(
    cc: CcAutomaton,
    sources: Iterable[CcState],
    *,
    uncontrollable_only: bool = False,
    backward: bool = False,
) -> dict[CcState, Cost]:
    """Minimal (observable, total) costs from ``sources`` to every reachable state.

    ``backward`` measures cost of paths INTO the sources instead. With
    ``uncontrollable_only`` the walk may only use transitions whose left event
    is uncontrollable.
    """
    dist: dict[CcState, Cost] = {}
    heap: list[tuple[Cost, tuple, CcState]] = []
    for s in sources:
        if s in cc.states and s not in dist:
            dist[s] = (0, 0)
            heapq.heappush(heap, ((0, 0), s.sort_key(), s))
    adjacency = cc.by_target if backward else cc.by_source
    while heap:
        cost, _, here = heapq.heappop(heap)
        if cost > dist.get(here, cost):
            continue
        for first, second in adjacency.get(here, ()):
            event = second if backward else first
            nxt = first if backward else second
            if uncontrollable_only and cc.left.is_controllable(event.left_event):
                continue
            step = _edge_cost(event.observable)
            nc = (cost[0] + step[0], cost[1] + step[1])
            if nxt not in dist or nc < dist[nxt]:
                dist[nxt] = nc
                heapq.heappush(heap, (nc, nxt.sort_key(), nxt))
    return dist


@dataclass(frozen=True)
class CcPath:
    """A concrete path through a composition, kept structured so that both the
    composition-level run and its left projection can be produced without
    parsing state names."""

    start: CcState
    edges: tuple[CcTransition, ...]

    @property
    def end(self) -> CcState:
        return self.edges[-1][2] if self.edges else self.start

    def observable_length(self) -> int:
        return sum(1 for _, event, _ in self.edges if event.observable)

    def to_run(self) -> Run:
        return Run(
            start=self.start.name,
            steps=tuple((event.name, dst.name) for _, event, dst in self.edges),
        )

    def to_left_run(self) -> Run:
        return Run(
            start=self.start.left,
            steps=tuple((event.left_event, dst.left) for _, event, dst in self.edges),
        )


def cc_shortest_path(
    cc: CcAutomaton,
    sources: Iterable[CcState],
    targets: Iterable[CcState],
    *,
    uncontrollable_only: bool = False,
) -> CcPath | None:
    """The canonical cheapest path from ``sources`` to any of ``targets``.

    Returns None when no target is reachable (under the transition filter).
    An empty path is returned when a source is itself a target.
    """
    targets = set(targets)
    dist: dict[CcState, Cost] = {}
    parent: dict[CcState, tuple[tuple, CcTransition] | None] = {}
    heap: list[tuple[Cost, tuple, CcState]] = []
    for s in sorted(set(sources), key=CcState.sort_key):
        if s in cc.states:
            dist[s] = (0, 0)
            parent[s] = None
            heapq.heappush(heap, ((0, 0), s.sort_key(), s))
    while heap:
        cost, _, here = heapq.heappop(heap)
        if cost > dist.get(here, cost):
            continue
        for event, nxt in cc.by_source.get(here, ()):
            if uncontrollable_only and cc.left.is_controllable(event.left_event):
                continue
            step = _edge_cost(event.observable)
            nc = (cost[0] + step[0], cost[1] + step[1])
            tie = (here.sort_key(), natural_key(event.name))
            if nxt not in dist or nc < dist[nxt]:
                dist[nxt] = nc
                parent[nxt] = (tie, (here, event, nxt))
                heapq.heappush(heap, (nc, nxt.sort_key(), nxt))
            elif nc == dist[nxt] and parent.get(nxt) is not None:
                if tie < parent[nxt][0]:
                    parent[nxt] = (tie, (here, event, nxt))
    hit = [t for t in targets if t in dist]
    if not hit:
        return None
    goal = min(hit, key=lambda t: (dist[t], t.sort_key()))
    edges: list[CcTransition] = []
    here = goal
    while parent[here] is not None:
        edge = parent[here][1]
        edges.append(edge)
        here = edge[0]
    edges.reverse()
    return CcPath(start=here, edges=tuple(edges))
