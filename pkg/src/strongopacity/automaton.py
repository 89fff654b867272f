"""Partially-observed, partially-controllable NFAs and their elementary operations.

States are opaque string tokens; the library never parses meaning out of them.
All values are immutable after construction and every operation is a pure
function of its inputs, so everything here is safe to share across threads.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InvalidEvent, InvalidState, UncontrollableCut

#: A transition triple (source state, event name, target state).
Transition = tuple[str, str, str]

_DIGIT_RUN = re.compile(r"(\d+)")


def natural_key(text: str) -> tuple:
    """Sort key that orders digit runs numerically ('2' before '10')."""
    return tuple(
        (0, int(part)) if part.isdigit() else (1, part)
        for part in _DIGIT_RUN.split(text)
        if part != ""
    )


def sort_states(states: Iterable[str]) -> list[str]:
    return sorted(states, key=natural_key)


@dataclass(frozen=True)
class Event:
    """A named event with its observability and controllability flags.

    The flags partition the alphabet: every event is exactly one of
    observable/unobservable and exactly one of controllable/uncontrollable.
    """

    name: str
    observable: bool = True
    controllable: bool = True


@dataclass(frozen=True)
class Run:
    """A chained sequence of steps ``start -(event)-> ... -(event)-> end``.

    ``steps`` holds (event name, target state) pairs; consecutive steps chain.
    """

    start: str
    steps: tuple[tuple[str, str], ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def end(self) -> str:
        return self.steps[-1][1] if self.steps else self.start

    def word(self) -> tuple[str, ...]:
        """The event-name sequence of the run."""
        return tuple(event for event, _ in self.steps)

    def states(self) -> tuple[str, ...]:
        """All visited states, start included."""
        return (self.start,) + tuple(target for _, target in self.steps)

    def transitions(self) -> tuple[Transition, ...]:
        out = []
        here = self.start
        for event, target in self.steps:
            out.append((here, event, target))
            here = target
        return tuple(out)


@dataclass(frozen=True)
class Nfa:
    """A nondeterministic finite automaton with secret states.

    ``transitions`` is a set of (source, event name, target) triples; duplicate
    triples in the input are deduplicated silently (set semantics). Empty-state
    automata are legal values: they arise when enforcement deletes everything
    reachable.
    """

    states: frozenset[str]
    alphabet: tuple[Event, ...]
    transitions: frozenset[Transition]
    initial: frozenset[str]
    secret: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "secret", frozenset(self.secret))
        alphabet = tuple(sorted(self.alphabet, key=lambda e: natural_key(e.name)))
        object.__setattr__(self, "alphabet", alphabet)
        names = [e.name for e in alphabet]
        if len(set(names)) != len(names):
            raise InvalidEvent("duplicate event name in alphabet")
        by_name = {e.name: e for e in alphabet}
        for src, event, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise InvalidState(f"transition endpoint outside state set: {(src, event, dst)}")
            if event not in by_name:
                raise InvalidEvent(f"transition uses undeclared event: {event!r}")
        for x in self.initial | self.secret:
            if x not in self.states:
                raise InvalidState(f"marked state outside state set: {x!r}")

    # -- lookups ------------------------------------------------------------

    @cached_property
    def events_by_name(self) -> dict[str, Event]:
        return {e.name: e for e in self.alphabet}

    def event(self, name: str) -> Event:
        try:
            return self.events_by_name[name]
        except KeyError:
            raise InvalidEvent(f"unknown event: {name!r}") from None

    def is_observable(self, name: str) -> bool:
        return self.event(name).observable

    def is_controllable(self, name: str) -> bool:
        return self.event(name).controllable

    @cached_property
    def observable_events(self) -> frozenset[str]:
        return frozenset(e.name for e in self.alphabet if e.observable)

    @cached_property
    def unobservable_events(self) -> frozenset[str]:
        return frozenset(e.name for e in self.alphabet if not e.observable)

    @cached_property
    def controllable_transitions(self) -> frozenset[Transition]:
        return frozenset(t for t in self.transitions if self.event(t[1]).controllable)

    @property
    def nonsecret(self) -> frozenset[str]:
        return self.states - self.secret

    @property
    def secret_initial(self) -> frozenset[str]:
        return self.initial & self.secret

    @property
    def nonsecret_initial(self) -> frozenset[str]:
        return self.initial - self.secret

    # Forward and backward indexes; enforcement walks the relation both ways.
    @cached_property
    def by_source(self) -> dict[str, tuple[tuple[str, str], ...]]:
        index: dict[str, list[tuple[str, str]]] = {x: [] for x in self.states}
        for src, event, dst in self.transitions:
            index[src].append((event, dst))
        return {
            x: tuple(sorted(pairs, key=lambda p: (natural_key(p[0]), natural_key(p[1]))))
            for x, pairs in index.items()
        }

    @cached_property
    def by_target(self) -> dict[str, tuple[tuple[str, str], ...]]:
        index: dict[str, list[tuple[str, str]]] = {x: [] for x in self.states}
        for src, event, dst in self.transitions:
            index[dst].append((src, event))
        return {
            x: tuple(sorted(pairs, key=lambda p: (natural_key(p[0]), natural_key(p[1]))))
            for x, pairs in index.items()
        }

    def successors(self, state: str, event: str) -> frozenset[str]:
        return frozenset(dst for ev, dst in self.by_source.get(state, ()) if ev == event)

    def has_run(self, run: Run) -> bool:
        """Whether ``run`` chains through actual transitions of this automaton."""
        if run.start not in self.states:
            return False
        return all(t in self.transitions for t in run.transitions())

    def replace(self, **changes) -> "Nfa":
        """A copy with the given fields swapped out (validated afresh)."""
        fields = {
            "states": self.states,
            "alphabet": self.alphabet,
            "transitions": self.transitions,
            "initial": self.initial,
            "secret": self.secret,
        }
        fields.update(changes)
        return Nfa(**fields)

    def sorted_states(self) -> list[str]:
        return sort_states(self.states)

    def sorted_transitions(self) -> list[Transition]:
        return sorted(
            self.transitions,
            key=lambda t: (natural_key(t[0]), natural_key(t[1]), natural_key(t[2])),
        )


def natural_projection(word: Iterable[str], alphabet: Iterable[Event]) -> tuple[str, ...]:
    """Erase unobservable events from ``word``, preserving order.

    Raises InvalidEvent if the word uses an event missing from ``alphabet``.
    """
    observable = {e.name: e.observable for e in alphabet}
    projected = []
    for name in word:
        try:
            if observable[name]:
                projected.append(name)
        except KeyError:
            raise InvalidEvent(f"unknown event: {name!r}") from None
    return tuple(projected)


def unobservable_reach(nfa: Nfa, sources: Iterable[str]) -> frozenset[str]:
    """Least fixed point of ``sources`` under unobservable transitions."""
    todo = deque()
    seen = set()
    for x in sources:
        if x not in nfa.states:
            raise InvalidState(f"not a state: {x!r}")
        if x not in seen:
            seen.add(x)
            todo.append(x)
    unobs = nfa.unobservable_events
    while todo:
        x = todo.popleft()
        for event, dst in nfa.by_source.get(x, ()):
            if event in unobs and dst not in seen:
                seen.add(dst)
                todo.append(dst)
    return frozenset(seen)


def _reachable(states: frozenset[str], transitions: Iterable[Transition], roots: Iterable[str]) -> frozenset[str]:
    adjacency: dict[str, list[str]] = {}
    for src, _, dst in transitions:
        adjacency.setdefault(src, []).append(dst)
    seen = set(r for r in roots if r in states)
    todo = deque(seen)
    while todo:
        x = todo.popleft()
        for dst in adjacency.get(x, ()):
            if dst not in seen:
                seen.add(dst)
                todo.append(dst)
    return frozenset(seen)


def accessible_part(nfa: Nfa) -> Nfa:
    """The sub-NFA induced by states reachable from the initial set."""
    alive = _reachable(nfa.states, nfa.transitions, nfa.initial)
    if alive == nfa.states:
        return nfa
    return Nfa(
        states=alive,
        alphabet=nfa.alphabet,
        transitions=frozenset(t for t in nfa.transitions if t[0] in alive and t[2] in alive),
        initial=nfa.initial & alive,
        secret=nfa.secret & alive,
    )


def disable_transitions(nfa: Nfa, cut: Iterable[Transition]) -> Nfa:
    """Remove ``cut`` from the transition relation and take the accessible part.

    Every transition in ``cut`` must exist and carry a controllable event; the
    input automaton is left unmodified.
    """
    cut = frozenset(cut)
    for t in cut:
        if t not in nfa.transitions:
            raise InvalidState(f"not a transition of the automaton: {t}")
        if not nfa.event(t[1]).controllable:
            raise UncontrollableCut(f"transition labeled by uncontrollable event: {t}")
    return accessible_part(nfa.replace(transitions=nfa.transitions - cut))
