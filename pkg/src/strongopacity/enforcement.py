"""Transition-disablement synthesis for the strong opacity notions.

The enforcement mechanism picks a set of controllable transitions to disable
before the system runs, cutting every leaking-secret run. Each round of the
fixpoint loop rebuilds the verification structures for the current subsystem,
collects the offending empty-estimate states, and either

* declares the problem impossible, when some offending state is reached by a
  run containing no controllable transition (for the K-step notion this means
  an uncontrollable leaking run whose matching predecessor states in the
  system/observer composition are themselves uncontrollably reachable), or
* disables the whole frontier of "last controllable transitions": every
  controllable transition from whose target an offending state is reachable
  using uncontrollable transitions only (within the remaining observable-step
  budget, for the K-step notion).

Disabling can turn previously matched runs into leaking ones, which is exactly
why the loop rebuilds and repeats; every round removes at least one
controllable transition, so it ends within |controllable transitions| rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .automaton import Nfa, Run, Transition, accessible_part, disable_transitions
from .composition import CcAutomaton, CcState, CcTransition, cc_dss, cc_full_observer, cc_hat
from .errors import InternalInvariantError, InvalidState
from .search import cc_observable_costs, cc_shortest_path
from .verification import INF_SSO, SCSO, SISO


@dataclass(frozen=True)
class Enforced:
    """A successful outcome: the cut set and the resulting subsystem."""

    disabled: frozenset[Transition]
    subsystem: Nfa


@dataclass(frozen=True)
class Impossible:
    """No cut works: ``witness`` is a leaking-secret run of the system whose
    events are all uncontrollable (for the K-step notion it already includes
    the predecessor segment that reaches the secret state)."""

    witness: Run


EnforcementOutcome = Union[Enforced, Impossible]


def last_controllable_frontier(
    cc: CcAutomaton,
    bad: Iterable[CcState],
    budget: int | None = None,
    sources: Iterable[CcState] | None = None,
) -> frozenset[CcTransition]:
    """Controllable transitions that end some offending run.

    A transition qualifies when its source is reachable from ``sources``
    (the initials by default) and some state of ``bad`` is reachable from its
    target through uncontrollable transitions only. With a ``budget``, the
    combined observable length (minimal distance to the source, plus the
    transition's own cost, plus the minimal uncontrollable distance onward)
    must not exceed it: that is exactly membership in some offending run of
    observable length within the budget.
    """
    bad = set(bad)
    for s in bad:
        if s not in cc.states:
            raise InvalidState(f"not a composition state: {s.name}")
    if not bad:
        return frozenset()
    src_costs = cc_observable_costs(cc, cc.initials if sources is None else sources)
    bad_costs = cc_observable_costs(cc, bad, uncontrollable_only=True, backward=True)
    frontier = set()
    for transition in cc.transitions:
        src, event, dst = transition
        if not cc.left.is_controllable(event.left_event):
            continue
        if src not in src_costs or dst not in bad_costs:
            continue
        if budget is not None:
            length = src_costs[src][0] + (1 if event.observable else 0) + bad_costs[dst][0]
            if length > budget:
                continue
        frontier.add(transition)
    return frozenset(frontier)


def _left_cut(frontier: Iterable[CcTransition], system: Nfa) -> frozenset[Transition]:
    cut = frozenset((src.left, event.left_event, dst.left) for src, event, dst in frontier)
    return cut & system.transitions


def enforce_k_sso(nfa: Nfa, k: int) -> EnforcementOutcome:
    """Disable controllable transitions until the system is strongly K-step
    opaque, or report that no cut can achieve it."""
    if k < 0:
        raise ValueError("K must be non-negative")
    current = accessible_part(nfa)
    disabled: set[Transition] = set()
    for _ in range(len(current.controllable_transitions) + 2):
        cc = cc_hat(current)
        forward = cc_observable_costs(cc, cc.initials)
        theta = {s for s in cc.empty_states if s in forward and forward[s][0] <= k}
        if not theta:
            return Enforced(frozenset(disabled), current)

        ccobs = cc_full_observer(current)
        # Initial pairs from which an offending state is reachable by a run
        # with no controllable transition and observable length within K.
        unc_back = cc_observable_costs(cc, theta, uncontrollable_only=True, backward=True)
        leaky = sorted(
            (i for i in cc.initials if i in unc_back and unc_back[i][0] <= k),
            key=CcState.sort_key,
        )
        marked: set[CcState] = set()
        for i in leaky:
            remainder = frozenset(i.right or ())
            marked |= {
                s
                for s in ccobs.states
                if s.left == i.left and frozenset(s.right) - current.secret == remainder
            }
        if leaky and not marked:
            raise InternalInvariantError("no predecessor states correspond to a leaking initial")
        if marked:
            prefix = cc_shortest_path(ccobs, ccobs.initials, marked, uncontrollable_only=True)
            if prefix is not None:
                end = prefix.end
                remainder = frozenset(end.right) - current.secret
                anchor = min(
                    (
                        i
                        for i in leaky
                        if i.left == end.left and frozenset(i.right or ()) == remainder
                    ),
                    key=CcState.sort_key,
                )
                suffix = cc_shortest_path(cc, [anchor], theta, uncontrollable_only=True)
                witness = Run(
                    start=prefix.to_left_run().start,
                    steps=prefix.to_left_run().steps + suffix.to_left_run().steps,
                )
                return Impossible(witness)

        frontier = last_controllable_frontier(cc, theta, budget=k)
        if marked:
            frontier |= last_controllable_frontier(ccobs, marked, budget=None)
        cut = _left_cut(frontier, current)
        if not cut:
            raise InternalInvariantError("enforcement round made no progress")
        disabled |= cut
        current = disable_transitions(current, cut)
    raise InternalInvariantError("enforcement loop exceeded its round bound")


def _enforce_dss(nfa: Nfa, notion: str) -> EnforcementOutcome:
    current = accessible_part(nfa)
    disabled: set[Transition] = set()
    for _ in range(len(current.controllable_transitions) + 2):
        cc = cc_dss(current)
        sources = cc.secret_initials if notion == SISO else cc.initials
        if notion == SCSO:
            bad = {s for s in cc.empty_states if s.left in current.secret}
        elif notion == SISO:
            reachable = cc_observable_costs(cc, sources)
            bad = {s for s in cc.empty_states if s in reachable}
        else:
            bad = set(cc.empty_states)
        if not bad:
            return Enforced(frozenset(disabled), current)
        offending = cc_shortest_path(cc, sources, bad, uncontrollable_only=True)
        if offending is not None:
            return Impossible(offending.to_left_run())
        omega = last_controllable_frontier(cc, bad, budget=None, sources=sources)
        cut = _left_cut(omega, current)
        if not cut:
            raise InternalInvariantError("enforcement round made no progress")
        disabled |= cut
        current = disable_transitions(current, cut)
    raise InternalInvariantError("enforcement loop exceeded its round bound")


def enforce_scso(nfa: Nfa) -> EnforcementOutcome:
    """Enforce strong current-state opacity by transition disablement."""
    return _enforce_dss(nfa, SCSO)


def enforce_siso(nfa: Nfa) -> EnforcementOutcome:
    """Enforce strong initial-state opacity by transition disablement."""
    return _enforce_dss(nfa, SISO)


def enforce_inf_sso(nfa: Nfa) -> EnforcementOutcome:
    """Enforce strong infinite-step opacity by transition disablement."""
    return _enforce_dss(nfa, INF_SSO)
