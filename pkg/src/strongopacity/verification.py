"""Decision procedures for the strong state-based opacity notions.

The K-step check first runs the current-state pre-check on the observer (a
system that already reveals a secret at distance zero fails every K), then
looks for an empty-estimate state within K observable steps of the
secret-restart composition. K is capped by the structural bound
|X̂|·2^|X\\X_S| - 1 beforehand, so runtime never depends on the numeric K.

The current-/initial-/infinite-step checks all read the composition with the
deleted-secret-states observer: an empty-estimate state with a secret left
component, an empty-estimate state reachable from a secret initial pair, or
any empty-estimate state at all, respectively.

Negative verdicts carry one shortest leaking run (observable length first,
then transition count, ties by state-name order).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import Nfa, Run, accessible_part
from .composition import CcAutomaton, CcState, cc_dss, cc_hat
from .observer import EstimateClass, classify_estimates, estimate_name, subset_construction
from .search import cc_observable_costs, cc_shortest_path
from .subautomata import initial_secret_subautomaton

K_SSO = "k-sso"
CSO = "cso"
SCSO = "scso"
SISO = "siso"
INF_SSO = "inf-sso"

NOTIONS = (K_SSO, CSO, SCSO, SISO, INF_SSO)


@dataclass(frozen=True)
class Verdict:
    """An opacity answer, with a witness leaking run when negative."""

    opaque: bool
    notion: str
    k: int | None = None
    witness: Run | None = None

    def describe(self) -> str:
        label = f"{self.notion}(K={self.k})" if self.notion == K_SSO else self.notion
        return f"{label}: {'opaque' if self.opaque else 'not opaque'}"


def effective_k_bound(nfa: Nfa) -> int:
    """The step bound beyond which the K-step verdict can no longer change."""
    acc = accessible_part(nfa)
    ghat = initial_secret_subautomaton(acc)
    if not ghat.states:
        return 0
    return max(0, len(ghat.states) * 2 ** len(acc.states - acc.secret) - 1)


def observational_reach_within(cc: CcAutomaton, budget: int) -> dict[CcState, int]:
    """States within ``budget`` observable steps of the initials, with their
    minimal observable distance (unobservable transitions are free)."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    costs = cc_observable_costs(cc, cc.initials)
    return {s: c[0] for s, c in costs.items() if c[0] <= budget}


def _observer_witness(nfa: Nfa, offenders: list) -> Run:
    """Deterministic shortest observer path from the initial estimate to the
    nearest all-secret estimate."""
    obs = subset_construction(nfa)
    (start,) = obs.initials
    adjacency: dict = {}
    for q1, event, q2 in obs.sorted_edges():
        adjacency.setdefault(q1, []).append((event, q2))
    parent = {start: None}
    order = {start: 0}
    todo = deque([start])
    while todo:
        q = todo.popleft()
        for event, q2 in adjacency.get(q, ()):
            if q2 in parent:
                continue
            parent[q2] = (q, event)
            order[q2] = order[q] + 1
            todo.append(q2)
    reached = [q for q in offenders if q in parent]
    goal = min(reached, key=lambda q: (order[q], q))
    steps = []
    here = goal
    while parent[here] is not None:
        prev, event = parent[here]
        steps.append((event, estimate_name(here)))
        here = prev
    steps.reverse()
    return Run(start=estimate_name(start), steps=tuple(steps))


def verify_cso(nfa: Nfa) -> Verdict:
    """Current-state opacity: no reachable estimate may be entirely secret."""
    acc = accessible_part(nfa)
    if not acc.initial:
        return Verdict(True, CSO)
    obs = subset_construction(acc)
    classes = classify_estimates(obs, acc.secret)
    offenders = sorted(q for q, c in classes.items() if c is EstimateClass.SECRET)
    if not offenders:
        return Verdict(True, CSO)
    return Verdict(False, CSO, witness=_observer_witness(acc, offenders))


def verify_k_sso(nfa: Nfa, k: int) -> Verdict:
    """Strong K-step opacity of the system w.r.t. its secret states."""
    if k < 0:
        raise ValueError("K must be non-negative")
    acc = accessible_part(nfa)
    if not acc.initial:
        return Verdict(True, K_SSO, k)
    pre = verify_cso(acc)
    if not pre.opaque:
        return Verdict(False, K_SSO, k, witness=pre.witness)
    cc = cc_hat(acc)
    budget = min(k, effective_k_bound(acc))
    reach = observational_reach_within(cc, budget)
    bad = [s for s in reach if s.is_empty]
    if not bad:
        return Verdict(True, K_SSO, k)
    path = cc_shortest_path(cc, cc.initials, bad)
    return Verdict(False, K_SSO, k, witness=path.to_run())


def _dss_verdict(nfa: Nfa, notion: str) -> Verdict:
    acc = accessible_part(nfa)
    if not acc.initial:
        return Verdict(True, notion)
    cc = cc_dss(acc)
    sources = cc.secret_initials if notion == SISO else cc.initials
    if notion == SCSO:
        bad = {s for s in cc.empty_states if s.left in acc.secret}
    elif notion == SISO:
        reachable = cc_observable_costs(cc, sources)
        bad = {s for s in cc.empty_states if s in reachable}
    else:
        bad = cc.empty_states
    if not bad:
        return Verdict(True, notion)
    path = cc_shortest_path(cc, sources, bad)
    return Verdict(False, notion, witness=path.to_run())


def verify_scso(nfa: Nfa) -> Verdict:
    """Strong current-state opacity (every secret-ending run has an
    observationally equivalent run through non-secret states only)."""
    return _dss_verdict(nfa, SCSO)


def verify_siso(nfa: Nfa) -> Verdict:
    """Strong initial-state opacity (every run from a secret initial state has
    a non-secret observational twin)."""
    return _dss_verdict(nfa, SISO)


def verify_inf_sso(nfa: Nfa) -> Verdict:
    """Strong infinite-step opacity (secret visits stay deniable forever)."""
    return _dss_verdict(nfa, INF_SSO)
