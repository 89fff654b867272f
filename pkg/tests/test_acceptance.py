"""Acceptance suite: every criterion runs at its stated tolerance and prints
one pass/fail line. Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import random

from strongopacity import (
    Enforced,
    Impossible,
    cc_hat,
    disable_transitions,
    effective_k_bound,
    enforce_inf_sso,
    enforce_k_sso,
    enforce_scso,
    enforce_siso,
    observational_reach_within,
    oracle_enforceable,
    oracle_inf_sso,
    oracle_k_sso,
    oracle_scso,
    oracle_siso,
    subset_construction,
    verify_cso,
    verify_inf_sso,
    verify_k_sso,
    verify_scso,
    verify_siso,
)
from strongopacity.subautomata import initial_secret_subautomaton

from conftest import (
    delayed_leak_nfa,
    k_safe_not_inf_nfa,
    two_initials_nfa,
    unfixable_two_step_nfa,
)
from corpus import corpus

SEED = 20260810


def report(number, ok, detail):
    print(f"[acceptance] criterion {number}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {number}: {detail}"


def uncapped_k_verdict(nfa, k):
    """The K-step verdict decided directly at budget K, bypassing the cap."""
    if not verify_cso(nfa).opaque:
        return False
    reach = observational_reach_within(cc_hat(nfa), k)
    return not any(s.is_empty for s in reach)


def test_criterion_1_k_step_verification_reproduction():
    nfa = delayed_leak_nfa()
    verdicts_ok = all(verify_k_sso(nfa, k).opaque for k in (0, 1)) and not any(
        verify_k_sso(nfa, k).opaque for k in (2, 3, 383)
    )
    cc = cc_hat(nfa)
    states_ok = {s.name for s in cc.states} == {
        "(7,{1,2,3,4})",
        "(5,{2,8})",
        "(5,{8})",
        "(8,{2})",
        "(8,∅)",
    }
    observer_ok = {frozenset(q) for q in subset_construction(nfa).estimates} == {
        frozenset({"0", "6"}),
        frozenset({"1", "2", "3", "4", "7"}),
        frozenset({"2", "5", "8"}),
        frozenset({"5", "8"}),
        frozenset({"2", "8"}),
        frozenset({"8"}),
    }
    report(
        1,
        verdicts_ok and states_ok and observer_ok,
        "K in {0,1} opaque, K in {2,3,383} not; 5 composition states; 6 estimates",
    )


def test_criterion_2_two_step_enforcement_reproduction():
    nfa = delayed_leak_nfa(uncontrollable=("c",))
    outcome = enforce_k_sso(nfa, 2)
    ok = (
        isinstance(outcome, Enforced)
        and outcome.disabled == {("4", "b", "5"), ("7", "b", "8")}
        and verify_k_sso(outcome.subsystem, 2).opaque
    )
    report(2, ok, "cut {4-b->5, 7-b->8} and the subsystem is two-step opaque")


def test_criterion_3_impossibility_reproduction():
    nfa = unfixable_two_step_nfa()
    outcome = enforce_k_sso(nfa, 2)
    impossible = isinstance(outcome, Impossible)
    exhaustive = oracle_enforceable(nfa, "k-sso", cap=12, k=2) is None
    report(
        3,
        impossible and exhaustive,
        "two-step enforcement impossible; exhaustive search over all cuts agrees",
    )


def test_criterion_4_dss_family_enforcement_reproduction():
    nfa = two_initials_nfa(uncontrollable=("b",))

    scso = enforce_scso(nfa)
    siso = enforce_siso(nfa)
    inf = enforce_inf_sso(nfa)
    sets_ok = (
        isinstance(scso, Enforced)
        and scso.disabled == {("4", "a", "7"), ("3", "a", "5"), ("4", "a", "5")}
        and isinstance(siso, Enforced)
        and siso.disabled == {("3", "u", "6"), ("5", "v", "6")}
        and isinstance(inf, Enforced)
        and inf.disabled
        == {("3", "u", "6"), ("5", "v", "6"), ("4", "a", "7"), ("3", "a", "5"), ("4", "a", "5")}
    )
    verified_ok = (
        verify_scso(scso.subsystem).opaque
        and verify_siso(siso.subsystem).opaque
        and verify_inf_sso(inf.subsystem).opaque
    )
    oracle_ok = (
        oracle_scso(scso.subsystem, 10)
        and oracle_siso(siso.subsystem, 10)
        and oracle_inf_sso(inf.subsystem, 10)
    )
    report(4, sets_ok and verified_ok and oracle_ok, "three cut sets exact; verifiers and oracles accept")


def test_criterion_5_unbounded_k_reproduction():
    nfa = k_safe_not_inf_nfa()
    k_ok = all(verify_k_sso(nfa, k).opaque for k in (0, 1, 5, 10**3))
    inf_ok = not verify_inf_sso(nfa).opaque
    report(5, k_ok and inf_ok, "K-step opaque for K in {0,1,5,1000} yet not infinite-step opaque")


def test_criterion_6_cap_suite():
    instances = corpus(SEED, 200)
    violations = 0
    for nfa in instances:
        bound = effective_k_bound(nfa)
        for k in range(bound + 4):
            if uncapped_k_verdict(nfa, k) != verify_k_sso(nfa, min(k, bound)).opaque:
                violations += 1
    report(6, violations == 0, f"200 instances, capped == uncapped everywhere ({violations} violations)")


def test_criterion_7_oracle_equivalence_suite():
    instances = corpus(SEED, 200)
    violations = 0
    for nfa in instances:
        cap = len(nfa.states)
        ks = sorted({0, 1, 2, 3, effective_k_bound(nfa)})
        if any(verify_k_sso(nfa, k).opaque != oracle_k_sso(nfa, k, cap) for k in ks):
            violations += 1
        if verify_scso(nfa).opaque != oracle_scso(nfa, cap):
            violations += 1
        if verify_siso(nfa).opaque != oracle_siso(nfa, cap):
            violations += 1
        if verify_inf_sso(nfa).opaque != oracle_inf_sso(nfa, cap):
            violations += 1
    report(7, violations == 0, f"200 instances, four notions agree with oracles ({violations} violations)")


def test_criterion_8_implication_suite():
    instances = corpus(SEED, 200)
    violations = 0
    for nfa in instances:
        bound = effective_k_bound(nfa)
        k_verdicts = [uncapped_k_verdict(nfa, k) for k in range(bound + 1)]
        if verify_inf_sso(nfa).opaque:
            if not verify_scso(nfa).opaque or not verify_siso(nfa).opaque:
                violations += 1
            if not all(k_verdicts):
                violations += 1
        for k in range(1, bound + 1):
            if k_verdicts[k] and not k_verdicts[k - 1]:
                violations += 1
        if verify_k_sso(nfa, 0).opaque != verify_cso(nfa).opaque:
            violations += 1
    report(8, violations == 0, f"200 instances, implication lattice holds ({violations} violations)")


def test_criterion_9_enforcement_round_trip_suite():
    rng = random.Random(SEED + 9)
    instances = []
    while len(instances) < 100:
        candidates = corpus(rng.randrange(2**30), 5)
        instances.extend(
            nfa for nfa in candidates if len(nfa.controllable_transitions) <= 8
        )
    instances = instances[:100]
    violations = 0
    for nfa in instances:
        cap = len(nfa.states)
        for notion, enforce, verify, kwargs in (
            ("k-sso", lambda m: enforce_k_sso(m, 1), lambda m: verify_k_sso(m, 1), {"k": 1}),
            ("scso", enforce_scso, verify_scso, {}),
            ("siso", enforce_siso, verify_siso, {}),
            ("inf-sso", enforce_inf_sso, verify_inf_sso, {}),
        ):
            outcome = enforce(nfa)
            found = oracle_enforceable(nfa, notion, cap=cap, **kwargs)
            if isinstance(outcome, Enforced) != (found is not None):
                violations += 1
            if isinstance(outcome, Enforced) and not verify(outcome.subsystem).opaque:
                violations += 1
    report(
        9,
        violations == 0,
        f"100 instances x 4 notions, outcomes match exhaustive search ({violations} violations)",
    )


def test_criterion_10_composition_size_bound():
    instances = corpus(SEED, 200)
    violations = 0
    for nfa in instances:
        cc = cc_hat(nfa)
        ghat = initial_secret_subautomaton(nfa)
        if len(cc.states) > len(ghat.states) * 2 ** len(nfa.nonsecret):
            violations += 1
    report(10, violations == 0, f"200 instances respect the state-count bound ({violations} violations)")
