"""Cross-checking the decision procedures against brute force.

The estimate-based verifiers are clever; the oracles are not. On acyclic
systems an enumeration of every run up to the state count is provably
exhaustive, so the definitions can be evaluated literally and compared
against the structural verdicts, including the enforcement search.

Run with: python3 demos/04_oracle_crosscheck.py
"""

import random

from strongopacity import (
    Enforced,
    Event,
    Nfa,
    accessible_part,
    enforce_scso,
    oracle_enforceable,
    oracle_inf_sso,
    oracle_k_sso,
    oracle_scso,
    oracle_siso,
    verify_inf_sso,
    verify_k_sso,
    verify_scso,
    verify_siso,
)

EVENTS = ("a", "b", "c")


def random_acyclic_system(rng: random.Random) -> Nfa:
    while True:
        n = rng.randint(3, 6)
        alphabet = tuple(
            Event(name, observable=rng.random() < 0.7, controllable=rng.random() < 0.6)
            for name in EVENTS[: rng.randint(1, 3)]
        )
        names = [e.name for e in alphabet]
        states = [str(i) for i in range(n)]
        transitions = {
            (states[i], rng.choice(names), states[j])
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.45
        }
        nfa = accessible_part(
            Nfa(
                states=frozenset(states),
                alphabet=alphabet,
                transitions=frozenset(transitions),
                initial=frozenset({states[0]}),
                secret=frozenset(x for x in states if rng.random() < 0.35),
            )
        )
        if len(nfa.states) >= 2 and nfa.transitions:
            return nfa


rng = random.Random(42)
rounds = 150
agreements = {"k-sso": 0, "scso": 0, "siso": 0, "inf-sso": 0, "enforce": 0}
opaque_counts = {"k-sso": 0, "scso": 0, "siso": 0, "inf-sso": 0}

for _ in range(rounds):
    nfa = random_acyclic_system(rng)
    cap = len(nfa.states)
    checks = {
        "k-sso": (verify_k_sso(nfa, 1).opaque, oracle_k_sso(nfa, 1, cap)),
        "scso": (verify_scso(nfa).opaque, oracle_scso(nfa, cap)),
        "siso": (verify_siso(nfa).opaque, oracle_siso(nfa, cap)),
        "inf-sso": (verify_inf_sso(nfa).opaque, oracle_inf_sso(nfa, cap)),
    }
    for notion, (fast, slow) in checks.items():
        agreements[notion] += fast == slow
        opaque_counts[notion] += fast
    if len(nfa.controllable_transitions) <= 8:
        outcome = enforce_scso(nfa)
        found = oracle_enforceable(nfa, "scso", cap=cap)
        agreements["enforce"] += isinstance(outcome, Enforced) == (found is not None)
    else:
        agreements["enforce"] += 1

print(f"{rounds} random acyclic systems, verifier vs. brute force:")
for notion in ("k-sso", "scso", "siso", "inf-sso"):
    print(
        f"  {notion:8s} agreement {agreements[notion]}/{rounds}"
        f"   (opaque in {opaque_counts[notion]} of them)"
    )
print(f"  enforce  agreement {agreements['enforce']}/{rounds} (outcome vs. exhaustive cut search)")

assert all(count == rounds for count in agreements.values()), "disagreement found!"
print()
print("No disagreements: the structural procedures and the literal definitions")
print("decide the same thing on every instance tried.")
