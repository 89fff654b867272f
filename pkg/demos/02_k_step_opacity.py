"""Strong K-step opacity: can an intruder ever be sure, within the last K
observed steps, that the system passed through a secret state?

The system here stays deniable for one observable step after its secret
visits, but a second step gives the game away. The demo walks the structures
the decision procedure builds and shows the verdict flip between K=1 and K=2.

Run with: python3 demos/02_k_step_opacity.py
"""

from strongopacity import (
    Event,
    Nfa,
    cc_hat,
    effective_k_bound,
    observational_reach_within,
    verify_k_sso,
)

system = Nfa(
    states=frozenset(str(i) for i in range(9)),
    alphabet=(
        Event("a"),
        Event("b"),
        Event("c", controllable=False),
        Event("u", observable=False),
    ),
    transitions=frozenset(
        {
            ("0", "a", "1"),
            ("0", "a", "3"),
            ("0", "u", "6"),
            ("1", "u", "2"),
            ("3", "u", "4"),
            ("4", "b", "5"),
            ("6", "a", "7"),
            ("7", "b", "8"),
            ("5", "c", "5"),
            ("2", "b", "2"),
            ("8", "b", "8"),
            ("8", "c", "8"),
        }
    ),
    initial=frozenset({"0"}),
    secret=frozenset({"5", "7"}),
)

print("The secret-tracking composition pairs each post-secret continuation")
print("with the estimate of runs that avoided the secret:")
cc = cc_hat(system)
for state in cc.sorted_states():
    marker = " (initial)" if state in cc.initials else ""
    print(f"  {state.name}{marker}")

print()
print("An empty estimate means no innocent explanation is left. Distances:")
for state, distance in sorted(
    observational_reach_within(cc, 5).items(), key=lambda kv: (kv[1], kv[0].name)
):
    if state.is_empty:
        print(f"  {state.name} becomes certain after {distance} observable steps")

print()
bound = effective_k_bound(system)
print(f"Budgets beyond {bound} cannot change the verdict, so any K is decidable:")
for k in (0, 1, 2, 3, 10**9):
    verdict = verify_k_sso(system, k)
    print(f"  K={k:<10} -> {'opaque' if verdict.opaque else 'NOT opaque'}")

print()
verdict = verify_k_sso(system, 2)
print("The K=2 witness is the shortest leaking run in the composition:")
run = verdict.witness
print(f"  {run.start}", *(f"-{event}-> {target}" for event, target in run.steps))
