"""A first tour: partial observation, state estimates, and what an outside
observer can conclude about a small plant.

Run with: python3 demos/01_observers_and_projections.py
"""

import io
import sys

from strongopacity import (
    Event,
    Nfa,
    classify_estimates,
    export_graph,
    natural_projection,
    subset_construction,
)

# A little plant: a request is handled either on a fast path through an
# internal cache (state "hit", kept secret) or on a slow path ("miss").
# The internal step "look" is invisible from outside; "req" and "resp" are
# logged and therefore observable.
plant = Nfa(
    states=frozenset({"idle", "busy", "hit", "miss", "done"}),
    alphabet=(
        Event("req", observable=True),
        Event("resp", observable=True),
        Event("look", observable=False),
    ),
    transitions=frozenset(
        {
            ("idle", "req", "busy"),
            ("busy", "look", "hit"),
            ("busy", "look", "miss"),
            ("hit", "resp", "done"),
            ("miss", "resp", "done"),
        }
    ),
    initial=frozenset({"idle"}),
    secret=frozenset({"hit"}),
)

print("An outside observer sees only the projection of each word:")
for word in [("req",), ("req", "look"), ("req", "look", "resp")]:
    print(f"  {' '.join(word):24s} is seen as  {' '.join(natural_projection(word, plant.alphabet)) or 'ε'}")

print()
print("The observer automaton tracks every state the plant might be in:")
obs = subset_construction(plant)
for estimate in obs.sorted_estimates():
    print(f"  estimate {{{','.join(estimate)}}}")

print()
print("Classifying estimates against the secret set {hit}:")
for estimate, kind in sorted(classify_estimates(obs, plant.secret).items()):
    print(f"  {{{','.join(estimate)}}}: {kind.value}")
print()
print("The estimate {busy,hit,miss} is hybrid: after 'req' the observer cannot")
print("tell whether the cache was hit, which is exactly the deniability that")
print("the opacity notions in the other demos make precise.")

print()
print("Every structure exports as deterministic DOT text:")
sink = io.StringIO()
export_graph(obs, sink)
sys.stdout.write(sink.getvalue())
