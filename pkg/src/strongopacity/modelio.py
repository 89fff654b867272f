"""The on-disk model document, and graph export of every structure.

The model document is JSON shaped:

    {
      "version": 1,
      "states": [{"id": "0", "initial": true, "secret": false}, ...],
      "events": [{"name": "a", "observable": true, "controllable": true}, ...],
      "transitions": [{"from": "0", "event": "a", "to": "1"}, ...]
    }

Flags default to secret=false, initial=false, observable=true,
controllable=true. Every transition endpoint and event name must be declared.
Graph export emits deterministic DOT text: one node line per state carrying
its annotations, one edge line per ordered state pair with all its event
labels merged (self-loops included), nodes and edges in canonical order.
"""

from __future__ import annotations

import json
from typing import IO, Union

from .automaton import Event, Nfa, natural_key
from .composition import CcAutomaton
from .errors import EmptyModel, InvalidEvent, InvalidState, IoError, ParseError, UnknownReference
from .observer import Observer, estimate_name

MODEL_VERSION = 1


def _structural(message: str) -> ParseError:
    # A structurally malformed (but syntactically valid) document; position unknown.
    return ParseError(message, 0, 0)


def _coerce_id(value, where: str) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    raise _structural(f"{where} must be a string (or integer) identifier")


def parse_model(text: Union[bytes, str]) -> Nfa:
    """Parse and validate a model document into an automaton."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise _structural("top level must be an object")
    version = doc.get("version", MODEL_VERSION)
    if not isinstance(version, int) or isinstance(version, bool):
        raise _structural("version must be an integer")

    raw_states = doc.get("states")
    if not isinstance(raw_states, list) or not raw_states:
        raise EmptyModel("model declares no states")
    states, initial, secret = [], set(), set()
    for entry in raw_states:
        if not isinstance(entry, dict) or "id" not in entry:
            raise _structural("each state needs an 'id'")
        sid = _coerce_id(entry["id"], "state id")
        if sid in states:
            raise InvalidState(f"state declared twice: {sid!r}")
        states.append(sid)
        if entry.get("initial", False):
            initial.add(sid)
        if entry.get("secret", False):
            secret.add(sid)

    alphabet = []
    seen_events = set()
    for entry in doc.get("events", []):
        if not isinstance(entry, dict) or "name" not in entry:
            raise _structural("each event needs a 'name'")
        name = _coerce_id(entry["name"], "event name")
        if name in seen_events:
            raise InvalidEvent(f"event declared twice: {name!r}")
        seen_events.add(name)
        alphabet.append(
            Event(
                name=name,
                observable=bool(entry.get("observable", True)),
                controllable=bool(entry.get("controllable", True)),
            )
        )

    transitions = set()
    known = set(states)
    for entry in doc.get("transitions", []):
        if not isinstance(entry, dict) or not {"from", "event", "to"} <= entry.keys():
            raise _structural("each transition needs 'from', 'event' and 'to'")
        src = _coerce_id(entry["from"], "transition source")
        dst = _coerce_id(entry["to"], "transition target")
        name = _coerce_id(entry["event"], "transition event")
        if src not in known:
            raise UnknownReference(src, kind="state")
        if dst not in known:
            raise UnknownReference(dst, kind="state")
        if name not in seen_events:
            raise UnknownReference(name, kind="event")
        transitions.add((src, name, dst))

    return Nfa(
        states=frozenset(states),
        alphabet=tuple(alphabet),
        transitions=frozenset(transitions),
        initial=frozenset(initial),
        secret=frozenset(secret),
    )


def serialize_model(nfa: Nfa) -> bytes:
    """Deterministic document for an automaton; parse(serialize(n)) == n."""
    doc = {
        "version": MODEL_VERSION,
        "states": [
            {"id": x, "initial": x in nfa.initial, "secret": x in nfa.secret}
            for x in nfa.sorted_states()
        ],
        "events": [
            {"name": e.name, "observable": e.observable, "controllable": e.controllable}
            for e in nfa.alphabet
        ],
        "transitions": [
            {"from": src, "event": event, "to": dst}
            for src, event, dst in nfa.sorted_transitions()
        ],
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _merged_edges(edges) -> list[str]:
    grouped: dict[tuple[str, str], list[str]] = {}
    for src, label, dst in edges:
        grouped.setdefault((src, dst), []).append(label)
    lines = []
    for (src, dst), labels in sorted(
        grouped.items(), key=lambda kv: (natural_key(kv[0][0]), natural_key(kv[0][1]))
    ):
        joined = ",".join(sorted(set(labels), key=natural_key))
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(joined)}];")
    return lines


def _nfa_lines(nfa: Nfa) -> list[str]:
    lines = ["digraph nfa {"]
    for x in nfa.sorted_states():
        flags = f"initial={'true' if x in nfa.initial else 'false'}, secret={'true' if x in nfa.secret else 'false'}"
        lines.append(f"  {_quote(x)} [{flags}];")
    lines += _merged_edges(nfa.sorted_transitions())
    lines.append("}")
    return lines


def _observer_lines(obs: Observer) -> list[str]:
    lines = ["digraph observer {"]
    for q in obs.sorted_estimates():
        flag = "true" if q in obs.initials else "false"
        lines.append(f"  {_quote(estimate_name(q))} [initial={flag}];")
    lines += _merged_edges(
        (estimate_name(q1), event, estimate_name(q2)) for q1, event, q2 in obs.sorted_edges()
    )
    lines.append("}")
    return lines


def _composition_lines(cc: CcAutomaton) -> list[str]:
    lines = ["digraph composition {"]
    for s in cc.sorted_states():
        init = "true" if s in cc.initials else "false"
        empty = "true" if s.is_empty else "false"
        lines.append(f"  {_quote(s.name)} [initial={init}, empty={empty}];")
    lines += _merged_edges(
        (src.name, event.name, dst.name) for src, event, dst in cc.sorted_transitions()
    )
    lines.append("}")
    return lines


def export_graph(structure: Union[Nfa, Observer, CcAutomaton], sink: IO[str]) -> None:
    """Write a deterministic DOT description of the structure to ``sink``."""
    if isinstance(structure, Nfa):
        lines = _nfa_lines(structure)
    elif isinstance(structure, Observer):
        lines = _observer_lines(structure)
    elif isinstance(structure, CcAutomaton):
        lines = _composition_lines(structure)
    else:
        raise TypeError(f"cannot export {type(structure).__name__}")
    try:
        sink.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(str(exc)) from exc
