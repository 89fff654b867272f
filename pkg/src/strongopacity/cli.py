"""Command-line interface.

Subcommands:

* ``verify --notion {k-sso|cso|scso|siso|inf-sso} [--k N] MODEL``
* ``enforce --notion {...} [--k N] MODEL [--out SUBSYSTEM] [--emit-ec FILE]``
* ``export --structure {observer|cc-hat|cc-obs|cc-dss} MODEL --out FILE``
* ``bound MODEL``

Exit codes: 0 = opaque/enforced, 1 = not opaque/impossible, 2 = usage or
model error. Output is deterministic for a fixed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .automaton import Nfa, Run, accessible_part, natural_key
from .composition import cc_dss, cc_full_observer, cc_hat
from .enforcement import (
    Enforced,
    EnforcementOutcome,
    enforce_inf_sso,
    enforce_k_sso,
    enforce_scso,
    enforce_siso,
)
from .errors import OpacityError
from .modelio import export_graph, parse_model, serialize_model
from .observer import subset_construction
from .verification import (
    CSO,
    INF_SSO,
    K_SSO,
    NOTIONS,
    SCSO,
    SISO,
    Verdict,
    effective_k_bound,
    verify_cso,
    verify_inf_sso,
    verify_k_sso,
    verify_scso,
    verify_siso,
)

USAGE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strongopacity",
        description="Verify and enforce strong state-based opacity of partially-observed NFAs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="decide an opacity notion")
    verify.add_argument("--notion", required=True, choices=NOTIONS)
    verify.add_argument("--k", type=int, default=None, help="step budget for k-sso")
    verify.add_argument("model", metavar="MODEL")

    enforce = sub.add_parser("enforce", help="synthesize a disabled-transition set")
    enforce.add_argument("--notion", required=True, choices=NOTIONS)
    enforce.add_argument("--k", type=int, default=None, help="step budget for k-sso")
    enforce.add_argument("--out", default=None, help="write the enforced subsystem model here")
    enforce.add_argument("--emit-ec", default=None, help="write the disabled transitions here")
    enforce.add_argument("model", metavar="MODEL")

    export = sub.add_parser("export", help="export an intermediate structure as DOT")
    export.add_argument(
        "--structure", required=True, choices=("observer", "cc-hat", "cc-obs", "cc-dss")
    )
    export.add_argument("--out", required=True)
    export.add_argument("model", metavar="MODEL")

    bound = sub.add_parser("bound", help="print the effective K bound")
    bound.add_argument("model", metavar="MODEL")

    return parser


def _load_model(path: str) -> Nfa:
    with open(path, "rb") as handle:
        return parse_model(handle.read())


def _checked_k(parser: argparse.ArgumentParser, args, model: Nfa) -> int | None:
    if args.notion != K_SSO:
        return None
    if args.k is None:
        parser.error("--k is required for --notion k-sso")
    if args.k < 0:
        parser.error("--k must be non-negative")
    bound = effective_k_bound(model)
    if args.k > bound:
        print(
            f"notice: K={args.k} exceeds the effective bound {bound}; capped",
            file=sys.stderr,
        )
    return args.k


def _format_witness(run: Run) -> str:
    text = run.start
    for event, target in run.steps:
        text += f" -({event})-> {target}"
    return text


def _print_verdict(verdict: Verdict) -> int:
    print("OPAQUE" if verdict.opaque else "NOT OPAQUE")
    if verdict.witness is not None:
        print(f"witness: {_format_witness(verdict.witness)}")
    return 0 if verdict.opaque else 1


def _transition_lines(transitions) -> list[str]:
    return [
        f"{src} -{event}-> {dst}"
        for src, event, dst in sorted(
            transitions, key=lambda t: (natural_key(t[0]), natural_key(t[1]), natural_key(t[2]))
        )
    ]


def _print_outcome(outcome: EnforcementOutcome, args) -> int:
    if isinstance(outcome, Enforced):
        lines = _transition_lines(outcome.disabled)
        for line in lines:
            print(line)
        if args.emit_ec:
            with open(args.emit_ec, "w", encoding="utf-8") as handle:
                handle.write("".join(line + "\n" for line in lines))
        if args.out:
            with open(args.out, "wb") as handle:
                handle.write(serialize_model(outcome.subsystem))
        return 0
    print("IMPOSSIBLE")
    print(f"witness: {_format_witness(outcome.witness)}")
    return 1


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Dispatch one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        model = _load_model(args.model)
        if args.command == "verify":
            k = _checked_k(parser, args, model)
            if args.notion == K_SSO:
                verdict = verify_k_sso(model, k)
            elif args.notion == CSO:
                verdict = verify_cso(model)
            elif args.notion == SCSO:
                verdict = verify_scso(model)
            elif args.notion == SISO:
                verdict = verify_siso(model)
            else:
                verdict = verify_inf_sso(model)
            return _print_verdict(verdict)
        if args.command == "enforce":
            k = _checked_k(parser, args, model)
            if args.notion == K_SSO:
                outcome = enforce_k_sso(model, k)
            elif args.notion == CSO:
                outcome = enforce_k_sso(model, 0)
            elif args.notion == SCSO:
                outcome = enforce_scso(model)
            elif args.notion == SISO:
                outcome = enforce_siso(model)
            else:
                outcome = enforce_inf_sso(model)
            return _print_outcome(outcome, args)
        if args.command == "export":
            acc = accessible_part(model)
            if args.structure == "observer":
                structure = subset_construction(acc)
            elif args.structure == "cc-hat":
                structure = cc_hat(acc)
            elif args.structure == "cc-obs":
                structure = cc_full_observer(acc)
            else:
                structure = cc_dss(acc)
            with open(args.out, "w", encoding="utf-8") as handle:
                export_graph(structure, handle)
            return 0
        if args.command == "bound":
            print(effective_k_bound(model))
            return 0
    except SystemExit as exc:  # parser.error() inside _checked_k
        return int(exc.code or 0)
    except (OpacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    return USAGE_ERROR


def main() -> None:
    sys.exit(run_cli())
