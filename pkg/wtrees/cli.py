from __future__ import annotations

import argparse
import json
import sys
import uuid
from typing import Any, Optional

from pydantic import ValidationError

from .audit import AuditLogger
from .commands import CommandContext, CommandSpec, build_command_registry, run_command
from .config import WTreeConfig
from .errors import WTreeError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wtrees", description="Count and enumerate plane weighted trees of a type")
    parser.add_argument("--print-schemas", action="store_true", help="Print command input JSON schemas and exit")
    sub = parser.add_subparsers(dest="command")

    count = sub.add_parser("count", help="Number of w-trees of a type")
    count.add_argument("type_literal", help='Type literal, e.g. "1,5,7|2,4,7"')
    count.add_argument("--explain", action="store_true", help="Show partition summands and symmetry terms")
    count.add_argument("--format", choices=["text", "json"])
    count.add_argument("--budget", type=int, help="Cap on generated plane embeddings (default: WTREE_BUDGET)")

    enum = sub.add_parser("enumerate", help="Every w-tree of a type up to isotopy")
    enum.add_argument("type_literal")
    enum.add_argument("--format", choices=["json", "jsonl", "dot", "text"])
    enum.add_argument("--census", action="store_true", help="Append the symmetry census")
    enum.add_argument("--jobs", type=int, help="Worker processes (default: WTREE_JOBS)")
    enum.add_argument("--budget", type=int)

    verify = sub.add_parser("verify", help="Formula vs. enumeration for all types up to a total weight")
    verify.add_argument("--max-weight", type=int, required=True)
    verify.add_argument("--jobs", type=int)
    verify.add_argument("--report", help="Write the JSON report to this new file")
    verify.add_argument("--budget", type=int)

    system = sub.add_parser("system", help="Power-sum system of a type, or a q_i polynomial")
    system.add_argument("type_literal", nargs="?")
    system.add_argument("--qpoly", type=int, metavar="I", help="Print q_I")
    system.add_argument("--solve", action="store_true", help="Find solutions by multistart Newton (lower bound)")
    system.add_argument("--reduction", action="store_true", help="Show the raw coefficient system and check its reduction")
    system.add_argument("--starts", type=int)
    system.add_argument("--tol", type=float)
    system.add_argument("--seed", type=int, help="Solver seed (default: WTREE_SEED)")
    system.add_argument("--jobs", type=int)
    system.add_argument("--format", choices=["text", "json"])

    parts = sub.add_parser("partitions", help="Matched-sum partitions of the labeled type")
    parts.add_argument("type_literal")
    parts.add_argument("--format", choices=["text", "json"])
    return parser


def _error(kind: str, message: str) -> None:
    print(json.dumps({"status": "error", "kind": kind, "error": message}, ensure_ascii=False), file=sys.stderr)


def _dispatch(spec: CommandSpec[Any], ctx: CommandContext, arguments: dict[str, Any]) -> int:
    audit = ctx.audit
    try:
        outcome = run_command(spec, ctx, arguments)
    except ValidationError as e:
        audit.log("command_error", {"command": spec.name, "kind": "validation", "details": e.errors()})
        _error("validation", str(e))
        return 2
    except WTreeError as e:
        audit.log("command_error", {"command": spec.name, "kind": e.kind, "error": str(e)})
        _error(e.kind, str(e))
        return e.exit_code
    except FileExistsError as e:
        audit.log("command_error", {"command": spec.name, "kind": "io", "error": str(e)})
        _error("io", f"refusing to overwrite {e.filename}")
        return 2

    sys.stdout.write(outcome.stdout)
    if outcome.exit_code == 1 and spec.name == "verify":
        _error("mismatch", f"formula and enumeration disagree on {', '.join(outcome.summary['mismatched_types'])}")
    return outcome.exit_code


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    commands = build_command_registry()

    if args.print_schemas:
        print(json.dumps([c.json_schema() for c in commands.values()], ensure_ascii=False, indent=2))
        return 0
    if not args.command:
        parser.error("a command is required unless --print-schemas is used")

    try:
        config = WTreeConfig.from_env()
    except RuntimeError as e:
        _error("config", str(e))
        return 2

    spec = commands[args.command]
    fields = spec.input_model.model_fields
    arguments: dict[str, Any] = {
        k: v for k, v in vars(args).items() if k in fields and v is not None and v is not False
    }
    if "jobs" in fields:
        arguments.setdefault("jobs", config.jobs)
    if "seed" in fields:
        arguments.setdefault("seed", config.seed)

    ctx = CommandContext(config=config, audit=AuditLogger(config.audit_log_path, uuid.uuid4().hex))
    try:
        return _dispatch(spec, ctx, arguments)
    except OSError as e:
        # Unwritable audit log or report location.
        _error("io", str(e))
        return 2
