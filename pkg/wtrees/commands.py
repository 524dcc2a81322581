from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, TypeVar

from pydantic import BaseModel

from .antivandermonde import SolverConfig, build_system, exact_residual, newton_q, reduction_report, solve_multistart
from .audit import AuditLogger
from .config import WTreeConfig
from .core.weights import BLACK, WHITE, LabeledType, format_weight, parse_type_literal, weight_document
from .enumerator import census_of, enumerate_wtree_records
from .export import census_document, render_dot_all, render_json, render_jsonl, render_text_all, tree_to_document
from .partitions import (
    CardinalityDetails,
    cardinality_details,
    describe_partition,
    enumerate_partitions,
    partition_summand,
    render_partition,
)
from .schemas import (
    CountDocument,
    CountInput,
    EnumerateInput,
    PartitionDocument,
    PartitionsInput,
    SystemInput,
    VerifyInput,
)
from .sweep import claim_report, mismatched_rows, run_sweep, sweep_exit_code

InputT = TypeVar("InputT", bound=BaseModel)


@dataclass(frozen=True)
class CommandContext:
    config: WTreeConfig
    audit: AuditLogger


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    stdout: str
    summary: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class CommandSpec(Generic[InputT]):
    name: str
    description: str
    input_model: type[InputT]
    handler: Callable[[CommandContext, InputT], CommandOutcome]

    def json_schema(self) -> dict[str, Any]:
        schema = self.input_model.model_json_schema()
        return {
            "name": self.name,
            "description": self.description,
            "input_schema": schema,
        }


def _count_document(details: CardinalityDetails) -> CountDocument:
    return CountDocument(
        type=details.wtype.literal(),
        cardinality=details.cardinality,
        simple=details.classification.simple,
        decomposable=details.classification.decomposable,
        labeled_total=details.labeled_total,
        p=details.p,
        symmetric={str(i): c for i, c in details.symmetric.items()},
        nonsymmetric_labeled=details.nonsymmetric_labeled,
        symmetric_labeled={str(i): m for i, m in details.symmetric_labeled.items()},
    )


def _explain(details: CardinalityDetails) -> list[str]:
    wtype = details.wtype
    labeled = LabeledType.from_type(wtype)
    yes_no = {True: "yes", False: "no"}
    lines = [
        f"type {wtype}: simple={yes_no[details.classification.simple]}"
        f" decomposable={yes_no[details.classification.decomposable]} v={wtype.v}",
        "partitions (summand after each):",
    ]
    lines += [f"  {describe_partition(labeled, p)}" for p in enumerate_partitions(labeled)]
    if not wtype.is_simple:
        lines.append(f"T = {details.labeled_total}")
        lines.append(f"p = {details.p}")
        lines += [f"S_{i} = {count}" for i, count in details.symmetric.items()]
        lines.append(f"N = {details.nonsymmetric_labeled}")
        lines += [f"M_{i} = {m}" for i, m in details.symmetric_labeled.items()]
    return lines


def _count(ctx: CommandContext, args: CountInput) -> CommandOutcome:
    wtype = parse_type_literal(args.type_literal)
    details = cardinality_details(wtype, budget=args.budget or ctx.config.budget)
    if args.format == "json":
        out = _count_document(details).model_dump_json(indent=2) + "\n"
    else:
        lines = [str(details.cardinality)]
        if args.explain:
            lines += _explain(details)
        out = "\n".join(lines) + "\n"
    return CommandOutcome(0, out, {"type": wtype.literal(), "cardinality": details.cardinality})


def _enumerate(ctx: CommandContext, args: EnumerateInput) -> CommandOutcome:
    wtype = parse_type_literal(args.type_literal)
    records = enumerate_wtree_records(wtype, budget=args.budget or ctx.config.budget, jobs=args.jobs)
    census = census_document(census_of(records))

    if args.format == "json":
        if args.census:
            trees = [tree_to_document(r.tree, r.code).model_dump(exclude_none=True) for r in records]
            out = json.dumps({"trees": trees, "census": census.model_dump()}, ensure_ascii=False, indent=2) + "\n"
        else:
            out = render_json(records)
    elif args.format == "jsonl":
        out = render_jsonl(records)
        if args.census:
            out += json.dumps({"census": census.model_dump()}) + "\n"
    elif args.format == "dot":
        out = render_dot_all(records)
        if args.census:
            out += f"// census {census.model_dump_json()}\n"
    else:
        out = render_text_all(records)
        if args.census:
            out += f"\ncensus {census.model_dump_json()}\n"
    return CommandOutcome(0, out, {"type": wtype.literal(), "trees": len(records), "census": census.model_dump()})


def _verify(ctx: CommandContext, args: VerifyInput) -> CommandOutcome:
    budget = args.budget or ctx.config.budget
    if args.report:
        # The report path is claimed before the sweep starts.
        with claim_report(args.report) as f:
            try:
                report = run_sweep(args.max_weight, jobs=args.jobs, budget=budget)
            except BaseException:
                f.close()
                os.remove(args.report)
                raise
            f.write(report.to_json())
        out = report.summary.model_dump_json() + "\n"
    else:
        report = run_sweep(args.max_weight, jobs=args.jobs, budget=budget)
        out = report.to_json()
    summary = report.summary.model_dump()
    summary["mismatched_types"] = [r.type for r in mismatched_rows(report)]
    return CommandOutcome(sweep_exit_code(report), out, summary)


def _system(ctx: CommandContext, args: SystemInput) -> CommandOutcome:
    lines: list[str] = []
    document: dict[str, Any] = {}
    summary: dict[str, Any] = {}
    if args.qpoly is not None:
        q = newton_q(args.qpoly)
        lines.append(f"q_{q.index} = {q}")
        document["qpoly"] = {"index": q.index, "polynomial": str(q)}
        summary["qpoly"] = q.index

    if args.type_literal is not None:
        wtype = parse_type_literal(args.type_literal)
        system = build_system(wtype)
        summary["type"] = wtype.literal()
        document["system"] = system.to_document()
        lines.append(f"system of {wtype}: unknowns {', '.join(map(str, system.unknowns)) or 'none'}")
        lines.append(system.to_text() if not system.degenerate else "(no equations)")

        if args.reduction:
            steps = reduction_report(system)
            document["reduction"] = [{"r": s.r, "verified": s.verified} for s in steps]
            for step in steps:
                lines.append(f"r={step.r}: {step.white_coefficient} = {step.black_coefficient}  reduces: {step.verified}")

        if args.solve:
            config = SolverConfig(starts=args.starts, tol=args.tol, seed=args.seed, jobs=args.jobs)
            result = solve_multistart(system, config)
            document["solutions"] = [s.to_document() for s in result.solutions]
            document["count"] = result.count
            document["lowerBound"] = True
            lines.append(f"solutions found: {result.count} (lower bound, heuristic; bezout bound {system.bezout_bound})")
            for s in result.solutions:
                point = ", ".join(f"{sym} = {z.real:.12g}{z.imag:+.12g}j" for sym, z in zip(system.unknowns, s.point))
                lines.append(f"  {point}  residual {s.residual:.3g} exact {exact_residual(system, s.point):.3g}")
            summary["solutions"] = result.count

    if args.format == "json":
        return CommandOutcome(0, json.dumps(document, ensure_ascii=False, indent=2) + "\n", summary)
    return CommandOutcome(0, "\n".join(lines) + "\n", summary)


def _partitions(ctx: CommandContext, args: PartitionsInput) -> CommandOutcome:
    wtype = parse_type_literal(args.type_literal)
    labeled = LabeledType.from_type(wtype)
    partitions = enumerate_partitions(labeled)
    if args.format == "json":
        documents = [
            PartitionDocument(
                parts=[{WHITE: list(part.white), BLACK: list(part.black)} for part in p.parts],
                text=render_partition(labeled, p),
                summand=weight_document(partition_summand(labeled, p)),
            ).model_dump()
            for p in partitions
        ]
        out = json.dumps(documents, ensure_ascii=False, indent=2) + "\n"
    else:
        total = sum(partition_summand(labeled, p) for p in partitions)
        out = "".join(describe_partition(labeled, p) + "\n" for p in partitions) + f"sum = {format_weight(total)}\n"
    return CommandOutcome(0, out, {"type": wtype.literal(), "partitions": len(partitions)})


def build_command_registry() -> dict[str, CommandSpec[Any]]:
    commands: list[CommandSpec[Any]] = [
        CommandSpec(
            name="count",
            description="Number of w-trees of a type by the partition formula and the symmetry correction.",
            input_model=CountInput,
            handler=_count,
        ),
        CommandSpec(
            name="enumerate",
            description="List every w-tree of a type up to isotopy in canonical order; optionally the symmetry census.",
            input_model=EnumerateInput,
            handler=_enumerate,
        ),
        CommandSpec(
            name="verify",
            description="Check the counting formula against enumeration for all types up to a total weight.",
            input_model=VerifyInput,
            handler=_verify,
        ),
        CommandSpec(
            name="system",
            description="Print the power-sum system of a type, optionally solve it numerically; or print q_i.",
            input_model=SystemInput,
            handler=_system,
        ),
        CommandSpec(
            name="partitions",
            description="List the matched-sum partitions of the labeled type with their summands.",
            input_model=PartitionsInput,
            handler=_partitions,
        ),
    ]
    return {c.name: c for c in commands}


def run_command(spec: CommandSpec[Any], ctx: CommandContext, arguments: dict[str, Any]) -> CommandOutcome:
    """Validate arguments, run the handler and record the outcome; errors propagate to the caller."""
    ctx.audit.log("command_received", {"command": spec.name, "arguments": arguments})
    args = spec.input_model.model_validate(arguments)
    outcome = spec.handler(ctx, args)
    ctx.audit.log("command_result", {"command": spec.name, "exit_code": outcome.exit_code, **outcome.summary})
    return outcome
