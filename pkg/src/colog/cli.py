"""Command-line client.

Thin wrapper over the service handlers (called in-process, no HTTP), so
the CLI and the API always agree. Subcommands mirror the three layers:

    colog macro eval|enumerate <scenario>
    colog micro filter|assign|route|emissions|plan <scenario>
    colog complexity effectors|trio|spider [<scenario>]
    colog --fixtures list
    colog --fixtures run <name>

Exit codes: 0 success, 1 invalid input, 2 infeasible, 3 internal, 64 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__, service
from .errors import (
    CologError,
    InfeasibleError,
    InputError,
    UsageError,
)
from .fixtures import fixture_names

# -- output helpers -----------------------------------------------------------


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


class _Csv:
    """Comma-separated sections: header row, data rows, '# name' dividers."""

    def __init__(self):
        self._buffer = io.StringIO()
        self._writer = csv.writer(self._buffer, lineterminator="\n")

    def section(self, name: str) -> None:
        self._buffer.write(f"# {name}\n")

    def row(self, values: Sequence) -> None:
        self._writer.writerow(list(values))

    def rows(self, values: Sequence[Sequence]) -> None:
        for value in values:
            self.row(value)

    def text(self) -> str:
        return self._buffer.getvalue()


def _join(parts: Sequence[str], sep: str = ";") -> str:
    return sep.join(parts)


def _yn(flag: bool) -> str:
    return "y" if flag else "n"


# -- scenario argument ---------------------------------------------------------


def _source(args) -> service.ScenarioSource:
    """Resolve the scenario argument: a real file first, then a bundled
    fixture name ('sample1', 'sample1.scn', 'fixtures/sample1.scn')."""
    raw = args.scenario
    strict = True if args.strict else None
    path = Path(raw)
    if path.is_file():
        return service.ScenarioSource(text=path.read_text(encoding="utf-8"), strict=strict)
    name = Path(raw).name
    if name.endswith(".scn"):
        name = name[: -len(".scn")]
    if name in fixture_names():
        return service.ScenarioSource(fixture=name, strict=strict)
    bundled = ", ".join(fixture_names())
    raise InputError(f"scenario file not found: {raw} (bundled fixtures: {bundled})")


# -- macro rendering -----------------------------------------------------------


def _macro_header(dimensions: Sequence[str]) -> list[str]:
    lower = [d.lower() for d in dimensions]
    return (
        ["case_id", "b_signs", "c_signs"]
        + [f"sn_{d}" for d in lower]
        + ["sn_weight"]
        + [f"cc_{d}" for d in lower]
        + ["cc_weight"]
    )


def _macro_csv_row(row: service.OutcomeRow) -> list[str]:
    case = "" if row.case_id is None else str(row.case_id)
    return (
        [case, row.b_signs, row.c_signs]
        + row.sn_vector
        + [row.sn_weight]
        + row.cc_vector
        + [row.cc_weight]
    )


def _outcome_lines(row: service.OutcomeRow, indent: str = "  ") -> list[str]:
    return [
        f"{indent}SN vector: {', '.join(row.sn_vector)}",
        f"{indent}SN weight {row.sn_weight}",
        f"{indent}CC vector: {', '.join(row.cc_vector)}",
        f"{indent}CC weight {row.cc_weight}",
    ]


def _case_line(row: service.OutcomeRow) -> str:
    return (
        f"case {row.case_id}  b={row.b_signs} c={row.c_signs}"
        f"  SN[{', '.join(row.sn_vector)}] weight {row.sn_weight}"
        f"  CC[{', '.join(row.cc_vector)}] weight {row.cc_weight}"
    )


def _render_macro_eval_text(resp: service.MacroEvalResponse) -> str:
    lines = [f"dimensions: {', '.join(resp.dimensions)}"]
    if resp.scenario_signs is not None:
        own = resp.scenario_signs
        lines.append(f"scenario signs b={own.b_signs} c={own.c_signs}")
        lines.extend(_outcome_lines(own))
    if resp.cases:
        lines.append(f"sampled cases (target {resp.target}):")
        lines.extend(_case_line(row) for row in resp.cases)
        lines.append(f"best case: {resp.best_case_id}")
    return "\n".join(lines)


def _render_macro_eval_csv(resp: service.MacroEvalResponse) -> str:
    out = _Csv()
    out.row(_macro_header(resp.dimensions))
    if resp.scenario_signs is not None:
        out.row(_macro_csv_row(resp.scenario_signs))
    out.rows(_macro_csv_row(row) for row in resp.cases)
    return out.text()


def _render_macro_enumerate_text(resp: service.MacroEnumerateResponse) -> str:
    lines = [
        f"dimensions: {', '.join(resp.dimensions)}",
        f"{resp.count} sign assignments (target {resp.target}), best first:",
    ]
    lines.extend(_case_line(row) for row in resp.rows)
    return "\n".join(lines)


def _render_macro_enumerate_csv(resp: service.MacroEnumerateResponse) -> str:
    out = _Csv()
    out.row(_macro_header(resp.dimensions))
    out.rows(_macro_csv_row(row) for row in resp.rows)
    return out.text()


# -- micro rendering -----------------------------------------------------------

_FILTER_HEADER = ["shipper", "truck", "c1", "c2", "c3", "verdict", "inference"]
_ASSIGN_HEADER = ["shipper", "trip_index", "truck", "orders", "load_kg"]
_ROUTE_HEADER = ["coalition_kind", "members", "route", "length", "total_triplength"]
_EMISSION_HEADER = ["scenario_type", "base_symbol", "coefficient", "scalarized_total"]


def _intents_line(intents: list[str] | None, source: str) -> str:
    if intents is None:
        return "intents: none"
    return f"intents: {', '.join(intents)} (source: {source})"


def _filter_text_lines(resp: service.FilterResponse) -> list[str]:
    lines = [_intents_line(resp.intents, resp.intents_source)]
    for row in resp.rows:
        flags = _yn(row.c1) + _yn(row.c2) + _yn(row.c3)
        lines.append(f"{row.truck}  flags {flags}  {row.verdict}  {row.inference}")
    lines.append(f"accepted ({len(resp.accepted)}): {', '.join(resp.accepted)}")
    return lines


def _filter_csv_rows(resp: service.FilterResponse) -> list[list[str]]:
    return [
        [row.shipper, row.truck, _yn(row.c1), _yn(row.c2), _yn(row.c3),
         row.verdict, row.inference]
        for row in resp.rows
    ]


def _render_filter(resp: service.FilterResponse, fmt: str) -> str:
    if fmt == "csv":
        out = _Csv()
        out.row(_FILTER_HEADER)
        out.rows(_filter_csv_rows(resp))
        return out.text()
    return "\n".join(_filter_text_lines(resp))


def _assign_text_lines(resp: service.AssignResponse) -> list[str]:
    lines = [_intents_line(resp.intents, resp.intents_source)]
    if resp.inoperable:
        lines.append(f"inoperable: {', '.join(resp.inoperable)}")
    for plan in resp.plans:
        lines.append(f"{plan.shipper}: {plan.trip_count} trips")
        for trip in plan.trips:
            lines.append(
                f"  trip {trip.trip_index}  {trip.truck}"
                f"  orders {', '.join(trip.orders)}  load {trip.load_kg} kg"
            )
    return lines


def _assign_csv_rows(resp: service.AssignResponse) -> list[list[str]]:
    return [
        [plan.shipper, str(trip.trip_index), trip.truck,
         _join(trip.orders), trip.load_kg]
        for plan in resp.plans
        for trip in plan.trips
    ]


def _render_assign(resp: service.AssignResponse, fmt: str) -> str:
    if fmt == "csv":
        out = _Csv()
        out.row(_ASSIGN_HEADER)
        out.rows(_assign_csv_rows(resp))
        return out.text()
    lines = _assign_text_lines(resp)
    lines.extend(_notes_lines(resp.notes))
    return "\n".join(lines)


def _notes_lines(notes: Sequence[str]) -> list[str]:
    if not notes:
        return []
    return ["notes:"] + [f"  - {note}" for note in notes]


def _route_text_lines(resp: service.RouteResponse) -> list[str]:
    lines = []
    for coalition in resp.coalitions:
        lines.append(
            f"{coalition.name}  members {', '.join(coalition.members)}"
            f"  depot {coalition.depot}"
        )
        for route in coalition.routes:
            lines.append(f"  trip {route.trip_index}  {route.truck}  {route.text}")
        for violation in coalition.violations:
            lines.append(f"  violation: {violation}")
        lines.append(f"  total triplength {coalition.total_triplength}")
    comparison = resp.comparison
    if comparison is not None:
        lines.append(
            f"totals: FC {comparison.fc_total} | PC {comparison.pc_total}"
            f" | NC {comparison.nc_total}"
        )
        verdict = _verdict_word(comparison.verdict)
        lines.append(
            f"collaborative (FC+PC) {comparison.collaborative_total}"
            f" < NC {comparison.nc_total}: {verdict}"
        )
        for row in comparison.rows:
            members_nc = row.members_nc_total
            against = "n/a" if members_nc is None else members_nc
            lines.append(
                f"{row.name}: {row.total} vs members NC {against}: "
                f"{_verdict_word(row.verdict)}"
            )
    return lines


def _verdict_word(verdict: bool | None) -> str:
    if verdict is None:
        return "n/a"
    return "yes" if verdict else "no"


def _route_csv_rows(resp: service.RouteResponse) -> list[list[str]]:
    rows = []
    for coalition in resp.coalitions:
        members = _join(coalition.members, "-")
        for route in coalition.routes:
            rows.append(
                [coalition.kind, members, _join(route.nodes, "-"),
                 route.length, coalition.total_triplength]
            )
    return rows


def _render_route(resp: service.RouteResponse, fmt: str) -> str:
    if fmt == "csv":
        out = _Csv()
        out.row(_ROUTE_HEADER)
        out.rows(_route_csv_rows(resp))
        return out.text()
    lines = _route_text_lines(resp)
    lines.extend(_notes_lines(resp.notes))
    return "\n".join(lines)


def _emission_term_text(vector: dict[str, str]) -> str:
    if not vector:
        return "0"
    return " + ".join(
        base if coeff == "1" else f"{coeff}{base}" for base, coeff in vector.items()
    )


def _emissions_text_lines(resp: service.EmissionsResponse) -> list[str]:
    lines = []
    for coalition in resp.coalitions:
        lines.append(f"{coalition.name}: {_emission_term_text(coalition.vector)}")
    comparison = resp.comparison
    if comparison is not None:
        lines.append(
            "by type: FC " + _emission_term_text(comparison.fc)
            + " | PC " + _emission_term_text(comparison.pc)
            + " | NC " + _emission_term_text(comparison.nc)
        )
        lines.append(f"combined FC+PC: {_emission_term_text(comparison.combined)}")
        scalar = comparison.scalarized
        lines.append(
            f"scalarized: FC {scalar['FC']} | PC {scalar['PC']} | NC {scalar['NC']}"
            f" | FC+PC {comparison.combined_scalarized}"
        )
        if comparison.used_fallback:
            lines.append("comparison used the scalarized fallback")
        lines.append(f"collaborative emissions lower: {_verdict_word(comparison.verdict)}")
    for row in resp.rows:
        against = "n/a" if row.members_nc is None else _emission_term_text(row.members_nc)
        lines.append(
            f"{row.name}: {_emission_term_text(row.vector)}"
            f" vs members NC {against}: {_verdict_word(row.verdict)}"
        )
    return lines


def _emissions_csv_rows(resp: service.EmissionsResponse) -> list[list[str]]:
    comparison = resp.comparison
    if comparison is None:
        return []
    rows = []
    for kind, vector, scalar in (
        ("FC", comparison.fc, comparison.scalarized["FC"]),
        ("PC", comparison.pc, comparison.scalarized["PC"]),
        ("NC", comparison.nc, comparison.scalarized["NC"]),
        ("FC+PC", comparison.combined, comparison.combined_scalarized),
    ):
        for base, coeff in vector.items():
            rows.append([kind, base, coeff, scalar])
    return rows


def _render_emissions(resp: service.EmissionsResponse, fmt: str) -> str:
    if fmt == "csv":
        out = _Csv()
        out.row(_EMISSION_HEADER)
        out.rows(_emissions_csv_rows(resp))
        return out.text()
    lines = _emissions_text_lines(resp)
    lines.extend(_notes_lines(resp.notes))
    return "\n".join(lines)


def _render_plan(resp: service.PlanResponse, fmt: str) -> str:
    if fmt == "csv":
        return _render_plan_csv(resp)
    lines = ["== intents ==", _intents_line(resp.intents, resp.intents_source)]
    if resp.macro is not None:
        lines.append("== collaboration square ==")
        lines.append(f"scenario signs b={resp.macro.b_signs} c={resp.macro.c_signs}")
        lines.extend(_outcome_lines(resp.macro))
    if resp.compliance:
        lines.append("== compliance ==")
        for row in resp.compliance:
            flags = _yn(row.c1) + _yn(row.c2) + _yn(row.c3)
            lines.append(f"{row.truck}  flags {flags}  {row.verdict}  {row.inference}")
        lines.append(f"accepted ({len(resp.accepted)}): {', '.join(resp.accepted)}")
    lines.append("== assignment ==")
    if resp.inoperable:
        lines.append(f"inoperable: {', '.join(resp.inoperable)}")
    for plan in resp.plans:
        lines.append(f"{plan.shipper}: {plan.trip_count} trips")
        for trip in plan.trips:
            lines.append(
                f"  trip {trip.trip_index}  {trip.truck}"
                f"  orders {', '.join(trip.orders)}  load {trip.load_kg} kg"
            )
    lines.append("== routing ==")
    lines.extend(
        _route_text_lines(
            service.RouteResponse(
                coalitions=resp.coalitions,
                comparison=resp.route_comparison,
                notes=[],
            )
        )
    )
    lines.append("== emissions ==")
    lines.extend(_emissions_text_lines(resp.emissions))
    lines.extend(_notes_lines(resp.notes))
    return "\n".join(lines)


def _render_plan_csv(resp: service.PlanResponse) -> str:
    out = _Csv()
    out.section("intents")
    out.row(["intents", "source"])
    out.row(["" if resp.intents is None else _join(resp.intents), resp.intents_source])
    if resp.macro is not None:
        out.section("macro")
        out.row(_macro_header(resp.dimensions))
        out.row(_macro_csv_row(resp.macro))
    if resp.compliance:
        out.section("compliance")
        out.row(_FILTER_HEADER)
        out.rows(
            [row.shipper, row.truck, _yn(row.c1), _yn(row.c2), _yn(row.c3),
             row.verdict, row.inference]
            for row in resp.compliance
        )
    out.section("assignment")
    out.row(_ASSIGN_HEADER)
    out.rows(
        [plan.shipper, str(trip.trip_index), trip.truck, _join(trip.orders), trip.load_kg]
        for plan in resp.plans
        for trip in plan.trips
    )
    out.section("routing")
    out.row(_ROUTE_HEADER)
    out.rows(
        _route_csv_rows(
            service.RouteResponse(
                coalitions=resp.coalitions,
                comparison=resp.route_comparison,
                notes=[],
            )
        )
    )
    if resp.route_comparison is not None:
        comparison = resp.route_comparison
        out.section("route_totals")
        out.row(["scenario_type", "total_triplength"])
        out.rows(
            [
                ["FC", comparison.fc_total],
                ["PC", comparison.pc_total],
                ["NC", comparison.nc_total],
                ["FC+PC", comparison.collaborative_total],
            ]
        )
    out.section("emissions")
    out.row(_EMISSION_HEADER)
    out.rows(_emissions_csv_rows(resp.emissions))
    return out.text()


# -- complexity rendering --------------------------------------------------------


def _render_effectors(resp: service.EffectorsResponse, fmt: str) -> str:
    if fmt == "csv":
        out = _Csv()
        out.row(["condition", "polarity", "n", "k_x", "signed"])
        out.rows(
            [e.condition, e.polarity, str(e.n), e.k_x, e.signed]
            for e in resp.effectors
        )
        out.section("summary")
        out.row(["k_o", "system_complexity", "system_state"])
        out.row([resp.k_o, resp.system_complexity, resp.system_state])
        return out.text()
    lines = [
        f"{e.condition} ({e.polarity}, n={e.n}): k_x {e.k_x}, signed {e.signed}"
        for e in resp.effectors
    ]
    lines.append(f"k_o {resp.k_o}")
    lines.append(f"deltas: {', '.join(resp.deltas)}")
    lines.append(f"system complexity {resp.system_complexity}")
    lines.append(f"system state {resp.system_state}")
    return "\n".join(lines)


def _render_trio(resp: service.TrioResponse, fmt: str) -> str:
    if fmt == "csv":
        out = _Csv()
        out.row(["k_o", "d_a", "d_e", "complexity", "r", "state"])
        out.row([resp.k_o, resp.d_a, resp.d_e, resp.complexity, resp.r, resp.state])
        return out.text()
    return "\n".join(
        [
            f"k_o {resp.k_o}",
            f"dA {resp.d_a}",
            f"dE {resp.d_e}",
            f"complexity {resp.complexity}",
            f"r {resp.r}",
            f"state {resp.state}",
        ]
    )


def _render_spider(resp: service.SpiderResponse, fmt: str) -> str:
    if fmt == "csv":
        out = _Csv()
        out.row(["kind", "name", "link_before", "link_after", "node_class"])
        out.rows(
            [node.kind, node.name, node.links[0], node.links[1], node.node_class]
            for node in resp.nodes
        )
        out.section("classes")
        out.row(["node_class", "count"])
        out.rows([key, str(value)] for key, value in sorted(resp.multiset.items()))
        return out.text()
    lines = [
        f"{node.kind} ({node.name})  links {node.links[0]},{node.links[1]}"
        f"  class {node.node_class}"
        for node in resp.nodes
    ]
    counts = ", ".join(f"{key} {value}" for key, value in sorted(resp.multiset.items()))
    lines.append(f"classes: {counts}")
    return "\n".join(lines)


# -- command handlers ---------------------------------------------------------


def _intent_kwargs(args) -> dict:
    return {
        "intents": args.intents,
        "macro_case": args.from_macro,
        "intents_source": args.intents_source,
        "c3_inverted": args.c3_inverted,
    }


def _cmd_macro_eval(args) -> int:
    resp = service.macro_eval(
        service.MacroEvalRequest(scenario=_source(args), target=args.target)
    )
    if args.format == "csv":
        _emit(_render_macro_eval_csv(resp))
    else:
        _emit(_render_macro_eval_text(resp))
    return 0


def _cmd_macro_enumerate(args) -> int:
    resp = service.macro_enumerate(
        service.MacroEnumerateRequest(
            scenario=_source(args), target=args.target, top=args.top
        )
    )
    if args.format == "csv":
        _emit(_render_macro_enumerate_csv(resp))
    else:
        _emit(_render_macro_enumerate_text(resp))
    return 0


def _cmd_micro_filter(args) -> int:
    resp = service.micro_filter(
        service.FilterRequest(scenario=_source(args), **_intent_kwargs(args))
    )
    _emit(_render_filter(resp, args.format))
    return 0


def _cmd_micro_assign(args) -> int:
    resp = service.micro_assign(
        service.AssignRequest(scenario=_source(args), **_intent_kwargs(args))
    )
    _emit(_render_assign(resp, args.format))
    return 0


def _cmd_micro_route(args) -> int:
    resp = service.micro_route(
        service.RouteRequest(
            scenario=_source(args), speed=args.speed, **_intent_kwargs(args)
        )
    )
    _emit(_render_route(resp, args.format))
    return 0


def _cmd_micro_emissions(args) -> int:
    resp = service.micro_emissions(
        service.EmissionsRequest(
            scenario=_source(args),
            speed=args.speed,
            per_distance=args.per_distance,
            **_intent_kwargs(args),
        )
    )
    _emit(_render_emissions(resp, args.format))
    return 0


def _cmd_micro_plan(args) -> int:
    resp = service.micro_plan(
        service.PlanRequest(
            scenario=_source(args),
            speed=args.speed,
            per_distance=args.per_distance,
            **_intent_kwargs(args),
        )
    )
    _emit(_render_plan(resp, args.format))
    return 0


def _cmd_complexity_effectors(args) -> int:
    resp = service.complexity_effectors(
        service.EffectorsRequest(
            scenario=_source(args), deltas=args.deltas, union=args.union
        )
    )
    _emit(_render_effectors(resp, args.format))
    return 0


def _cmd_complexity_trio(args) -> int:
    resp = service.complexity_trio(
        service.TrioRequest(
            scenario=_source(args),
            deltas=args.deltas,
            complexity=args.complexity,
            eps=args.eps,
            union=args.union,
        )
    )
    _emit(_render_trio(resp, args.format))
    return 0


def _cmd_complexity_spider(args) -> int:
    resp = service.complexity_spider()
    _emit(_render_spider(resp, args.format))
    return 0


def _run_fixtures(tokens: list[str]) -> int:
    if tokens[0] == "list":
        if len(tokens) != 1:
            raise UsageError("--fixtures list takes no further arguments")
        _emit("\n".join(fixture_names()))
        return 0
    if tokens[0] == "run":
        if len(tokens) != 2:
            raise UsageError("--fixtures run takes exactly one fixture name")
        result = service.run_fixture(tokens[1])
        lines = []
        for check in result.checks:
            mark = "PASS" if check.passed else "FAIL"
            detail = ""
            if check.paper is not None:
                detail = f" (published {check.paper}; derived {check.expected})"
            if not check.passed:
                detail += f" expected {check.expected}, got {check.actual}"
            lines.append(f"[{mark}] {check.id}{detail}")
        passed = sum(1 for check in result.checks if check.passed)
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"{result.name}: {status} ({passed}/{len(result.checks)} checks)")
        _emit("\n".join(lines))
        return 0 if result.passed else 1
    raise UsageError(f"--fixtures expects 'list' or 'run <name>', got {tokens[0]!r}")


# -- argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 64 instead of argparse's default 2
        raise UsageError(message)


def _positive_int(token: str) -> int:
    value = int(token)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive count")
    return value


def _add_common(parser, scenario: bool = True) -> None:
    if scenario:
        parser.add_argument("scenario", help="scenario file path or bundled fixture name")
        parser.add_argument(
            "--strict", action="store_true",
            help="treat scenario warnings as errors regardless of its meta.mode",
        )
    parser.add_argument(
        "--format", choices=("text", "csv"), default="text",
        help="output format (default text)",
    )


def _add_intents(parser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--intents", metavar="Q,Q,...",
        help="explicit intent vector, comma-separated rationals",
    )
    group.add_argument(
        "--from-macro", dest="from_macro", type=int, metavar="CASE_ID",
        help="take the intent vector from a sampled sign case",
    )
    parser.add_argument(
        "--intents-source", dest="intents_source", choices=("cc", "sn"), default="cc",
        help="side of the collaboration square feeding the intents (default cc)",
    )
    parser.add_argument(
        "--c3-inverted", dest="c3_inverted", action="store_true",
        help="flip the third compliance criterion to gains <= intent",
    )


def _add_speed(parser) -> None:
    parser.add_argument(
        "--speed", default="1", metavar="Q",
        help="distance units per minute for schedule checks (default 1)",
    )


def _add_deltas(parser) -> None:
    parser.add_argument(
        "--deltas", metavar="Q,...x8",
        help="eight city deltas (po,s,it,i,r,fe,g,e); default 0,0,0,0,0,0,0,1",
    )
    parser.add_argument(
        "--union", choices=("max", "sum"), default="max",
        help="aggregation for the delta union (default max)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="colog",
        description="Collaboration planning for city logistics.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--fixtures", nargs="+", metavar="ACTION",
        help="'list' the bundled fixtures or 'run <name>' and print pass/fail",
    )
    subcommands = parser.add_subparsers(dest="command", metavar="command")

    macro = subcommands.add_parser("macro", help="collaboration square evaluation")
    macro_sub = macro.add_subparsers(dest="subcommand", metavar="subcommand")
    macro_eval = macro_sub.add_parser("eval", help="evaluate scenario signs and sampled cases")
    _add_common(macro_eval)
    macro_eval.add_argument(
        "--target", choices=("sn", "cc", "both"), default="both",
        help="ranking criterion for sampled cases (default both)",
    )
    macro_enum = macro_sub.add_parser("enumerate", help="rank all sign assignments")
    _add_common(macro_enum)
    macro_enum.add_argument(
        "--target", choices=("sn", "cc", "both"), default="both",
        help="ranking criterion (default both)",
    )
    macro_enum.add_argument(
        "--top", type=_positive_int, metavar="N", help="show only the N best assignments"
    )

    micro = subcommands.add_parser("micro", help="compliance, assignment, routing, emissions")
    micro_sub = micro.add_subparsers(dest="subcommand", metavar="subcommand")
    micro_filter = micro_sub.add_parser("filter", help="compliance-filter the trucks")
    _add_common(micro_filter)
    _add_intents(micro_filter)
    micro_assign = micro_sub.add_parser("assign", help="trip-count minimal assignments")
    _add_common(micro_assign)
    _add_intents(micro_assign)
    micro_route = micro_sub.add_parser("route", help="coalition routes and length comparison")
    _add_common(micro_route)
    _add_intents(micro_route)
    _add_speed(micro_route)
    micro_emissions = micro_sub.add_parser("emissions", help="symbolic emission accounting")
    _add_common(micro_emissions)
    _add_intents(micro_emissions)
    _add_speed(micro_emissions)
    micro_emissions.add_argument(
        "--per-distance", dest="per_distance", action="store_true",
        help="weight each trip's emission factor by its route length",
    )
    micro_plan = micro_sub.add_parser("plan", help="full pipeline report")
    _add_common(micro_plan)
    _add_intents(micro_plan)
    _add_speed(micro_plan)
    micro_plan.add_argument(
        "--per-distance", dest="per_distance", action="store_true",
        help="weight each trip's emission factor by its route length",
    )

    complexity = subcommands.add_parser("complexity", help="uncertainty and tangibility")
    complexity_sub = complexity.add_subparsers(dest="subcommand", metavar="subcommand")
    effectors = complexity_sub.add_parser("effectors", help="uncertainty effector aggregate")
    _add_common(effectors)
    _add_deltas(effectors)
    trio = complexity_sub.add_parser("trio", help="trio conditionality classification")
    _add_common(trio)
    _add_deltas(trio)
    trio.add_argument(
        "--complexity", metavar="Q",
        help="override the system complexity instead of deriving it",
    )
    trio.add_argument(
        "--eps", default="1/20", metavar="Q",
        help="half-width of the r = 1 band (default 1/20)",
    )
    spider = complexity_sub.add_parser("spider", help="city octagon tangibility classes")
    _add_common(spider, scenario=False)

    return parser


_DISPATCH: dict[tuple[str, str], Callable] = {
    ("macro", "eval"): _cmd_macro_eval,
    ("macro", "enumerate"): _cmd_macro_enumerate,
    ("micro", "filter"): _cmd_micro_filter,
    ("micro", "assign"): _cmd_micro_assign,
    ("micro", "route"): _cmd_micro_route,
    ("micro", "emissions"): _cmd_micro_emissions,
    ("micro", "plan"): _cmd_micro_plan,
    ("complexity", "effectors"): _cmd_complexity_effectors,
    ("complexity", "trio"): _cmd_complexity_trio,
    ("complexity", "spider"): _cmd_complexity_spider,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.fixtures is not None:
            return _run_fixtures(args.fixtures)
        if args.command is None:
            raise UsageError(
                "a command is required: macro, micro, or complexity "
                "(or --fixtures list|run <name>)"
            )
        subcommand = getattr(args, "subcommand", None)
        if subcommand is None:
            raise UsageError(f"'{args.command}' requires a subcommand")
        return _DISPATCH[(args.command, subcommand)](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CologError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
