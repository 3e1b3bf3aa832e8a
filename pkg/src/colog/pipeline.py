"""End-to-end orchestration: macro evaluation -> intent extraction ->
compliance filter -> trip assignment -> coalition routing -> emission
accounting -> comparison report.

Declared route plans (scenario.route_plans) take precedence over derived
ones: the pipeline routes exactly what was declared and reports capacity
or coverage problems as warnings instead of failing, because printed
plans in the source material are the reproduction target even where they
contradict their own capacities. Without declared plans, every detected
coalition gets a minimum-trip plan.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .assignment import Trip, TripPlan, min_trips
from .compliance import ComplianceReport, filter_trucks
from .emissions import (
    EmissionComparison,
    EmissionVector,
    account_emissions,
    compare_emissions,
    resolve_alternative,
    strictly_better,
)
from .errors import DanglingReferenceError, MissingIntent, NormalizationError, UnknownKey
from .model import Order, RoutePlanSpec, Scenario
from .routing import (
    Coalition,
    RouteResult,
    ScenarioComparison,
    build_routes,
    compare_scenarios,
    detect_coalitions,
    validate_schedule,
)
from .square import CollaborationOutcome, eval_scs
from ._util import fmt_q, natural_key


@dataclass(frozen=True)
class CoalitionPlanReport:
    coalition: Coalition
    plan: TripPlan
    result: RouteResult
    emissions: EmissionVector
    declared: bool
    violations: tuple[str, ...]


@dataclass(frozen=True)
class CoalitionEmissionRow:
    name: str
    kind: str
    members: tuple[str, ...]
    vector: EmissionVector
    members_nc: EmissionVector | None
    verdict: bool | None


@dataclass(frozen=True)
class PipelineReport:
    intents: tuple[Fraction, ...] | None
    intents_source: str
    macro_outcome: CollaborationOutcome | None
    compliance: ComplianceReport | None
    inoperable: tuple[str, ...]
    minima: tuple[tuple[str, TripPlan], ...]
    coalitions: tuple[CoalitionPlanReport, ...]
    route_comparison: ScenarioComparison | None
    emission_comparison: EmissionComparison | None
    emission_rows: tuple[CoalitionEmissionRow, ...]
    notes: tuple[str, ...]


def resolve_intents(
    scenario: Scenario,
    intents: Sequence[Fraction] | None = None,
    macro_case: int | None = None,
    intents_source: str = "cc",
) -> tuple[tuple[Fraction, ...], str]:
    """Resolve the intent vector feeding the compliance filter.

    Precedence: explicit vector, then a sampled macro case by id, then the
    compliance rule's own intents, then the scenario's signs evaluated
    against its blocks. intents_source picks the CC (default) or the
    experimental SN side of macro-derived vectors.
    """
    if intents_source not in ("cc", "sn"):
        raise NormalizationError(f"intents source must be 'cc' or 'sn', got {intents_source!r}")

    def from_outcome(outcome: CollaborationOutcome) -> tuple[Fraction, ...]:
        return outcome.cc_vector if intents_source == "cc" else outcome.sn_vector

    if intents is not None:
        vector = tuple(Fraction(v) for v in intents)
        return vector, "explicit"
    if macro_case is not None:
        if scenario.blocks is None:
            raise MissingIntent("scenario has no collaboration_blocks to evaluate the case against")
        for case in scenario.sign_cases:
            if case.case_id == macro_case:
                outcome = eval_scs(scenario.blocks, case)
                return from_outcome(outcome), f"macro case {macro_case} ({intents_source})"
        raise UnknownKey(f"no sampled sign case with id {macro_case}")
    if scenario.compliance is not None and scenario.compliance.intents is not None:
        return scenario.compliance.intents, "compliance rule"
    if scenario.blocks is not None and scenario.signs is not None:
        outcome = eval_scs(scenario.blocks, scenario.signs)
        return from_outcome(outcome), f"scenario signs ({intents_source})"
    raise MissingIntent(
        "no intent vector: pass one explicitly, or provide compliance.intents "
        "or collaboration_blocks with signs"
    )


def _declared_trip(
    spec_trucks: Sequence[str],
    clients: Sequence[str],
    orders_by_client: Mapping[str, Sequence[Order]],
    roster: Mapping,
    weights,
    name: str,
    index: int,
    notes: list[str],
    accepted_labels: set,
    served: Sequence[str],
) -> Trip:
    candidates = [roster[label] for label in spec_trucks]
    if len(candidates) == 1:
        truck = candidates[0]
    else:
        truck = resolve_alternative(candidates, weights)
        notes.append(
            f"{name} trip {index}: chose {truck.label} among alternatives "
            f"{', '.join(spec_trucks)}"
        )
    if truck.label not in accepted_labels:
        notes.append(f"warning: {name} trip {index} uses rejected truck {truck.label}")
    orders = []
    for client in clients:
        if client not in served:
            notes.append(f"warning: {name} trip {index} serves {client} outside the coalition's client set")
        client_orders = orders_by_client.get(client, ())
        if not client_orders:
            notes.append(f"warning: {name} trip {index} has no orders for client {client}")
        orders.extend(client_orders)
    orders.sort(key=lambda o: (natural_key(o.client), natural_key(o.shipper)))
    trip = Trip(truck.label, tuple(orders))
    if trip.load_kg > truck.capacity_kg:
        notes.append(
            f"warning: {name} trip {index} loads {fmt_q(trip.load_kg)} kg on "
            f"{truck.label} (capacity {fmt_q(truck.capacity_kg)} kg)"
        )
    return trip


def run_pipeline(
    scenario: Scenario,
    *,
    intents: Sequence[Fraction] | None = None,
    macro_case: int | None = None,
    intents_source: str = "cc",
    c3_inverted: bool = False,
    speed: Fraction = Fraction(1),
    departure: int | None = None,
    per_distance: bool = False,
    weights: Mapping[str, Fraction] | None = None,
) -> PipelineReport:
    notes = [f"scenario: {w}" for w in scenario.warnings]

    macro_outcome = None
    if scenario.blocks is not None and scenario.signs is not None:
        macro_outcome = eval_scs(scenario.blocks, scenario.signs)

    try:
        resolved, source = resolve_intents(scenario, intents, macro_case, intents_source)
    except MissingIntent:
        if scenario.trucks or scenario.orders or scenario.compliance:
            raise
        resolved, source = None, "none"
        notes.append("no operational data and no intent source; nothing to plan")

    # Step 1: compliance filter.
    compliance_report: ComplianceReport | None = None
    if scenario.compliance is not None and resolved is not None:
        rule = replace(scenario.compliance, intents=resolved)
        compliance_report = filter_trucks(scenario.trucks, rule, c3_inverted)
        accepted_by_owner = compliance_report.accepted_by_owner()
    elif scenario.trucks:
        notes.append("no compliance rule; all trucks admitted")
        accepted_by_owner = {}
        for truck in scenario.trucks:
            accepted_by_owner.setdefault(truck.owner, []).append(truck)
    else:
        accepted_by_owner = {}
    accepted_labels = {t.label for trucks in accepted_by_owner.values() for t in trucks}

    # Operability: a shipper with orders but no admitted truck cannot run.
    with_orders = [s for s in scenario.shippers if scenario.orders_of(s.id)]
    inoperable = tuple(s.id for s in with_orders if not accepted_by_owner.get(s.id))
    operable = [s for s in with_orders if s.id not in inoperable]
    for sid in inoperable:
        notes.append(f"{sid} is inoperable: no compliance-accepted truck")

    # Step 2: per-shipper minimum-trip plans.
    minima = []
    for shipper in operable:
        plan = min_trips(scenario.orders_of(shipper.id), accepted_by_owner[shipper.id])
        minima.append((shipper.id, plan))

    # Step 3: coalition routing.
    coalitions = detect_coalitions(operable)
    reports: list[CoalitionPlanReport] = []
    if scenario.route_plans:
        for spec in scenario.route_plans:
            reports.append(
                _routed_declared(scenario, spec, coalitions, weights, notes,
                                 accepted_labels, speed, departure, per_distance)
            )
    else:
        for coalition in coalitions:
            reports.append(
                _routed_derived(scenario, coalition, accepted_by_owner, notes,
                                speed, departure, per_distance)
            )

    route_comparison = None
    emission_comparison = None
    emission_rows: tuple[CoalitionEmissionRow, ...] = ()
    if reports:
        route_comparison = compare_scenarios([r.result for r in reports])
        by_type: dict[str, EmissionVector] = {}
        nc_by_member: dict[str, EmissionVector] = {}
        for report in reports:
            kind = report.coalition.kind
            by_type[kind] = by_type.get(kind, EmissionVector()) + report.emissions
            if kind == "NC":
                nc_by_member[report.coalition.members[0]] = report.emissions
        emission_comparison = compare_emissions(by_type, weights)
        rows = []
        for report in reports:
            coalition = report.coalition
            if coalition.kind == "NC":
                continue
            if all(m in nc_by_member for m in coalition.members):
                members_nc = EmissionVector()
                for member in coalition.members:
                    members_nc = members_nc + nc_by_member[member]
                verdict = strictly_better(report.emissions, members_nc, weights)[0]
            else:
                members_nc, verdict = None, None
            rows.append(
                CoalitionEmissionRow(
                    coalition.name, coalition.kind, coalition.members,
                    report.emissions, members_nc, verdict,
                )
            )
        emission_rows = tuple(rows)

    return PipelineReport(
        intents=resolved,
        intents_source=source,
        macro_outcome=macro_outcome,
        compliance=compliance_report,
        inoperable=inoperable,
        minima=tuple(minima),
        coalitions=tuple(reports),
        route_comparison=route_comparison,
        emission_comparison=emission_comparison,
        emission_rows=emission_rows,
        notes=tuple(notes),
    )


def _routed_declared(
    scenario: Scenario,
    spec: RoutePlanSpec,
    coalitions: Sequence[Coalition],
    weights,
    notes: list[str],
    accepted_labels: set,
    speed,
    departure,
    per_distance: bool,
) -> CoalitionPlanReport:
    match = None
    for coalition in coalitions:
        if coalition.kind == spec.kind and set(coalition.members) == set(spec.members):
            match = coalition
            break
    if match is None:
        raise DanglingReferenceError(
            f"route plan {spec.kind} {'-'.join(spec.members)} matches no detected "
            f"coalition (member inoperable or client sets changed)"
        )
    orders_by_client: dict[str, list[Order]] = {}
    for order in scenario.orders:
        if order.shipper in match.members:
            orders_by_client.setdefault(order.client, []).append(order)
    roster = scenario.truck_roster
    trips = []
    for index, trip_spec in enumerate(spec.trips, start=1):
        trips.append(
            _declared_trip(
                trip_spec.trucks, trip_spec.clients, orders_by_client, roster,
                weights, match.name, index, notes, accepted_labels,
                match.served_clients,
            )
        )
    plan = TripPlan(tuple(trips))
    result = build_routes(match, plan, scenario.network, spec.depot, spec.bound)
    violations = validate_schedule(result, scenario.orders, speed, departure)
    for violation in violations:
        notes.append(f"violation: {violation}")
    vector = account_emissions(result, scenario.trucks, per_distance)
    return CoalitionPlanReport(match, plan, result, vector, True, tuple(violations))


def _routed_derived(
    scenario: Scenario,
    coalition: Coalition,
    accepted_by_owner: Mapping[str, Sequence],
    notes: list[str],
    speed,
    departure,
    per_distance: bool,
) -> CoalitionPlanReport:
    if coalition.kind == "PC":
        orders = [
            o for o in scenario.orders
            if o.shipper in coalition.members and o.client in coalition.served_clients
        ]
    else:
        orders = [o for o in scenario.orders if o.shipper in coalition.members]
    trucks = [t for m in coalition.members for t in accepted_by_owner.get(m, ())]
    plan = min_trips(orders, trucks)
    result = build_routes(coalition, plan, scenario.network, None, None)
    violations = validate_schedule(result, scenario.orders, speed, departure)
    for violation in violations:
        notes.append(f"violation: {violation}")
    vector = account_emissions(result, scenario.trucks, per_distance)
    return CoalitionPlanReport(coalition, plan, result, vector, False, tuple(violations))
