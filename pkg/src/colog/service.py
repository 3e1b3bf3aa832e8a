"""Service facade: pydantic request/response models, plain handler
functions, and the FastAPI app that routes to them.

The CLI calls the handlers in-process, so the HTTP layer and the command
line always report the same values. Rationals travel as canonical strings
("60", "1.5", "2/3") to keep results exact across the wire.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict

from . import __version__
from . import fixtures as fixture_store
from .complexity import (
    CityDeltas,
    canonical_spider_network,
    classify_spider_node,
    classify_trio,
    effector_sum,
    system_complexity,
    system_state,
)
from .compliance import filter_trucks
from .errors import InfeasibleError, InputError, MissingIntent, SchemaError
from .model import Scenario, parse_scenario
from .pipeline import PipelineReport, resolve_intents, run_pipeline
from .square import eval_scs, enumerate_sign_cases, rank_sampled_cases
from ._util import fmt_q, parse_q


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


# -- scenario source ----------------------------------------------------------


class ScenarioSource(_Model):
    """Inline YAML text or the name of a bundled fixture (exactly one)."""

    text: str | None = None
    fixture: str | None = None
    strict: bool | None = None

    def resolve(self) -> Scenario:
        if (self.text is None) == (self.fixture is None):
            raise SchemaError("provide exactly one of scenario 'text' or 'fixture'")
        raw = self.text if self.text is not None else fixture_store.fixture_text(self.fixture)
        return parse_scenario(raw, strict=self.strict)


def _q_list(values, what: str) -> tuple[Fraction, ...] | None:
    if values is None:
        return None
    if isinstance(values, str):
        values = [part.strip() for part in values.split(",") if part.strip()]
    try:
        return tuple(parse_q(v) for v in values)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot parse {what}: {exc}") from None


def _q_one(value, what: str) -> Fraction:
    try:
        return parse_q(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot parse {what}: {exc}") from None


# -- shared response fragments -------------------------------------------------


class OutcomeRow(_Model):
    """One evaluated sign assignment (enumerated, sampled, or the scenario's)."""

    case_id: int | None = None
    b_signs: str
    c_signs: str
    sn_vector: list[str]
    sn_weight: str
    cc_vector: list[str]
    cc_weight: str


def _outcome_row(signs, outcome) -> OutcomeRow:
    return OutcomeRow(
        case_id=signs.case_id,
        b_signs=signs.b_text,
        c_signs=signs.c_text,
        sn_vector=[fmt_q(v) for v in outcome.sn_vector],
        sn_weight=fmt_q(outcome.sn_weight),
        cc_vector=[fmt_q(v) for v in outcome.cc_vector],
        cc_weight=fmt_q(outcome.cc_weight),
    )


def _emap(vector) -> dict[str, str]:
    return {base: fmt_q(value) for base, value in vector.items}


# -- health and fixtures -------------------------------------------------------


class HealthResponse(_Model):
    status: str
    version: str


def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


class FixtureListResponse(_Model):
    names: list[str]


def list_fixtures() -> FixtureListResponse:
    return FixtureListResponse(names=list(fixture_store.fixture_names()))


class FixtureCheckModel(_Model):
    id: str
    expected: str
    actual: str
    passed: bool
    paper: str | None = None


class FixtureRunResponse(_Model):
    name: str
    passed: bool
    checks: list[FixtureCheckModel]


def run_fixture(name: str) -> FixtureRunResponse:
    run = fixture_store.run_fixture(name)
    return FixtureRunResponse(
        name=run.name,
        passed=run.passed,
        checks=[
            FixtureCheckModel(
                id=c.id, expected=c.expected, actual=c.actual,
                passed=c.passed, paper=c.paper,
            )
            for c in run.checks
        ],
    )


# -- macro ----------------------------------------------------------------------


class MacroEvalRequest(_Model):
    scenario: ScenarioSource
    target: Literal["sn", "cc", "both"] = "both"


class MacroEvalResponse(_Model):
    dimensions: list[str]
    target: str
    scenario_signs: OutcomeRow | None
    cases: list[OutcomeRow]
    best_case_id: int | None


def macro_eval(request: MacroEvalRequest) -> MacroEvalResponse:
    scenario = request.scenario.resolve()
    if scenario.blocks is None:
        raise SchemaError("scenario has no collaboration_blocks section")
    own = None
    if scenario.signs is not None:
        own = _outcome_row(scenario.signs, eval_scs(scenario.blocks, scenario.signs))
    cases = [
        _outcome_row(signs, eval_scs(scenario.blocks, signs))
        for signs in scenario.sign_cases
    ]
    best_id = None
    if scenario.sign_cases:
        best_signs, _ = rank_sampled_cases(scenario.sign_cases, scenario.blocks, request.target)
        best_id = best_signs.case_id
    if own is None and not cases:
        raise SchemaError("scenario has neither signs nor sign_cases to evaluate")
    return MacroEvalResponse(
        dimensions=list(scenario.dimensions),
        target=request.target,
        scenario_signs=own,
        cases=cases,
        best_case_id=best_id,
    )


class MacroEnumerateRequest(_Model):
    scenario: ScenarioSource
    target: Literal["sn", "cc", "both"] = "both"
    top: int | None = None


class MacroEnumerateResponse(_Model):
    dimensions: list[str]
    target: str
    count: int
    rows: list[OutcomeRow]


def macro_enumerate(request: MacroEnumerateRequest) -> MacroEnumerateResponse:
    scenario = request.scenario.resolve()
    if scenario.blocks is None:
        raise SchemaError("scenario has no collaboration_blocks section")
    if request.top is not None and request.top < 1:
        raise SchemaError("top must be a positive count")
    ranked = enumerate_sign_cases(scenario.blocks, request.target)
    rows = [_outcome_row(signs, outcome) for signs, outcome in ranked]
    shown = rows[: request.top] if request.top is not None else rows
    return MacroEnumerateResponse(
        dimensions=list(scenario.dimensions),
        target=request.target,
        count=len(rows),
        rows=shown,
    )


# -- micro ----------------------------------------------------------------------


class FilterRequest(_Model):
    scenario: ScenarioSource
    intents: list[str | int | float] | str | None = None
    macro_case: int | None = None
    intents_source: Literal["cc", "sn"] = "cc"
    c3_inverted: bool = False


class ComplianceRowModel(_Model):
    shipper: str
    truck: str
    c1: bool
    c2: bool
    c3: bool
    verdict: str
    inference: str


class FilterResponse(_Model):
    intents: list[str]
    intents_source: str
    rows: list[ComplianceRowModel]
    accepted: list[str]


def micro_filter(request: FilterRequest) -> FilterResponse:
    scenario = request.scenario.resolve()
    return _filter_response(scenario, request)


def _filter_response(scenario: Scenario, request) -> FilterResponse:
    if scenario.compliance is None:
        raise MissingIntent("scenario has no compliance section to filter against")
    resolved, source = resolve_intents(
        scenario,
        _q_list(request.intents, "intents"),
        request.macro_case,
        request.intents_source,
    )
    report = filter_trucks(
        scenario.trucks,
        replace(scenario.compliance, intents=resolved),
        request.c3_inverted,
    )
    rows = [
        ComplianceRowModel(
            shipper=r.truck.owner,
            truck=r.truck.label,
            c1=r.c1,
            c2=r.c2,
            c3=r.c3,
            verdict=r.verdict.value,
            inference=r.inference.value,
        )
        for r in report.rows
    ]
    return FilterResponse(
        intents=[fmt_q(v) for v in resolved],
        intents_source=source,
        rows=rows,
        accepted=[t.label for t in report.accepted()],
    )


class AssignRequest(_Model):
    scenario: ScenarioSource
    intents: list[str | int | float] | str | None = None
    macro_case: int | None = None
    intents_source: Literal["cc", "sn"] = "cc"
    c3_inverted: bool = False


class TripModel(_Model):
    trip_index: int
    truck: str
    orders: list[str]
    clients: list[str]
    load_kg: str


class ShipperPlanModel(_Model):
    shipper: str
    trip_count: int
    trips: list[TripModel]


class AssignResponse(_Model):
    intents: list[str] | None
    intents_source: str
    inoperable: list[str]
    plans: list[ShipperPlanModel]
    notes: list[str]


def _trip_models(plan) -> list[TripModel]:
    return [
        TripModel(
            trip_index=i,
            truck=t.truck,
            orders=list(t.order_ids),
            clients=list(t.clients),
            load_kg=fmt_q(t.load_kg),
        )
        for i, t in enumerate(plan.trips, start=1)
    ]


def _pipeline(scenario: Scenario, request, **extra) -> PipelineReport:
    return run_pipeline(
        scenario,
        intents=_q_list(request.intents, "intents"),
        macro_case=request.macro_case,
        intents_source=request.intents_source,
        c3_inverted=request.c3_inverted,
        **extra,
    )


def micro_assign(request: AssignRequest) -> AssignResponse:
    scenario = request.scenario.resolve()
    report = _pipeline(scenario, request)
    return AssignResponse(
        intents=None if report.intents is None else [fmt_q(v) for v in report.intents],
        intents_source=report.intents_source,
        inoperable=list(report.inoperable),
        plans=[
            ShipperPlanModel(
                shipper=sid, trip_count=plan.trip_count, trips=_trip_models(plan)
            )
            for sid, plan in report.minima
        ],
        notes=list(report.notes),
    )


class RouteRequest(_Model):
    scenario: ScenarioSource
    intents: list[str | int | float] | str | None = None
    macro_case: int | None = None
    intents_source: Literal["cc", "sn"] = "cc"
    c3_inverted: bool = False
    speed: str | int | float = 1


class RouteModel(_Model):
    trip_index: int
    truck: str
    clients: list[str]
    nodes: list[str]
    length: str
    text: str


class CoalitionRoutesModel(_Model):
    name: str
    kind: str
    members: list[str]
    depot: str
    declared: bool
    routes: list[RouteModel]
    total_triplength: str
    violations: list[str]


class LengthRowModel(_Model):
    name: str
    kind: str
    members: list[str]
    total: str
    members_nc_total: str | None
    verdict: bool | None


class RouteComparisonModel(_Model):
    fc_total: str
    pc_total: str
    nc_total: str
    collaborative_total: str
    verdict: bool | None
    rows: list[LengthRowModel]


class RouteResponse(_Model):
    coalitions: list[CoalitionRoutesModel]
    comparison: RouteComparisonModel | None
    notes: list[str]


def _coalition_routes(report: PipelineReport) -> list[CoalitionRoutesModel]:
    models = []
    for cr in report.coalitions:
        result = cr.result
        models.append(
            CoalitionRoutesModel(
                name=result.coalition.name,
                kind=result.coalition.kind,
                members=list(result.coalition.members),
                depot=result.depot,
                declared=cr.declared,
                routes=[
                    RouteModel(
                        trip_index=r.trip_index,
                        truck=r.truck,
                        clients=list(r.clients),
                        nodes=list(r.nodes),
                        length=fmt_q(r.length),
                        text=r.text,
                    )
                    for r in result.routes
                ],
                total_triplength=fmt_q(result.total_triplength),
                violations=list(cr.violations),
            )
        )
    return models


def _route_comparison(report: PipelineReport) -> RouteComparisonModel | None:
    comparison = report.route_comparison
    if comparison is None:
        return None
    return RouteComparisonModel(
        fc_total=fmt_q(comparison.total_for("FC")),
        pc_total=fmt_q(comparison.total_for("PC")),
        nc_total=fmt_q(comparison.nc_total),
        collaborative_total=fmt_q(comparison.collaborative_total),
        verdict=comparison.verdict,
        rows=[
            LengthRowModel(
                name=row.name,
                kind=row.kind,
                members=list(row.members),
                total=fmt_q(row.total),
                members_nc_total=None if row.members_nc_total is None else fmt_q(row.members_nc_total),
                verdict=row.verdict,
            )
            for row in comparison.rows
        ],
    )


def micro_route(request: RouteRequest) -> RouteResponse:
    scenario = request.scenario.resolve()
    report = _pipeline(scenario, request, speed=_q_one(request.speed, "speed"))
    return RouteResponse(
        coalitions=_coalition_routes(report),
        comparison=_route_comparison(report),
        notes=list(report.notes),
    )


class EmissionsRequest(_Model):
    scenario: ScenarioSource
    intents: list[str | int | float] | str | None = None
    macro_case: int | None = None
    intents_source: Literal["cc", "sn"] = "cc"
    c3_inverted: bool = False
    speed: str | int | float = 1
    per_distance: bool = False


class CoalitionEmissionModel(_Model):
    name: str
    kind: str
    members: list[str]
    vector: dict[str, str]
    text: str


class EmissionRowModel(_Model):
    name: str
    kind: str
    members: list[str]
    vector: dict[str, str]
    members_nc: dict[str, str] | None
    verdict: bool | None


class EmissionComparisonModel(_Model):
    fc: dict[str, str]
    pc: dict[str, str]
    nc: dict[str, str]
    combined: dict[str, str]
    scalarized: dict[str, str]
    combined_scalarized: str
    verdict: bool | None
    used_fallback: bool


class EmissionsResponse(_Model):
    coalitions: list[CoalitionEmissionModel]
    comparison: EmissionComparisonModel | None
    rows: list[EmissionRowModel]
    notes: list[str]


def _emissions_response(report: PipelineReport) -> EmissionsResponse:
    coalitions = [
        CoalitionEmissionModel(
            name=cr.result.coalition.name,
            kind=cr.result.coalition.kind,
            members=list(cr.result.coalition.members),
            vector=_emap(cr.emissions),
            text=cr.emissions.text,
        )
        for cr in report.coalitions
    ]
    comparison = None
    if report.emission_comparison is not None:
        ec = report.emission_comparison
        comparison = EmissionComparisonModel(
            fc=_emap(ec.vector_for("FC")),
            pc=_emap(ec.vector_for("PC")),
            nc=_emap(ec.vector_for("NC")),
            combined=_emap(ec.combined),
            scalarized={kind: fmt_q(value) for kind, value in ec.scalarized},
            combined_scalarized=fmt_q(ec.combined.scalarized()),
            verdict=ec.verdict,
            used_fallback=ec.used_fallback,
        )
    rows = [
        EmissionRowModel(
            name=row.name,
            kind=row.kind,
            members=list(row.members),
            vector=_emap(row.vector),
            members_nc=None if row.members_nc is None else _emap(row.members_nc),
            verdict=row.verdict,
        )
        for row in report.emission_rows
    ]
    return EmissionsResponse(
        coalitions=coalitions, comparison=comparison, rows=rows, notes=list(report.notes)
    )


def micro_emissions(request: EmissionsRequest) -> EmissionsResponse:
    scenario = request.scenario.resolve()
    report = _pipeline(
        scenario, request,
        speed=_q_one(request.speed, "speed"),
        per_distance=request.per_distance,
    )
    return _emissions_response(report)


class PlanRequest(_Model):
    scenario: ScenarioSource
    intents: list[str | int | float] | str | None = None
    macro_case: int | None = None
    intents_source: Literal["cc", "sn"] = "cc"
    c3_inverted: bool = False
    speed: str | int | float = 1
    per_distance: bool = False


class PlanResponse(_Model):
    dimensions: list[str]
    intents: list[str] | None
    intents_source: str
    macro: OutcomeRow | None
    compliance: list[ComplianceRowModel]
    accepted: list[str]
    inoperable: list[str]
    plans: list[ShipperPlanModel]
    coalitions: list[CoalitionRoutesModel]
    route_comparison: RouteComparisonModel | None
    emissions: EmissionsResponse
    notes: list[str]


def micro_plan(request: PlanRequest) -> PlanResponse:
    scenario = request.scenario.resolve()
    report = _pipeline(
        scenario, request,
        speed=_q_one(request.speed, "speed"),
        per_distance=request.per_distance,
    )
    macro = None
    if report.macro_outcome is not None and scenario.signs is not None:
        macro = _outcome_row(scenario.signs, report.macro_outcome)
    compliance_rows = []
    accepted = []
    if report.compliance is not None:
        compliance_rows = [
            ComplianceRowModel(
                shipper=r.truck.owner,
                truck=r.truck.label,
                c1=r.c1,
                c2=r.c2,
                c3=r.c3,
                verdict=r.verdict.value,
                inference=r.inference.value,
            )
            for r in report.compliance.rows
        ]
        accepted = [t.label for t in report.compliance.accepted()]
    return PlanResponse(
        dimensions=list(scenario.dimensions),
        intents=None if report.intents is None else [fmt_q(v) for v in report.intents],
        intents_source=report.intents_source,
        macro=macro,
        compliance=compliance_rows,
        accepted=accepted,
        inoperable=list(report.inoperable),
        plans=[
            ShipperPlanModel(shipper=sid, trip_count=plan.trip_count, trips=_trip_models(plan))
            for sid, plan in report.minima
        ],
        coalitions=_coalition_routes(report),
        route_comparison=_route_comparison(report),
        emissions=_emissions_response(report),
        notes=list(report.notes),
    )


# -- complexity -------------------------------------------------------------------


_DEFAULT_DELTAS = ("0", "0", "0", "0", "0", "0", "0", "1")


class EffectorsRequest(_Model):
    scenario: ScenarioSource
    deltas: list[str | int | float] | str | None = None
    union: Literal["max", "sum"] = "max"


class EffectorModel(_Model):
    condition: str
    polarity: str
    n: int
    k_x: str
    signed: str


class EffectorsResponse(_Model):
    effectors: list[EffectorModel]
    k_o: str
    deltas: list[str]
    system_complexity: str
    system_state: str


def _deltas(request) -> CityDeltas:
    values = _q_list(request.deltas, "deltas")
    if values is None:
        values = tuple(Fraction(v) for v in _DEFAULT_DELTAS)
    return CityDeltas.from_sequence(values)


def complexity_effectors(request: EffectorsRequest) -> EffectorsResponse:
    scenario = request.scenario.resolve()
    k = effector_sum(scenario.effectors)
    deltas = _deltas(request)
    complexity = system_complexity(k, deltas, request.union)
    return EffectorsResponse(
        effectors=[
            EffectorModel(
                condition=e.condition,
                polarity=e.polarity,
                n=e.n,
                k_x=fmt_q(e.k_x),
                signed=fmt_q(e.signed),
            )
            for e in scenario.effectors
        ],
        k_o=fmt_q(k.k_o),
        deltas=[fmt_q(v) for v in deltas.as_tuple()],
        system_complexity=fmt_q(complexity),
        system_state=fmt_q(system_state(complexity)),
    )


class TrioRequest(_Model):
    scenario: ScenarioSource
    deltas: list[str | int | float] | str | None = None
    complexity: str | int | float | None = None
    eps: str | int | float = "1/20"
    union: Literal["max", "sum"] = "max"


class TrioResponse(_Model):
    k_o: str
    d_a: str
    d_e: str
    complexity: str
    r: str
    state: str


def complexity_trio(request: TrioRequest) -> TrioResponse:
    scenario = request.scenario.resolve()
    k = effector_sum(scenario.effectors)
    deltas = _deltas(request)
    if request.complexity is not None:
        complexity = _q_one(request.complexity, "complexity")
    else:
        complexity = system_complexity(k, deltas, request.union)
    d_a = deltas.delta_a(request.union)
    result = classify_trio(complexity, k, d_a, deltas.e, _q_one(request.eps, "eps"))
    return TrioResponse(
        k_o=fmt_q(k.k_o),
        d_a=fmt_q(d_a),
        d_e=fmt_q(deltas.e),
        complexity=fmt_q(complexity),
        r=fmt_q(result.r),
        state=result.state.value,
    )


class SpiderNodeModel(_Model):
    kind: str
    name: str
    links: list[str]
    node_class: str


class SpiderResponse(_Model):
    nodes: list[SpiderNodeModel]
    multiset: dict[str, int]


def complexity_spider() -> SpiderResponse:
    from .complexity import NODE_NAMES

    nodes = []
    counts = {"Tangible": 0, "Intangible": 0, "SemiTangible": 0}
    for node in canonical_spider_network():
        node_class = classify_spider_node(node).value
        counts[node_class] += 1
        nodes.append(
            SpiderNodeModel(
                kind=node.kind,
                name=NODE_NAMES[node.kind],
                links=[link.value for link in node.links],
                node_class=node_class,
            )
        )
    return SpiderResponse(nodes=nodes, multiset=counts)


# -- FastAPI app -----------------------------------------------------------------


def create_app():
    from fastapi import FastAPI
    from fastapi.responses import JSONResponse

    app = FastAPI(
        title="colog",
        version=__version__,
        description="Collaboration planning for city logistics: macro intent "
        "calculus and the micro compliance/assignment/routing/emissions pipeline.",
    )

    @app.exception_handler(InputError)
    async def _input_error(_request, exc: InputError):
        return JSONResponse(
            status_code=422,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(InfeasibleError)
    async def _infeasible_error(_request, exc: InfeasibleError):
        return JSONResponse(
            status_code=409,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health", response_model=HealthResponse)
    async def _health():
        return health()

    @app.get("/fixtures", response_model=FixtureListResponse)
    async def _fixtures():
        return list_fixtures()

    @app.post("/fixtures/{name}/run", response_model=FixtureRunResponse)
    async def _fixture_run(name: str):
        return run_fixture(name)

    @app.post("/macro/eval", response_model=MacroEvalResponse)
    async def _macro_eval(request: MacroEvalRequest):
        return macro_eval(request)

    @app.post("/macro/enumerate", response_model=MacroEnumerateResponse)
    async def _macro_enumerate(request: MacroEnumerateRequest):
        return macro_enumerate(request)

    @app.post("/micro/filter", response_model=FilterResponse)
    async def _micro_filter(request: FilterRequest):
        return micro_filter(request)

    @app.post("/micro/assign", response_model=AssignResponse)
    async def _micro_assign(request: AssignRequest):
        return micro_assign(request)

    @app.post("/micro/route", response_model=RouteResponse)
    async def _micro_route(request: RouteRequest):
        return micro_route(request)

    @app.post("/micro/emissions", response_model=EmissionsResponse)
    async def _micro_emissions(request: EmissionsRequest):
        return micro_emissions(request)

    @app.post("/micro/plan", response_model=PlanResponse)
    async def _micro_plan(request: PlanRequest):
        return micro_plan(request)

    @app.post("/complexity/effectors", response_model=EffectorsResponse)
    async def _complexity_effectors(request: EffectorsRequest):
        return complexity_effectors(request)

    @app.post("/complexity/trio", response_model=TrioResponse)
    async def _complexity_trio(request: TrioRequest):
        return complexity_trio(request)

    @app.get("/complexity/spider", response_model=SpiderResponse)
    async def _complexity_spider():
        return complexity_spider()

    return app


app = create_app()
