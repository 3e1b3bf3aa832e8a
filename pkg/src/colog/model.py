"""Scenario documents: shared domain types, YAML parsing, validation,
and serialization.

Every numeric field is a Fraction. The YAML loader keeps float literals
exact by re-parsing their literal text, so "1.11" stays 111/100 and a
scenario round-trips through serialize/parse without drift.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import yaml

from ._util import fmt_q, natural_key, parse_q
from .complexity import ConditionEffector, make_effector
from .errors import (
    DanglingReferenceError,
    DimensionMismatch,
    NormalizationError,
    SchemaError,
)

DEFAULT_DIMENSIONS = ("S", "E", "En")
DEFAULT_BASES = ("E1", "E2")


# -- exact YAML loading -------------------------------------------------------


class _ExactLoader(yaml.SafeLoader):
    """SafeLoader whose float scalars become Fractions of their literal text."""


def _construct_fraction(loader, node):
    text = loader.construct_scalar(node).replace("_", "")
    if text.lstrip("+-").lower() in (".inf", ".nan"):
        raise SchemaError(f"non-finite number {text!r} is not allowed")
    try:
        return Fraction(text)
    except ValueError as exc:
        raise SchemaError(f"cannot parse number {text!r}") from exc


_ExactLoader.add_constructor("tag:yaml.org,2002:float", _construct_fraction)


# -- domain types -------------------------------------------------------------


@dataclass(frozen=True)
class TimeWindow:
    """Half-open-by-convention window in minutes of day; bounds inclusive."""

    start: int
    end: int

    @property
    def text(self) -> str:
        return (
            f"{self.start // 60:02d}:{self.start % 60:02d}"
            f"-{self.end // 60:02d}:{self.end % 60:02d}"
        )

    def overlaps(self, other: "TimeWindow") -> bool:
        return self.start <= other.end and other.start <= self.end


_WINDOW = re.compile(r"^\s*(\d{1,2}):([0-5]\d)\s*-\s*(\d{1,2}):([0-5]\d)\s*$")


def parse_window(value) -> TimeWindow:
    if isinstance(value, TimeWindow):
        return value
    if not isinstance(value, str):
        raise NormalizationError(f"window must be a 'HH:MM-HH:MM' string, got {value!r}")
    match = _WINDOW.match(value)
    if not match:
        raise NormalizationError(f"window must be 'HH:MM-HH:MM', got {value!r}")
    h1, m1, h2, m2 = (int(g) for g in match.groups())
    if h1 > 23 or h2 > 23:
        raise NormalizationError(f"window hour out of range in {value!r}")
    start, end = h1 * 60 + m1, h2 * 60 + m2
    if start >= end:
        raise NormalizationError(f"window start must precede end in {value!r}")
    return TimeWindow(start, end)


@dataclass(frozen=True)
class EmissionFactor:
    """Symbolic emission factor: a rational multiplier on a base symbol."""

    base: str
    multiplier: Fraction = Fraction(1)

    @property
    def text(self) -> str:
        if self.multiplier == 1:
            return self.base
        return f"{fmt_q(self.multiplier)}{self.base}"


_EMISSION = re.compile(
    r"^\s*(?P<mult>\d+(?:\.\d+)?(?:/\d+)?)?\s*\*?\s*(?P<base>[A-Za-z][A-Za-z0-9_]*)\s*$"
)


def parse_emission(value) -> EmissionFactor:
    if isinstance(value, EmissionFactor):
        return value
    if not isinstance(value, str):
        # Unquoted scientific-looking literals (1.5e+2) arrive as numbers.
        raise SchemaError(
            f"emission must be a string like 'E1' or '1.5E2' (quote it in the scenario file), "
            f"got {value!r}"
        )
    match = _EMISSION.match(value)
    if not match:
        raise NormalizationError(f"cannot parse emission factor {value!r}")
    mult = Fraction(match.group("mult")) if match.group("mult") else Fraction(1)
    return EmissionFactor(match.group("base"), mult)


@dataclass(frozen=True)
class Shipper:
    id: str
    clients: frozenset = frozenset()

    @property
    def client_list(self) -> tuple[str, ...]:
        return tuple(sorted(self.clients, key=natural_key))


@dataclass(frozen=True)
class Order:
    shipper: str
    client: str
    packets: int
    packet_size_kg: Fraction
    window: TimeWindow

    @property
    def quantity(self) -> Fraction:
        return self.packets * self.packet_size_kg

    @property
    def id(self) -> str:
        return f"{self.shipper}:{self.client}"


@dataclass(frozen=True)
class Truck:
    id: str
    owner: str
    capacity_kg: Fraction
    size_tons: Fraction
    emission: EmissionFactor
    gains: Fraction = Fraction(0)

    @property
    def label(self) -> str:
        """Trucks are addressed as owner:id; distinct owners may reuse ids."""
        return f"{self.owner}:{self.id}"


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    length: Fraction


@dataclass(frozen=True)
class Network:
    """Undirected weighted graph over free-form node tokens."""

    edges: tuple[Edge, ...] = ()

    @cached_property
    def nodes(self) -> frozenset:
        found = set()
        for edge in self.edges:
            found.add(edge.a)
            found.add(edge.b)
        return frozenset(found)

    @cached_property
    def adjacency(self) -> dict:
        adj: dict[str, list] = {}
        for edge in self.edges:
            adj.setdefault(edge.a, []).append((edge.b, edge.length))
            adj.setdefault(edge.b, []).append((edge.a, edge.length))
        return {
            node: tuple(sorted(nbrs, key=lambda item: natural_key(item[0])))
            for node, nbrs in adj.items()
        }


@dataclass(frozen=True)
class CollaborationBlocks:
    """Per-dimension percentage weights of the four e-commerce subsystems."""

    dimensions: tuple[str, ...]
    b2b: tuple[Fraction, ...]
    b2c: tuple[Fraction, ...]
    c2b: tuple[Fraction, ...]
    c2c: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.dimensions)
        for name in ("b2b", "b2c", "c2b", "c2c"):
            vector = getattr(self, name)
            if len(vector) != n:
                raise DimensionMismatch(
                    f"block {name} has {len(vector)} components, expected {n}"
                )
            for value in vector:
                if value < 0:
                    raise NormalizationError(
                        f"block {name} component {fmt_q(value)} is negative"
                    )


def validate_blocks(blocks: CollaborationBlocks, strict: bool = False) -> list[str]:
    """One violation string per block vector whose components do not sum to 100.

    The strict flag does not change the report; strict callers raise on a
    nonempty result while lenient callers record it as warnings.
    """
    del strict
    violations = []
    for name in ("b2b", "b2c", "c2b", "c2c"):
        total = sum(getattr(blocks, name), Fraction(0))
        if total != 100:
            violations.append(f"block {name} sums to {fmt_q(total)}, expected 100")
    return violations


@dataclass(frozen=True)
class SignAssignment:
    """Polarity of the B-column and C-column blocks per dimension.

    +1 collaborate, -1 compete, 0 undecided.
    """

    b_signs: tuple[int, ...]
    c_signs: tuple[int, ...]
    case_id: int | None = None

    def __post_init__(self):
        for vector in (self.b_signs, self.c_signs):
            for sign in vector:
                if sign not in (-1, 0, 1):
                    raise NormalizationError(f"sign must be -1, 0 or +1, got {sign!r}")
        if len(self.b_signs) != len(self.c_signs):
            raise DimensionMismatch(
                f"b has {len(self.b_signs)} signs, c has {len(self.c_signs)}"
            )

    @property
    def b_text(self) -> str:
        return signs_text(self.b_signs)

    @property
    def c_text(self) -> str:
        return signs_text(self.c_signs)


_SIGN_TOKENS = {"+": 1, "+1": 1, "-": -1, "-1": -1, "0": 0, 1: 1, -1: -1, 0: 0}
_SIGN_CHARS = {1: "+", -1: "-", 0: "0"}


def parse_sign(value) -> int:
    if isinstance(value, bool):
        raise NormalizationError(f"sign must be +, - or 0, got {value!r}")
    try:
        return _SIGN_TOKENS[value]
    except (KeyError, TypeError):
        raise NormalizationError(f"sign must be +, - or 0, got {value!r}") from None


def signs_text(signs: Sequence[int]) -> str:
    return "".join(_SIGN_CHARS[s] for s in signs)


@dataclass(frozen=True)
class ComplianceRule:
    """City-side admission thresholds plus the collaboration-intent vector."""

    max_vehicle_size_tons: Fraction
    max_net_profit: Fraction
    intents: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.max_vehicle_size_tons <= 0:
            raise NormalizationError("max_vehicle_size_tons must be positive")


@dataclass(frozen=True)
class TripSpec:
    """A declared trip: candidate truck labels (alternatives) and its clients."""

    trucks: tuple[str, ...]
    clients: tuple[str, ...]


@dataclass(frozen=True)
class RoutePlanSpec:
    """A declared per-coalition trip grouping with optional depot and bound."""

    kind: str
    members: tuple[str, ...]
    trips: tuple[TripSpec, ...]
    depot: str | None = None
    bound: TimeWindow | None = None


@dataclass(frozen=True)
class Scenario:
    dimensions: tuple[str, ...] = DEFAULT_DIMENSIONS
    emission_bases: tuple[str, ...] = DEFAULT_BASES
    mode: str = "lenient"
    shippers: tuple[Shipper, ...] = ()
    orders: tuple[Order, ...] = ()
    trucks: tuple[Truck, ...] = ()
    network: Network = Network()
    compliance: ComplianceRule | None = None
    blocks: CollaborationBlocks | None = None
    signs: SignAssignment | None = None
    sign_cases: tuple[SignAssignment, ...] = ()
    effectors: tuple[ConditionEffector, ...] = ()
    route_plans: tuple[RoutePlanSpec, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def orders_of(self, shipper_id: str) -> tuple[Order, ...]:
        return tuple(o for o in self.orders if o.shipper == shipper_id)

    def trucks_of(self, shipper_id: str) -> tuple[Truck, ...]:
        return tuple(t for t in self.trucks if t.owner == shipper_id)

    @property
    def truck_roster(self) -> dict:
        return {t.label: t for t in self.trucks}


# -- parsing helpers ----------------------------------------------------------

_TOP_KEYS = {
    "meta",
    "shippers",
    "orders",
    "trucks",
    "network",
    "compliance",
    "collaboration_blocks",
    "signs",
    "sign_cases",
    "uncertainty",
    "route_plans",
}
_META_KEYS = {"version", "mode", "dimensions", "emission_bases"}
_ORDER_KEYS = {"shipper", "client", "packets", "packet_size_kg", "window", "quantity"}
_TRUCK_KEYS = {"id", "owner", "gains", "capacity_kg", "size_tons", "emission"}
_NETWORK_KEYS = {"edges"}
_COMPLIANCE_KEYS = {"max_vehicle_size_tons", "max_net_profit", "intents"}
_BLOCK_KEYS = {"b2b", "b2c", "c2b", "c2c"}
_SIGN_KEYS = {"b", "c"}
_UNCERTAINTY_KEYS = {"condition", "polarity", "n"}
_PLAN_KEYS = {"kind", "members", "depot", "bound", "trips"}
_TRIP_KEYS = {"trucks", "clients"}


def _check_keys(context: str, mapping: Mapping, allowed: set):
    for key in mapping:
        if key not in allowed:
            raise SchemaError(f"{context}: unknown key {key!r}")


def _as_mapping(context: str, value) -> Mapping:
    if not isinstance(value, Mapping):
        raise SchemaError(f"{context} must be a mapping, got {type(value).__name__}")
    return value


def _as_list(context: str, value) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"{context} must be a list, got {type(value).__name__}")
    return value


def _req(context: str, mapping: Mapping, key: str):
    if key not in mapping or mapping[key] is None:
        raise SchemaError(f"{context}: missing required field {key!r}")
    return mapping[key]


def _as_str(context: str, value) -> str:
    if not isinstance(value, str) or not value.strip():
        raise SchemaError(f"{context} must be a nonempty string, got {value!r}")
    return value.strip()


def _as_int(context: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{context} must be an integer, got {value!r}")
    return value


def _as_q(context: str, value) -> Fraction:
    try:
        return parse_q(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{context} must be a number, got {value!r}") from None


def _q_vector(context: str, value, n: int) -> tuple[Fraction, ...]:
    items = _as_list(context, value)
    vector = tuple(_as_q(f"{context}[{i}]", item) for i, item in enumerate(items))
    if len(vector) != n:
        raise DimensionMismatch(f"{context} has {len(vector)} components, expected {n}")
    return vector


def _sign_vector(context: str, value, n: int) -> tuple[int, ...]:
    items = _as_list(context, value)
    vector = tuple(parse_sign(item) for item in items)
    if len(vector) != n:
        raise DimensionMismatch(f"{context} has {len(vector)} signs, expected {n}")
    return vector


# -- parse / serialize --------------------------------------------------------


def parse_scenario(text: str, strict: bool | None = None) -> Scenario:
    """Parse and fully validate a scenario document.

    strict overrides the file's meta.mode when given. Lenient mode records
    normalization problems (block sums, stale quantity fields) as warnings;
    strict mode rejects them.
    """
    try:
        doc = yaml.load(text, Loader=_ExactLoader)
    except yaml.YAMLError as exc:
        raise SchemaError(f"scenario is not well-formed: {exc}") from None
    if doc is None:
        doc = {}
    doc = _as_mapping("scenario", doc)
    _check_keys("scenario", doc, _TOP_KEYS)
    warnings: list[str] = []

    meta = _as_mapping("meta", doc.get("meta", {}))
    _check_keys("meta", meta, _META_KEYS)
    if "version" in meta and meta["version"] != 1:
        raise SchemaError(f"unsupported scenario version {meta['version']!r}")
    mode = meta.get("mode", "lenient")
    if mode not in ("strict", "lenient"):
        raise SchemaError(f"meta.mode must be 'strict' or 'lenient', got {mode!r}")
    if strict is not None:
        mode = "strict" if strict else "lenient"
    is_strict = mode == "strict"

    dimensions = tuple(
        _as_str(f"meta.dimensions[{i}]", d)
        for i, d in enumerate(_as_list("meta.dimensions", meta.get("dimensions", list(DEFAULT_DIMENSIONS))))
    )
    if not dimensions:
        raise SchemaError("meta.dimensions must not be empty")
    if len(set(dimensions)) != len(dimensions):
        raise SchemaError("meta.dimensions must be distinct")
    n = len(dimensions)

    bases = tuple(
        _as_str(f"meta.emission_bases[{i}]", b)
        for i, b in enumerate(_as_list("meta.emission_bases", meta.get("emission_bases", list(DEFAULT_BASES))))
    )
    if len(set(bases)) != len(bases):
        raise SchemaError("meta.emission_bases must be distinct")

    # shippers
    shipper_ids: list[str] = []
    for i, entry in enumerate(_as_list("shippers", doc.get("shippers", []))):
        if isinstance(entry, str):
            sid = _as_str(f"shippers[{i}]", entry)
        else:
            entry = _as_mapping(f"shippers[{i}]", entry)
            _check_keys(f"shippers[{i}]", entry, {"id"})
            sid = _as_str(f"shippers[{i}].id", _req(f"shippers[{i}]", entry, "id"))
        if sid in shipper_ids:
            raise SchemaError(f"duplicate shipper id {sid!r}")
        shipper_ids.append(sid)

    # orders
    orders: list[Order] = []
    seen_orders: set[tuple[str, str]] = set()
    for i, entry in enumerate(_as_list("orders", doc.get("orders", []))):
        ctx = f"orders[{i}]"
        entry = _as_mapping(ctx, entry)
        _check_keys(ctx, entry, _ORDER_KEYS)
        shipper = _as_str(f"{ctx}.shipper", _req(ctx, entry, "shipper"))
        if shipper not in shipper_ids:
            raise DanglingReferenceError(f"{ctx}: unknown shipper {shipper!r}")
        client = _as_str(f"{ctx}.client", _req(ctx, entry, "client"))
        if (shipper, client) in seen_orders:
            raise SchemaError(f"{ctx}: duplicate order for {shipper}:{client}")
        seen_orders.add((shipper, client))
        packets = _as_int(f"{ctx}.packets", _req(ctx, entry, "packets"))
        if packets < 1:
            raise NormalizationError(f"{ctx}.packets must be >= 1, got {packets}")
        size = _as_q(f"{ctx}.packet_size_kg", _req(ctx, entry, "packet_size_kg"))
        if size <= 0:
            raise NormalizationError(f"{ctx}.packet_size_kg must be positive")
        window = parse_window(_req(ctx, entry, "window"))
        order = Order(shipper, client, packets, size, window)
        if "quantity" in entry and entry["quantity"] is not None:
            declared = _as_q(f"{ctx}.quantity", entry["quantity"])
            if declared != order.quantity:
                message = (
                    f"order {order.id}: quantity {fmt_q(declared)} != packets x packet_size_kg "
                    f"{fmt_q(order.quantity)}"
                )
                if is_strict:
                    raise SchemaError(message)
                warnings.append(f"{message}; recomputed")
        orders.append(order)

    # trucks
    trucks: list[Truck] = []
    seen_trucks: set[tuple[str, str]] = set()
    for i, entry in enumerate(_as_list("trucks", doc.get("trucks", []))):
        ctx = f"trucks[{i}]"
        entry = _as_mapping(ctx, entry)
        _check_keys(ctx, entry, _TRUCK_KEYS)
        tid = _as_str(f"{ctx}.id", _req(ctx, entry, "id"))
        owner = _as_str(f"{ctx}.owner", _req(ctx, entry, "owner"))
        if owner not in shipper_ids:
            raise DanglingReferenceError(f"{ctx}: unknown owner {owner!r}")
        if (owner, tid) in seen_trucks:
            raise SchemaError(f"{ctx}: duplicate truck {owner}:{tid}")
        seen_trucks.add((owner, tid))
        capacity = _as_q(f"{ctx}.capacity_kg", _req(ctx, entry, "capacity_kg"))
        size = _as_q(f"{ctx}.size_tons", _req(ctx, entry, "size_tons"))
        if capacity <= 0 or size <= 0:
            raise NormalizationError(f"{ctx}: capacity_kg and size_tons must be positive")
        emission = parse_emission(_req(ctx, entry, "emission"))
        if emission.multiplier <= 0:
            raise NormalizationError(f"{ctx}: emission multiplier must be positive")
        if emission.base not in bases:
            raise DanglingReferenceError(
                f"{ctx}: emission base {emission.base!r} not in emission_bases"
            )
        gains = _as_q(f"{ctx}.gains", entry.get("gains", 0))
        trucks.append(Truck(tid, owner, capacity, size, emission, gains))

    # network
    edges: list[Edge] = []
    seen_pairs: set[frozenset] = set()
    if "network" in doc:
        net = _as_mapping("network", doc["network"])
        _check_keys("network", net, _NETWORK_KEYS)
        for i, item in enumerate(_as_list("network.edges", net.get("edges", []))):
            ctx = f"network.edges[{i}]"
            triple = _as_list(ctx, item)
            if len(triple) != 3:
                raise SchemaError(f"{ctx} must be [from, to, length]")
            a = _as_str(f"{ctx}[0]", triple[0])
            b = _as_str(f"{ctx}[1]", triple[1])
            length = _as_q(f"{ctx}[2]", triple[2])
            if a == b:
                raise SchemaError(f"{ctx}: self-loop on {a!r}")
            if length <= 0:
                raise NormalizationError(f"{ctx}: length must be positive")
            pair = frozenset((a, b))
            if pair in seen_pairs:
                raise SchemaError(f"{ctx}: duplicate edge {a!r}-{b!r}")
            seen_pairs.add(pair)
            edges.append(Edge(a, b, length))
    network = Network(tuple(edges))

    # compliance
    compliance = None
    if "compliance" in doc:
        comp = _as_mapping("compliance", doc["compliance"])
        _check_keys("compliance", comp, _COMPLIANCE_KEYS)
        intents = None
        if "intents" in comp and comp["intents"] is not None:
            intents = _q_vector("compliance.intents", comp["intents"], n)
        compliance = ComplianceRule(
            _as_q("compliance.max_vehicle_size_tons", _req("compliance", comp, "max_vehicle_size_tons")),
            _as_q("compliance.max_net_profit", _req("compliance", comp, "max_net_profit")),
            intents,
        )

    # macro sections
    blocks = None
    if "collaboration_blocks" in doc:
        raw = _as_mapping("collaboration_blocks", doc["collaboration_blocks"])
        _check_keys("collaboration_blocks", raw, _BLOCK_KEYS)
        vectors = {
            name: _q_vector(f"collaboration_blocks.{name}", _req("collaboration_blocks", raw, name), n)
            for name in ("b2b", "b2c", "c2b", "c2c")
        }
        blocks = CollaborationBlocks(dimensions, **vectors)
        violations = validate_blocks(blocks, is_strict)
        if violations:
            if is_strict:
                raise NormalizationError("; ".join(violations))
            warnings.extend(violations)

    def _parse_signs(context: str, value, case_id: int | None = None) -> SignAssignment:
        raw = _as_mapping(context, value)
        _check_keys(context, raw, _SIGN_KEYS)
        return SignAssignment(
            _sign_vector(f"{context}.b", _req(context, raw, "b"), n),
            _sign_vector(f"{context}.c", _req(context, raw, "c"), n),
            case_id,
        )

    signs = _parse_signs("signs", doc["signs"]) if "signs" in doc else None
    sign_cases = tuple(
        _parse_signs(f"sign_cases[{i}]", entry, i + 1)
        for i, entry in enumerate(_as_list("sign_cases", doc.get("sign_cases", [])))
    )

    # uncertainty effectors
    effectors = []
    for i, entry in enumerate(_as_list("uncertainty", doc.get("uncertainty", []))):
        ctx = f"uncertainty[{i}]"
        entry = _as_mapping(ctx, entry)
        _check_keys(ctx, entry, _UNCERTAINTY_KEYS)
        effectors.append(
            make_effector(
                _as_str(f"{ctx}.condition", _req(ctx, entry, "condition")),
                _as_str(f"{ctx}.polarity", _req(ctx, entry, "polarity")),
                _as_int(f"{ctx}.n", _req(ctx, entry, "n")),
            )
        )

    # declared route plans
    truck_labels = {t.label for t in trucks}
    route_plans = []
    for i, entry in enumerate(_as_list("route_plans", doc.get("route_plans", []))):
        ctx = f"route_plans[{i}]"
        entry = _as_mapping(ctx, entry)
        _check_keys(ctx, entry, _PLAN_KEYS)
        kind = _as_str(f"{ctx}.kind", _req(ctx, entry, "kind"))
        if kind not in ("NC", "PC", "FC"):
            raise NormalizationError(f"{ctx}.kind must be NC, PC or FC, got {kind!r}")
        members = tuple(
            _as_str(f"{ctx}.members[{j}]", m)
            for j, m in enumerate(_as_list(f"{ctx}.members", _req(ctx, entry, "members")))
        )
        if not members:
            raise SchemaError(f"{ctx}.members must not be empty")
        for member in members:
            if member not in shipper_ids:
                raise DanglingReferenceError(f"{ctx}: unknown member {member!r}")
        trips = []
        for j, raw_trip in enumerate(_as_list(f"{ctx}.trips", _req(ctx, entry, "trips"))):
            tctx = f"{ctx}.trips[{j}]"
            raw_trip = _as_mapping(tctx, raw_trip)
            _check_keys(tctx, raw_trip, _TRIP_KEYS)
            labels = tuple(
                _as_str(f"{tctx}.trucks[{k}]", lbl)
                for k, lbl in enumerate(_as_list(f"{tctx}.trucks", _req(tctx, raw_trip, "trucks")))
            )
            if not labels:
                raise SchemaError(f"{tctx}.trucks must not be empty")
            for label in labels:
                if label not in truck_labels:
                    raise DanglingReferenceError(f"{tctx}: unknown truck {label!r}")
            clients = tuple(
                _as_str(f"{tctx}.clients[{k}]", c)
                for k, c in enumerate(_as_list(f"{tctx}.clients", _req(tctx, raw_trip, "clients")))
            )
            if not clients:
                raise SchemaError(f"{tctx}.clients must not be empty")
            trips.append(TripSpec(labels, clients))
        depot = _as_str(f"{ctx}.depot", entry["depot"]) if entry.get("depot") else None
        bound = parse_window(entry["bound"]) if entry.get("bound") else None
        route_plans.append(RoutePlanSpec(kind, members, tuple(trips), depot, bound))

    shippers = tuple(
        Shipper(sid, frozenset(o.client for o in orders if o.shipper == sid))
        for sid in shipper_ids
    )
    return Scenario(
        dimensions=dimensions,
        emission_bases=bases,
        mode=mode,
        shippers=shippers,
        orders=tuple(orders),
        trucks=tuple(trucks),
        network=network,
        compliance=compliance,
        blocks=blocks,
        signs=signs,
        sign_cases=sign_cases,
        effectors=tuple(effectors),
        route_plans=tuple(route_plans),
        warnings=tuple(warnings),
    )


def _q_node(value: Fraction):
    return value.numerator if value.denominator == 1 else fmt_q(value)


def serialize_scenario(scenario: Scenario) -> str:
    """Render a scenario back to YAML; parse(serialize(s)) == s."""
    doc: dict = {
        "meta": {
            "version": 1,
            "mode": scenario.mode,
            "dimensions": list(scenario.dimensions),
            "emission_bases": list(scenario.emission_bases),
        }
    }
    if scenario.shippers:
        doc["shippers"] = [{"id": s.id} for s in scenario.shippers]
    if scenario.orders:
        doc["orders"] = [
            {
                "shipper": o.shipper,
                "client": o.client,
                "packets": o.packets,
                "packet_size_kg": _q_node(o.packet_size_kg),
                "window": o.window.text,
            }
            for o in scenario.orders
        ]
    if scenario.trucks:
        doc["trucks"] = [
            {
                "id": t.id,
                "owner": t.owner,
                "gains": _q_node(t.gains),
                "capacity_kg": _q_node(t.capacity_kg),
                "size_tons": _q_node(t.size_tons),
                "emission": t.emission.text,
            }
            for t in scenario.trucks
        ]
    if scenario.network.edges:
        doc["network"] = {
            "edges": [[e.a, e.b, _q_node(e.length)] for e in scenario.network.edges]
        }
    if scenario.compliance is not None:
        rule: dict = {
            "max_vehicle_size_tons": _q_node(scenario.compliance.max_vehicle_size_tons),
            "max_net_profit": _q_node(scenario.compliance.max_net_profit),
        }
        if scenario.compliance.intents is not None:
            rule["intents"] = [_q_node(v) for v in scenario.compliance.intents]
        doc["compliance"] = rule
    if scenario.blocks is not None:
        doc["collaboration_blocks"] = {
            name: [_q_node(v) for v in getattr(scenario.blocks, name)]
            for name in ("b2b", "b2c", "c2b", "c2c")
        }
    if scenario.signs is not None:
        doc["signs"] = _signs_node(scenario.signs)
    if scenario.sign_cases:
        doc["sign_cases"] = [_signs_node(case) for case in scenario.sign_cases]
    if scenario.effectors:
        doc["uncertainty"] = [
            {"condition": e.condition, "polarity": e.polarity, "n": e.n}
            for e in scenario.effectors
        ]
    if scenario.route_plans:
        doc["route_plans"] = [
            {
                "kind": p.kind,
                "members": list(p.members),
                **({"depot": p.depot} if p.depot else {}),
                **({"bound": p.bound.text} if p.bound else {}),
                "trips": [
                    {"trucks": list(t.trucks), "clients": list(t.clients)}
                    for t in p.trips
                ],
            }
            for p in scenario.route_plans
        ]
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)


def _signs_node(signs: SignAssignment) -> dict:
    return {
        "b": [_SIGN_CHARS[s] for s in signs.b_signs],
        "c": [_SIGN_CHARS[s] for s in signs.c_signs],
    }
