"""Step 3: coalition detection, shortest-path routing, window checking,
and the per-scenario trip-length comparison.

Routes are open (no depot return). Within a trip, clients are visited in
window-start order, ties by natural client id. Shortest paths break
length ties by lexicographic node sequence so reports are reproducible.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .assignment import TripPlan
from .errors import Unreachable
from .model import Network, Order, Shipper, TimeWindow
from ._util import fmt_minutes, fmt_q, natural_key


@dataclass(frozen=True)
class Coalition:
    kind: str  # NC, PC, FC
    members: tuple[str, ...]
    served_clients: tuple[str, ...]

    @property
    def name(self) -> str:
        return f"{self.kind} {'-'.join(self.members)}"


@dataclass(frozen=True)
class Route:
    trip_index: int
    truck: str
    clients: tuple[str, ...]
    nodes: tuple[str, ...]
    leg_lengths: tuple[Fraction, ...]
    length: Fraction

    @property
    def text(self) -> str:
        return f"{'-'.join(self.nodes)} ({fmt_q(self.length)})"


@dataclass(frozen=True)
class RouteResult:
    coalition: Coalition
    routes: tuple[Route, ...]
    depot: str
    bound: TimeWindow | None = None

    @property
    def number_of_trips(self) -> int:
        return len(self.routes)

    @property
    def total_triplength(self) -> Fraction:
        return sum((r.length for r in self.routes), Fraction(0))

    @property
    def trucks_used(self) -> tuple[str, ...]:
        return tuple(sorted({r.truck for r in self.routes}, key=natural_key))


def shortest_path(network: Network, source: str, target: str) -> tuple[tuple[str, ...], Fraction]:
    """Minimum-length path; among equal lengths, the lexicographically
    smallest node sequence under natural ordering."""
    adjacency = network.adjacency
    for node in (source, target):
        if node not in adjacency:
            raise Unreachable(f"node {node!r} is not in the network")
    if source == target:
        return (source,), Fraction(0)
    heap = [(Fraction(0), (natural_key(source),), (source,))]
    settled = set()
    while heap:
        dist, _, path = heapq.heappop(heap)
        node = path[-1]
        if node in settled:
            continue
        settled.add(node)
        if node == target:
            return path, dist
        for neighbor, length in adjacency[node]:
            if neighbor not in settled:
                extended = path + (neighbor,)
                key = tuple(natural_key(p) for p in extended)
                heapq.heappush(heap, (dist + length, key, extended))
    raise Unreachable(f"no path from {source!r} to {target!r}")


def detect_coalitions(shippers: Sequence[Shipper]) -> list[Coalition]:
    """NC singletons, maximal identical-client FC groups, and PC subsets
    sharing at least one client (excluding all-identical groups)."""
    coalitions = [
        Coalition("NC", (s.id,), s.client_list) for s in shippers
    ]
    by_id = {s.id: s for s in shippers}
    ordered_ids = sorted(by_id, key=natural_key)

    # FC: maximal groups with identical nonempty client sets.
    by_clients: dict[frozenset, list[str]] = {}
    for sid in ordered_ids:
        clients = by_id[sid].clients
        if clients:
            by_clients.setdefault(clients, []).append(sid)
    for clients, members in sorted(by_clients.items(), key=lambda kv: natural_key(kv[1][0])):
        if len(members) >= 2:
            coalitions.append(
                Coalition("FC", tuple(members), tuple(sorted(clients, key=natural_key)))
            )

    # PC: any subset of size >= 2 with a nonempty intersection whose members
    # do not all share one client set (those are full collaborations).
    for size in range(2, len(ordered_ids) + 1):
        for members in combinations(ordered_ids, size):
            sets = [by_id[m].clients for m in members]
            if not sets[0]:
                continue
            if all(s == sets[0] for s in sets[1:]):
                continue
            shared = frozenset.intersection(*sets)
            if shared:
                coalitions.append(
                    Coalition("PC", members, tuple(sorted(shared, key=natural_key)))
                )
    return coalitions


def default_depot(coalition: Coalition, network: Network) -> str:
    """The fixture-declared merged node when present, else the first member."""
    merged = "-".join(coalition.members)
    if merged in network.nodes:
        return merged
    return min(coalition.members, key=natural_key)


def _visit_order(orders: Sequence[Order]) -> tuple[str, ...]:
    starts: dict[str, int] = {}
    for order in orders:
        start = order.window.start
        if order.client not in starts or start < starts[order.client]:
            starts[order.client] = start
    return tuple(sorted(starts, key=lambda c: (starts[c], natural_key(c))))


def build_routes(
    coalition: Coalition,
    plan: TripPlan,
    network: Network,
    depot: str | None = None,
    bound: TimeWindow | None = None,
) -> RouteResult:
    """Route every trip of the plan from the coalition depot."""
    depot_node = depot if depot is not None else default_depot(coalition, network)
    routes = []
    for index, trip in enumerate(plan.trips, start=1):
        clients = _visit_order(trip.orders)
        nodes: tuple[str, ...] = (depot_node,)
        legs = []
        total = Fraction(0)
        position = depot_node
        for client in clients:
            segment, length = shortest_path(network, position, client)
            nodes = nodes + segment[1:]
            legs.append(length)
            total += length
            position = client
        routes.append(Route(index, trip.truck, clients, nodes, tuple(legs), total))
    return RouteResult(coalition, tuple(routes), depot_node, bound)


def validate_schedule(
    result: RouteResult,
    orders: Sequence[Order],
    speed: Fraction = Fraction(1),
    departure: int | None = None,
) -> list[str]:
    """Simulate every route; report window and travel-bound violations.

    Arriving early waits for the window to open (zero service time);
    only arrival after a window's end, or a trip outside the coalition's
    travel-time bound, is a violation. Departure defaults per trip to the
    earliest window start among its orders.
    """
    speed = Fraction(speed)
    if speed <= 0:
        raise ValueError("speed must be positive")
    member_orders = [o for o in orders if o.shipper in result.coalition.members]
    by_client: dict[str, list[Order]] = {}
    for order in member_orders:
        by_client.setdefault(order.client, []).append(order)

    violations = []
    name = result.coalition.name
    for route in result.routes:
        served = [o for c in route.clients for o in by_client.get(c, ())]
        if not served and not route.clients:
            continue
        if departure is not None:
            start_at = Fraction(departure)
        elif served:
            start_at = Fraction(min(o.window.start for o in served))
        else:
            start_at = Fraction(result.bound.start if result.bound else 0)
        if result.bound and start_at < result.bound.start:
            violations.append(
                f"{name}: trip {route.trip_index} departs at {fmt_minutes(start_at)}, "
                f"before bound {result.bound.text}"
            )
        clock = start_at
        for client, leg in zip(route.clients, route.leg_lengths):
            clock = clock + leg / speed
            arrival = clock
            for order in by_client.get(client, ()):
                if arrival > order.window.end:
                    violations.append(
                        f"{name}: trip {route.trip_index} reaches {client} at "
                        f"{fmt_minutes(arrival)}, after window {order.window.text}"
                    )
                else:
                    clock = max(clock, Fraction(order.window.start))
        if result.bound and clock > result.bound.end:
            violations.append(
                f"{name}: trip {route.trip_index} ends at {fmt_minutes(clock)}, "
                f"after bound {result.bound.text}"
            )
    return violations


@dataclass(frozen=True)
class CoalitionLengthRow:
    """One FC/PC row compared against its members' NC totals."""

    name: str
    kind: str
    members: tuple[str, ...]
    total: Fraction
    members_nc_total: Fraction | None
    verdict: bool | None


@dataclass(frozen=True)
class ScenarioComparison:
    totals: tuple[tuple[str, Fraction], ...]  # (kind, total) for FC, PC, NC
    collaborative_total: Fraction  # FC + PC
    nc_total: Fraction
    verdict: bool | None  # None when no FC/PC or no NC results exist
    rows: tuple[CoalitionLengthRow, ...]

    def total_for(self, kind: str) -> Fraction:
        for key, value in self.totals:
            if key == kind:
                return value
        return Fraction(0)


def compare_scenarios(results: Sequence[RouteResult]) -> ScenarioComparison:
    """Totals per collaboration type plus the FC+PC < NC verdict.

    Each FC/PC coalition is also compared against the summed NC totals of
    its members (None when some member has no NC result).
    """
    kind_totals = {"FC": Fraction(0), "PC": Fraction(0), "NC": Fraction(0)}
    has_kind = {"FC": False, "PC": False, "NC": False}
    nc_by_member: dict[str, Fraction] = {}
    for result in results:
        kind = result.coalition.kind
        kind_totals[kind] += result.total_triplength
        has_kind[kind] = True
        if kind == "NC":
            nc_by_member[result.coalition.members[0]] = result.total_triplength

    rows = []
    for result in results:
        coalition = result.coalition
        if coalition.kind == "NC":
            continue
        if all(m in nc_by_member for m in coalition.members):
            members_total = sum(
                (nc_by_member[m] for m in coalition.members), Fraction(0)
            )
            verdict = result.total_triplength < members_total
        else:
            members_total = None
            verdict = None
        rows.append(
            CoalitionLengthRow(
                coalition.name,
                coalition.kind,
                coalition.members,
                result.total_triplength,
                members_total,
                verdict,
            )
        )

    collaborative = kind_totals["FC"] + kind_totals["PC"]
    if (has_kind["FC"] or has_kind["PC"]) and has_kind["NC"]:
        verdict = collaborative < kind_totals["NC"]
    else:
        verdict = None
    return ScenarioComparison(
        totals=tuple((k, kind_totals[k]) for k in ("FC", "PC", "NC")),
        collaborative_total=collaborative,
        nc_total=kind_totals["NC"],
        verdict=verdict,
        rows=tuple(rows),
    )
