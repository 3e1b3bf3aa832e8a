"""Step 2: pack atomic client orders into truck trips, minimizing trip count.

Orders are never split; trucks are reusable with no trip limit, so only
the largest accepted capacity constrains feasibility. The solver is an
exact branch-and-bound over set partitions, seeded with a first-fit-
decreasing upper bound. Among minimum-trip plans it returns the
lexicographically smallest (truck label, sorted order ids) sequence;
each group independently gets the smallest feasible truck by natural
label order, which is optimal for that key because trucks are unlimited.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Infeasible, NoTrucks
from .model import Order, Truck
from ._util import fmt_q, natural_key


@dataclass(frozen=True)
class Trip:
    truck: str  # truck label (owner:id)
    orders: tuple[Order, ...]

    @property
    def order_ids(self) -> tuple[str, ...]:
        return tuple(o.id for o in self.orders)

    @property
    def clients(self) -> tuple[str, ...]:
        return tuple(o.client for o in self.orders)

    @property
    def load_kg(self) -> Fraction:
        return sum((o.quantity for o in self.orders), Fraction(0))


@dataclass(frozen=True)
class TripPlan:
    trips: tuple[Trip, ...]

    @property
    def trip_count(self) -> int:
        return len(self.trips)


def _trip_key(truck_label: str, orders: Sequence[Order]):
    return (
        natural_key(truck_label),
        tuple(natural_key(o.id) for o in orders),
    )


def _smallest_feasible_truck(load: Fraction, trucks: Sequence[Truck]) -> Truck:
    feasible = [t for t in trucks if t.capacity_kg >= load]
    return min(feasible, key=lambda t: natural_key(t.label))


def _build_plan(groups: Sequence[Sequence[Order]], trucks: Sequence[Truck]) -> TripPlan:
    trips = []
    for group in groups:
        ordered = tuple(sorted(group, key=lambda o: natural_key(o.id)))
        load = sum((o.quantity for o in ordered), Fraction(0))
        truck = _smallest_feasible_truck(load, trucks)
        trips.append(Trip(truck.label, ordered))
    trips.sort(key=lambda t: _trip_key(t.truck, t.orders))
    return TripPlan(tuple(trips))


def _plan_key(plan: TripPlan):
    return tuple(_trip_key(t.truck, t.orders) for t in plan.trips)


def _validate(orders: Sequence[Order], trucks: Sequence[Truck]) -> Fraction:
    """Shared feasibility screen; returns the largest capacity."""
    if not trucks:
        raise NoTrucks(f"{len(orders)} orders but no truck to carry them")
    max_cap = max(t.capacity_kg for t in trucks)
    for order in orders:
        if order.quantity > max_cap:
            raise Infeasible(
                f"order {order.id} ({fmt_q(order.quantity)} kg) exceeds every "
                f"truck capacity (max {fmt_q(max_cap)} kg)"
            )
    return max_cap


def min_trips(orders: Sequence[Order], trucks: Sequence[Truck]) -> TripPlan:
    """Capacity-feasible plan with provably minimum trip count."""
    if not orders:
        return TripPlan(())
    max_cap = _validate(orders, trucks)

    items = sorted(orders, key=lambda o: (-o.quantity, natural_key(o.id)))
    n = len(items)

    # First-fit-decreasing upper bound.
    ffd_loads: list[Fraction] = []
    for order in items:
        for i, load in enumerate(ffd_loads):
            if load + order.quantity <= max_cap:
                ffd_loads[i] = load + order.quantity
                break
        else:
            ffd_loads.append(order.quantity)
    best_count = len(ffd_loads)
    best_key = None
    best_groups: list[tuple[Order, ...]] | None = None

    suffix = [Fraction(0)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + items[i].quantity

    groups: list[list[Order]] = []
    loads: list[Fraction] = []

    def lower_bound(i: int) -> int:
        free = sum((max_cap - load for load in loads), Fraction(0))
        overflow = suffix[i] - free
        if overflow <= 0:
            return len(groups)
        return len(groups) + -(-overflow // max_cap)

    def place(i: int):
        nonlocal best_count, best_key, best_groups
        if i == n:
            frozen = [tuple(g) for g in groups]
            key = _plan_key(_build_plan(frozen, trucks))
            better_count = len(frozen) < best_count
            better_key = len(frozen) == best_count and (best_key is None or key < best_key)
            if better_count or better_key:
                best_count, best_key, best_groups = len(frozen), key, frozen
            return
        if lower_bound(i) > best_count:
            return
        order = items[i]
        for gi in range(len(groups)):
            if loads[gi] + order.quantity <= max_cap:
                groups[gi].append(order)
                loads[gi] += order.quantity
                place(i + 1)
                groups[gi].pop()
                loads[gi] -= order.quantity
        if len(groups) + 1 <= best_count:
            groups.append([order])
            loads.append(order.quantity)
            place(i + 1)
            groups.pop()
            loads.pop()

    place(0)
    assert best_groups is not None
    return _build_plan(best_groups, trucks)


def enumerate_allocations(
    orders: Sequence[Order],
    trucks: Sequence[Truck],
    max_plans: int = 32,
) -> list[TripPlan]:
    """All capacity-feasible plans, fewest trips first, truncated to max_plans.

    The head equals min_trips' result. Intended for desk-scale inputs; the
    partition count grows like the Bell numbers.
    """
    if not orders:
        return [TripPlan(())]
    max_cap = _validate(orders, trucks)
    items = sorted(orders, key=lambda o: natural_key(o.id))
    n = len(items)
    plans: list[TripPlan] = []

    groups: list[list[Order]] = []
    loads: list[Fraction] = []

    def place(i: int):
        if i == n:
            plans.append(_build_plan([tuple(g) for g in groups], trucks))
            return
        order = items[i]
        for gi in range(len(groups)):
            if loads[gi] + order.quantity <= max_cap:
                groups[gi].append(order)
                loads[gi] += order.quantity
                place(i + 1)
                groups[gi].pop()
                loads[gi] -= order.quantity
        groups.append([order])
        loads.append(order.quantity)
        place(i + 1)
        groups.pop()
        loads.pop()

    place(0)
    plans.sort(key=lambda p: (p.trip_count, _plan_key(p)))
    return plans[:max_plans] if max_plans is not None else plans


def plan_window_warnings(plan: TripPlan) -> list[str]:
    """Flag trips that mix pairwise-disjoint delivery windows.

    Windows are not enforced during assignment (routing owns schedules);
    this is the post-hoc advisory check.
    """
    warnings = []
    for index, trip in enumerate(plan.trips, start=1):
        for pos, first in enumerate(trip.orders):
            clash = None
            for second in trip.orders[pos + 1 :]:
                if not first.window.overlaps(second.window):
                    clash = second
                    break
            if clash is not None:
                warnings.append(
                    f"trip {index} ({trip.truck}) mixes disjoint windows: "
                    f"{first.client} {first.window.text} vs {clash.client} {clash.window.text}"
                )
                break
    return warnings
