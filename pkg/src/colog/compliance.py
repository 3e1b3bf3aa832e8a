"""Step 1 of the operational pipeline: intent-scaled truck admission.

Three inclusive constraints per truck:
  c1: size_tons <= max_vehicle_size_tons * intents[S]/100
  c2: gains     >= max_net_profit       * intents[E]/100
  c3: emission multiplier >= intents[En]/100

c3's direction is deliberate (the multiplier must be at least the
environment-intent fraction); pass c3_inverted=True for the intuitive
at-most reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import MissingIntent
from .model import ComplianceRule, Truck


class Verdict(str, Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"


class Inference(str, Enum):
    FULLY_SATISFIED = "FullySatisfied"
    PARTIALLY_SATISFIED = "PartiallySatisfied"
    UNSATISFIED = "Unsatisfied"


@dataclass(frozen=True)
class TruckCompliance:
    truck: Truck
    c1: bool
    c2: bool
    c3: bool

    @property
    def verdict(self) -> Verdict:
        return Verdict.ACCEPT if (self.c1 and self.c2 and self.c3) else Verdict.REJECT

    @property
    def inference(self) -> Inference:
        held = sum((self.c1, self.c2, self.c3))
        if held == 3:
            return Inference.FULLY_SATISFIED
        if held == 0:
            return Inference.UNSATISFIED
        return Inference.PARTIALLY_SATISFIED


@dataclass(frozen=True)
class ComplianceReport:
    rows: tuple[TruckCompliance, ...]

    def accepted(self) -> tuple[Truck, ...]:
        return tuple(r.truck for r in self.rows if r.verdict is Verdict.ACCEPT)

    def accepted_by_owner(self) -> dict:
        grouped: dict[str, list[Truck]] = {}
        for truck in self.accepted():
            grouped.setdefault(truck.owner, []).append(truck)
        return grouped

    def row_for(self, label: str) -> TruckCompliance | None:
        for row in self.rows:
            if row.truck.label == label:
                return row
        return None


def filter_trucks(
    trucks: Sequence[Truck],
    rule: ComplianceRule,
    c3_inverted: bool = False,
) -> ComplianceReport:
    """Apply the three constraints to every truck; order follows the input."""
    if rule.intents is None or len(rule.intents) < 3:
        raise MissingIntent(
            "compliance rule needs an intents vector with S, E, En components"
        )
    s_intent, e_intent, en_intent = (Fraction(v) for v in rule.intents[:3])
    size_cap = rule.max_vehicle_size_tons * s_intent / 100
    profit_floor = rule.max_net_profit * e_intent / 100
    emission_bar = en_intent / 100
    rows = []
    for truck in trucks:
        c1 = truck.size_tons <= size_cap
        c2 = truck.gains >= profit_floor
        if c3_inverted:
            c3 = truck.emission.multiplier <= emission_bar
        else:
            c3 = truck.emission.multiplier >= emission_bar
        rows.append(TruckCompliance(truck, c1, c2, c3))
    return ComplianceReport(tuple(rows))
