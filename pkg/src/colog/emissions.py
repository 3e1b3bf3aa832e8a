"""Step 4: symbolic emission accounting and scenario comparison, plus the
EPA Tier 1 reference table.

Emissions stay symbolic: a vector of rational coefficients over base
symbols (E1, E2, ...). The default charge model is one emission-factor
unit per trip; per-distance mode multiplies by trip length instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import UnknownKey, UnknownTruck
from .model import Truck
from .routing import RouteResult
from ._util import fmt_q, natural_key


class _Absent:
    """Singleton for Tier 1 dash cells: queryable as absent, never zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Absent"

    def __bool__(self):
        return False


ABSENT = _Absent()


@dataclass(frozen=True)
class EmissionVector:
    """Sparse map base symbol -> nonnegative coefficient; zeros are dropped."""

    items: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, Fraction]) -> "EmissionVector":
        cleaned = []
        for base, value in mapping.items():
            value = Fraction(value)
            if value < 0:
                raise ValueError(f"coefficient for {base} is negative")
            if value != 0:
                cleaned.append((base, value))
        cleaned.sort(key=lambda item: natural_key(item[0]))
        return cls(tuple(cleaned))

    def get(self, base: str) -> Fraction:
        for key, value in self.items:
            if key == base:
                return value
        return Fraction(0)

    def as_dict(self) -> dict:
        return dict(self.items)

    @property
    def bases(self) -> tuple[str, ...]:
        return tuple(key for key, _ in self.items)

    def __add__(self, other: "EmissionVector") -> "EmissionVector":
        merged = self.as_dict()
        for base, value in other.items:
            merged[base] = merged.get(base, Fraction(0)) + value
        return EmissionVector.of(merged)

    def scalarized(self, weights: Mapping[str, Fraction] | None = None) -> Fraction:
        total = Fraction(0)
        for base, value in self.items:
            weight = Fraction(weights[base]) if weights and base in weights else Fraction(1)
            total += weight * value
        return total

    @property
    def text(self) -> str:
        if not self.items:
            return "0"
        return " + ".join(
            base if value == 1 else f"{fmt_q(value)}{base}" for base, value in self.items
        )


def account_emissions(
    result: RouteResult,
    trucks: Sequence[Truck],
    per_distance: bool = False,
) -> EmissionVector:
    """Sum each trip's emission factor (times trip length in per-distance mode)."""
    roster = {t.label: t for t in trucks}
    totals: dict[str, Fraction] = {}
    for route in result.routes:
        truck = roster.get(route.truck)
        if truck is None:
            raise UnknownTruck(f"trip {route.trip_index} uses unknown truck {route.truck!r}")
        charge = truck.emission.multiplier
        if per_distance:
            charge *= route.length
        base = truck.emission.base
        totals[base] = totals.get(base, Fraction(0)) + charge
    return EmissionVector.of(totals)


def resolve_alternative(
    candidates: Sequence[Truck],
    weights: Mapping[str, Fraction] | None = None,
) -> Truck:
    """Pick the minimum-emission candidate under the scalarization, ties by
    natural label order."""
    if not candidates:
        raise UnknownTruck("no candidate trucks to resolve")

    def key(truck: Truck):
        vector = EmissionVector.of({truck.emission.base: truck.emission.multiplier})
        return (vector.scalarized(weights), natural_key(truck.label))

    return min(candidates, key=key)


def strictly_better(
    left: EmissionVector,
    right: EmissionVector,
    weights: Mapping[str, Fraction] | None = None,
) -> tuple[bool, bool]:
    """(verdict, used_fallback): left < right by strict dominance, else by
    scalarized totals."""
    bases = sorted(set(left.bases) | set(right.bases), key=natural_key)
    all_le = all(left.get(b) <= right.get(b) for b in bases)
    some_lt = any(left.get(b) < right.get(b) for b in bases)
    if all_le and some_lt:
        return True, False
    if all_le and not some_lt:
        # Equal vectors: not strictly better, no fallback needed.
        return False, False
    return left.scalarized(weights) < right.scalarized(weights), True


@dataclass(frozen=True)
class EmissionComparison:
    vectors: tuple[tuple[str, EmissionVector], ...]  # per kind: FC, PC, NC
    scalarized: tuple[tuple[str, Fraction], ...]
    combined: EmissionVector  # FC + PC
    verdict: bool | None  # None when no FC/PC or no NC data
    used_fallback: bool

    def vector_for(self, kind: str) -> EmissionVector:
        for key, value in self.vectors:
            if key == kind:
                return value
        return EmissionVector()


def compare_emissions(
    by_type: Mapping[str, EmissionVector],
    weights: Mapping[str, Fraction] | None = None,
) -> EmissionComparison:
    """Compare FC+PC against NC: strict dominance first, scalarized fallback."""
    vectors = {kind: by_type.get(kind, EmissionVector()) for kind in ("FC", "PC", "NC")}
    combined = vectors["FC"] + vectors["PC"]
    has_collab = "FC" in by_type or "PC" in by_type
    if has_collab and "NC" in by_type:
        verdict, used_fallback = strictly_better(combined, vectors["NC"], weights)
    else:
        verdict, used_fallback = None, False
    return EmissionComparison(
        vectors=tuple((k, vectors[k]) for k in ("FC", "PC", "NC")),
        scalarized=tuple((k, vectors[k].scalarized(weights)) for k in ("FC", "PC", "NC")),
        combined=combined,
        verdict=verdict,
        used_fallback=used_fallback,
    )


# -- EPA Tier 1 reference table ----------------------------------------------

POLLUTANTS = ("THC", "NMHC", "CO", "NOx-diesel", "NOx-gasoline", "PM")
MILEAGE_BINS = ("50k/5yr", "100k/10yr")
CATEGORIES = (
    "Passenger car",
    "LLDT <3750",
    "LLDT >3750",
    "HLDT <5750",
    "HLDT >5750",
)

_A = ABSENT
_D = Fraction


def _row(values):
    return dict(zip(POLLUTANTS, values))


TIER1 = {
    "Passenger car": {
        "50k/5yr": _row((_D("0.41"), _D("0.25"), _D("3.4"), _D("1.0"), _D("0.4"), _D("0.08"))),
        "100k/10yr": _row((_A, _D("0.31"), _D("4.2"), _D("1.25"), _D("0.6"), _D("1.0"))),
    },
    "LLDT <3750": {
        "50k/5yr": _row((_A, _D("0.25"), _D("3.4"), _D("1.0"), _D("0.4"), _D("0.08"))),
        "100k/10yr": _row((_D("0.80"), _D("0.31"), _D("4.2"), _D("1.25"), _D("0.6"), _D("0.10"))),
    },
    "LLDT >3750": {
        "50k/5yr": _row((_A, _D("0.32"), _D("4.4"), _A, _D("0.7"), _D("0.08"))),
        "100k/10yr": _row((_D("0.80"), _D("0.40"), _D("5.5"), _D("0.97"), _D("0.97"), _D("0.10"))),
    },
    "HLDT <5750": {
        "50k/5yr": _row((_D("0.32"), _A, _D("4.4"), _A, _D("0.7"), _A)),
        "100k/10yr": _row((_D("0.80"), _D("0.46"), _D("6.4"), _D("0.98"), _D("0.98"), _D("0.10"))),
    },
    "HLDT >5750": {
        "50k/5yr": _row((_D("0.9"), _A, _D("5.0"), _A, _D("1.1"), _A)),
        "100k/10yr": _row((_D("0.80"), _D("0.56"), _D("7.3"), _D("1.53"), _D("1.53"), _D("0.12"))),
    },
}

_CATEGORY_ALIASES = {
    "passengercar": "Passenger car",
    "passengercars": "Passenger car",
    "car": "Passenger car",
    "lldt<3750": "LLDT <3750",
    "lldt>3750": "LLDT >3750",
    "hldt<5750": "HLDT <5750",
    "hldt>5750": "HLDT >5750",
}
_POLLUTANT_ALIASES = {
    "thc": "THC",
    "nmhc": "NMHC",
    "co": "CO",
    "noxdiesel": "NOx-diesel",
    "noxgasoline": "NOx-gasoline",
    "pm": "PM",
}


def _squash(text: str) -> str:
    return re.sub(r"[^a-z0-9<>]", "", text.lower())


def tier1_lookup(category: str, mileage_bin: str, pollutant: str):
    """Exact printed g/mi value, or ABSENT for printed dashes."""
    squashed = _squash(category)
    resolved = _CATEGORY_ALIASES.get(squashed)
    if resolved is None:
        raise UnknownKey(f"unknown Tier 1 category {category!r}")
    bin_text = _squash(mileage_bin)
    if "100" in bin_text:
        bin_key = "100k/10yr"
    elif "50" in bin_text:
        bin_key = "50k/5yr"
    else:
        raise UnknownKey(f"unknown mileage bin {mileage_bin!r}")
    pol = _POLLUTANT_ALIASES.get(_squash(pollutant))
    if pol is None:
        raise UnknownKey(f"unknown pollutant {pollutant!r}")
    return TIER1[resolved][bin_key][pol]
