"""Uncertainty effectors, system complexity/state, trio conditionality,
and the spider-network node classification.

All magnitudes are exact rationals so that e.g. |-1111.1 + 11.1| is
exactly 1100.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import (
    AxiomViolation,
    DimensionMismatch,
    EmptyInput,
    NormalizationError,
    OutsideRegime,
    PolarityError,
    RegistryError,
    SingularState,
)
from ._util import fmt_q

# -- condition registry -----------------------------------------------------

# condition name -> (magnitude k_x, offers positive polarity)
# Conditions marked False only occur destructively.
REGISTRY: dict[str, tuple[Fraction, bool]] = {
    "Air": (Fraction("1.1"), True),
    "Dry": (Fraction("1.11"), True),
    "Wet": (Fraction("1.111"), True),
    "Wind": (Fraction("11.1"), True),
    "Snow": (Fraction("111.1"), True),
    "Water": (Fraction("111.11"), True),
    "Tornado": (Fraction("1111.1"), False),
    "Hurricane": (Fraction("1111.11"), False),
    "Planetoid": (Fraction("11111.11"), False),
    "Sunlight": (Fraction("11111.1111"), True),
    "Alien invasion": (Fraction("11111111.1"), True),
    "Black hole": (Fraction("1111111111.1"), False),
}


@dataclass(frozen=True)
class ConditionEffector:
    """One uncertainty condition acting n times with a fixed polarity."""

    condition: str
    polarity: str  # "+" or "-"
    n: int
    k_x: Fraction

    @property
    def signed(self) -> Fraction:
        sign = 1 if self.polarity == "+" else -1
        return sign * self.k_x * self.n

    def describe(self) -> str:
        return f"{self.polarity}{self.n}x {self.condition} ({fmt_q(self.k_x)})"


def make_effector(condition: str, polarity: str, n: int) -> ConditionEffector:
    """Build an effector, validating against the condition registry."""
    if condition not in REGISTRY:
        known = ", ".join(sorted(REGISTRY))
        raise RegistryError(f"unknown condition {condition!r}; known: {known}")
    if polarity not in ("+", "-"):
        raise PolarityError(f"polarity must be '+' or '-', got {polarity!r}")
    magnitude, offers_positive = REGISTRY[condition]
    if polarity == "+" and not offers_positive:
        raise PolarityError(f"condition {condition!r} has no positive effect")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise NormalizationError(f"occurrence count must be a nonnegative integer, got {n!r}")
    return ConditionEffector(condition, polarity, n, magnitude)


@dataclass(frozen=True)
class UncertaintyValue:
    """Net operational-uncertainty magnitude k_o (axioms: k_o not in {0, 1})."""

    k_o: Fraction

    def __post_init__(self):
        if self.k_o == 0:
            raise AxiomViolation("k_o = 0: effects cancelled exactly; no operational uncertainty")
        if self.k_o == 1:
            raise AxiomViolation("k_o = 1: unit uncertainty is excluded by axiom")
        if self.k_o < 0:
            raise AxiomViolation(f"k_o must be a magnitude, got {fmt_q(self.k_o)}")


def effector_sum(effectors: Sequence[ConditionEffector]) -> UncertaintyValue:
    """Net |sum of signed effects| over one or more effectors."""
    if not effectors:
        raise EmptyInput("effector sum needs at least one effector")
    total = sum((e.signed for e in effectors), Fraction(0))
    return UncertaintyValue(abs(total))


# -- city deltas and system complexity --------------------------------------

DELTA_FIELDS = ("po", "s", "it", "i", "r", "fe", "g", "e")


@dataclass(frozen=True)
class CityDeltas:
    """Per-dimension city change magnitudes.

    po: policies, s: shippers, it: information technology,
    i: infrastructure, r: residents, fe: freights, g: goods,
    e: environment.
    """

    po: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    it: Fraction = Fraction(0)
    i: Fraction = Fraction(0)
    r: Fraction = Fraction(0)
    fe: Fraction = Fraction(0)
    g: Fraction = Fraction(0)
    e: Fraction = Fraction(0)

    def __post_init__(self):
        for name in DELTA_FIELDS:
            value = getattr(self, name)
            if value < 0:
                raise NormalizationError(f"delta {name} must be >= 0, got {fmt_q(value)}")

    @classmethod
    def from_sequence(cls, values: Sequence[Fraction]) -> "CityDeltas":
        if len(values) != len(DELTA_FIELDS):
            raise DimensionMismatch(
                f"expected {len(DELTA_FIELDS)} deltas ({', '.join(DELTA_FIELDS)}), got {len(values)}"
            )
        return cls(**{name: Fraction(v) for name, v in zip(DELTA_FIELDS, values)})

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, name) for name in DELTA_FIELDS)

    def delta_a(self, union: str = "max") -> Fraction:
        """Human-activity aggregate: union of every delta except e."""
        return _union([getattr(self, name) for name in DELTA_FIELDS if name != "e"], union)

    def aggregate_all(self, union: str = "max") -> Fraction:
        return _union(list(self.as_tuple()), union)


def _union(values: list[Fraction], union: str) -> Fraction:
    if union == "max":
        return max(values) if values else Fraction(0)
    if union == "sum":
        return sum(values, Fraction(0))
    raise NormalizationError(f"union must be 'max' or 'sum', got {union!r}")


def system_complexity(k: UncertaintyValue, deltas: CityDeltas, union: str = "max") -> Fraction:
    """Change in system complexity: k_o times the union of all eight deltas."""
    return k.k_o * deltas.aggregate_all(union)


def system_state(complexity: Fraction) -> Fraction:
    """Reciprocal of system complexity (singular when complexity is zero)."""
    complexity = Fraction(complexity)
    if complexity == 0:
        raise SingularState("system complexity is zero; state is undefined")
    return 1 / complexity


# -- trio conditionality -----------------------------------------------------


class TrioState(str, Enum):
    NON_CHAOTIC = "NonChaotic"
    NEAR_CHAOTIC = "NearChaotic"
    CATACLYSMIC = "Cataclysmic"


@dataclass(frozen=True)
class TrioResult:
    r: Fraction
    state: TrioState


def classify_trio(
    complexity: Fraction,
    k: UncertaintyValue,
    d_a: Fraction,
    d_e: Fraction,
    eps: Fraction = Fraction(1, 20),
) -> TrioResult:
    """Classify the complexity/activity/environment trio by r = dS_C / (k_o * max(dA, dE)).

    eps widens the r = 1 equality band and floors the cataclysmic band.
    """
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise NormalizationError(f"eps must be in (0, 1/2), got {fmt_q(eps)}")
    denom = k.k_o * max(d_a, d_e)
    if denom == 0:
        raise SingularState("k_o * max(dA, dE) is zero; trio conditionality undefined")
    r = Fraction(complexity) / denom
    if r > 1 + eps:
        raise OutsideRegime(f"r = {fmt_q(r)} > 1 + eps; outside the modeled regime")
    if abs(r - 1) <= eps:
        return TrioResult(r, TrioState.NON_CHAOTIC)
    if r <= eps:
        return TrioResult(r, TrioState.CATACLYSMIC)
    return TrioResult(r, TrioState.NEAR_CHAOTIC)


# -- spider network ----------------------------------------------------------


class Tangibility(str, Enum):
    TANGIBLE = "T"
    INTANGIBLE = "I"


class NodeClass(str, Enum):
    TANGIBLE = "Tangible"
    INTANGIBLE = "Intangible"
    SEMI_TANGIBLE = "SemiTangible"


@dataclass(frozen=True)
class SpiderNode:
    """A city-dimension node with its two octagon-neighbour link tangibilities."""

    kind: str
    links: tuple[Tangibility, Tangibility]
    directions: tuple[str, str] = ("dual", "dual")  # recorded, not yet consulted


def classify_spider_node(node: SpiderNode) -> NodeClass:
    a, b = node.links
    if a == Tangibility.TANGIBLE and b == Tangibility.TANGIBLE:
        return NodeClass.TANGIBLE
    if a == Tangibility.INTANGIBLE and b == Tangibility.INTANGIBLE:
        return NodeClass.INTANGIBLE
    return NodeClass.SEMI_TANGIBLE


NODE_NAMES = {
    "Po": "Policies",
    "S": "Shippers",
    "It": "Information Technology",
    "I": "Infrastructure",
    "R": "Residents",
    "Fe": "Freights",
    "G": "Goods",
    "E": "Environment",
}

# Octagon cycle and the tangibility of each edge between consecutive nodes;
# the edge after the last node wraps back to the first.
_OCTAGON = ("S", "R", "Fe", "Po", "G", "I", "It", "E")
_EDGES = (
    Tangibility.TANGIBLE,   # S-R
    Tangibility.TANGIBLE,   # R-Fe
    Tangibility.INTANGIBLE, # Fe-Po
    Tangibility.INTANGIBLE, # Po-G
    Tangibility.TANGIBLE,   # G-I
    Tangibility.INTANGIBLE, # I-It
    Tangibility.INTANGIBLE, # It-E
    Tangibility.INTANGIBLE, # E-S
)


def canonical_spider_network() -> tuple[SpiderNode, ...]:
    """The eight-dimension city octagon with its link tangibilities."""
    nodes = []
    for idx, kind in enumerate(_OCTAGON):
        before = _EDGES[idx - 1]
        after = _EDGES[idx]
        nodes.append(SpiderNode(kind, (before, after)))
    return tuple(nodes)
