"""Macro-level collaboration square: SN/CC evaluation, exhaustive sign-case
enumeration, ranking of sampled cases, and the ACS reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .complexity import UncertaintyValue
from .errors import DimensionMismatch, EmptyInput, NormalizationError, SingularState
from .model import CollaborationBlocks, SignAssignment

TARGETS = ("sn", "cc", "both")


@dataclass(frozen=True)
class CollaborationOutcome:
    """SN/CC vectors and their weighted intents for one sign assignment."""

    dimensions: tuple[str, ...]
    sn_vector: tuple[Fraction, ...]
    cc_vector: tuple[Fraction, ...]

    @property
    def sn_weight(self) -> Fraction:
        return sum(self.sn_vector, Fraction(0))

    @property
    def cc_weight(self) -> Fraction:
        return sum(self.cc_vector, Fraction(0))


def eval_scs(blocks: CollaborationBlocks, signs: SignAssignment) -> CollaborationOutcome:
    """Evaluate both strategies under one sign assignment.

    Per dimension: sn = b_sign*c2b + c_sign*b2c; cc = b_sign*b2b + c_sign*c2c.
    """
    n = len(blocks.dimensions)
    if len(signs.b_signs) != n:
        raise DimensionMismatch(
            f"signs have {len(signs.b_signs)} dimensions, blocks have {n}"
        )
    sn = tuple(
        signs.b_signs[d] * blocks.c2b[d] + signs.c_signs[d] * blocks.b2c[d]
        for d in range(n)
    )
    cc = tuple(
        signs.b_signs[d] * blocks.b2b[d] + signs.c_signs[d] * blocks.c2c[d]
        for d in range(n)
    )
    return CollaborationOutcome(blocks.dimensions, sn, cc)


def _criterion(outcome: CollaborationOutcome, target: str):
    if target == "sn":
        return outcome.sn_weight
    if target == "cc":
        return outcome.cc_weight
    if target == "both":
        return (
            min(outcome.sn_weight, outcome.cc_weight),
            outcome.sn_weight + outcome.cc_weight,
        )
    raise NormalizationError(f"target must be one of {TARGETS}, got {target!r}")


def enumerate_sign_cases(
    blocks: CollaborationBlocks, target: str = "both"
) -> list[tuple[SignAssignment, CollaborationOutcome]]:
    """All 2^(2n) binary sign cases, best first.

    Signs range over +/- only (the undecided 0 appears in user-supplied
    cases, never in the enumeration). Case ids follow generation order so
    ties keep a deterministic, reproducible ranking.
    """
    n = len(blocks.dimensions)
    cases = []
    case_id = 0
    for b_signs in product((1, -1), repeat=n):
        for c_signs in product((1, -1), repeat=n):
            case_id += 1
            signs = SignAssignment(b_signs, c_signs, case_id)
            cases.append((signs, eval_scs(blocks, signs)))
    cases.sort(key=lambda item: _criterion(item[1], target), reverse=True)
    return cases


def rank_sampled_cases(
    cases: Sequence[SignAssignment],
    blocks: CollaborationBlocks,
    target: str = "both",
) -> tuple[SignAssignment, CollaborationOutcome]:
    """Argmax of the selection criterion over user-supplied cases.

    Ties keep the earliest case in input order.
    """
    if not cases:
        raise EmptyInput("no sign cases to rank")
    best = None
    best_key = None
    for signs in cases:
        outcome = eval_scs(blocks, signs)
        key = _criterion(outcome, target)
        if best_key is None or key > best_key:
            best, best_key = (signs, outcome), key
    return best


@dataclass(frozen=True)
class AcsContext:
    """Inputs of the complexity reduction: net uncertainty and the two aggregates."""

    k: UncertaintyValue
    d_a: Fraction
    d_e: Fraction


def hlt_context(eps: Fraction = Fraction(1, 10**6)) -> AcsContext:
    """High-level-presumption context: k_o barely above 1, dA = 0, dE = 1.

    Under it the ACS reduction returns the SCS weights unchanged up to eps.
    """
    return AcsContext(UncertaintyValue(1 + Fraction(eps)), Fraction(0), Fraction(1))


def acs_reduce(outcome: CollaborationOutcome, ctx: AcsContext) -> tuple[Fraction, Fraction]:
    """Reduce weighted intents by the city's complexity state.

    Returns (dScc, dSsn): each weight divided by k_o * max(dA, dE).
    """
    denominator = ctx.k.k_o * max(ctx.d_a, ctx.d_e)
    if denominator == 0:
        raise SingularState("k_o * max(dA, dE) is zero; reduction undefined")
    return outcome.cc_weight / denominator, outcome.sn_weight / denominator
