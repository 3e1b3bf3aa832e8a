from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colog.compliance import Inference, Verdict, filter_trucks
from colog.errors import MissingIntent
from colog.model import ComplianceRule, EmissionFactor, Truck


def truck(size=3, gains=0, multiplier=1, label="T1"):
    return Truck(
        id=label,
        owner="S1",
        capacity_kg=Fraction(500),
        size_tons=Fraction(size),
        emission=EmissionFactor("E1", Fraction(multiplier)),
        gains=Fraction(gains),
    )


def rule(intents, size_cap=600, profit=5000):
    return ComplianceRule(
        max_vehicle_size_tons=Fraction(size_cap),
        max_net_profit=Fraction(profit),
        intents=tuple(Fraction(v) for v in intents),
    )


class TestConstraints:
    def test_c1_scales_the_size_cap(self):
        # cap 600 * 40% = 240 tons
        report = filter_trucks([truck(size=240), truck(size=241, label="T2")], rule([40, 0, 80]))
        assert report.rows[0].c1 is True
        assert report.rows[1].c1 is False

    def test_c2_scales_the_profit_floor(self):
        # floor 5000 * 10% = 500
        report = filter_trucks(
            [truck(gains=500), truck(gains=499, label="T2")], rule([40, 10, 80])
        )
        assert report.rows[0].c2 is True
        assert report.rows[1].c2 is False

    def test_c3_is_a_lower_bound_by_default(self):
        # bar 80% = 0.8
        report = filter_trucks(
            [truck(multiplier=Fraction(4, 5)), truck(multiplier=Fraction(79, 100), label="T2")],
            rule([40, 0, 80]),
        )
        assert report.rows[0].c3 is True
        assert report.rows[1].c3 is False

    def test_c3_inverted_flips_the_direction(self):
        report = filter_trucks(
            [truck(multiplier=Fraction(1, 2)), truck(multiplier=2, label="T2")],
            rule([40, 0, 80]),
            c3_inverted=True,
        )
        assert report.rows[0].c3 is True
        assert report.rows[1].c3 is False

    def test_bounds_are_inclusive(self):
        row = filter_trucks(
            [truck(size=240, gains=0, multiplier=Fraction(4, 5))], rule([40, 0, 80])
        ).rows[0]
        assert (row.c1, row.c2, row.c3) == (True, True, True)
        assert row.verdict is Verdict.ACCEPT


class TestVerdicts:
    def test_accept_needs_all_three(self):
        report = filter_trucks([truck(size=1000)], rule([40, 0, 80]))
        assert report.rows[0].verdict is Verdict.REJECT
        assert report.accepted() == ()

    def test_inference_counts_constraints(self):
        rows = filter_trucks(
            [
                truck(size=1, gains=100, multiplier=1),
                truck(size=1000, gains=100, multiplier=1, label="T2"),
                truck(size=1000, gains=-1, multiplier=0, label="T3"),
            ],
            rule([40, 0, 80]),
        ).rows
        assert rows[0].inference is Inference.FULLY_SATISFIED
        assert rows[1].inference is Inference.PARTIALLY_SATISFIED
        assert rows[2].inference is Inference.UNSATISFIED

    def test_rows_follow_input_order(self):
        report = filter_trucks(
            [truck(label="T2"), truck(label="T1")], rule([40, 0, 80])
        )
        assert [r.truck.id for r in report.rows] == ["T2", "T1"]

    def test_missing_intents_rejected(self):
        bad = ComplianceRule(
            max_vehicle_size_tons=Fraction(600),
            max_net_profit=Fraction(5000),
            intents=None,
        )
        with pytest.raises(MissingIntent):
            filter_trucks([truck()], bad)

    def test_accepted_by_owner_groups(self):
        t1 = truck(label="T1")
        t2 = Truck(
            id="T9",
            owner="S2",
            capacity_kg=Fraction(1),
            size_tons=Fraction(1),
            emission=EmissionFactor("E1"),
        )
        grouped = filter_trucks([t1, t2], rule([40, 0, 80])).accepted_by_owner()
        assert set(grouped) == {"S1", "S2"}
        assert [t.id for t in grouped["S1"]] == ["T1"]


@given(
    size=st.integers(min_value=0, max_value=1000),
    low=st.integers(min_value=0, max_value=100),
    bump=st.integers(min_value=0, max_value=100),
)
def test_raising_the_size_intent_never_breaks_c1(size, low, bump):
    before = filter_trucks([truck(size=size)], rule([low, 0, 0])).rows[0].c1
    after = filter_trucks([truck(size=size)], rule([low + bump, 0, 0])).rows[0].c1
    assert after or not before
