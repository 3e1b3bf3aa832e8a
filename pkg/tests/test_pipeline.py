from fractions import Fraction
from textwrap import dedent

import pytest

from colog import parse_scenario, resolve_intents, run_pipeline
from colog.errors import MissingIntent, UnknownKey


def q(*values):
    return tuple(Fraction(v) for v in values)


class TestResolveIntents:
    def test_explicit_wins(self, sample1):
        intents, source = resolve_intents(sample1, intents=(10, 20, 30))
        assert intents == q(10, 20, 30)
        assert source == "explicit"

    def test_macro_case_next(self, sample1):
        intents, source = resolve_intents(sample1, macro_case=5)
        # case 5: b (+,-,+), c (+,+,+); cc = b*b2b + c*c2c per dimension
        assert intents == q(10 + 30, -40 + 40, 50 + 30)
        assert source == "macro case 5 (cc)"

    def test_macro_case_sn_side(self, sample1):
        intents, source = resolve_intents(sample1, macro_case=5, intents_source="sn")
        assert intents == q(20 + 20, -40 + 10, 40 + 70)
        assert source == "macro case 5 (sn)"

    def test_unknown_macro_case(self, sample1):
        with pytest.raises(UnknownKey):
            resolve_intents(sample1, macro_case=99)

    def test_compliance_rule_is_the_default(self, sample1):
        intents, source = resolve_intents(sample1)
        assert intents == q(40, 0, 80)
        assert source == "compliance rule"

    def test_scenario_signs_last(self, table6):
        intents, source = resolve_intents(table6)
        assert source == "scenario signs (cc)"
        assert sum(intents) == Fraction(-20)

    def test_nothing_to_resolve(self):
        scenario = parse_scenario("meta: {version: 1}\n")
        with pytest.raises(MissingIntent):
            resolve_intents(scenario)

    def test_macro_case_needs_blocks(self):
        scenario = parse_scenario(
            "meta: {version: 1}\nsign_cases:\n  - {b: ['+','+','+'], c: ['+','+','+']}\n"
        )
        with pytest.raises(MissingIntent):
            resolve_intents(scenario, macro_case=1)


@pytest.fixture(scope="module")
def report(sample1):
    return run_pipeline(sample1)


class TestSample1Pipeline:
    def test_intents_come_from_the_compliance_rule(self, report):
        assert report.intents == q(40, 0, 80)
        assert report.intents_source == "compliance rule"

    def test_macro_outcome_rides_along(self, report):
        assert report.macro_outcome is not None
        assert report.macro_outcome.sn_weight == Fraction(120)

    def test_eight_trucks_accepted(self, report):
        accepted = report.compliance.accepted()
        assert len(accepted) == 8
        assert {t.label for t in accepted} == {
            "S1:T1", "S1:T2", "S2:T4", "S3:T5",
            "S4:T7", "S4:T8", "S6:T1", "S6:T2",
        }

    def test_s5_is_inoperable(self, report):
        assert report.inoperable == ("S5",)
        assert any("S5 is inoperable" in note for note in report.notes)

    def test_minimum_trip_counts(self, report):
        counts = {sid: plan.trip_count for sid, plan in report.minima}
        assert counts == {"S1": 2, "S2": 2, "S3": 3, "S4": 3, "S6": 2}

    def test_declared_plans_drive_routing(self, report):
        assert all(c.declared for c in report.coalitions)
        fc = next(c for c in report.coalitions if c.coalition.kind == "FC")
        assert fc.result.depot == "S1-S6"
        assert [r.text for r in fc.result.routes] == [
            "S1-S6-C2 (15)",
            "S1-S6-C1-C3-C4 (15)",
        ]

    def test_scenario_totals(self, report):
        comparison = report.route_comparison
        assert comparison.total_for("FC") == Fraction(30)
        assert comparison.total_for("PC") == Fraction(50)
        assert comparison.total_for("NC") == Fraction(180)
        assert comparison.collaborative_total == Fraction(80)
        assert comparison.verdict is True

    def test_combined_emissions_beat_nc(self, report):
        ec = report.emission_comparison
        assert ec.combined.as_dict() == {"E1": Fraction(5), "E2": Fraction(1)}
        assert ec.vector_for("NC").as_dict() == {"E1": Fraction(8), "E2": Fraction(3)}
        assert ec.verdict is True
        assert ec.used_fallback is False

    def test_overloaded_declared_trips_warn_instead_of_failing(self, report):
        assert any(
            "warning" in note and "capacity" in note for note in report.notes
        )

    def test_emission_rows_compare_against_member_nc(self, report):
        rows = {row.name: row for row in report.emission_rows}
        fc = rows["FC S1-S6"]
        assert fc.vector.as_dict() == {"E1": Fraction(1), "E2": Fraction(1)}
        assert fc.members_nc.as_dict() == {"E1": Fraction(2), "E2": Fraction(2)}
        assert fc.verdict is True


class TestSmallScenarios:
    def test_empty_scenario_reports_nothing_to_plan(self):
        report = run_pipeline(parse_scenario("meta: {version: 1}\n"))
        assert report.intents is None
        assert report.intents_source == "none"
        assert any("nothing to plan" in note for note in report.notes)
        assert report.route_comparison is None

    def test_no_compliance_rule_admits_every_truck(self):
        scenario = parse_scenario(
            dedent(
                """\
                meta: {version: 1}
                shippers: [S1]
                orders:
                  - {shipper: S1, client: C1, packets: 1, packet_size_kg: 10, window: "09:00-10:00"}
                trucks:
                  - {owner: S1, id: T1, capacity_kg: 100, size_tons: 1, emission: E1}
                network:
                  edges:
                    - [S1, C1, 5]
                """
            )
        )
        report = run_pipeline(scenario, intents=(40, 0, 80))
        assert any("no compliance rule" in note for note in report.notes)
        assert report.compliance is None
        assert report.minima[0][1].trip_count == 1
        assert report.coalitions[0].declared is False
        assert report.coalitions[0].result.total_triplength == Fraction(5)

    def test_operational_data_without_intents_fails(self):
        scenario = parse_scenario(
            "meta: {version: 1}\nshippers: [S1]\n"
            "trucks:\n  - {owner: S1, id: T1, capacity_kg: 100, size_tons: 1, emission: E1}\n"
        )
        with pytest.raises(MissingIntent):
            run_pipeline(scenario)

    def test_derived_pc_routes_only_shared_clients(self):
        scenario = parse_scenario(
            dedent(
                """\
                meta: {version: 1}
                shippers: [S1, S2]
                orders:
                  - {shipper: S1, client: C1, packets: 1, packet_size_kg: 10, window: "09:00-10:00"}
                  - {shipper: S1, client: C2, packets: 1, packet_size_kg: 10, window: "09:00-10:00"}
                  - {shipper: S2, client: C1, packets: 1, packet_size_kg: 10, window: "09:00-10:00"}
                trucks:
                  - {owner: S1, id: T1, capacity_kg: 100, size_tons: 1, emission: E1}
                  - {owner: S2, id: T1, capacity_kg: 100, size_tons: 1, emission: E2}
                network:
                  edges:
                    - [S1, C1, 5]
                    - [S1, C2, 6]
                    - [S2, C1, 7]
                """
            )
        )
        report = run_pipeline(scenario, intents=(40, 0, 80))
        pc = next(c for c in report.coalitions if c.coalition.kind == "PC")
        assert pc.coalition.members == ("S1", "S2")
        assert pc.coalition.served_clients == ("C1",)
        served = {o.id for trip in pc.plan.trips for o in trip.orders}
        assert served == {"S1:C1", "S2:C1"}

    def test_speed_reduces_declared_violations(self, verification):
        slow = run_pipeline(verification)
        fast = run_pipeline(verification, speed=Fraction(10))
        slow_violations = [n for n in slow.notes if n.startswith("violation:")]
        fast_violations = [n for n in fast.notes if n.startswith("violation:")]
        assert len(fast_violations) <= len(slow_violations)
