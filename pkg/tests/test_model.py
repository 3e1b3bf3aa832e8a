from fractions import Fraction
from textwrap import dedent

import pytest

from colog import parse_scenario, serialize_scenario
from colog.errors import (
    DanglingReferenceError,
    DimensionMismatch,
    InputError,
    NormalizationError,
    SchemaError,
)
from colog.fixtures import fixture_names, fixture_text
from colog.model import TimeWindow, parse_emission, parse_sign, parse_window

MINIMAL = dedent(
    """\
    meta: {version: 1}
    shippers: [S1]
    orders:
      - {shipper: S1, client: C1, packets: 2, packet_size_kg: 100, window: "09:00-10:00"}
    trucks:
      - {owner: S1, id: T1, capacity_kg: 500, size_tons: 3, emission: E1}
    network:
      edges:
        - [S1, C1, 5]
    """
)


class TestWindows:
    def test_parse_window(self):
        window = parse_window("09:30-10:45")
        assert window.start == Fraction(9 * 60 + 30)
        assert window.end == Fraction(10 * 60 + 45)

    def test_single_digit_hour_accepted(self):
        assert parse_window("9:00-10:00") == parse_window("09:00-10:00")

    @pytest.mark.parametrize(
        "raw", ["09:00", "25:00-26:00", "10:00-09:00", "10:00-10:00", "09:0-10:00"]
    )
    def test_bad_windows_rejected(self, raw):
        with pytest.raises(NormalizationError):
            parse_window(raw)

    def test_overlap_is_inclusive(self):
        a = parse_window("09:00-10:00")
        b = parse_window("10:00-11:00")
        c = parse_window("10:01-11:00")
        assert a.overlaps(b)
        assert not a.overlaps(c)

    def test_text(self):
        assert parse_window("09:00-10:00").text == "09:00-10:00"
        assert TimeWindow(0, 1439).text == "00:00-23:59"


class TestEmissionStrings:
    def test_bare_base(self):
        factor = parse_emission("E1")
        assert (factor.multiplier, factor.base) == (Fraction(1), "E1")

    def test_multiplier_prefix(self):
        factor = parse_emission("2E1")
        assert (factor.multiplier, factor.base) == (Fraction(2), "E1")
        assert parse_emission("1.5E2").multiplier == Fraction(3, 2)

    def test_non_string_hints_at_quoting(self):
        with pytest.raises(SchemaError) as err:
            parse_emission(21)
        assert "quot" in str(err.value).lower()

    def test_zero_multiplier_is_allowed(self):
        assert parse_emission("0E1").multiplier == Fraction(0)

    @pytest.mark.parametrize("raw", ["", "2", "-1E1"])
    def test_bad_factors_rejected(self, raw):
        with pytest.raises(NormalizationError):
            parse_emission(raw)


class TestSigns:
    @pytest.mark.parametrize(
        "raw, value",
        [("+", 1), ("-", -1), ("+1", 1), ("-1", -1), (1, 1), (-1, -1),
         (0, 0), ("0", 0)],  # 0 marks an undecided sign
    )
    def test_tokens(self, raw, value):
        assert parse_sign(raw) == value

    @pytest.mark.parametrize("raw", [True, "plus", 2])
    def test_bad_tokens_rejected(self, raw):
        with pytest.raises(NormalizationError):
            parse_sign(raw)


class TestParseScenario:
    def test_minimal_scenario(self):
        scenario = parse_scenario(MINIMAL)
        assert [s.id for s in scenario.shippers] == ["S1"]
        order = scenario.orders[0]
        assert order.quantity == Fraction(200)
        assert order.id == "S1:C1"
        truck = scenario.trucks[0]
        assert truck.label == "S1:T1"
        assert truck.gains == Fraction(0)
        assert scenario.network.nodes == frozenset({"C1", "S1"})

    def test_defaults(self):
        scenario = parse_scenario("meta: {version: 1}\n")
        assert scenario.dimensions == ("S", "E", "En")
        assert scenario.emission_bases == ("E1", "E2")

    def test_unsupported_version_rejected(self):
        with pytest.raises(SchemaError):
            parse_scenario("meta: {version: 2}\n")
        # meta (and with it the version) is optional
        assert parse_scenario("shippers: [S1]\n").shippers[0].id == "S1"

    def test_unknown_top_key_rejected(self):
        with pytest.raises(SchemaError):
            parse_scenario("meta: {version: 1}\nflavour: mild\n")

    def test_yaml_floats_stay_exact(self):
        scenario = parse_scenario(
            "meta: {version: 1}\nshippers: [S1]\n"
            "trucks:\n  - {owner: S1, id: T1, capacity_kg: 0.1, size_tons: 1, emission: E1}\n"
        )
        assert scenario.trucks[0].capacity_kg == Fraction(1, 10)

    def test_yaml_inf_rejected(self):
        with pytest.raises(SchemaError):
            parse_scenario(
                "meta: {version: 1}\nshippers: [S1]\n"
                "trucks:\n  - {owner: S1, id: T1, capacity_kg: .inf, size_tons: 1, emission: E1}\n"
            )

    def test_order_for_unknown_shipper(self):
        with pytest.raises(DanglingReferenceError):
            parse_scenario(
                "meta: {version: 1}\nshippers: [S1]\n"
                "orders:\n"
                '  - {shipper: S9, client: C1, packets: 1, packet_size_kg: 1, window: "09:00-10:00"}\n'
            )

    def test_duplicate_client_rejected(self):
        with pytest.raises(SchemaError):
            parse_scenario(
                "meta: {version: 1}\nshippers: [S1]\n"
                "orders:\n"
                '  - {shipper: S1, client: C1, packets: 1, packet_size_kg: 1, window: "09:00-10:00"}\n'
                '  - {shipper: S1, client: C1, packets: 2, packet_size_kg: 1, window: "11:00-12:00"}\n'
            )

    def test_quantity_mismatch_strict_vs_lenient(self):
        text = (
            "meta: {version: 1}\nshippers: [S1]\n"
            "orders:\n"
            "  - {shipper: S1, client: C1, packets: 2, packet_size_kg: 100,"
            ' quantity: 150, window: "09:00-10:00"}\n'
        )
        with pytest.raises(SchemaError):
            parse_scenario(text, strict=True)
        scenario = parse_scenario(text)  # lenient is the default
        assert scenario.orders[0].quantity == Fraction(200)
        assert any("recomputed" in w for w in scenario.warnings)

    def test_truck_emission_base_must_exist(self):
        with pytest.raises(DanglingReferenceError):
            parse_scenario(
                "meta: {version: 1}\nshippers: [S1]\n"
                "trucks:\n  - {owner: S1, id: T1, capacity_kg: 1, size_tons: 1, emission: E9}\n"
            )

    @pytest.mark.parametrize(
        "edge",
        [
            "[S1, S1, 5]",
            "[S1, C1, 0]",
            "[S1, C1, -2]",
        ],
    )
    def test_bad_edges_rejected(self, edge):
        with pytest.raises(InputError):
            parse_scenario(f"meta: {{version: 1}}\nnetwork:\n  edges:\n    - {edge}\n")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(SchemaError):
            parse_scenario(
                "meta: {version: 1}\nnetwork:\n  edges:\n    - [A, B, 1]\n    - [B, A, 2]\n"
            )

    def test_intents_length_must_match_dimensions(self):
        with pytest.raises(DimensionMismatch):
            parse_scenario(
                "meta: {version: 1}\n"
                "compliance: {max_vehicle_size_tons: 10, max_net_profit: 10, intents: [40, 0]}\n"
            )

    def test_sign_case_ids_follow_listing_order(self):
        scenario = parse_scenario(
            "meta: {version: 1}\n"
            "sign_cases:\n"
            "  - {b: ['+', '+', '+'], c: ['+', '+', '+']}\n"
            "  - {b: ['-', '-', '-'], c: ['-', '-', '-']}\n"
        )
        assert [case.case_id for case in scenario.sign_cases] == [1, 2]


class TestSerializeRoundTrip:
    @pytest.mark.parametrize("name", fixture_names())
    def test_bundled_scenarios_round_trip(self, name):
        scenario = parse_scenario(fixture_text(name), strict=False)
        assert parse_scenario(serialize_scenario(scenario), strict=False) == scenario

    def test_minimal_round_trip(self):
        scenario = parse_scenario(MINIMAL)
        assert parse_scenario(serialize_scenario(scenario)) == scenario
