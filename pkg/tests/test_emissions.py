from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colog.emissions import (
    ABSENT,
    EmissionVector,
    account_emissions,
    compare_emissions,
    resolve_alternative,
    strictly_better,
    tier1_lookup,
)
from colog.errors import UnknownKey, UnknownTruck
from colog.routing import Coalition, build_routes
from colog.assignment import min_trips
from colog.model import Edge, EmissionFactor, Network, Truck

from test_assignment import order, truck


def vec(**coeffs):
    return EmissionVector.of({k: Fraction(v) for k, v in coeffs.items()})


VECTORS = st.dictionaries(
    st.sampled_from(["E1", "E2", "E3"]),
    st.integers(min_value=0, max_value=9),
    max_size=3,
).map(lambda d: EmissionVector.of({k: Fraction(v) for k, v in d.items()}))


class TestVector:
    def test_zeros_dropped_and_sorted(self):
        vector = EmissionVector.of({"E2": Fraction(1), "E1": Fraction(2), "E3": Fraction(0)})
        assert vector.items == (("E1", Fraction(2)), ("E2", Fraction(1)))
        assert vector.bases == ("E1", "E2")
        assert vector.get("E3") == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            EmissionVector.of({"E1": Fraction(-1)})

    def test_text(self):
        assert vec(E1=1, E2=2).text == "E1 + 2E2"
        assert vec(E1=Fraction(3, 2)).text == "1.5E1"
        assert EmissionVector().text == "0"

    def test_scalarized_defaults_to_unit_weights(self):
        assert vec(E1=2, E2=3).scalarized() == Fraction(5)

    def test_scalarized_with_weights(self):
        weights = {"E1": Fraction(10), "E2": Fraction(1)}
        assert vec(E1=2, E2=3).scalarized(weights) == Fraction(23)

    @given(VECTORS, VECTORS)
    def test_addition_is_commutative(self, a, b):
        assert a + b == b + a

    @given(VECTORS, VECTORS, VECTORS)
    def test_addition_is_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(VECTORS, VECTORS)
    def test_scalarized_is_additive(self, a, b):
        assert (a + b).scalarized() == a.scalarized() + b.scalarized()


class TestAccounting:
    def setup_method(self):
        self.net = Network((Edge("S1", "C1", Fraction(5)), Edge("S1", "C2", Fraction(3))))

    def route_result(self, orders, trucks):
        plan = min_trips(orders, trucks)
        return build_routes(
            Coalition("NC", ("S1",), tuple(o.client for o in orders)), plan, self.net
        )

    def test_sums_truck_multipliers_per_trip(self):
        # one truck, two trips: 2 x its multiplier on its base
        trucks = [
            Truck("T1", "S1", Fraction(100), Fraction(1), EmissionFactor("E1", Fraction(2)))
        ]
        orders = [order("C1", 80), order("C2", 80)]
        vector = account_emissions(self.route_result(orders, trucks), trucks)
        assert vector == vec(E1=4)

    def test_per_distance_scales_by_route_length(self):
        trucks = [
            Truck("T1", "S1", Fraction(100), Fraction(1), EmissionFactor("E1", Fraction(2)))
        ]
        orders = [order("C1", 80)]
        vector = account_emissions(self.route_result(orders, trucks), trucks, per_distance=True)
        assert vector == vec(E1=10)

    def test_unknown_truck_rejected(self):
        trucks = [truck("T1", 100)]
        result = self.route_result([order("C1", 10)], trucks)
        with pytest.raises(UnknownTruck):
            account_emissions(result, [])


class TestResolveAlternative:
    def test_smallest_scalarized_wins(self):
        t1 = Truck("T1", "S1", Fraction(1), Fraction(1), EmissionFactor("E1", Fraction(3)))
        t2 = Truck("T2", "S1", Fraction(1), Fraction(1), EmissionFactor("E2", Fraction(2)))
        assert resolve_alternative([t1, t2]) is t2

    def test_ties_break_on_label(self):
        t1 = Truck("T2", "S1", Fraction(1), Fraction(1), EmissionFactor("E1"))
        t2 = Truck("T10", "S1", Fraction(1), Fraction(1), EmissionFactor("E2"))
        assert resolve_alternative([t1, t2]) is t1

    def test_empty_rejected(self):
        with pytest.raises(UnknownTruck):
            resolve_alternative([])


class TestStrictlyBetter:
    def test_strict_dominance(self):
        assert strictly_better(vec(E1=1), vec(E1=2)) == (True, False)
        assert strictly_better(vec(E1=1), vec(E1=1, E2=1)) == (True, False)

    def test_equal_vectors(self):
        assert strictly_better(vec(E1=1), vec(E1=1)) == (False, False)

    def test_incomparable_falls_back_to_scalarization(self):
        verdict, used_fallback = strictly_better(vec(E1=3), vec(E2=4))
        assert used_fallback is True
        assert verdict is True

    def test_weights_steer_the_fallback(self):
        verdict, used_fallback = strictly_better(
            vec(E1=3), vec(E2=4), weights={"E1": Fraction(2), "E2": Fraction(1)}
        )
        assert used_fallback is True
        assert verdict is False

    @given(VECTORS)
    def test_never_better_than_itself(self, a):
        assert strictly_better(a, a) == (False, False)

    @given(VECTORS, VECTORS)
    def test_dominance_is_asymmetric(self, a, b):
        forward, f_fallback = strictly_better(a, b)
        backward, b_fallback = strictly_better(b, a)
        if forward and not f_fallback:
            assert not backward


class TestCompareEmissions:
    def test_combined_collaboration_against_nc(self):
        comparison = compare_emissions(
            {"FC": vec(E1=1), "PC": vec(E2=1), "NC": vec(E1=2, E2=2)}
        )
        assert comparison.combined == vec(E1=1, E2=1)
        assert comparison.verdict is True
        assert comparison.used_fallback is False
        assert comparison.vector_for("NC") == vec(E1=2, E2=2)

    def test_missing_nc_gives_no_verdict(self):
        comparison = compare_emissions({"FC": vec(E1=1)})
        assert comparison.verdict is None

    def test_scalarized_totals_reported_per_kind(self):
        comparison = compare_emissions({"FC": vec(E1=2), "NC": vec(E1=3)})
        assert dict(comparison.scalarized) == {
            "FC": Fraction(2),
            "PC": Fraction(0),
            "NC": Fraction(3),
        }


class TestTier1:
    def test_exact_cells(self):
        assert tier1_lookup("Passenger car", "50k/5yr", "THC") == Fraction("0.41")
        assert tier1_lookup("Passenger car", "100k/10yr", "PM") == Fraction(1)
        assert tier1_lookup("HLDT >5750", "50k/5yr", "NOx-gasoline") == Fraction("1.1")
        assert tier1_lookup("LLDT <3750", "100k/10yr", "THC") == Fraction("0.80")

    def test_dashes_are_absent(self):
        value = tier1_lookup("Passenger car", "100k/10yr", "THC")
        assert value is ABSENT
        assert not value

    def test_aliases_and_squashing(self):
        assert tier1_lookup("passenger-car", "100k", "co") == Fraction("4.2")
        assert tier1_lookup("HLDT>5750", "50K/5YR", "co") == Fraction(5)

    def test_unknown_keys(self):
        with pytest.raises(UnknownKey):
            tier1_lookup("bicycle", "50k/5yr", "CO")
        with pytest.raises(UnknownKey):
            tier1_lookup("Passenger car", "75k", "CO")
        with pytest.raises(UnknownKey):
            tier1_lookup("Passenger car", "50k", "unobtainium")
