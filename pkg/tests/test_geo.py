import math

import numpy as np
import pytest

from cropadvisor.geo import (
    EARTH_RADIUS_KM,
    GeoPoint,
    SoilProfile,
    ZoneRecord,
    haversine_distance,
    nearest_zone,
)

from oracles import law_of_cosines_distance, vector_angle_distance


def make_zone(sub_district, lat, lon, **kw):
    soil = kw.pop("soil", SoilProfile(5.6, 6.5, "VH", "M", "M"))
    return ZoneRecord(
        division=kw.pop("division", "Rangpur"),
        district=kw.pop("district", sub_district),
        sub_district=sub_district,
        location=GeoPoint(lat, lon),
        aez_number=kw.pop("aez_number", 3),
        aez_name=kw.pop("aez_name", "Tista Meander Floodplain"),
        met_station=kw.pop("met_station", sub_district),
        soil=soil,
    )


class TestGeoPoint:
    def test_range_enforced(self):
        with pytest.raises(ValueError):
            GeoPoint(95.0, 0.0)
        with pytest.raises(ValueError):
            GeoPoint(0.0, 181.0)
        with pytest.raises(ValueError):
            GeoPoint(float("nan"), 0.0)
        with pytest.raises(ValueError):
            GeoPoint(0.0, float("inf"))

    def test_bounds_inclusive(self):
        GeoPoint(90.0, 180.0)
        GeoPoint(-90.0, -180.0)


class TestHaversine:
    def test_identical_points_zero(self):
        p = GeoPoint(25.74058, 89.261139)
        assert haversine_distance(p, p) == 0.0

    def test_quarter_great_circle(self):
        d = haversine_distance(GeoPoint(0, 0), GeoPoint(0, 90))
        assert d == pytest.approx(6371.0 * math.pi / 2.0, rel=1e-9)

    def test_dhaka_rangpur_against_law_of_cosines(self):
        dhaka = GeoPoint(23.8103, 90.4125)
        rangpur = GeoPoint(25.74058, 89.261139)
        d = haversine_distance(dhaka, rangpur)
        expected = law_of_cosines_distance(23.8103, 90.4125, 25.74058, 89.261139)
        assert d == pytest.approx(expected, rel=1e-6)
        # Sanity: the two cities are roughly 240 km apart.
        assert 200 < d < 280

    def test_custom_radius(self):
        d = haversine_distance(GeoPoint(0, 0), GeoPoint(0, 180), radius_km=1.0)
        assert d == pytest.approx(math.pi, rel=1e-12)

    def test_bad_radius_rejected(self):
        p = GeoPoint(0, 0)
        with pytest.raises(ValueError):
            haversine_distance(p, p, radius_km=0.0)
        with pytest.raises(ValueError):
            haversine_distance(p, p, radius_km=float("nan"))

    def test_symmetry_and_range_fuzz(self):
        rng = np.random.default_rng(42)
        n = 2000
        lats = rng.uniform(-90, 90, (n, 2))
        lons = rng.uniform(-180, 180, (n, 2))
        max_d = math.pi * EARTH_RADIUS_KM
        for i in range(n):
            a = GeoPoint(lats[i, 0], lons[i, 0])
            b = GeoPoint(lats[i, 1], lons[i, 1])
            d_ab = haversine_distance(a, b)
            d_ba = haversine_distance(b, a)
            assert d_ab == d_ba
            assert 0.0 <= d_ab <= max_d
            # Stable vector-angle form agrees at every separation.
            ref = vector_angle_distance(a.lat, a.lon, b.lat, b.lon)
            assert d_ab == pytest.approx(ref, rel=1e-9, abs=1e-9)

    def test_poles_and_antimeridian(self):
        north, south = GeoPoint(90, 0), GeoPoint(-90, 0)
        assert haversine_distance(north, south) == pytest.approx(
            math.pi * EARTH_RADIUS_KM, rel=1e-12)
        # Crossing the antimeridian: 2 degrees of longitude at the equator.
        d = haversine_distance(GeoPoint(0, 179), GeoPoint(0, -179))
        assert d == pytest.approx(EARTH_RADIUS_KM * math.radians(2), rel=1e-9)


class TestNearestZone:
    def test_exact_coordinates_win(self):
        zones = [
            make_zone("Dhaka", 23.8103, 90.4125),
            make_zone("Rangpur", 25.74058, 89.261139),
            make_zone("Sylhet", 24.8949, 91.8687),
        ]
        got = nearest_zone(GeoPoint(25.74058, 89.261139), zones)
        assert got.sub_district == "Rangpur"

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError):
            nearest_zone(GeoPoint(0, 0), [])

    def test_equidistant_tie_alphabetical(self):
        # Mirror pair east/west of the query meridian: distances are
        # bit-identical, so the name decides.
        p = GeoPoint(24.0, 90.0)
        zones = [
            make_zone("Zeta", 24.0, 91.0),
            make_zone("Alpha", 24.0, 89.0),
        ]
        assert nearest_zone(p, zones).sub_district == "Alpha"
        assert nearest_zone(p, list(reversed(zones))).sub_district == "Alpha"

    def test_minimizes_distance_exhaustively(self):
        rng = np.random.default_rng(7)
        for trial in range(20):
            n = int(rng.integers(1, 500))
            zones = [
                make_zone(f"z{j:03d}", float(rng.uniform(20.5, 26.6)),
                          float(rng.uniform(88.0, 92.7)))
                for j in range(n)
            ]
            p = GeoPoint(float(rng.uniform(20.5, 26.6)), float(rng.uniform(88.0, 92.7)))
            best = nearest_zone(p, zones)
            d_best = haversine_distance(p, best.location)
            for z in zones:
                assert d_best <= haversine_distance(p, z.location)


class TestSoilProfile:
    def test_ph_range_validated(self):
        with pytest.raises(ValueError):
            SoilProfile(6.5, 5.6, "VH", "M")
        with pytest.raises(ValueError):
            SoilProfile(0.0, 5.0, "VH", "M")

    def test_unknown_level_rejected(self):
        with pytest.raises(ValueError):
            SoilProfile(5.6, 6.5, "XX", "M")

    def test_nitrogen_optional(self):
        prof = SoilProfile(5.6, 6.5, "VH", "M")
        assert prof.nitrogen is None
        assert prof.ph_midpoint == pytest.approx(6.05)


class TestZoneRecord:
    def test_invariants(self):
        with pytest.raises(ValueError):
            make_zone("X", 0, 0, aez_number=0)
        with pytest.raises(ValueError):
            make_zone("X", 0, 0, met_station="")
