import math

import pytest

from femtosleep import layout as lay
from femtosleep.errors import InvalidParameterError, OutOfCoverageError
from femtosleep.layout import CoverageClass, MacroCell, NetworkLayout, Point, Station


def single(radius=15.0, fap_count=1, factor=1.0, at=Point(100.0, 0.0), ff=0.01):
    return NetworkLayout(MacroCell(), (Station("A", at, fap_count, radius, factor),), ff)


class TestFapArea:
    def test_reference_radius(self):
        # pi * 15^2 evaluated by hand
        assert lay.fap_area(15) == pytest.approx(706.8583, abs=1e-4)

    def test_unit_radius(self):
        assert lay.fap_area(1) == math.pi

    @pytest.mark.parametrize("r", [0, -1.0])
    def test_degenerate(self, r):
        with pytest.raises(InvalidParameterError):
            lay.fap_area(r)


class TestLocate:
    def test_station_center(self, layout):
        office = layout.station("Office")
        assert lay.locate(layout, office.position) == (CoverageClass.INSIDE_FAP, "Office")

    def test_macro_center_is_free_space(self, layout):
        assert lay.locate(layout, Point(0, 0)).kind is CoverageClass.FREE_SPACE

    def test_zero_fap_station(self, layout):
        shop2 = layout.station("Shop 2")
        assert lay.locate(layout, shop2.position) == (CoverageClass.INSIDE_STATION_NO_FAP, "Shop 2")

    def test_boundary_is_closed(self):
        L = single()
        assert lay.locate(L, Point(115.0, 0.0)).kind is CoverageClass.INSIDE_FAP
        assert lay.locate(L, Point(115.0 + 1e-9, 0.0)).kind is CoverageClass.FREE_SPACE

    def test_outside_macro(self, layout):
        with pytest.raises(OutOfCoverageError):
            lay.locate(layout, Point(501.0, 0.0))

    def test_vectorised_matches_scalar(self, layout):
        pts = [s.position for s in layout.stations] + [Point(0, 0), Point(107, 3), Point(-300, -300)]
        idx = lay.station_index(layout, [p.x for p in pts], [p.y for p in pts])
        for p, i in zip(pts, idx):
            loc = lay.locate(layout, p)
            assert (loc.station is None) == (i == -1)
            if i >= 0:
                assert layout.stations[i].name == loc.station


class TestValidate:
    def test_default_is_valid(self, layout):
        assert lay.validate(layout) == []

    def test_default_geometry_by_hand(self, layout):
        # direct pairwise check independent of validate()
        for i, a in enumerate(layout.stations):
            assert math.hypot(a.position.x, a.position.y) + a.fap_radius <= 500
            for b in layout.stations[i + 1 :]:
                assert math.dist((a.position.x, a.position.y), (b.position.x, b.position.y)) >= 30

    def test_overlap(self):
        p = Point(100, 0)
        L = NetworkLayout(MacroCell(), (Station("A", p), Station("B", p)))
        assert [v.kind for v in lay.validate(L)] == ["overlap"]

    def test_tangent_is_not_overlap(self):
        L = NetworkLayout(MacroCell(), (Station("A", Point(100, 0)), Station("B", Point(130, 0))))
        assert lay.validate(L) == []

    def test_factor_range(self):
        assert [v.kind for v in lay.validate(single(factor=1.5))] == ["factor-range"]
        assert [v.kind for v in lay.validate(single(ff=-0.1))] == ["factor-range"]

    def test_out_of_bounds(self):
        assert [v.kind for v in lay.validate(single(at=Point(490, 0)))] == ["out-of-bounds"]

    def test_reports_every_violation(self):
        p = Point(495, 0)
        L = NetworkLayout(MacroCell(radius=500), (Station("A", p, factor=2), Station("B", p)))
        kinds = sorted(v.kind for v in lay.validate(L))
        assert kinds == ["factor-range", "out-of-bounds", "out-of-bounds", "overlap"]

    def test_bad_macro(self):
        L = NetworkLayout(MacroCell(radius=-5), ())
        assert lay.validate(L)[0].kind == "parameter"

    def test_check_raises(self):
        with pytest.raises(InvalidParameterError, match="overlaps"):
            lay.check(NetworkLayout(MacroCell(), (Station("A", Point(0, 0)), Station("B", Point(1, 0)))))


class TestDefaultLayout:
    def test_fifteen_faps(self, layout):
        assert layout.total_fap_count == 15

    def test_table_values(self, layout):
        assert layout.station("Office").factor == 1
        assert layout.station("Office").fap_count == 3
        assert layout.station("Shop 2").fap_count == 0
        assert layout.station("Shop 2").factor == 0.3
        assert layout.free_space_factor == 0.01
        assert layout.macro.radius == 500
        assert {s.fap_radius for s in layout.stations} == {15.0}

    def test_rings(self, layout):
        radii = sorted({round(math.hypot(s.position.x, s.position.y), 6) for s in layout.stations})
        assert radii == [100, 200, 300, 400]

    def test_deterministic(self):
        assert lay.default_layout() == lay.default_layout()


def test_free_ring_slots_do_not_overlap(layout):
    extra = [lay.ring_position(layout.macro, r, a) for r, a in lay.free_ring_slots(layout)]
    assert len(extra) == lay.N_RINGS * lay.SLOTS_PER_RING - len(layout.stations)
    L = NetworkLayout(layout.macro, layout.stations + tuple(Station(f"x{i}", p) for i, p in enumerate(extra)))
    assert lay.validate(L) == []


def test_point_rejects_nan():
    with pytest.raises(InvalidParameterError):
        Point(float("nan"), 0)
