import math
from dataclasses import replace

from hypothesis import given, settings
from hypothesis import strategies as st

from femtosleep import coverage as cov
from femtosleep import energy as en
from femtosleep import layout as lay
from femtosleep import propagation as prop
from femtosleep.controller import DecisionSnapshot, decide
from femtosleep.layout import CoverageClass, NetworkLayout, Point, Station

from oracles import random_layout

DEFAULT = lay.default_layout()
layouts = st.integers(0, 10**6).map(random_layout)
probs = st.floats(0.0, 1.0)


@st.composite
def macro_points(draw, radius=500.0):
    r = 0.999 * radius * math.sqrt(draw(st.floats(0.0, 1.0)))
    a = draw(st.floats(0.0, 2 * math.pi))
    return Point(r * math.cos(a), r * math.sin(a))


@st.composite
def fap_points(draw, layout=DEFAULT):
    s = draw(st.sampled_from(layout.fap_stations()))
    r = 0.999 * s.fap_radius * math.sqrt(draw(st.floats(0.0, 1.0)))
    a = draw(st.floats(0.0, 2 * math.pi))
    return Point(s.position.x + r * math.cos(a), s.position.y + r * math.sin(a))


# -- layout


@given(layouts)
def test_station_area_bounded(L):
    assert lay.validate(L) == []
    assert sum(s.area for s in L.stations) <= L.macro.area


@given(layouts, macro_points())
def test_locate_is_partition(L, p):
    loc = lay.locate(L, p)
    hits = [s for s in L.stations if s.position.distance_to(p) <= s.fap_radius]
    assert len(hits) <= 1
    if hits:
        assert loc.station == hits[0].name
        assert (loc.kind is CoverageClass.INSIDE_FAP) == hits[0].has_fap
    else:
        assert loc.kind is CoverageClass.FREE_SPACE


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_fap_area_increasing(a, b):
    if a < b:
        assert lay.fap_area(a) < lay.fap_area(b)


# -- coverage


@given(layouts, st.integers(0, 30))
def test_exact_non_increasing_in_users(L, n):
    assert cov.bs_off_probability_exact(L, n + 1) <= cov.bs_off_probability_exact(L, n)


@given(probs, st.integers(0, 50))
def test_simplified_recurrence(f, n):
    a = cov.bs_off_probability_simplified(f, n + 1)
    b = f * cov.bs_off_probability_simplified(f, n)
    assert math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-300)


@given(layouts, st.integers(0, 10**6))
def test_adding_fap_station_never_hurts(L, seed):
    slots = list(lay.free_ring_slots(L, 10.0))
    if not slots:
        return
    ring, angle = slots[seed % len(slots)]
    factor = (seed % 1000) / 1000
    extra = Station("new", lay.ring_position(L.macro, ring, angle), 1, 10.0, factor)
    before = cov.user_in_fap_probability(L).p_single_user
    after = cov.user_in_fap_probability(lay.with_station(L, extra)).p_single_user
    assert after >= before - 1e-15


@given(layouts, st.floats(0.01, 100.0))
def test_factor_scaling_invariance(L, c):
    scaled = NetworkLayout(
        L.macro, tuple(replace(s, factor=s.factor * c) for s in L.stations), L.free_space_factor * c
    )
    # scaled factors may leave [0, 1]; compute the ratio without validation
    sm, fm = cov.region_masses(scaled)
    has = [s.has_fap for s in scaled.stations]
    p_scaled = sum(m for m, h in zip(sm, has) if h) / (sm.sum() + fm)
    assert math.isclose(p_scaled, cov.user_in_fap_probability(L).p_single_user, rel_tol=1e-9)


# -- propagation


@given(st.floats(0.01, 50.0), st.floats(0.01, 50.0), st.floats(1.0, 10.0))
def test_macro_loss_increasing(d1, d2, hm):
    p = prop.MacroLossParams(hm=hm)
    if d1 < d2:
        assert prop.macro_path_loss(p, d1) < prop.macro_path_loss(p, d2)


@given(st.floats(1.0, 1e3), st.floats(1.0, 1e3), st.integers(0, 10))
def test_femto_loss_increasing(d1, d2, walls):
    p = prop.FemtoLossParams(walls=walls)
    if d1 < d2:
        assert prop.femto_path_loss(p, d1) < prop.femto_path_loss(p, d2)
    assert prop.femto_path_loss(p, d1) < prop.femto_path_loss(replace(p, walls=walls + 1), d1)


# within a 1e6 spread so no term is absorbed by float rounding
_mw = st.floats(1e-9, 1e-3)


@given(_mw, _mw, _mw, _mw, st.floats(1.01, 10.0))
def test_snir_decreasing_in_each_term(s0, im, if_, noise, k):
    base = prop.snir(prop.SnirInputs(s0, im, if_, noise)).db
    assert prop.snir(prop.SnirInputs(s0, im * k, if_, noise)).db < base
    assert prop.snir(prop.SnirInputs(s0, im, if_ * k, noise)).db < base
    assert prop.snir(prop.SnirInputs(s0, im, if_, noise * k)).db < base


@settings(max_examples=200)
@given(fap_points())
def test_bs_off_beats_bs_on(u):
    on = prop.snir_at_user(DEFAULT, u, True, clamp=True)
    off = prop.snir_at_user(DEFAULT, u, False, clamp=True)
    assert off > on


@given(st.floats(-200.0, 100.0))
def test_dbm_round_trip(x):
    assert math.isclose(prop.mw_to_dbm(prop.dbm_to_mw(x)), x, rel_tol=1e-12, abs_tol=1e-12)
    mw = prop.dbm_to_mw(x)
    assert math.isclose(prop.dbm_to_mw(prop.mw_to_dbm(mw)), mw, rel_tol=1e-12)


# -- controller

user_lists = st.lists(st.one_of(macro_points(), fap_points()), max_size=4)


@settings(max_examples=150)
@given(user_lists, st.one_of(macro_points(), fap_points()))
def test_adding_user_never_turns_bs_off(users, extra):
    before = decide(DecisionSnapshot(tuple(users)), DEFAULT)
    after = decide(DecisionSnapshot(tuple(users) + (extra,)), DEFAULT)
    if before.bs_on:
        assert after.bs_on


@settings(max_examples=150)
@given(user_lists, st.floats(-50, 50), st.floats(0, 50))
def test_raising_threshold_never_turns_bs_off(users, thr, delta):
    lo = decide(DecisionSnapshot(tuple(users), thr), DEFAULT)
    hi = decide(DecisionSnapshot(tuple(users), thr + delta), DEFAULT)
    if lo.bs_on:
        assert hi.bs_on


# -- energy

pms = st.builds(en.PowerModel, st.floats(0, 5000), st.floats(0, 50), st.integers(0, 100))


@given(st.floats(0.01, 1000), probs, pms)
def test_breakeven_law(h, f, pm):
    r = en.report(h, f, pm)
    assert (r.saved_kwh > 0) == (f * pm.bs_op_w > pm.fap_count * pm.fap_op_w)


@given(st.floats(0, 1000), probs, pms)
def test_linear_in_hours(h, f, pm):
    a, b = en.report(h, f, pm), en.report(2 * h, f, pm)
    for x, y in ((a.traditional_kwh, b.traditional_kwh), (a.proposed_kwh, b.proposed_kwh), (a.saved_kwh, b.saved_kwh)):
        assert math.isclose(2 * x, y, rel_tol=1e-12, abs_tol=1e-12)


@given(st.floats(0, 1000), probs, probs, pms)
def test_proposed_non_increasing_in_fraction(h, f1, f2, pm):
    lo, hi = sorted((f1, f2))
    assert en.energy_proposed(h, hi, pm) <= en.energy_proposed(h, lo, pm)
