"""Slope interval estimation and the two hypothesis-guarded checks.

Oracle: f = z - 1/z keeps the imaginary axis invariant, so every stored
argument is exactly pi/2 and the slope interval collapses to a point.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from slopekit.dynamics import iterate_orbit
from slopekit.errors import HypothesisViolation, InputError
from slopekit.maps import atom_map, translation_map
from slopekit.slope import (
    check_initial_point_independence,
    check_positive_step_singleton,
    slope_report,
)

SEED_I = (Fraction(0), Fraction(1))
SEED_OFF = (Fraction(1), Fraction(2))


def test_axis_orbit_pins_interval_at_half_pi(get_trace):
    rep = slope_report(get_trace("delta0", 20_000))
    assert abs(rep.interval_lo - math.pi / 2) < 1e-12
    assert abs(rep.interval_hi - math.pi / 2) < 1e-12
    assert rep.converged
    assert rep.max_consecutive_gap < 1e-12
    assert rep.contains(math.pi / 2)


def test_translation_argument_sinks_to_zero():
    rep = slope_report(iterate_orbit(translation_map(1), SEED_I, 50_000))
    assert rep.final_arg < 0.01
    assert rep.interval_lo < 0.01


def test_window_history_ordering(get_trace):
    rep = slope_report(get_trace("alpha50", 20_000))
    wins = [w for w, _, _ in rep.window_history]
    assert wins == sorted(wins, reverse=True)  # oldest (widest shift) first
    for _, lo, hi in rep.window_history:
        assert 0.0 <= lo <= hi <= math.pi


def test_report_width_and_midpoint(get_trace):
    rep = slope_report(get_trace("alpha50", 20_000))
    assert rep.width >= 0
    assert rep.interval_lo <= rep.midpoint <= rep.interval_hi
    assert rep.iterations_used == 20_000


def test_minimum_length_guard():
    tr = iterate_orbit(translation_map(1), SEED_I, 200)
    with pytest.raises(InputError):
        slope_report(tr)


def test_tail_fraction_validation(get_trace):
    tr = get_trace("delta0", 20_000)
    with pytest.raises(InputError):
        slope_report(tr, tail_fraction=0.0)
    with pytest.raises(InputError):
        slope_report(tr, tail_fraction=1.5)


def test_seed_independence_on_zero_step_map():
    f = atom_map(0, [(0, 1)])
    cmp = check_initial_point_independence(f, [SEED_I, SEED_OFF], 20_000)
    assert cmp.step_label == "zero"
    assert len(cmp.reports) == 2
    assert cmp.max_endpoint_spread < 0.1
    assert cmp.max_tail_arg_gap < 0.05


def test_seed_independence_rejects_positive_step():
    with pytest.raises(HypothesisViolation):
        check_initial_point_independence(
            translation_map(1), [SEED_I, SEED_OFF], 20_000
        )


def test_seed_independence_needs_two_seeds():
    with pytest.raises(InputError):
        check_initial_point_independence(atom_map(0, [(0, 1)]), [SEED_I], 20_000)


def test_singleton_right_drift():
    rep = check_positive_step_singleton(
        translation_map(1), [SEED_I, SEED_OFF], 20_000
    )
    assert rep.step_label == "positive"
    assert rep.target == 0.0
    assert rep.max_final_arg_error < 0.01
    assert all(r > 0 for r in rep.x_over_y_final)


def test_singleton_left_drift():
    rep = check_positive_step_singleton(translation_map(-1), [SEED_I], 20_000)
    assert rep.target == pytest.approx(math.pi)
    assert rep.max_final_arg_error < 0.01
    assert rep.x_over_y_final[0] < 0


def test_singleton_rejects_zero_step():
    with pytest.raises(HypothesisViolation):
        check_positive_step_singleton(atom_map(0, [(0, 1)]), [SEED_I], 20_000)


def test_interval_nesting_as_budget_grows(get_trace):
    # longer runs only see later tail windows, so the interval narrows for a
    # family whose argument converges
    small = slope_report(get_trace("alpha50", 20_000))
    # reuse cache shape: a fresh longer run
    big = slope_report(get_trace("alpha50", 60_000))
    assert big.width <= small.width + 1e-9
    assert big.interval_lo >= small.interval_lo - 1e-6


def test_args_drawn_from_tail_only(get_trace):
    # the interval must ignore the early transient: for the off-axis alpha
    # family the argument at step 1 is far from the limit
    tr = iterate_orbit(atom_map(0, [(0, 1)]), SEED_OFF, 20_000)
    rep = slope_report(tr)
    early = float(tr.args[1])
    assert not rep.contains(early, pad=-1e-9) or abs(early - rep.midpoint) < 0.3
    assert rep.interval_hi - rep.interval_lo < 0.2
