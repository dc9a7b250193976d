"""Acceptance gate: one test per advertised behaviour, at its stated
tolerance and budget. Each test prints a one-line verdict to the real
stdout so the lines survive pytest's capture in batch logs.

Criterion 3 is expected red: the log family's argument approaches pi/2
like pi/(2 log y_n), so the stated budget (1e6 iterations) cannot reach
the stated tolerance (0.05); see the failure message for the measurement.
"""

import json
import math
import subprocess
import sys
from fractions import Fraction

import gmpy2
import numpy as np
import pytest

from slopekit.constructions import (
    build_construction,
    check_region_lemmas,
    factorial_ladder,
    search_constants,
    validate_conditions,
)
from slopekit.dynamics import (
    classify_step,
    classify_trace,
    iterate_orbit,
    pommerenke_b,
    two_orbit_rho,
)
from slopekit.halfplane import (
    cayley_disk_to_halfplane,
    cayley_halfplane_to_disk,
)
from slopekit.maps import (
    atom_map,
    closed_reduced_integral,
    predict_slope,
    translation_map,
)
from slopekit.measures import (
    alpha_left_measure,
    alpha_right_measure,
    atom_measure,
    herglotz_integral,
    log_right_measure,
    moments,
    reduced_p,
)
from slopekit.precision import bits_to_digits, current_bits, to_complex
from slopekit.slope import check_initial_point_independence, slope_report

from conftest import SEED_I, SEED_OFF, ZERO_STEP_CLOSED

LONG_RUN = 10**6
MID_RUN = 10**5


def _verdict(capsys, num: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    with capsys.disabled():
        print("\n" + line, flush=True)


def _slope_midpoints(get_trace, names, budget=LONG_RUN):
    out = {}
    for name in names:
        rep = slope_report(get_trace(name, budget))
        out[name] = rep
    return out


def test_criterion_01_alpha_family_closed_form_slope(capsys, get_trace):
    targets = {"alpha25": math.pi / 5, "alpha50": math.pi / 3, "alpha75": 3 * math.pi / 7}
    reps = _slope_midpoints(get_trace, targets)
    errs = {n: abs(reps[n].midpoint - t) for n, t in targets.items()}
    ok = all(e <= 0.05 for e in errs.values()) and all(
        r.width <= 0.05 and r.converged for r in reps.values()
    )
    _verdict(capsys, 1, "alpha slope", ok,
             "max midpoint err %.2e, max width %.2e over alpha in {1/4,1/2,3/4}"
             % (max(errs.values()), max(r.width for r in reps.values())))
    assert ok


def test_criterion_02_mirror_family_slope(capsys, get_trace):
    targets = {
        "mirror25": math.pi - math.pi / 5,
        "mirror50": math.pi - math.pi / 3,
        "mirror75": math.pi - 3 * math.pi / 7,
    }
    reps = _slope_midpoints(get_trace, targets)
    errs = {n: abs(reps[n].midpoint - t) for n, t in targets.items()}
    ok = all(e <= 0.05 for e in errs.values()) and all(
        r.width <= 0.05 and r.converged for r in reps.values()
    )
    _verdict(capsys, 2, "mirror slope", ok,
             "max midpoint err %.2e, max width %.2e" %
             (max(errs.values()), max(r.width for r in reps.values())))
    assert ok


def test_criterion_03_log_family_half_pi(capsys, get_trace):
    rep = slope_report(get_trace("log", LONG_RUN))
    err = abs(rep.midpoint - math.pi / 2)
    ok = err <= 0.05
    _verdict(capsys, 3, "log slope", ok,
             f"midpoint {rep.midpoint:.4f}, err {err:.4f} vs tolerance 0.05; "
             "arg converges like pi/(2 log y_n), needs ~1e25 iterations")
    assert ok, (
        f"midpoint error {err:.4f} > 0.05 at 1e6 iterations; the approach "
        "rate is pi/(2 log y_n) (logarithmic in n), so the stated budget "
        "cannot meet the stated tolerance; kept red deliberately"
    )


def test_criterion_04_atom_trichotomy(capsys):
    cases = [
        (atom_map(2, [(1, 1)]), 0.0, "zero_angle"),
        (atom_map(1, [(1, 1)]), math.pi / 2, "half_pi"),
        (atom_map(0, [(1, 1)]), math.pi, "pi_angle"),
    ]
    worst = 0.0
    labels_ok = True
    for f, target, label in cases:
        pred = predict_slope(f)
        labels_ok &= pred.label == label
        rep = slope_report(iterate_orbit(f, SEED_I, MID_RUN))
        worst = max(worst, abs(rep.midpoint - target))
    ok = worst <= 0.05 and labels_ok
    _verdict(capsys, 4, "atom trichotomy", ok,
             f"max midpoint err {worst:.2e}; predicted labels "
             f"{'match' if labels_ok else 'MISMATCH'}")
    assert ok


def test_criterion_05_quadrature_matches_closed_form(capsys):
    worst = 0.0
    thetas = [math.pi / 6, math.pi / 2, 5 * math.pi / 6]
    for alpha in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        m = alpha_right_measure(alpha)
        for r in (1, 10, 100):
            for th in thetas:
                z = to_complex(r * math.cos(th), r * math.sin(th))
                numeric = reduced_p(m, z)
                closed = closed_reduced_integral(m.density, z)
                worst = max(worst, float(abs(numeric - closed) / abs(closed)))
    ok = worst <= 1e-6
    _verdict(capsys, 5, "quadrature vs closed form", ok,
             f"worst relative gap {worst:.2e} on 27 grid points")
    assert ok


def test_criterion_06_drift_limit(capsys, get_trace):
    tr_shift = iterate_orbit(translation_map(1), SEED_I, MID_RUN)
    rep_shift = pommerenke_b(tr_shift)
    exact = rep_shift.b == 1.0

    traces = {"translation": tr_shift}
    drifts_ok = True
    worst_b = 0.0
    for name in ("alpha50", "mirror50", "log"):
        tr = get_trace(name, MID_RUN)
        traces[name] = tr
        rep = pommerenke_b(tr)
        worst_b = max(worst_b, abs(rep.b))
        drifts_ok &= abs(rep.b) <= 1e-3 and rep.converged

    # y_{n+1}/y_n stays within 1e-3 of 1 over the final decade of every run
    ratio_gap = 0.0
    for tr in traces.values():
        rows = (tr.indices >= tr.n_steps // 10) & ~np.isnan(tr.dy)
        ratio_gap = max(ratio_gap, float(np.max(np.abs(tr.dy[rows] / tr.ys[rows]))))
    ok = exact and drifts_ok and ratio_gap <= 1e-3
    _verdict(capsys, 6, "drift limit", ok,
             f"translation b {'== 1 exactly' if exact else 'NOT exact'}; "
             f"max |b| {worst_b:.2e} on zero-step families; "
             f"max y-ratio gap {ratio_gap:.2e}")
    assert ok


def test_criterion_07_step_classifier(capsys, get_trace):
    c = 1 / math.sqrt(5)
    shift = classify_step(translation_map(1), SEED_I, MID_RUN)
    tail_err = max(abs(shift.rho_tail_max - c), abs(shift.rho_tail_min - c))
    pos_ok = shift.label == "positive" and tail_err <= 1e-6

    zero_ok = True
    for name in ZERO_STEP_CLOSED:
        zero_ok &= classify_trace(get_trace(name, LONG_RUN)).label == "zero"
    zero_ok &= classify_trace(get_trace("delta0", LONG_RUN)).label == "zero"
    ok = pos_ok and zero_ok
    _verdict(capsys, 7, "step classifier", ok,
             f"translation rho tail err {tail_err:.2e}; "
             f"zero-step labels {'all correct' if zero_ok else 'WRONG'}")
    assert ok


def test_criterion_08_seed_independence_and_contraction(capsys, make_map):
    digits = bits_to_digits(current_bits())
    slack = gmpy2.mpfr(10) ** -(digits - 6)
    worst_spread = 0.0
    worst_gap = 0.0
    worst_excess = gmpy2.mpfr("-inf")
    for name in ZERO_STEP_CLOSED:
        f = make_map(name)
        cmp = check_initial_point_independence(f, [SEED_I, SEED_OFF], MID_RUN)
        worst_spread = max(worst_spread, cmp.max_endpoint_spread)
        worst_gap = max(worst_gap, cmp.max_tail_arg_gap)
        pair = two_orbit_rho(f, SEED_I, SEED_OFF, MID_RUN)
        if pair.max_rho2_excess > worst_excess:
            worst_excess = pair.max_rho2_excess
    ok = worst_spread <= 0.05 and worst_gap <= 0.02 and worst_excess <= slack
    _verdict(capsys, 8, "seed independence", ok,
             f"max interval spread {worst_spread:.2e}, max tail arg gap "
             f"{worst_gap:.2e}, max rho^2 increase {float(worst_excess):.1e} "
             f"(slack {float(slack):.0e})")
    assert ok


def test_criterion_09_ladder_conditions_and_search(capsys):
    scale_ok = True
    witness = None
    for a_base in (Fraction(1, 10**6), Fraction(1), Fraction(10**6)):
        rep = validate_conditions(
            factorial_ladder("full_interval", 6, a_base, (1 + a_base) * 10**4)
        )
        scale_ok &= rep.failures == (("dominance", 2),)
        witness = next(s.detail for s in rep.statuses if s.name == "dominance")
        # the same rung-2 failure must also show through without isolation
        rep1k = validate_conditions(factorial_ladder("full_interval", 6, a_base, 1000))
        scale_ok &= ("dominance", 2) in rep1k.failures

    found = search_constants("full_interval", 4)
    search_ok = (
        found.feasible
        and found.report.certified
        and not found.report.uncertifiable
    )
    ok = scale_ok and search_ok
    _verdict(capsys, 9, "ladder conditions", ok,
             f"factorial family fails dominance at rung 2 at every mass scale "
             f"({witness}); search certifies "
             f"(a, gamma) growth = ({found.a_growth}, {found.gamma_growth}) at depth 4")
    assert ok


def test_criterion_10_region_grid_checks(capsys):
    full = check_region_lemmas(build_construction("full_interval", 4, 40, 1605))
    half = check_region_lemmas(build_construction("half_interval", 4, 32, 768))
    ok = full.ok and half.ok and full.tail_certified and half.tail_certified
    worst = min(c.worst_margin for c in full.checks + half.checks)
    _verdict(capsys, 10, "region grids", ok,
             f"{len(full.checks)} + {len(half.checks)} inequalities hold, "
             f"worst normalized margin {worst:.3f}")
    assert ok


def test_criterion_11_infrastructure(capsys, tmp_path):
    digits = bits_to_digits(current_bits())
    tol = gmpy2.mpfr(10) ** -(digits - 4)
    # absolute tolerance, so O(1)-scale points: the inverse chart's
    # derivative grows like |z|^2, which is geometry, not rounding
    pts = [to_complex(0, 1), to_complex(3, 2), to_complex(-5, Fraction(1, 7)),
           to_complex(Fraction(1, 3), 10)]
    cayley_err = gmpy2.mpfr(0)
    for z in pts:
        back = cayley_disk_to_halfplane(cayley_halfplane_to_disk(z)).z
        cayley_err = max(cayley_err, abs(back - z))
    for w in (to_complex(0, 0), to_complex(Fraction(9, 10), 0),
              to_complex(0, Fraction(-9, 10)),
              to_complex(Fraction(-3, 10), Fraction(2, 5))):
        back = cayley_halfplane_to_disk(cayley_disk_to_halfplane(w))
        cayley_err = max(cayley_err, abs(back - w))
    cayley_ok = cayley_err <= tol

    reduction_worst = 0.0
    measures_under_test = [
        atom_measure([(0, 1)]),
        atom_measure([(Fraction(-3, 2), Fraction(1, 3)), (2, 1)]),
        alpha_right_measure(Fraction(1, 4)),
        alpha_right_measure(Fraction(1, 2)),
        alpha_right_measure(Fraction(3, 4)),
        alpha_left_measure(Fraction(1, 2)),
        log_right_measure(),
    ]
    for m in measures_under_test:
        first = moments(m).first
        for z in (to_complex(0, 1), to_complex(2, 3)):
            lhs = herglotz_integral(m, z)
            rhs = reduced_p(m, z) - first
            reduction_worst = max(
                reduction_worst, float(abs(lhs - rhs) / max(abs(lhs), gmpy2.mpfr(1e-30)))
            )
    reduction_ok = reduction_worst <= 1e-8

    map_file = tmp_path / "m.json"
    map_file.write_text(json.dumps({
        "beta": "0",
        "measure": {"atoms": [{"t": "0", "mass": "1"}], "density": None},
        "strategy": "reduced",
    }))
    cmd = [sys.executable, "-m", "slopekit.cli", "classify", "--map",
           str(map_file), "--z0", "0,1", "--budget", "5000", "--no-timestamp"]
    r1 = subprocess.run(cmd, capture_output=True, timeout=300)
    r2 = subprocess.run(cmd, capture_output=True, timeout=300)
    determinism_ok = r1.returncode == 0 and r1.stdout == r2.stdout

    ok = cayley_ok and reduction_ok and determinism_ok
    _verdict(capsys, 11, "infrastructure", ok,
             f"cayley roundtrip err {float(cayley_err):.1e} (tol {float(tol):.0e}); "
             f"reduction identity rel err {reduction_worst:.1e}; "
             f"CLI outputs {'byte-identical' if determinism_ok else 'DIFFER'}")
    assert ok
