"""Shared fixtures.

Long orbits are expensive (a million steps takes tens of seconds), so traces
are cached per session and shared between the unit tests and the acceptance
gate. Cache keys are (family, steps, seed, bits); entries are immutable.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from slopekit.dynamics import iterate_orbit
from slopekit.maps import (
    alpha_left_map,
    alpha_right_map,
    atom_map,
    log_map,
    translation_map,
)
from slopekit.precision import setup

FAMILIES = {
    "alpha25": lambda: alpha_right_map(Fraction(1, 4)),
    "alpha50": lambda: alpha_right_map(Fraction(1, 2)),
    "alpha75": lambda: alpha_right_map(Fraction(3, 4)),
    "mirror25": lambda: alpha_left_map(Fraction(1, 4)),
    "mirror50": lambda: alpha_left_map(Fraction(1, 2)),
    "mirror75": lambda: alpha_left_map(Fraction(3, 4)),
    "log": lambda: log_map(),
    "delta0": lambda: atom_map(0, [(0, 1)]),
    "translation": lambda: translation_map(1),
}

ZERO_STEP_CLOSED = ("alpha25", "alpha50", "alpha75", "mirror25", "mirror50", "mirror75", "log")

SEED_I = (Fraction(0), Fraction(1))
SEED_OFF = (Fraction(1), Fraction(2))


@pytest.fixture(scope="session", autouse=True)
def _default_precision():
    setup(256)


@pytest.fixture(scope="session")
def make_map():
    def _make(name):
        return FAMILIES[name]()

    return _make


@pytest.fixture(scope="session")
def get_trace():
    cache = {}

    def _get(name, n_steps, seed=SEED_I, bits=256):
        key = (name, n_steps, seed, bits)
        if key not in cache:
            cache[key] = iterate_orbit(FAMILIES[name](), seed, n_steps, bits=bits)
        return cache[key]

    return _get
