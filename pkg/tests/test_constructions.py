"""Ladder constructions: feasibility conditions, constant search, regions.

Hand-checked sequences for growth constants A = G = 1:
  full variant, s=2:  a = (1, 4, 36),  poles = (-1, 16, -1296)
  half variant, s=3:  a = (1, 8),      poles = (1, 64)
The bare factorial family fails domination at rung 2 whatever the base
constants: the left side already contains a_1 = C1 and the bound is
4*C1/160, so the head inequality is scale-free and false.
"""

from fractions import Fraction

import gmpy2
import pytest

from slopekit.constructions import (
    ConstructionSpec,
    FamilyMeta,
    build_construction,
    check_region_lemmas,
    construction_map,
    factorial_ladder,
    search_constants,
    validate_conditions,
)
from slopekit.errors import InputError
from slopekit.maps import eval_map
from slopekit.measures import atom_measure, reduced_p

I = gmpy2.mpc(0, 1)


def test_full_variant_sequences():
    spec = build_construction("full_interval", 3, 1, 1)
    assert spec.a == (Fraction(1), Fraction(4), Fraction(36))
    assert spec.gamma == (Fraction(-1), Fraction(16), Fraction(-1296))


def test_half_variant_sequences():
    spec = build_construction("half_interval", 2, 1, 1)
    assert spec.a == (Fraction(1), Fraction(8))
    assert spec.gamma == (Fraction(1), Fraction(64))


def test_depth_one_rejected():
    with pytest.raises(InputError):
        build_construction("full_interval", 1, 1, 1)


def test_unknown_variant_rejected():
    with pytest.raises(InputError):
        build_construction("interval", 3, 1, 1)


def test_meta_mismatch_rejected():
    good = build_construction("full_interval", 3, 2, 3)
    with pytest.raises(InputError):
        ConstructionSpec(
            variant="full_interval",
            a=good.a,
            gamma=good.gamma,
            meta=FamilyMeta(a_growth=Fraction(2), gamma_growth=Fraction(4)),
        )


def test_nonpositive_constants_rejected():
    with pytest.raises(InputError):
        build_construction("full_interval", 3, 0, 1)
    with pytest.raises(InputError):
        build_construction("full_interval", 3, 1, -2)


@pytest.mark.parametrize("variant", ["full_interval", "half_interval"])
@pytest.mark.parametrize("a_base", [Fraction(1, 10**6), Fraction(1), Fraction(10**6)])
@pytest.mark.parametrize("gamma_base", [Fraction(1), Fraction(1000)])
def test_factorial_dominance_fails_at_rung_two(variant, a_base, gamma_base):
    rep = validate_conditions(factorial_ladder(variant, 6, a_base, gamma_base))
    assert not rep.certified
    assert ("dominance", 2) in rep.failures


@pytest.mark.parametrize("variant", ["full_interval", "half_interval"])
@pytest.mark.parametrize("a_base", [Fraction(1, 10**6), Fraction(1), Fraction(10**6)])
def test_factorial_dominance_is_the_sole_failure_when_isolated(variant, a_base):
    # pole scale far above the mass scale (but >= 1) clears every
    # partial-sum head
    rep = validate_conditions(
        factorial_ladder(variant, 6, a_base, (1 + a_base) * 10**4)
    )
    assert rep.failures == (("dominance", 2),)
    assert not rep.uncertifiable


def test_factorial_gamma_growth_passes():
    rep = validate_conditions(factorial_ladder("full_interval", 6, 1, 1000))
    status = {s.name: s.ok for s in rep.statuses}
    assert status["gamma_growth"] is True
    assert status["steepness"] is True
    assert status["summability"] is True


def test_metaless_ladder_is_uncertifiable_not_failed():
    # same terms as a certified ladder but without the growth law: no finite
    # inequality fails, yet nothing about the tail can be concluded
    good = build_construction("full_interval", 4, 40, 1605)
    bare = ConstructionSpec(variant=good.variant, a=good.a, gamma=good.gamma)
    rep = validate_conditions(bare)
    assert rep.failures == ()
    assert not rep.certified
    assert set(rep.uncertifiable) == {
        "partial_sums",
        "dominance",
        "steepness",
        "summability",
    }


def test_search_full_interval_depth_four():
    r = search_constants("full_interval", 4)
    assert r.feasible
    assert (r.a_growth, r.gamma_growth) == (40, 1605)
    assert r.report.certified


def test_search_half_interval():
    r3 = search_constants("half_interval", 3)
    r4 = search_constants("half_interval", 4)
    assert (r3.a_growth, r3.gamma_growth) == (32, 768)
    assert (r4.a_growth, r4.gamma_growth) == (32, 768)


def test_search_minimality_boundary():
    # one below the found pole growth must fail; the search returns the
    # least feasible pair in lexicographic order
    assert not validate_conditions(
        build_construction("full_interval", 4, 40, 1604)
    ).certified
    assert validate_conditions(
        build_construction("full_interval", 4, 40, 1605)
    ).certified


def test_capped_search_reports_structural_binding():
    r = search_constants("full_interval", 4, a_cap=1, gamma_cap=1)
    assert not r.feasible
    assert r.a_growth is None and r.gamma_growth is None
    assert r.binding == ("dominance", 2)


def test_exact_revalidation_of_found_ladder():
    # recompute two of the certified inequalities from scratch in exact
    # rational arithmetic
    spec = build_construction("full_interval", 4, 40, 1605)
    for k in range(1, spec.depth):
        assert 4 * abs(spec.gamma[k - 1]) <= abs(spec.gamma[k])
    for k in range(1, spec.depth + 1):
        head = sum(spec.a[:k], Fraction(0))
        assert head <= abs(spec.gamma[k - 1]) / (4 * k)


def test_region_lemmas_full_interval():
    spec = build_construction("full_interval", 4, 40, 1605)
    rep = check_region_lemmas(spec)
    assert rep.ok
    assert rep.tail_certified
    assert len(rep.checks) == 12
    assert {c.region for c in rep.checks} >= {"corridor", "landing", "escape"}
    assert all(c.worst_margin >= 0 for c in rep.checks)


def test_region_lemmas_half_interval():
    spec = build_construction("half_interval", 4, 32, 768)
    rep = check_region_lemmas(spec)
    assert rep.ok
    assert len(rep.checks) == 33
    regions = {c.region for c in rep.checks}
    assert any("elevator" in r for r in regions)
    assert rep.violations == ()


def test_region_lemmas_require_validated_ladder():
    with pytest.raises(InputError):
        check_region_lemmas(factorial_ladder("full_interval", 4, 1, 1000))


def test_truncation_consistency():
    # adding one rung moves the transform by at most twice the dropped
    # rung's first-moment, uniformly on |z| <= |gamma_{K+1}|/2
    s4 = build_construction("half_interval", 4, 32, 768)
    s5 = build_construction("half_interval", 5, 32, 768)
    m4 = atom_measure([(t.pole, t.mass) for t in s4.poles])
    m5 = atom_measure([(t.pole, t.mass) for t in s5.poles])
    a5, g5 = s5.a[-1], abs(s5.gamma[-1])
    for z in (I, gmpy2.mpc(100, 5), gmpy2.mpc(-50, 1)):
        gap = abs(reduced_p(m5, z) - reduced_p(m4, z))
        assert gap <= 2 * float(a5 / g5)


def test_construction_map_is_exactly_balanced():
    spec = build_construction("half_interval", 3, 32, 768)
    f = construction_map(spec)
    assert f.beta == sum((t.mass * t.pole for t in spec.poles), Fraction(0))
    # balanced: f(i) - i = first moment + i * total mass of the pole measure
    total = sum((t.mass for t in spec.poles), Fraction(0))
    first = sum((t.mass * t.pole for t in spec.poles), Fraction(0))
    w = eval_map(f, I) - I
    assert abs(w.real - gmpy2.mpfr(first.numerator) / first.denominator) < 1e-60
    assert abs(w.imag - gmpy2.mpfr(total.numerator) / total.denominator) < 1e-60


def test_pole_term_mass():
    spec = build_construction("half_interval", 2, 1, 1)
    t = spec.poles[1]
    assert t.mass == Fraction(8, 1 + 64 * 64)
