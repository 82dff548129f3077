"""Families: closed forms, axiom validation, guiding sets, classification,
descriptor round-trips."""

import json

import numpy as np
import pytest

from pconfig import (
    BadSpec,
    build_family,
    classify,
    flat_interval,
    guiding_sets,
    perturbed_flat_pair,
    quadratic_pair,
    standard_pair,
    validate,
)

GRID = np.linspace(-1.0, 1.0, 2001)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def test_standard_branches():
    p = standard_pair()
    assert np.array_equal(p.delta1(GRID), (GRID + 1) / 2)
    assert np.array_equal(p.delta2(GRID), (GRID - 1) / 2)


def test_quadratic_point_values():
    p = quadratic_pair(0.2)
    assert float(p.delta1(0.0)) == pytest.approx(0.7, abs=0)
    assert float(p.d_delta1(1.0)) == pytest.approx(0.1, abs=1e-15)
    assert float(p.d_delta1(-1.0)) == pytest.approx(0.9, abs=1e-15)


def test_perturbed_flat_matches_affine_outside_cell():
    p = perturbed_flat_pair(2)
    lo, hi = flat_interval(2)
    outside = GRID[(GRID < lo) | (GRID >= hi)]
    assert np.array_equal(p.delta1(outside), (outside + 1) / 2)


def test_perturbed_flat_rejoins_exactly_at_right_edge():
    for n in (1, 2, 3, 4):
        p = perturbed_flat_pair(n)
        _, hi = flat_interval(n)
        assert float(p.delta1(hi)) == (hi + 1) / 2


def test_perturbed_flat_single_interior_zero():
    p = perturbed_flat_pair(2)
    lo, hi = flat_interval(2)
    lam = p.flat_points[0]
    assert lo < lam < hi
    assert float(p.d_delta1(lam)) == 0.0
    # exactly one zero: derivative positive everywhere else on a fine sweep
    t = np.linspace(-1.0, 1.0, 200001)
    zero_like = np.asarray(p.d_delta1(t)) <= 1e-12
    assert np.count_nonzero(zero_like) <= 1


def test_perturbed_flat_derivative_strictly_below_one():
    p = perturbed_flat_pair(3)
    t = np.linspace(-1.0, 1.0, 200001)
    assert float(np.max(p.d_delta1(t))) <= 1.0 / 2.0 + 1.0 / 3.0 + 1e-12
    assert float(np.max(p.d_delta1(t))) < 1.0


def test_perturbed_flat_c1_joins():
    p = perturbed_flat_pair(2)
    lo, hi = flat_interval(2)
    for edge in (lo, hi):
        for eps in (1e-7, 1e-9):
            assert float(p.d_delta1(edge - eps)) == pytest.approx(0.5, abs=1e-4)
            assert float(p.d_delta1(edge + eps)) == pytest.approx(0.5, abs=1e-4)


def test_perturbed_flat_rejects_excessive_shape():
    # phi_halfwidth 1/4 with plateau 0 gives derivative excess m = 1
    with pytest.raises(BadSpec):
        perturbed_flat_pair(2, phi_halfwidth=0.25, psi_plateau=0.0)
    with pytest.raises(BadSpec):
        perturbed_flat_pair(2, phi_halfwidth=0.1875, psi_plateau=0.5)


def test_derivatives_match_finite_differences():
    rng = np.random.default_rng(1234)
    pairs = [
        standard_pair(),
        quadratic_pair(0.2),
        quadratic_pair(-0.15),
        perturbed_flat_pair(2),
        perturbed_flat_pair(3),
        build_family({"family": "polynomial",
                      "delta1": [0.5, 0.5, 0.1, -0.1]}),
    ]
    ts = rng.uniform(-1 + 1e-5, 1 - 1e-5, size=500)
    h = 1e-6
    for p in pairs:
        for f, df in ((p.delta1, p.d_delta1), (p.delta2, p.d_delta2)):
            fd = (np.asarray(f(ts + h)) - np.asarray(f(ts - h))) / (2 * h)
            assert np.max(np.abs(fd - np.asarray(df(ts)))) <= 1e-6


def test_branch_derivatives_sum_to_one():
    for p in (standard_pair(), quadratic_pair(0.2), perturbed_flat_pair(2)):
        s = np.asarray(p.d_delta1(GRID)) + np.asarray(p.d_delta2(GRID))
        assert np.max(np.abs(s - 1.0)) <= 1e-12


def test_additivity_machine_precision():
    for p in (standard_pair(), quadratic_pair(0.2), perturbed_flat_pair(2)):
        dev = np.abs(np.asarray(p.delta1(GRID)) + np.asarray(p.delta2(GRID)) - GRID)
        assert np.max(dev) <= 1e-12


def test_boundary_identities_exact():
    for p in (standard_pair(), quadratic_pair(0.2), perturbed_flat_pair(2)):
        assert float(p.delta2(-1.0)) == -1.0
        assert float(p.delta2(1.0)) == 0.0
        assert float(p.delta1(-1.0)) == 0.0
        assert float(p.delta1(1.0)) == 1.0


# ---------------------------------------------------------------------------
# validation and classification
# ---------------------------------------------------------------------------


def test_validate_standard_regular():
    rep = validate(standard_pair())
    assert rep.classification == "regular"
    assert rep.rho == 0.5
    assert rep.guiding_set_1.is_empty and rep.guiding_set_2.is_empty
    assert rep.additivity_ok and rep.derivative_nonneg_ok and rep.boundary_ok


def test_validate_quadratic_02_regular():
    rep = validate(quadratic_pair(0.2))
    assert rep.classification == "regular"
    assert rep.rho == pytest.approx(0.9, abs=1e-12)
    assert rep.derivative_min_1 == pytest.approx(0.1, abs=1e-12)


def test_validate_quadratic_03_invalid():
    rep = validate(quadratic_pair(0.3))
    assert rep.classification == "invalid"
    assert not rep.derivative_nonneg_ok
    assert rep.derivative_min_2 == pytest.approx(-0.1, abs=1e-12)


def test_validate_quadratic_025_guided_at_endpoints():
    # c = 1/4 makes both branch derivatives vanish at one endpoint each:
    # delta2'(-1) = 1/2 - 2c = 0 and delta1'(1) = 1/2 - 2c = 0
    rep = validate(quadratic_pair(0.25))
    assert rep.classification == "guided"
    (iv2,) = rep.guiding_set_2.intervals
    assert iv2 == (-1.0, -1.0)
    assert rep.guiding_set_2.singleton_flags[0]
    (iv1,) = rep.guiding_set_1.intervals
    assert iv1 == (1.0, 1.0)
    assert rep.rho == pytest.approx(1.0, abs=1e-12)


def test_validate_perturbed_flat_guided():
    rep = validate(perturbed_flat_pair(2))
    assert rep.classification == "guided"
    assert rep.guiding_set_2.is_empty
    assert len(rep.guiding_set_1.exact_points) == 1
    lo, hi = flat_interval(2)
    lam = rep.guiding_set_1.exact_points[0]
    assert lo < lam < hi
    if rep.guiding_set_1.intervals:  # grid hits depend on flat_tol
        for a, b in rep.guiding_set_1.intervals:
            assert lo < a <= b < hi
    # the complementary branch derivative reaches exactly 1 at the flat point
    assert rep.rho == 1.0


def test_rho_below_one_iff_regular():
    for p in (standard_pair(), quadratic_pair(0.2), quadratic_pair(-0.1)):
        rep = validate(p)
        assert rep.classification == "regular" and rep.rho < 1.0
    for p in (quadratic_pair(0.25), perturbed_flat_pair(2)):
        rep = validate(p)
        assert rep.classification == "guided" and rep.rho >= 1.0 - 1e-12


def test_guiding_sets_standard_empty():
    g1, g2 = guiding_sets(standard_pair())
    assert g1.is_empty and g2.is_empty


def test_classify_consistency():
    for p, expected in [
        (standard_pair(), "regular"),
        (quadratic_pair(0.2), "regular"),
        (quadratic_pair(0.25), "guided"),
        (quadratic_pair(0.3), "invalid"),
        (perturbed_flat_pair(2), "guided"),
    ]:
        rep = validate(p)
        assert classify(rep) == rep.classification == expected


def test_quasi_mode_skips_additivity():
    quasi = build_family({
        "family": "polynomial",
        "mode": "quasi",
        "delta1": [0.5, 0.5],
        # delta2(-1) = -1, delta2(1) = 0, increasing, but not t - delta1
        "delta2": [-0.5, 0.45, 0.0, 0.05],
    })
    rep = validate(quasi, mode="quasi")
    assert rep.additivity_ok is None
    assert rep.classification == "quasi-regular"
    # in full mode the same pair fails additivity but nothing else
    rep_full = validate(quasi, mode="full")
    assert rep_full.additivity_ok is False
    assert rep_full.classification == "quasi-regular"


def test_validate_rejects_tiny_grid():
    with pytest.raises(ValueError):
        validate(standard_pair(), grid=128)


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


def test_descriptor_round_trip():
    for p in (standard_pair(), quadratic_pair(0.2), perturbed_flat_pair(2)):
        q = build_family(p.descriptor())
        assert np.array_equal(np.asarray(q.delta1(GRID)), np.asarray(p.delta1(GRID)))
        assert np.array_equal(np.asarray(q.delta2(GRID)), np.asarray(p.delta2(GRID)))


def test_build_family_from_json_string():
    p = build_family(json.dumps({"family": "quadratic", "c": 0.2}))
    assert float(p.delta1(0.0)) == 0.7


def test_build_family_bad_specs():
    with pytest.raises(BadSpec):
        build_family({"family": "cubic"})
    with pytest.raises(BadSpec):
        build_family({"family": "quadratic"})
    with pytest.raises(BadSpec):
        build_family({"family": "quadratic", "c": 0.2, "extra": 1})
    with pytest.raises(BadSpec):
        build_family({"family": "perturbed_flat", "n": 0})
    with pytest.raises(BadSpec):
        build_family({"family": "polynomial", "delta1": [0.5, 0.5],
                      "delta2": [-0.5, 0.5], "mode": "full"})
    with pytest.raises(BadSpec):
        build_family({"family": "polynomial", "mode": "quasi",
                      "delta1": [0.5, 0.5]})
    with pytest.raises(BadSpec):
        build_family("not json {")
