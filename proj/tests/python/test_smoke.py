import json
import math

import pytest

import cauchywell as cw


def test_version():
    assert cw.__version__ == "0.1.0"


def test_exact_degree_2_ground_state():
    sol = cw.solve("even", 2)
    assert sol.E == pytest.approx(1.2, abs=1e-12)
    assert sol.alphas == pytest.approx([1.0, -0.4], abs=1e-12)
    assert sol.C == pytest.approx(math.sqrt(875.0 / 996.0), abs=1e-9)
    assert sol.precision_bits == 53
    assert sol.E_str is None
    # psi(0) = C, psi(+-1) = 0
    assert sol(0.0) == pytest.approx(sol.C, rel=1e-14)
    assert sol(1.0) == 0.0


def test_published_degree_4_row():
    sol = cw.solve("even", 4)
    assert sol.E == pytest.approx(1.180929, abs=1e-5)
    assert sol.C == pytest.approx(0.931331, abs=1e-5)


def test_solve_all_orders_and_interleaves():
    evens = cw.solve_all("even", 20)
    odds = cw.solve_all("odd", 21)
    assert [s.rank for s in evens[:3]] == [1, 2, 3]
    ladder = [evens[0].E, odds[0].E, evens[1].E, odds[1].E, evens[2].E]
    assert ladder == sorted(ladder)
    assert ladder[0] == pytest.approx(1.159234, abs=1e-5)
    assert ladder[4] == pytest.approx(7.509991, abs=1e-5)


def test_parity_degree_mismatch_raises():
    with pytest.raises(ValueError):
        cw.solve("even", 3)
    with pytest.raises(ValueError):
        cw.solve("diagonal", 2)


def test_rank_unavailable_is_numerical_error():
    with pytest.raises(cw.NumericalError):
        cw.solve("even", 4, rank=99)


def test_refine_extends_precision():
    sol = cw.refine("odd", 3, precision_bits=96)
    assert sol.precision_bits == 96
    assert sol.E == pytest.approx(8.0 / 3.0, abs=1e-12)
    assert sol.E_str.startswith("2.6666666666666666666666")


def test_apply_closed_matches_hand_computation():
    out = cw.apply_closed("even", [1.0, -0.4])
    assert out["image"] == pytest.approx([1.2, 0.0, -1.2], abs=1e-14)
    assert out["boundary_value"] == pytest.approx(0.0, abs=1e-12)


def test_apply_numeric_agrees_with_closed_form():
    sol = cw.solve("even", 4)
    image = cw.apply_closed("even", sol.alphas)["image"]

    def psi(x):
        s = sol.alphas[0] + sol.alphas[1] * x * x + sol.alphas[2] * x**4
        return s * math.sqrt(1.0 - x * x)

    for x in (0.3, -0.72):
        dense = sum(c * x**k for k, c in enumerate(image))
        assert cw.apply_numeric(psi, x) == pytest.approx(dense, abs=1e-8)


def test_json_round_trip():
    sol = cw.solve("even", 10, rank=2)
    back = cw.load_solution(cw.to_json(sol))
    assert back.E == sol.E
    assert back.alphas == sol.alphas
    assert back.rank == 2
    doc = json.loads(cw.to_json(sol))
    assert doc["schema_version"] == 1


def test_residual_grid_shape():
    grid = cw.residual_grid(cw.solve("even", 2), grid_points=11)
    assert len(grid["x"]) == 11
    assert grid["boundary_limit"] <= 1e-12
    assert grid["sup"] == pytest.approx(0.1188, abs=2e-3)


def test_compare_against_reference_tables():
    devs = cw.compare(cw.solve("even", 10))
    assert devs and all(d["pass"] for d in devs)
    fields = {d["field"] for d in devs}
    assert "I.E" in fields and "I.alpha2" in fields


def test_trial_state_and_sweep():
    trial = cw.make_trial("ground", 1443)
    assert trial.C == pytest.approx(0.921749, abs=2e-6)
    assert trial.parity == "even"
    report = cw.trial_residual(trial, 1.156, grid_points=501)
    assert report["boundary_upper"] == pytest.approx(0.130753, abs=1e-3)
    assert report["sup"] >= report["grid_sup"]

    swept = cw.sweep("ground", 1500, 1502, 1.157776, grid_points=201)
    assert swept["best"][0] == 1501
    assert len(swept["points"]) == 3

    with pytest.raises(ValueError):
        cw.make_trial("ground", 4096)


def test_series_helpers():
    series = cw.sqrt_series(3)
    assert series == pytest.approx([1.0, -0.5, -0.125, -0.0625], abs=1e-15)
    value, increment = cw.eigenvalue_from_series([1.0, -0.5, -0.125], "even")
    assert value > 0 and abs(increment) < 1.0
