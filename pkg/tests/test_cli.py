import json

import numpy as np
import pytest

from dirac_mfg import F, build_measure
from dirac_mfg.cli import main
from dirac_mfg.files import (
    InstanceFile,
    gen_instance,
    load_density,
    load_instance,
    load_result,
    save_instance,
)


@pytest.fixture
def fig1_file(tmp_path):
    p = tmp_path / "fig1.json"
    save_instance(InstanceFile([1, 2.25, 3, 3.75], [0.25] * 4, True, "four atoms"), p)
    return p


def test_fig1_run(tmp_path, fig1_file):
    out = tmp_path / "res.json"
    assert main(["--input", str(fig1_file), "--out", str(out)]) == 0
    res = load_result(out)
    assert res.converged and res.residual <= 1e-10
    first = res.atoms[0]
    assert first.left_case == first.right_case == "zero_crossing"
    C, x = res.levels, res.positions
    for j in (2, 3):
        at = res.atoms[j]
        assert at.left_case == "neighbor_intersection"
        assert C[j] - (at.alpha - x[j]) ** 2 > 0


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_single_atom_scaling(tmp_path, a):
    inst = tmp_path / "one.json"
    save_instance(InstanceFile([0.0], [a], False), inst)
    out = tmp_path / "r.json"
    assert main(["--input", str(inst), "--out", str(out), "--tol", "1e-13"]) == 0
    assert load_result(out).levels[0] == pytest.approx(0.75 ** (2 / 3) * a ** (2 / 3), abs=1e-12)


def test_verify_passes(tmp_path, fig1_file):
    out = tmp_path / "res.json"
    assert main(["--input", str(fig1_file), "--out", str(out), "--verify"]) == 0
    v = load_result(out).verification
    assert v["passed"] and v["nash_ok"] and v["jacobian_ok"] and v["grid_mass_ok"]


@pytest.mark.parametrize("kind", ["equispaced_random_weights", "fully_random"])
def test_generated_run_with_density(tmp_path, kind):
    out, dens, inst = tmp_path / "r.json", tmp_path / "d.csv", tmp_path / "i.json"
    args = ["--gen", kind, "--n", "10", "--seed", "4", "--out", str(out),
            "--emit-density", str(dens), "--samples", "10000", "--save-instance", str(inst),
            "--verify"]
    assert main(args) == 0
    with open(dens) as fh:
        assert fh.readline().strip() == "x,f"
    y, f = load_density(dens)
    assert y.size == 10000 and np.all(f >= 0)
    m = load_instance(inst).measure()
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    assert trapezoid(f, y) == pytest.approx(m.total_mass, abs=1e-3)


def test_result_round_trip(tmp_path, fig1_file):
    out = tmp_path / "res.json"
    main(["--input", str(fig1_file), "--out", str(out)])
    res = load_result(out)
    again = tmp_path / "again.json"
    from dirac_mfg.files import save_result

    save_result(res, again)
    assert json.loads(out.read_text()) == json.loads(again.read_text())
    m = build_measure(res.positions, res.weights)
    residual = np.abs(F(res.levels, m) - res.weights).max()
    assert residual == pytest.approx(res.residual, abs=1e-12)


def test_stdout_output(capsys, fig1_file):
    assert main(["--input", str(fig1_file)]) == 0
    assert json.loads(capsys.readouterr().out)["converged"] is True


def test_bad_input_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"positions": [1, 1], "weights": [0.5, 0.5]}')
    assert main(["--input", str(bad)]) == 2
    bad.write_text("not json")
    assert main(["--input", str(bad)]) == 2
    assert main(["--input", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_not_converged_exit_code(tmp_path):
    inst = tmp_path / "tight.json"
    save_instance(InstanceFile([0, 0.01, 0.02], [0.1, 1, 0.1], False), inst)
    assert main(["--input", str(inst), "--max-iters", "0", "--tol", "1e-300"]) == 3


def test_gen_instance_properties():
    inst = gen_instance("equispaced_random_weights", 10, seed=7)
    assert inst.positions == list(np.arange(1.0, 11.0))
    assert gen_instance("equispaced_random_weights", 10, seed=7) == inst
    w = np.array(inst.weights)
    assert np.all((w >= 0.05) & (w <= 1.0))
    for seed in range(1000):
        x = np.array(gen_instance("fully_random", 15, seed).positions)
        assert np.all(np.diff(x) >= 0.1 - 1e-12)
        assert x.min() >= 0 and x.max() <= 15
    with pytest.raises(ValueError):
        gen_instance("grid", 3, 0)
