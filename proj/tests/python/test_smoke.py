import json
import math

import numpy as np
import pytest

import thermoprobe as tp


def test_thermal_routes_agree():
    p = tp.SensorParams(ej1=1.0, ej2=0.1, em=1.0)
    a = tp.gibbs_state(p, 0.5)
    b = tp.thermal_state(p, 0.5)
    assert a.shape == (4, 4)
    assert np.max(np.abs(a - b)) < 1e-10
    assert abs(np.trace(a) - 1) < 1e-12


def test_spectrum_matches_numpy():
    p = tp.SensorParams(ej1=2.0, ej2=0.8, em=1.0)
    eps = sorted(tp.spectrum(p))
    ref = np.linalg.eigvalsh(tp.hamiltonian(p))
    assert np.allclose(eps, ref, atol=1e-10)


def test_teleportation_closed_form_and_fidelity():
    p = tp.SensorParams(ej1=1.0, ej2=0.05, em=0.5)
    s = tp.InputState(theta=math.pi / 2, phi=math.pi)
    rho_in = tp.input_state(s)
    out = tp.teleport(tp.gibbs_state(p, 0.05), rho_in)
    assert np.max(np.abs(out - tp.teleport_closed_form(p, 0.05, s))) < 1e-10
    f = tp.fidelity(rho_in, out)
    assert tp.CLASSICAL_FIDELITY_THRESHOLD < f < 1
    assert sum(tp.channel_probabilities(tp.gibbs_state(p, 0.5))) == pytest.approx(1.0, abs=1e-12)


def test_qfi_routes_and_monotonicity():
    p = tp.SensorParams(ej1=0.05, ej2=2.0, em=1.0)
    rho = tp.thermal_state(p, 0.5)
    drho = tp.thermal_state_derivative(p, 0.5)
    rep = tp.qfi(rho, drho)
    L = tp.sld(rho, drho)
    assert np.real(np.trace(rho @ L @ L)) == pytest.approx(rep["total"], rel=1e-8)
    assert rep["classical_part"] + rep["quantum_part"] == pytest.approx(rep["total"], rel=1e-8)
    remote = tp.teleported_qfi(p, tp.InputState(math.pi / 2, math.pi / 6), 0.5)
    assert remote["total"] <= tp.thermal_qfi(p, 0.5)["total"] * (1 + 1e-9)
    assert tp.hss(drho) >= 0


def test_figure_csv_is_deterministic():
    a = tp.figure("fig4")
    assert a == tp.figure("fig4")
    lines = a.splitlines()
    assert lines[0] == tp.CSV_HEADER
    assert len(lines) == 201
    assert all(len(l.split(",")) == 12 for l in lines[1:])


def test_sweep_from_spec_json():
    spec = json.loads(tp.preset_spec("fig5"))
    spec["t_grid"]["count"] = 5
    doc = json.loads(tp.sweep(json.dumps(spec), format="json"))
    assert len(doc["rows"]) == 5
    assert doc["meta"]["derivative_source"] == "analytic"


def test_errors_map_to_python_exceptions():
    with pytest.raises(tp.ValidationError):
        tp.gibbs_state(tp.SensorParams(), -1.0)
    with pytest.raises(tp.ValidationError):
        tp.figure("fig9")
    with pytest.raises(tp.Error):
        tp.thermal_state(tp.SensorParams(ng1=0.3), 0.5)
