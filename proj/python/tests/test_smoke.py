"""Smoke tests for the pyfsistab bindings."""

import math

import pytest

import pyfsistab as fsi


@pytest.fixture(scope="module")
def setup16():
    g = fsi.Grid(fsi.Geometry(1.0, 1.0, 16, 16))
    U = fsi.build_ambient(g, fsi.AmbientPreset.zero, 0.0)
    A = fsi.Generator(g, U, 0)
    return g, A


def test_geometry_validation():
    with pytest.raises(Exception):
        fsi.Geometry(1.0, 1.0, 4, 4)


def test_null_residual(setup16):
    _, A = setup16
    assert A.null_residual() <= 1e-10


def test_energy_identity(setup16):
    _, A = setup16
    X = A.random_state(3, normalize=False)
    lhs = X @ (A.G() @ X)
    rhs = -A.diss(X) + A.sdiv_rate(X) + A.skappa_rate(X)
    assert abs(lhs - rhs) / abs(lhs) < 1e-12


def test_evolution_balance_and_decay(setup16):
    _, A = setup16
    X0 = A.project_offnull(A.random_state(1))
    out = fsi.evolve(A, X0, 1.0 / 64, 2.0)
    assert out.trace.max_balance_residual <= 1e-12
    assert out.trace.E[-1] < out.trace.E[0]
    E = out.trace.E
    assert all(E[k + 1] <= E[k] + 1e-10 for k in range(len(E) - 1))


def test_decay_fit_synthetic():
    t = [0.05 * k for k in range(201)]
    E = [3.0 * math.exp(-2.0 * tk) for tk in t]
    fit = fsi.decay_fit(t, E)
    assert abs(fit.energy_rate - 2.0) < 1e-10
    assert abs(fit.state_rate - 1.0) < 1e-10
    assert fit.rsq >= 1.0 - 1e-12


def test_spectrum(setup16):
    _, A = setup16
    rep = fsi.spectrum(A)
    assert rep.n_zero == 1
    assert 0.2 < rep.gap < 0.3
    assert rep.alignment >= 1.0 - 1e-6


def test_leray(setup16):
    g, A = setup16
    el = fsi.Elliptic(g)
    u1 = A.random_state(21, normalize=False)[: g.N]
    u2 = A.random_state(22, normalize=False)[: g.N]
    P1, P2, _ = el.leray(u1, u2)
    Q1, Q2, _ = el.leray(P1, P2)
    assert max(abs(Q1 - P1).max(), abs(Q2 - P2).max()) < 1e-10


def test_config_parse_and_errors():
    line = fsi.parse_config("nx = 16\nny = 16\nkappa = 0\n")
    assert "nx = 16" in line
    with pytest.raises(Exception, match="kappa"):
        fsi.parse_config("kappa = 2\n")
    with pytest.raises(Exception, match="wibble"):
        fsi.parse_config("wibble = 1\n")


def test_run_subcommand(tmp_path):
    rc = fsi.run_subcommand(
        "simulate",
        "nx = 8\nny = 8\ninit = n0\nT = 1\ndt = 0.0625\n",
        str(tmp_path),
    )
    assert rc == 0
    csv = (tmp_path / "energy_trace.csv").read_text().splitlines()
    assert csv[0].startswith("# ")
    assert csv[1] == "t,E,D,Sdiv,Skappa,Q,balance_residual"
    assert len(csv) == 2 + 17
