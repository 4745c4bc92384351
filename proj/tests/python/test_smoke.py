import math
import pathlib

import numpy as np
import pytest

import pvb

CONFIGS = pathlib.Path(__file__).resolve().parents[2] / "configs"


def test_version():
    assert pvb.__version__.count(".") == 2


def test_harmonic_direct_levels():
    basis = pvb.sinc_dvr(-10.0, 20.0, 129)
    h = pvb.build_hamiltonian(basis, pvb.Harmonic(1.0), 1.0)
    values = pvb.solve_direct(h)["values"]
    assert np.allclose(values[:10], np.arange(10) + 0.5, atol=1e-8)


def test_unpruned_pvb_matches_direct():
    basis = pvb.sinc_dvr(-10.0, 20.0, 36)
    h = pvb.build_hamiltonian(basis, pvb.Morse(), 1.0)
    lat = pvb.build_lattice(basis, 6, 6)
    assert math.isclose(lat.dx * lat.dp, 2 * math.pi, rel_tol=1e-12)
    frame = pvb.build_frame_matrix(basis, lat)
    direct = np.array(pvb.solve_direct(h)["values"])
    norm = np.abs(direct).max()
    for rep in ("pvb-symmetric", "pvb-biorth-left", "pvb-biorth-both"):
        values = np.array(pvb.solve_pvb(h, frame, None, rep)["values"])
        assert np.abs(values - direct).max() <= 1e-8 * norm


def test_frame_biorthogonality():
    basis = pvb.sinc_dvr(-10.0, 20.0, 25)
    frame = pvb.build_frame_matrix(basis, pvb.build_lattice(basis, 5, 5))
    assert frame.g.shape == (25, 25)
    assert np.abs(frame.b.conj().T @ frame.g - np.eye(25)).max() < 1e-10
    assert frame.cond_s < 1e6


def test_pruning_and_empty_mask():
    basis = pvb.sinc_dvr(-10.0, 20.0, 64)
    lat = pvb.build_lattice(basis, 8, 8)
    mask = pvb.build_mask(lat, pvb.Harmonic(), 1.0, pvb.EnergyShell(8.0))
    assert len(mask.retained) == 12
    assert mask.fraction == pytest.approx(12 / 64)
    with pytest.raises(pvb.EmptyMask):
        pvb.build_mask(lat, pvb.Harmonic(), 1.0, pvb.EnergyShell(0.01))


def test_legendre_basis():
    basis = pvb.legendre_dvr(-1.0, 1.0, 2)
    assert basis.family == "gauss-legendre"
    assert np.allclose(basis.points, [-1 / math.sqrt(3), 1 / math.sqrt(3)])


def test_config_round_trip_and_errors():
    config = pvb.load_config(str(CONFIGS / "harmonic_quickstart.ini"))
    assert pvb.parse_config(pvb.serialize_config(config)) == config
    with pytest.raises(pvb.ConfigError, match="Nx \\* Np must equal N"):
        pvb.parse_config("[basis]\nn = 16\n[lattice]\nnx = 3\nnp = 5\n")


def test_solve_command(tmp_path):
    config = pvb.load_config(str(CONFIGS / "harmonic_quickstart.ini"))
    config.output_dir = str(tmp_path)
    result = pvb.cmd_solve(config)
    assert result["exit_code"] == 0
    direct = [r for r in result["rows"] if r["representation"] == "direct-dvr"]
    assert len(direct) == 20
    assert max(r["abs_error"] for r in direct) < 1e-8
    assert pathlib.Path(result["files"][0]).exists()
