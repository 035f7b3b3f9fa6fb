import os
import sys

import pytest


def _load():
    moddir = os.environ.get("ALPHAFLOW_MODULE_DIR")
    if moddir and moddir not in sys.path:
        sys.path.insert(0, moddir)
    try:
        import alphaflow as af  # installed package
        return af
    except ImportError:
        import _core as af  # build-tree module
        return af


af = _load()


@pytest.fixture(scope="module")
def channel():
    cfg = af.ChannelConfig(Nx=8, Ny=8, Nz=11)
    return af.Channel(cfg)


def test_version():
    assert af.__version__


def test_transform_roundtrip(channel):
    assert channel.transform_roundtrip_error(seed=5) <= 1e-12


def test_hodge_orthogonality(channel):
    rep = channel.hodge_check(seed=7)
    assert rep["orthogonality"] <= 1e-10
    assert rep["reconstruction_residual"] <= 1e-10
    assert set(rep["norms"]) == {"fh", "hh", "cg", "hg", "gg"}


def test_spectrum_floor(channel):
    mu = channel.spectrum(count=12)
    assert len(mu) == 12
    assert all(m >= 1.0 - 1e-12 for m in mu)
    assert mu == sorted(mu)


def test_filter_identity(channel):
    assert channel.filter_identity_gap(alpha=0.02, seed=9) <= 1e-10


def test_skew_orthogonality(channel):
    assert channel.skew_orthogonality(seed=11) <= 1e-11


def test_simulate_ledger(channel):
    led = channel.simulate(model="leray_alpha", alpha=0.01, dt=5e-3, t_end=0.05,
                           amplitude=1.2, modes=60)
    assert not led["blew_up"]
    assert len(led["t"]) == 11
    assert led["E_v"][0] > 0
    assert led["E_v"][-1] <= led["E_v"][0]


def test_invalid_config_raises():
    with pytest.raises(af.ConfigError):
        af.ChannelConfig(Nx=8, Ny=8, Nz=11, beta=-1.0)


def test_fit_rate_exact_power():
    alphas = [2e-2, 1e-2, 5e-3, 2.5e-3]
    errors = [3.0 * a for a in alphas]
    fit = af.fit_rate(alphas, errors)
    assert abs(fit["slope"] - 1.0) <= 1e-12


def test_gd_check():
    rep = af.gd_check()
    assert rep["sphere_max_residual"] <= 1e-8
