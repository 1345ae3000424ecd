"""Config grammar: parsing, defaults, and rejection of malformed input."""

import pytest

from eternalprofile.config import MODES, load_config
from eternalprofile.errors import ConfigError


def write(tmp_path, text):
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return path


def test_minimal_config(tmp_path):
    cfg = load_config(write(tmp_path, "m = 2\nq = 0.5\nN = 1\n"))
    assert (cfg.m, cfg.q, cfg.N) == (2.0, 0.5, 1)
    assert cfg.mode == "solve"
    assert cfg.beta_tol == 1e-8
    assert cfg.rtol == 1e-10
    assert cfg.emit_plots is False
    assert cfg.use_seeds is True


def test_comments_and_blank_lines_ignored(tmp_path):
    cfg = load_config(
        write(tmp_path, "# run\n\nm = 2\nq = 0.5\n\n# dim\nN = 3\n")
    )
    assert cfg.N == 3


def test_all_modes_accepted(tmp_path):
    for mode in MODES:
        body = f"m = 2\nq = 0.5\nN = 1\nmode = {mode}\n"
        if mode == "classify":
            body += "beta = 0.5\n"
        if mode == "sweep":
            body += "sweep_betas = 0.1, 1\n"
        assert load_config(write(tmp_path, body)).mode == mode


def test_sweep_params_triples(tmp_path):
    cfg = load_config(
        write(tmp_path, "mode = sweep\nsweep_params = 2:0.5:1; 1.5:0.5:2\n")
    )
    assert cfg.sweep_params == [(2.0, 0.5, 1), (1.5, 0.5, 2)]


@pytest.mark.parametrize(
    "body, fragment",
    [
        ("m = 2\nq = 0.5\nN = 1\nmode = fly\n", "mode"),
        ("m = 2\nq = 0.5\nN = 1\nwibble = 3\n", "unknown key"),
        ("m = 2\nq = 0.5\nN = one\n", "integer"),
        ("m = 2\nq = 0.5\nN = 1\nm = 3\n", "duplicate"),
        ("m = 2\nq = 0.5\nN = 1\nemit_plots = maybe\n", "boolean"),
        ("m = 2\nq = 0.5\nN = 1\nrtol = fast\n", "number"),
        ("m 2\n", "key = value"),
        ("m = 2\nq = 0.5\nN = 1\nmode = classify\n", "beta"),
        ("mode = sweep\n", "sweep"),
        ("m = 2\nq = 0.5\nN = 1\nbeta = -1\n", "beta"),
        ("m = 2\nq = 0.5\nN = 1\nrtol = 0\n", "rtol"),
        ("m = 2\nq = 0.5\nN = 1\nsweep_params = 2:0.5\nmode = sweep\n", "m:q:N"),
    ],
)
def test_malformed_config_rejected(tmp_path, body, fragment):
    with pytest.raises(ConfigError, match="(?i)" + fragment):
        load_config(write(tmp_path, body))


def test_missing_file():
    with pytest.raises(ConfigError, match="not found"):
        load_config("/nonexistent/run.cfg")


def test_to_dict_round_trip(tmp_path):
    cfg = load_config(write(tmp_path, "m = 2\nq = 0.5\nN = 1\nrtol = 1e-9\n"))
    d = cfg.to_dict()
    assert d["rtol"] == 1e-9
    assert set(d) >= {"m", "q", "N", "mode", "beta_tol", "output_dir"}
