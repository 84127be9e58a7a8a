#!/usr/bin/env python

"""test_command_line
----------------------------------

Tests for the ``sktda`` command line: subcommands, config files and exit codes.
"""

import json
import os
import shutil

import numpy as np
import pandas as pd
import pytest

from sktda.cli import _selected_command, create_sktda_argparser, main
from sktda.constants import (
    ADF_REPORT_FILE,
    CLOUD_FILE,
    CRITICAL_VALUES_FILE,
    DIAGRAM_FILE,
    DISTANCES_COMBINED_FILE,
    GP_MODEL_FILE,
    GP_RESIDUALS_FILE,
    JOHANSEN_FILE,
    MANIFEST_FILE,
    RESIDUALS_FILE,
    SYNTH_FILE,
)
from sktda.exceptions import EXIT_DATA_ERROR, EXIT_NUMERICAL_FAILURE
from sktda.series_core import load_csv
from sktda.synth import gen_random_walk

from . import list_files, read_bytes, write_series, write_text

SMALL_RUN = [
    "--alpha",
    "10",
    "--max-dim",
    "2",
    "--dims",
    "0,1",
    "--subsample",
    "20",
    "--restarts",
    "1",
    "--gp-max-iter",
    "10",
    "--train-stride",
    "4",
    "--gp1-window",
    "0:200",
    "--gp2-window",
    "250:500",
]


@pytest.fixture
def walk_csv(tmpdir):
    rng = np.random.default_rng(0)
    return write_series(
        tmpdir.join("walk.csv"), {"walk": gen_random_walk(500, seed=2).values, "noise": rng.standard_normal(500)}
    )


@pytest.fixture
def mimic_csv(tmpdir):
    out = str(tmpdir.join("synth"))
    assert main(["synth", "--out", out, "z24-mimic", "--n", "600", "--period", "100", "--regime", "300:450"]) == 0
    return SYNTH_FILE(out, "z24-mimic")


def test_help(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0
    out, _ = capsys.readouterr()
    assert "usage:" in out
    for name in create_sktda_argparser().subcommands:
        assert name in out


def test_no_command(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2
    _, err = capsys.readouterr()
    assert "usage:" in err
    assert "six-series" in err


def test_missing_required_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["adf"])
    assert excinfo.value.code == 2
    _, err = capsys.readouterr()
    assert "--input" in err
    assert "--export-critical-values" in err


def test_adf(walk_csv, tmpdir, capsys):
    out = str(tmpdir.join("adf"))
    assert main(["adf", "--input", walk_csv, "--out", out, "--export-critical-values"]) == 0
    stdout, _ = capsys.readouterr()
    lines = stdout.splitlines()
    assert lines[0].startswith("walk: t_p=")
    assert lines[0].endswith("the unit root at 5%")
    assert lines[1].startswith("noise: t_p=")
    assert lines[1].endswith("reject the unit root at 5%")
    assert "fail to reject" not in lines[1]
    report = pd.read_csv(ADF_REPORT_FILE(out))
    assert list(report["channel"]) == ["walk", "noise"]
    assert report.loc[1, "integration_order"] == 0
    assert os.path.exists(CRITICAL_VALUES_FILE(out))


def test_adf_channel_selection(walk_csv, tmpdir, capsys):
    out = str(tmpdir.join("adf"))
    assert main(["adf", "--input", walk_csv, "--channel", "noise", "--lags", "0", "--out", out]) == 0
    report = pd.read_csv(ADF_REPORT_FILE(out))
    assert list(report["channel"]) == ["noise"]
    assert list(report["lags"]) == [0]


def test_data_error_exit_code(tmpdir, capsys):
    path = write_text(tmpdir.join("bad.csv"), "a\n1\nx\n")
    assert main(["adf", "--input", path, "--out", str(tmpdir)]) == EXIT_DATA_ERROR
    _, err = capsys.readouterr()
    assert err.startswith("error [load]: ")
    assert "line 3" in err


def test_numerical_error_exit_code(tmpdir, capsys):
    path = write_series(tmpdir.join("flat.csv"), {"y": np.ones(50)})
    assert main(["embed", "--input", path, "--standardize", "--out", str(tmpdir)]) == EXIT_NUMERICAL_FAILURE
    _, err = capsys.readouterr()
    assert err.startswith("error [embed]: ")


def test_cointegrate(tmpdir, capsys):
    out = str(tmpdir.join("coint"))
    assert main(["synth", "--out", out, "cointegrated", "--n", "800", "--beta=1,-2"]) == 0
    levels = SYNTH_FILE(out, "cointegrated")
    assert main(["cointegrate", "--input", levels, "--out", out]) == 0
    stdout, _ = capsys.readouterr()
    assert "leading eigenvalue" in stdout
    table = pd.read_csv(JOHANSEN_FILE(out))
    assert list(table.columns) == ["residual", "eigenvalue", "y1", "y2"]
    assert table.loc[0, "y1"] / table.loc[0, "y2"] == pytest.approx(-0.5, abs=0.02)
    assert load_csv(RESIDUALS_FILE(out)).labels == ("eps1", "eps2")


def test_embed_persist_distance(tmpdir, capsys):
    synth_dir = str(tmpdir.join("synth"))
    assert main(["synth", "--out", synth_dir, "sine-mix", "--n", "300"]) == 0
    series = SYNTH_FILE(synth_dir, "sine-mix")
    assert load_csv(series).labels == ("y",)

    embed_dir = str(tmpdir.join("embed"))
    assert main(["embed", "--input", series, "--dim", "3", "--alpha", "5", "--out", embed_dir]) == 0
    cloud = pd.read_csv(CLOUD_FILE(embed_dir))
    assert list(cloud.columns) == ["x0", "x1", "x2"]
    assert len(cloud) == 290

    persist_dir = str(tmpdir.join("persist"))
    flags = ["--max-dim", "2", "--subsample", "25", "--out", persist_dir]
    assert main(["persist", "--input", CLOUD_FILE(embed_dir), "--label", "toy"] + flags) == 0
    assert sorted(list_files(persist_dir)) == ["diagram_toy.csv", "diagram_toy.svg"]

    copy = str(tmpdir.join("copy.csv"))
    shutil.copy(DIAGRAM_FILE(persist_dir, "toy", "csv"), copy)
    capsys.readouterr()
    distance_dir = str(tmpdir.join("distance"))
    assert main(
        ["distance", "--inputs", DIAGRAM_FILE(persist_dir, "toy", "csv"), copy, "--dims", "0", "--out", distance_dir]
    ) == 0
    stdout, _ = capsys.readouterr()
    assert stdout.strip() == "diagram_toy copy: 0.0"
    assert sorted(list_files(distance_dir)) == ["distances_combined.csv", "distances_h0.csv"]


def test_gp_fit(mimic_csv, tmpdir, capsys):
    out = str(tmpdir.join("gp"))
    flags = ["--target", "w2", "--regressors", "w1,w3,w4", "--train-window", "0:240", "--train-stride", "3"]
    assert main(["gp-fit", "--input", mimic_csv, "--restarts", "1", "--max-iter", "20", "--out", out] + flags) == 0
    residuals = load_csv(GP_RESIDUALS_FILE(out))
    assert residuals.labels == ("prediction", "residual")
    assert len(residuals) == 600
    with open(GP_MODEL_FILE(out), encoding="utf-8") as fp:
        model = json.load(fp)
    assert model["train_window"] == "0:240"
    assert model["n_train"] == 80
    assert len(model["kernel_lengthscales"]) == 3


def test_gp_fit_bad_window(mimic_csv, tmpdir, capsys):
    flags = ["--target", "w2", "--regressors", "w1", "--train-window", "500:700", "--out", str(tmpdir)]
    assert main(["gp-fit", "--input", mimic_csv] + flags) == EXIT_DATA_ERROR
    _, err = capsys.readouterr()
    assert "exceeds the series length" in err


def test_six_series_and_replay(mimic_csv, tmpdir, capsys):
    out = str(tmpdir.join("six"))
    assert main(["six-series", "--input", mimic_csv, "--out", out] + SMALL_RUN) == 0
    stdout, _ = capsys.readouterr()
    assert stdout.startswith("6x6 distance matrix written to")
    assert "LIN CO" in stdout
    with open(MANIFEST_FILE(out), encoding="utf-8") as fp:
        manifest = json.load(fp)
    assert manifest["config"]["subsample"] == 20

    replayed = str(tmpdir.join("replayed"))
    assert main(["six-series", "--replay", MANIFEST_FILE(out), "--out", replayed]) == 0
    assert read_bytes(DISTANCES_COMBINED_FILE(out)) == read_bytes(DISTANCES_COMBINED_FILE(replayed))


def test_linear_residuals(tmpdir, capsys):
    synth_dir = str(tmpdir.join("synth"))
    assert main(["synth", "--out", synth_dir, "cointegrated", "--n", "400", "--beta=1,-1,0.5"]) == 0
    out = str(tmpdir.join("linear"))
    flags = ["--alpha", "5", "--max-dim", "2", "--dims", "0,1", "--subsample", "20", "-j", "2"]
    assert main(["linear-residuals", "--input", SYNTH_FILE(synth_dir, "cointegrated"), "--out", out] + flags) == 0
    stdout, _ = capsys.readouterr()
    assert stdout.startswith("6x6 distance matrix written to")
    frame = pd.read_csv(DISTANCES_COMBINED_FILE(out), index_col=0)
    assert list(frame.index) == ["y1", "y2", "y3", "eps1", "eps2", "eps3"]


def test_config_file_sets_defaults(walk_csv, tmpdir, capsys):
    out = str(tmpdir.join("adf"))
    config = write_text(tmpdir.join("config.json"), json.dumps({"input": walk_csv, "lags": 2, "max-order": 1}))
    assert main(["adf", "--config", config, "--out", out]) == 0
    assert list(pd.read_csv(ADF_REPORT_FILE(out))["lags"]) == [2, 2]

    assert main(["adf", "--config", config, "--lags", "3", "--out", out]) == 0
    assert list(pd.read_csv(ADF_REPORT_FILE(out))["lags"]) == [3, 3]


def test_config_file_unknown_keys_are_logged(walk_csv, tmpdir, caplog):
    config = write_text(tmpdir.join("config.json"), json.dumps({"input": walk_csv, "colour": "red"}))
    assert main(["adf", "--config", config, "--out", str(tmpdir)]) == 0
    assert "colour" in caplog.text


def test_config_file_unreadable(tmpdir, capsys):
    config = write_text(tmpdir.join("config.json"), "{not json")
    assert main(["adf", "--config", config]) == EXIT_DATA_ERROR
    _, err = capsys.readouterr()
    assert err.startswith("error [config]: ")


def test_config_file_before_command_is_a_usage_error(tmpdir):
    config = write_text(tmpdir.join("config.json"), "{not json")
    with pytest.raises(SystemExit) as excinfo:
        main(["--config", config, "persist"])
    assert excinfo.value.code == 2


@pytest.mark.parametrize(
    "argv, command",
    (
        (["adf", "--out", "persist", "--label", "synth"], "adf"),
        (["persist", "--label", "adf", "--config", "config.json"], "persist"),
        (["cointegrate", "--verbose", "--input", "six-series"], "cointegrate"),
        (["walks.csv", "adf"], None),
        ([], None),
    ),
)
def test_selected_command(argv, command):
    assert _selected_command(create_sktda_argparser(), argv) == command


def test_manifest_as_config(mimic_csv, tmpdir, caplog):
    out = str(tmpdir.join("six"))
    assert main(["six-series", "--input", mimic_csv, "--out", out] + SMALL_RUN) == 0
    again = str(tmpdir.join("again"))
    assert main(["six-series", "--config", MANIFEST_FILE(out), "--out", again]) == 0
    assert read_bytes(DISTANCES_COMBINED_FILE(out)) == read_bytes(DISTANCES_COMBINED_FILE(again))
    assert "mimic" in caplog.text


def test_quiet_and_verbose(walk_csv, tmpdir, caplog):
    assert main(["adf", "--input", walk_csv, "--out", str(tmpdir), "--quiet"]) == 0
    assert "loaded" not in caplog.text
    assert main(["adf", "--input", walk_csv, "--out", str(tmpdir), "--verbose"]) == 0
    assert "adf 'walk': t_p=" in caplog.text


def test_default_output_directory(walk_csv, tmpdir, monkeypatch):
    monkeypatch.chdir(str(tmpdir))
    assert main(["adf", "--input", walk_csv]) == 0
    assert os.path.exists(ADF_REPORT_FILE(os.path.join("_sktda", "adf")))
