import json
import unittest
from pathlib import Path

import pandas as pd
import pytest

from src.conf.constants import CONFIG_INVALID, CONFIG_NOT_FOUND, MANIFEST_FILE
from src.conf.errors import ConfigValidationError
from src.schemas.experiments import Manifest
from src.services.experiments import (
    bundled_configs,
    config_digest,
    load_config,
    output_directory,
    run_experiment,
    validate_config,
)
from src.services.seeding import spawn_seeds


def tiny_config(**overrides) -> dict:
    config = {
        "experiment": {"name": "tiny", "runs": 2, "base_seed": 3},
        "generator": {"model": "ws", "n": 300, "d": 6, "r": 0.1},
        "cascade": {"model": "ret", "m": 120, "alpha": 0.7, "beta": 0.2},
        "snapshots": {"checkpoints": [40, 120]},
        "metrics": {
            "fit_range": [1.0, 20.0],
            "diameter": "exact",
            "clustering": True,
            "ncp": True,
            "ncp_config": {"seed_count": 3},
        },
    }
    for section, values in overrides.items():
        config[section] = {**config[section], **values}
    return config


class TestConfigs(unittest.TestCase):
    def test_bundled_configs_validate(self):
        names = bundled_configs()
        for name in (
            "fig1b",
            "fig1b-desk",
            "fig2-desk",
            "fig3-desk",
            "theorem-pcm",
            "er-negative",
            "ncp-collapse-r035",
        ):
            self.assertIn(name, names)
        for name in names:
            self.assertEqual(name, load_config(name).experiment.name)

    def test_unknown_name(self):
        with self.assertRaises(ConfigValidationError) as e:
            load_config("no-such-config")
        self.assertEqual(f"{CONFIG_NOT_FOUND}: no-such-config", e.exception.detail)

    def test_all_violations_reported(self):
        data = tiny_config(cascade={"m": 1000, "alpha": 2.0}, snapshots={"checkpoints": [50, 10]})
        with self.assertRaises(ConfigValidationError) as e:
            validate_config(data)
        self.assertEqual(CONFIG_INVALID, e.exception.detail)
        locations = " ".join(e.exception.violations)
        self.assertIn("cascade.alpha", locations)
        self.assertIn("snapshots.checkpoints", locations)

    def test_cross_section_rules(self):
        with self.assertRaises(ConfigValidationError) as e:
            validate_config(tiny_config(cascade={"m": 1000}, snapshots={"checkpoints": [1000]}))
        self.assertIn("cascade.m: exceeds generator.n", e.exception.violations[0])

    def test_digest_is_stable(self):
        self.assertEqual(
            config_digest(validate_config(tiny_config())),
            config_digest(validate_config(tiny_config())),
        )


def test_bad_toml(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("[experiment\nname = 'x'\n")
    with pytest.raises(ConfigValidationError) as e:
        load_config(path)
    assert e.value.detail == CONFIG_INVALID


def test_output_directory(tmp_path):
    config = validate_config(tiny_config())
    assert output_directory(config, tmp_path) == tmp_path / "tiny"
    absolute = validate_config(tiny_config(experiment={"output_dir": str(tmp_path / "elsewhere")}))
    assert output_directory(absolute, Path("ignored")) == tmp_path / "elsewhere"


def test_run_experiment(tmp_path):
    manifest = run_experiment(validate_config(tiny_config()), tmp_path, workers=1)
    out = tmp_path / "tiny"

    assert not manifest.flagged
    assert [run.seed for run in manifest.runs] == [3, 4]
    assert [run.generator_seed for run in manifest.runs] == [spawn_seeds(3)[0], spawn_seeds(4)[0]]
    for run in manifest.runs:
        assert run.error is None
        assert [s.checkpoint for s in run.snapshots] == [40, 120]

    assert MANIFEST_FILE in manifest.files
    for name in manifest.files:
        assert (out / name).is_file(), name
    for name in (
        "run-000/snapshot-40.edges",
        "run-000/degrees-120.csv",
        "run-000/ncp-40.csv",
        "run-001/diameter.csv",
        "run-001/densify.csv",
        "run-001/clustering.csv",
        "aggregate/degrees-40.csv",
        "aggregate/fits.csv",
        "aggregate/dips.csv",
        "plots/degrees.csv",
        "plots/diameter.csv",
    ):
        assert name in manifest.files

    merged = pd.read_csv(out / "aggregate" / "degrees-120.csv")
    assert merged["count"].sum() == sum(run.snapshots[-1].size for run in manifest.runs)
    plots = pd.read_csv(out / "plots" / "degrees.csv")
    assert {"density_degrees-40", "density_degrees-120"} <= set(plots.columns)

    stored = Manifest.model_validate(json.loads((out / MANIFEST_FILE).read_text()))
    assert stored.config_sha256 == config_digest(manifest.config)


def test_runs_are_reproducible(tmp_path):
    config = validate_config(tiny_config())
    first = run_experiment(config, tmp_path / "a", workers=1)
    run_experiment(config, tmp_path / "b", workers=1)
    parallel = run_experiment(config, tmp_path / "c", workers=2)
    assert parallel.files == first.files
    assert [run.snapshots for run in parallel.runs] == [run.snapshots for run in first.runs]
    for name in (
        "aggregate/degrees-120.csv",
        "aggregate/fits.csv",
        "run-000/ncp-120.csv",
        "run-001/snapshot-120.edges",
        "plots/degrees.csv",
    ):
        expected = (tmp_path / "a" / "tiny" / name).read_bytes()
        for other in ("b", "c"):
            assert (tmp_path / other / "tiny" / name).read_bytes() == expected, (other, name)


def test_stalled_runs_are_flagged(tmp_path):
    config = validate_config(
        tiny_config(
            experiment={"runs": 1},
            cascade={"beta": 0.0, "m": 10},
            snapshots={"checkpoints": [10]},
        )
    )
    manifest = run_experiment(config, tmp_path, workers=1)
    record = manifest.runs[0]
    assert manifest.flagged
    assert record.stalled
    assert record.reached == 1
    assert "run-000/partial.edges" in manifest.files


def test_theorem_pipeline(tmp_path):
    config = validate_config(
        {
            "experiment": {"name": "pcm-small", "kind": "theorem", "runs": 2},
            "generator": {"model": "pcm", "n": 120, "k": 6, "r": 0.5},
            "cascade": {"model": "retig", "m": 60},
            "snapshots": {"checkpoints": [60]},
        }
    )
    manifest = run_experiment(config, tmp_path, workers=1)
    out = tmp_path / "pcm-small"
    assert not manifest.flagged
    report = json.loads((out / "aggregate" / "theorem.json").read_text())
    assert report["runs"] == 2
    assert report["occupancy"]["runs"] == 2
    assert (out / "plots" / "occupancy.csv").is_file()
    assert pd.read_csv(out / "aggregate" / "occupancy.csv").eval("occupancy * cliques").sum() == 120
