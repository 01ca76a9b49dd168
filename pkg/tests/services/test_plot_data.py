import pandas as pd
import pytest

from src.conf.constants import SCHEMA_MISSING_COLUMN, SCHEMA_UNKNOWN
from src.conf.errors import SchemaMismatchError
from src.repository.artifacts import FileArtifactRepo
from src.schemas.metrics import DegreeHistogram, NcpDip
from src.services.degrees import degree_distribution, fit_power_law_slope, log_binned
from src.services.generators import watts_strogatz
from src.services.oracles import sample_discrete_power_law
from src.services.plot_data import (
    degrees_table,
    detect_schema,
    emit_plot_data,
    fits_table,
    ncp_dips_table,
)


def _write(path, frame):
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    return path


def test_detect_schema_by_prefix_and_columns(tmp_path):
    frame = pd.DataFrame({"degree": [1], "count": [2]})
    assert detect_schema(tmp_path / "degrees-500.csv", frame) == "degrees"
    assert detect_schema(tmp_path / "merged.csv", frame) == "degrees"
    densify = pd.DataFrame({"size": [10], "avg_degree": [2.0]})
    assert detect_schema(tmp_path / "growth.csv", densify) == "densify"


def test_detect_schema_missing_column(tmp_path):
    with pytest.raises(SchemaMismatchError) as e:
        detect_schema(tmp_path / "ncp.csv", pd.DataFrame({"bin_size": [1]}))
    assert e.value.detail.startswith(SCHEMA_MISSING_COLUMN)
    assert "'conductance'" in e.value.detail


def test_detect_schema_unknown(tmp_path):
    with pytest.raises(SchemaMismatchError) as e:
        detect_schema(tmp_path / "misc.csv", pd.DataFrame({"a": [1]}))
    assert e.value.detail == f"{SCHEMA_UNKNOWN}: misc.csv"


def test_regular_graph_is_one_row(tmp_path):
    hist = degree_distribution(watts_strogatz(60, 6, 0.0))
    path = _write(tmp_path / "degrees.csv", degrees_table(hist))
    tables = emit_plot_data([path])
    table = tables["degrees"]
    assert len(table) == 1
    assert table.loc[0, "density_degrees"] == pytest.approx(60 / (table.loc[0, "bin_hi"] - table.loc[0, "bin_lo"]))


def test_one_density_column_per_input(tmp_path):
    paths = []
    for i, exponent in enumerate((2.0, 2.5, 3.0)):
        hist = DegreeHistogram.from_degrees(sample_discrete_power_law(exponent, 5000, seed=i))
        paths.append(_write(tmp_path / f"degrees-{i}.csv", degrees_table(hist)))
    repo = FileArtifactRepo(tmp_path / "plots")
    table = emit_plot_data(paths, repo)["degrees"]
    for i in range(3):
        assert f"density_degrees-{i}" in table.columns
        assert f"log_density_degrees-{i}" in table.columns
    assert list(table["bin_lo"]) == sorted(table["bin_lo"])
    assert (tmp_path / "plots" / "degrees.csv").is_file()
    assert repo.files == ["degrees.csv"]


def test_guideline_from_fits(tmp_path):
    hist = DegreeHistogram.from_degrees(sample_discrete_power_law(2.5, 20000, seed=3))
    fit = fit_power_law_slope(log_binned(hist), (1, 30), hist)
    degrees = _write(tmp_path / "degrees-100.csv", degrees_table(hist))
    fits = _write(
        tmp_path / "fits.csv", fits_table([("degrees-100", fit), ("degrees-5", None)])
    )
    table = emit_plot_data([degrees, fits])["degrees"]
    assert "guideline_degrees-100" in table.columns
    first = table.iloc[0]
    assert first["guideline_degrees-100"] == pytest.approx(
        10**fit.intercept * first["center"] ** fit.exponent
    )


def test_other_schemas_are_stacked(tmp_path):
    a = _write(tmp_path / "a" / "densify.csv", pd.DataFrame({"size": [10, 100], "avg_degree": [2.0, 4.0]}))
    b = _write(tmp_path / "b" / "densify.csv", pd.DataFrame({"size": [10], "avg_degree": [3.0]}))
    table = emit_plot_data([a, b])["densify"]
    assert len(table) == 3
    assert set(table["source"]) == {"a-densify", "b-densify"}
    assert table["log_size"].tolist() == pytest.approx([1.0, 2.0, 1.0])


def test_fits_table_keeps_undefined_rows():
    table = fits_table([("degrees-1", None)])
    assert table.loc[0, "label"] == "degrees-1"
    assert pd.isna(table.loc[0, "exponent"])


def test_dips_table():
    dip = NcpDip(min_size=40, min_value=0.01, small_ratio=20, large_ratio=10, spread=50)
    table = ncp_dips_table([("run-000-8333", dip)])
    assert bool(table.loc[0, "has_dip"])
    assert not bool(table.loc[0, "is_flat"])
