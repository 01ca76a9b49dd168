"""
Metric CSV tables and the log-log plot tables merged from them.
"""

from pathlib import Path

import numpy as np
import pandas as pd

from src.conf.constants import (
    DEGREES_COLUMNS,
    DENSIFY_COLUMNS,
    DIAMETER_COLUMNS,
    FITS_COLUMNS,
    LOG_BIN_RATIO,
    NCP_COLUMNS,
    NCP_DIP_COLUMNS,
    OCCUPANCY_COLUMNS,
    SCHEMAS,
    SCHEMA_MISSING_COLUMN,
    SCHEMA_UNKNOWN,
)
from src.conf.errors import SchemaMismatchError
from src.conf.logger import logger
from src.repository.abstract import AbstractArtifactRepo
from src.schemas.metrics import DegreeHistogram, DiameterReport, NcpCurve, NcpDip, SlopeFit
from src.schemas.oracles import OccupancyHistogram
from src.services.degrees import log_binned


def degrees_table(hist: DegreeHistogram) -> pd.DataFrame:
    degrees, counts = hist.arrays()
    return pd.DataFrame({"degree": degrees, "count": counts}, columns=DEGREES_COLUMNS)


def occupancy_table(hist: OccupancyHistogram) -> pd.DataFrame:
    sizes = sorted(hist.counts)
    return pd.DataFrame(
        {"occupancy": sizes, "cliques": [hist.counts[s] for s in sizes]},
        columns=OCCUPANCY_COLUMNS,
    )


def ncp_table(curve: NcpCurve) -> pd.DataFrame:
    return pd.DataFrame(
        [(b.lo, b.conductance, b.witness_size, b.method) for b in curve.bins],
        columns=NCP_COLUMNS,
    )


def diameter_table(rows: list[tuple[int, DiameterReport]]) -> pd.DataFrame:
    return pd.DataFrame(
        [(size, r.diameter, r.effective_diameter_90) for size, r in rows],
        columns=DIAMETER_COLUMNS,
    )


def densify_table(rows: list[tuple[int, float]]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=DENSIFY_COLUMNS)


def fits_table(rows: list[tuple[str, SlopeFit | None]]) -> pd.DataFrame:
    """
    One row per label; undefined fits keep their label with empty values.

    :param rows: label and fit pairs
    :type rows: list[tuple[str, SlopeFit | None]]
    :return: table with the fits schema
    :rtype: pd.DataFrame
    """
    records = []
    for label, fit in rows:
        if fit is None:
            records.append({"label": label})
            continue
        records.append(
            {
                "label": label,
                "exponent": fit.exponent,
                "intercept": fit.intercept,
                "x_min": fit.x_min,
                "x_max": fit.x_max,
                "residual": fit.residual,
                "r_squared": fit.r_squared,
                "points": fit.points,
                "mle_exponent": fit.mle_exponent,
            }
        )
    return pd.DataFrame.from_records(records, columns=FITS_COLUMNS)


def ncp_dips_table(rows: list[tuple[str, NcpDip]]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            (
                label,
                dip.min_size,
                dip.min_value,
                dip.small_ratio,
                dip.large_ratio,
                dip.spread,
                dip.has_dip(),
                dip.is_flat(),
            )
            for label, dip in rows
        ],
        columns=NCP_DIP_COLUMNS,
    )


def detect_schema(path: Path, frame: pd.DataFrame) -> str:
    """
    Schema of a metrics CSV, from its file name prefix or else its columns.

    :param path: the file
    :type path: Path
    :param frame: its contents
    :type frame: pd.DataFrame
    :return: schema name, a key of ``SCHEMAS``
    :rtype: str
    :raise: SchemaMismatchError naming the first missing column, or if no schema fits
    """
    prefix = path.stem.split("-")[0]
    if prefix in SCHEMAS:
        for column in SCHEMAS[prefix]:
            if column not in frame.columns:
                raise SchemaMismatchError(
                    detail=f"{SCHEMA_MISSING_COLUMN} '{column}': {path.name}"
                )
        return prefix
    for name, columns in SCHEMAS.items():
        if list(frame.columns) == columns:
            return name
    raise SchemaMismatchError(detail=f"{SCHEMA_UNKNOWN}: {path.name}")


def _labels(paths: list[Path]) -> list[str]:
    stems = [p.stem for p in paths]
    return [
        p.stem if stems.count(p.stem) == 1 else f"{p.parent.name}-{p.stem}" for p in paths
    ]


def _log10(values: pd.Series) -> np.ndarray:
    values = values.to_numpy(dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(values > 0, np.log10(values), np.nan)


def _degree_plot(
    labelled: list[tuple[str, pd.DataFrame]], fits: dict[str, SlopeFit], ratio: float
) -> pd.DataFrame:
    merged = None
    for label, frame in labelled:
        hist = DegreeHistogram(
            counts=dict(zip(frame["degree"].astype(int), frame["count"].astype(int))),
            node_count=int(frame["count"].sum()),
            total_degree=int((frame["degree"] * frame["count"]).sum()),
        )
        points = log_binned(hist, ratio)
        table = pd.DataFrame(
            {
                "bin_lo": [p.lo for p in points],
                "bin_hi": [p.hi for p in points],
                "center": [p.center for p in points],
                f"density_{label}": [p.density for p in points],
            }
        )
        merged = table if merged is None else merged.merge(
            table, on=["bin_lo", "bin_hi", "center"], how="outer"
        )
    merged = merged.sort_values("bin_lo").reset_index(drop=True)
    merged.insert(3, "log_center", _log10(merged["center"]))
    for label, _ in labelled:
        merged[f"log_density_{label}"] = _log10(merged[f"density_{label}"])
        if label in fits:
            merged[f"guideline_{label}"] = fits[label].guideline(merged["center"].to_numpy())
    return merged


def _fits_by_label(frames: list[pd.DataFrame]) -> dict[str, SlopeFit]:
    fits = {}
    for frame in frames:
        for row in frame.dropna(subset=["exponent"]).to_dict("records"):
            fits[str(row["label"])] = SlopeFit(
                exponent=row["exponent"],
                intercept=row["intercept"],
                x_min=row["x_min"],
                x_max=row["x_max"],
                residual=row["residual"],
                r_squared=row["r_squared"],
                points=int(row["points"]),
                mle_exponent=None if pd.isna(row["mle_exponent"]) else row["mle_exponent"],
            )
    return fits


def emit_plot_data(
    inputs: list[Path],
    repo: AbstractArtifactRepo | None = None,
    prefix: str = "",
    ratio: float = LOG_BIN_RATIO,
) -> dict[str, pd.DataFrame]:
    """
    Merge metric CSVs into one log-log table per schema.

    Degree CSVs share log-bin centers, one density column per input, plus a guideline
    column wherever a fits CSV among the inputs has a row labelled like the degree file.
    Other schemas are stacked with a ``source`` column and log10 columns.

    :param inputs: metric CSV files
    :type inputs: list[Path]
    :param repo: where to write ``<prefix><schema>.csv``, nothing is written when omitted
    :type repo: AbstractArtifactRepo | None
    :param prefix: path prefix of the written tables inside the repository
    :type prefix: str
    :param ratio: log-bin ratio for degree tables
    :type ratio: float
    :return: tables by schema name
    :rtype: dict[str, pd.DataFrame]
    :raise: SchemaMismatchError if an input matches no schema
    """
    paths = [Path(p) for p in inputs]
    grouped: dict[str, list[tuple[str, pd.DataFrame]]] = {}
    for path, label in zip(paths, _labels(paths)):
        frame = pd.read_csv(path)
        grouped.setdefault(detect_schema(path, frame), []).append((label, frame))

    tables = {}
    fits = _fits_by_label([frame for _, frame in grouped.pop("fits", [])])
    if "degrees" in grouped:
        tables["degrees"] = _degree_plot(grouped.pop("degrees"), fits, ratio)
    for schema, labelled in grouped.items():
        stacked = pd.concat(
            [frame.assign(source=label) for label, frame in labelled], ignore_index=True
        )
        x_column, y_column = SCHEMAS[schema][0], SCHEMAS[schema][1]
        stacked[f"log_{x_column}"] = _log10(stacked[x_column])
        stacked[f"log_{y_column}"] = _log10(stacked[y_column])
        tables[schema] = stacked

    if repo is not None:
        for schema, table in tables.items():
            repo.write_table(f"{prefix}{schema}.csv", table)
    logger.debug(f"Plot tables {sorted(tables)} from {len(paths)} inputs")
    return tables
