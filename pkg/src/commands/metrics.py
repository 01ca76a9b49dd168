import argparse
from pathlib import Path

from src.conf.constants import (
    DEGREES_CSV,
    DIAMETER_CSV,
    EXIT_OK,
    FITS_CSV,
    LOG_BIN_RATIO,
    NCP_CSV,
    NCP_DIPS_CSV,
    NCP_SCOPE_LARGEST,
    NCP_SCOPE_WHOLE,
)
from src.conf.errors import FitUndefinedError
from src.conf.logger import logger
from src.dependencies import get_artifact_repository
from src.graph.core import induced_subgraph
from src.graph.edge_list import read_edge_list
from src.schemas.metrics import NcpConfig
from src.services.degrees import degree_distribution, fit_power_law_slope, log_binned
from src.services.diameter import diameter, largest_component
from src.services.ncp import ncp_dip, ncp_heuristic
from src.services.plot_data import (
    degrees_table,
    diameter_table,
    fits_table,
    ncp_dips_table,
    ncp_table,
)


def fit_range(text: str) -> tuple[float, float]:
    low, high = text.split(",")
    return float(low), float(high)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("metrics", help="Measure an edge list.")
    parser.add_argument("--graph", type=Path, required=True)
    parser.add_argument("--degrees", action="store_true", help="Write degrees.csv.")
    parser.add_argument("--fit-range", type=fit_range, default=None, help="e.g. 10,1000")
    parser.add_argument("--log-bin-ratio", type=float, default=LOG_BIN_RATIO)
    parser.add_argument("--diameter", default=None, help="exact or sampled:<k>")
    parser.add_argument("--ncp", action="store_true", help="Write ncp.csv.")
    parser.add_argument(
        "--ncp-scope", choices=[NCP_SCOPE_LARGEST, NCP_SCOPE_WHOLE], default=NCP_SCOPE_LARGEST
    )
    parser.add_argument("--ncp-seeds", type=int, default=None, help="Spectral sweep seed count.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=Path, required=True, help="Directory of the CSVs.")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Compute the selected metrics of one edge list.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code
    :rtype: int
    """
    g = read_edge_list(args.graph)
    repo = get_artifact_repository(args.out)

    if args.degrees or args.fit_range:
        hist = degree_distribution(g)
        repo.write_table(DEGREES_CSV, degrees_table(hist))
        if args.fit_range:
            try:
                fit = fit_power_law_slope(log_binned(hist, args.log_bin_ratio), args.fit_range, hist)
            except FitUndefinedError as e:
                logger.warning(f"Fit undefined: {e.detail}")
                fit = None
            repo.write_table(FITS_CSV, fits_table([("degrees", fit)]))

    if args.diameter:
        report = diameter(g, args.diameter, args.seed)
        repo.write_table(DIAMETER_CSV, diameter_table([(g.node_count, report)]))

    if args.ncp:
        target = g
        if args.ncp_scope == NCP_SCOPE_LARGEST:
            target, _ = induced_subgraph(g, largest_component(g))
        overrides = {"seed": args.seed}
        if args.ncp_seeds is not None:
            overrides["seed_count"] = args.ncp_seeds
        config = NcpConfig(**overrides)
        curve = ncp_heuristic(target, config, scope=args.ncp_scope)
        repo.write_table(NCP_CSV, ncp_table(curve))
        if curve.bins:
            repo.write_table(NCP_DIPS_CSV, ncp_dips_table([("ncp", ncp_dip(curve))]))

    logger.info(f"Wrote {', '.join(repo.files) or 'nothing'} to {args.out}")
    return EXIT_OK
