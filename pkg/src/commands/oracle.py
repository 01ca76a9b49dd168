import argparse
from pathlib import Path

import pandas as pd

from src.conf.constants import (
    CLIQUISH_CSV,
    DEGREES_CSV,
    EXIT_FLAGGED,
    EXIT_OK,
    FITS_CSV,
    NCP_COLUMNS,
    NCP_CSV,
    OCCUPANCY_CSV,
    YULE_CSV,
)
from src.conf.logger import logger
from src.dependencies import get_artifact_repository
from src.graph.edge_list import read_edge_list
from src.schemas.oracles import OccupancyHistogram, YuleParams
from src.services.oracles import exhaustive_min_conductance, pcm_theorem_check, yule_process
from src.services.plot_data import degrees_table, fits_table, occupancy_table
from src.services.seeding import run_seed


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("oracle", help="Reference computations.")
    oracles = parser.add_subparsers(dest="oracle", required=True)

    yule = oracles.add_parser("yule", help="Genus sizes of the species/genus growth process.")
    yule.add_argument("--alpha", type=float, required=True, help="New-genus probability.")
    yule.add_argument("--steps", type=int, required=True)
    yule.add_argument("--runs", type=int, default=1)
    yule.add_argument("--seed", type=int, default=0)
    yule.add_argument("--out", type=Path, required=True)
    yule.set_defaults(handler=run_yule)

    occupancy = oracles.add_parser(
        "occupancy", help="Clique occupancy of RETIG on planted clique graphs."
    )
    occupancy.add_argument("--n", type=int, required=True)
    occupancy.add_argument("--k", type=int, required=True)
    occupancy.add_argument("--r", type=float, required=True)
    occupancy.add_argument("--m", type=int, required=True)
    occupancy.add_argument("--runs", type=int, default=1)
    occupancy.add_argument("--seed", type=int, default=0)
    occupancy.add_argument("--out", type=Path, required=True)
    occupancy.set_defaults(handler=run_occupancy)

    exact = oracles.add_parser("exact-ncp", help="Exact minimum conductance of every size.")
    exact.add_argument("--graph", type=Path, required=True)
    exact.add_argument("--out", type=Path, required=True)
    exact.set_defaults(handler=run_exact_ncp)


def run_yule(args: argparse.Namespace) -> int:
    genera = OccupancyHistogram(runs=0)
    for i in range(args.runs):
        params = YuleParams(alpha_yule=args.alpha, steps=args.steps, seed=run_seed(args.seed, i))
        genera = genera.merge(yule_process(params))
    repo = get_artifact_repository(args.out)
    repo.write_table(YULE_CSV, occupancy_table(genera))
    logger.info(f"{genera.groups} genera written to {args.out}")
    return EXIT_OK


def run_occupancy(args: argparse.Namespace) -> int:
    """
    Aggregate RETIG runs on planted clique graphs and compare with the growth process.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code, flagged when any run stalled
    :rtype: int
    """
    report = pcm_theorem_check(args.n, args.k, args.r, args.m, args.runs, args.seed)
    repo = get_artifact_repository(args.out)
    repo.write_model("theorem.json", report)
    repo.write_table(OCCUPANCY_CSV, occupancy_table(report.occupancy))
    repo.write_table(YULE_CSV, occupancy_table(report.genus_sizes))
    repo.write_table(CLIQUISH_CSV, degrees_table(report.cliquish))
    repo.write_table(DEGREES_CSV, degrees_table(report.total))
    repo.write_table(
        FITS_CSV,
        fits_table([("cliquish-degrees", report.cliquish_fit), ("degrees", report.total_fit)]),
    )
    logger.info(
        f"TV distance {report.tv_distance:.4f}, predicted exponent {report.predicted_exponent}"
    )
    return EXIT_FLAGGED if report.stalled_runs else EXIT_OK


def run_exact_ncp(args: argparse.Namespace) -> int:
    """
    Exhaustive profile for sizes up to half the graph, in the ncp.csv schema.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code
    :rtype: int
    """
    g = read_edge_list(args.graph)
    rows = []
    for size in range(1, g.node_count // 2 + 1):
        value, witness = exhaustive_min_conductance(g, size)
        rows.append((size, float(value), witness.size, "exhaustive"))
    repo = get_artifact_repository(args.out)
    repo.write_table(NCP_CSV, pd.DataFrame(rows, columns=NCP_COLUMNS))
    logger.info(f"Exact profile of {g!r} written to {args.out}")
    return EXIT_OK
