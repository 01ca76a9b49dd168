import argparse
from pathlib import Path

from src.conf.constants import DENSIFY_CSV, EXIT_FLAGGED, EXIT_OK, GRAPH_REQUIRED
from src.conf.errors import ParameterError
from src.conf.logger import logger
from src.dependencies import (
    get_artifact_repository,
    get_burn_distribution,
    get_cascade_engine,
)
from src.graph.edge_list import read_edge_list
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotSchedule
from src.services.cascades import assert_containment
from src.services.diameter import densification_series
from src.services.forest_fire import forest_fire, growth_snapshots
from src.services.plot_data import densify_table


def checkpoints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("cascade", help="Spread a cascade over a potential network.")
    parser.add_argument("--model", required=True, choices=[m.value for m in CascadeModel])
    parser.add_argument("--graph", type=Path, help="Potential network edge list (not for forestfire).")
    parser.add_argument("--m", type=int, required=True, help="Target infected count.")
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--beta", type=float, default=None)
    parser.add_argument("--gamma", type=float, default=None)
    parser.add_argument("--s", type=int, default=None, help="Number of initial seeds.")
    parser.add_argument("--p", type=float, default=None, help="Forest Fire burning probability.")
    parser.add_argument("--burn", choices=["geometric", "binomial"], default="geometric")
    parser.add_argument("--burn-trials", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--snapshots", type=checkpoints, default=None, help="e.g. 625,5000,80000")
    parser.add_argument("--out-dir", type=Path, required=True)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Run one cascade and write every snapshot with its vertex map and sidecar.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code, flagged when the cascade stalled
    :rtype: int
    """
    fields = {"model": args.model, "m": args.m}
    for name in ("alpha", "beta", "gamma", "s", "p"):
        if getattr(args, name) is not None:
            fields[name] = getattr(args, name)
    params = CascadeParams(**fields)
    schedule = SnapshotSchedule(checkpoints=args.snapshots or [params.m])
    repo = get_artifact_repository(args.out_dir)

    stalled = False
    if params.model == CascadeModel.FOREST_FIRE:
        burn = get_burn_distribution(args.burn, params.p, args.burn_trials)
        grown = forest_fire(params.m, params.p, args.seed, burn)
        snapshots = growth_snapshots(grown, schedule, params, args.seed)
    else:
        if args.graph is None:
            raise ParameterError(detail=GRAPH_REQUIRED)
        g = read_edge_list(args.graph)
        result = get_cascade_engine(g, params, args.seed).run(schedule)
        snapshots = result.snapshots
        for snapshot in snapshots:
            assert_containment(g, snapshot)
        if result.stalled:
            stalled = True
            repo.write_snapshot("partial", result.partial)

    for snapshot in snapshots:
        repo.write_snapshot(f"snapshot-{snapshot.checkpoint}", snapshot)
    if snapshots:
        repo.write_table(DENSIFY_CSV, densify_table(densification_series(snapshots)))
    logger.info(f"Wrote {len(repo.files)} files to {args.out_dir}")
    return EXIT_FLAGGED if stalled else EXIT_OK
