import argparse
from pathlib import Path

from src.conf.constants import EXIT_OK, GENERATOR_MODELS
from src.conf.logger import logger
from src.graph.edge_list import write_edge_list
from src.schemas.generators import GeneratorParams
from src.services.generators import generate


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("generate", help="Generate a potential network.")
    parser.add_argument("--model", required=True, choices=GENERATOR_MODELS)
    parser.add_argument("--n", type=int, required=True, help="Number of vertices.")
    parser.add_argument("--d", type=int, default=0, help="Mean degree (clique size for pc).")
    parser.add_argument("--k", type=int, default=None, help="Clique size (pcm only).")
    parser.add_argument("--r", type=float, default=None, help="Rewiring or random-degree ratio.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=Path, required=True, help="Edge list to write.")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Generate a graph and write it as an edge list.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code
    :rtype: int
    """
    fields = {"model": args.model, "n": args.n, "d": args.d, "k": args.k, "seed": args.seed}
    if args.r is not None:
        fields["r"] = args.r
    params = GeneratorParams(**fields)
    g = generate(params)
    write_edge_list(g, args.out, [f"{name}={value}" for name, value in params.model_dump().items()])
    logger.info(f"Wrote {g!r} to {args.out}")
    return EXIT_OK
