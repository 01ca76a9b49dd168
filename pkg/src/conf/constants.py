"""
Set of constants used in the project.
"""

# transmission defaults
DEFAULT_ALPHA = 0.7
DEFAULT_BETA = 0.01
DEFAULT_GAMMA = 0.001
DEFAULT_SEEDS = 1
DEFAULT_BURN_PROBABILITY = 0.5
DEFAULT_REWIRING = 0.1
DEFAULT_SNAPSHOTS = [625, 5000, 80000]

MODEL_WS = "ws"
MODEL_PC = "pc"
MODEL_PCM = "pcm"
MODEL_ER = "er"
MODEL_PA = "pa"
MODEL_COMPLETE = "complete"
GENERATOR_MODELS = [MODEL_WS, MODEL_PC, MODEL_PCM, MODEL_ER, MODEL_PA, MODEL_COMPLETE]
BASELINE_KINDS = {
    MODEL_ER: "erdos_renyi",
    MODEL_PA: "preferential_attachment",
    MODEL_COMPLETE: "complete",
}

RANDOM_REGULAR_MAX_RESTARTS = 50
RANDOM_REGULAR_MAX_REPAIRS = 200

# metrics
LOG_BIN_RATIO = 1.5
NCP_BIN_RATIO = 1.1
NCP_SEED_COUNT = 40
NCP_TELEPORTS = [0.1, 0.03, 0.01]
NCP_PUSH_TOLERANCE = 1e-4
NCP_MAX_WHISKER_UNIONS = 500
NCP_SCOPE_WHOLE = "whole"
NCP_SCOPE_LARGEST = "largest_component"
NCP_DIP_FACTOR = 5.0
NCP_FLAT_FACTOR = 3.0
EFFECTIVE_DIAMETER_QUANTILE = 0.9
DIAMETER_EXACT = "exact"
DIAMETER_SAMPLED = "sampled"
BFS_CHUNK = 64

EXHAUSTIVE_NODE_LIMIT = 20

# messages
ENDPOINT_OUT_OF_RANGE = "Edge endpoint out of range"
SELF_LOOP_NOT_ALLOWED = "Self-loops are not allowed in a simple graph"
NEGATIVE_NODE_COUNT = "Node count must be non-negative"
VERTEX_OUT_OF_RANGE = "Vertex set member out of range"
VERTEX_SET_GRAPH_MISMATCH = "Vertex set refers to a graph of a different size"
ASYMMETRIC_ADJACENCY = "Adjacency is not symmetric"
EDGE_COUNT_MISMATCH = "Edge count does not match the degree sum"
NEIGHBOURS_NOT_SORTED = "Neighbour lists must be strictly sorted"
MALFORMED_EDGE_LINE = "Malformed edge on line"

WS_DEGREE_NOT_EVEN = "Watts-Strogatz requires an even degree d >= 2"
WS_DEGREE_TOO_LARGE = "Watts-Strogatz requires d < n"
PC_DEGREE_NOT_DIVISOR = "Planted community requires d >= 2 dividing n"
PCM_CLIQUE_NOT_DIVISOR = "Planted clique model requires k dividing n"
PCM_RK_NOT_INTEGRAL = "Planted clique model requires r*k to be a non-negative integer"
PCM_RK_TOO_LARGE = "Planted clique model requires r*k < n"
REGULAR_ODD_STUBS = "Random regular graph requires n*d to be even"
REGULAR_DEGREE_TOO_LARGE = "Random regular graph requires 0 <= d < n"
REGULAR_PAIRING_FAILED = "Stub pairing failed after the restart bound"
BASELINE_INVALID_DEGREE = "Baseline degree is invalid for the chosen family"
UNKNOWN_GENERATOR = "Unknown generator model"
PROBABILITY_OUT_OF_RANGE = "Probabilities must lie in [0, 1]"

TARGET_TOO_LARGE = "Target infected count exceeds the number of vertices"
TARGET_TOO_SMALL = "Target infected count must be at least the number of seeds"
SEEDS_REQUIRE_RET = "Only RET/RETMIV accept more than one initial seed"
CASCADE_STALLED = "Cascade stalled before reaching its target size"
SCHEDULE_NOT_INCREASING = "Snapshot checkpoints must be strictly increasing"
SCHEDULE_EXCEEDS_TARGET = "Last snapshot checkpoint exceeds the target size"
BURN_PROBABILITY_OUT_OF_RANGE = "Forest Fire requires 0 <= p < 1"
BURN_TRIALS_TOO_SMALL = "Binomial burn needs at least as many trials as its mean"
CONTAINMENT_VIOLATED = "Contagious network holds an edge absent from the potential graph"
UNKNOWN_CASCADE_MODEL = "Unknown cascade model"
GRAPH_REQUIRED = "A potential network is required unless the model is forestfire"

FIT_TOO_FEW_POINTS = "Power-law fit needs at least 3 non-empty bins in range"
FIT_SINGLE_DEGREE = "Power-law fit is undefined for a single distinct degree"
FIT_BAD_RANGE = "Fit range must satisfy 1 <= x_min < x_max"
LOG_BIN_BAD_RATIO = "Log-bin ratio must be greater than 1"
EMPTY_GRAPH = "Graph has no vertices"
DIAMETER_BAD_MODE = "Diameter mode must be 'exact' or 'sampled:<k>' with k >= 1"
CONDUCTANCE_TRIVIAL_SET = "Conductance needs a non-empty proper vertex subset"
CONDUCTANCE_ZERO_VOLUME = "Conductance is undefined when a side has zero degree"
ENUMERATION_TOO_LARGE = (
    f"Exhaustive enumeration is limited to {EXHAUSTIVE_NODE_LIMIT} vertices"
)
ENUMERATION_BAD_SIZE = "Subset size must lie in [1, n - 1]"
PARTITION_MISMATCH = "Partition does not cover the vertices of the infected set"
YULE_BAD_ALPHA = "Yule new-genus probability must lie in (0, 1]"
POWER_LAW_BAD_EXPONENT = "Power-law exponent magnitude must exceed 1"

CONFIG_INVALID = "Experiment config is invalid"
CONFIG_NOT_FOUND = "Experiment config not found"
CONFIG_REQUIRED = "An experiment config is required: pass --config"
SCHEMA_MISSING_COLUMN = "CSV is missing column"
SCHEMA_UNKNOWN = "CSV does not match any metrics schema"

# artifacts
RNG_ALGORITHM = "numpy.PCG64"
MANIFEST_FILE = "manifest.json"
EDGE_LIST_SUFFIX = ".edges"
VERTEX_MAP_SUFFIX = ".vertices"
SIDECAR_SUFFIX = ".json"
RUN_DIR_TEMPLATE = "run-{index:03d}"
AGGREGATE_DIR = "aggregate"
PLOTS_DIR = "plots"
FLOAT_FORMAT = "%.10g"

DEGREES_CSV = "degrees.csv"
NCP_CSV = "ncp.csv"
DIAMETER_CSV = "diameter.csv"
DENSIFY_CSV = "densify.csv"
FITS_CSV = "fits.csv"
OCCUPANCY_CSV = "occupancy.csv"
THEOREM_CSV = "theorem.csv"
YULE_CSV = "yule.csv"
NCP_DIPS_CSV = "dips.csv"
CLIQUISH_CSV = "cliquish-degrees.csv"
CLUSTERING_CSV = "clustering.csv"

DEGREES_COLUMNS = ["degree", "count"]
NCP_COLUMNS = ["bin_size", "conductance", "witness_size", "method"]
DIAMETER_COLUMNS = ["size", "diameter", "effective_diameter_90"]
DENSIFY_COLUMNS = ["size", "avg_degree"]
OCCUPANCY_COLUMNS = ["occupancy", "cliques"]
FITS_COLUMNS = [
    "label",
    "exponent",
    "intercept",
    "x_min",
    "x_max",
    "residual",
    "r_squared",
    "points",
    "mle_exponent",
]
NCP_DIP_COLUMNS = [
    "label",
    "min_size",
    "min_value",
    "small_ratio",
    "large_ratio",
    "spread",
    "has_dip",
    "is_flat",
]
SCHEMAS = {
    "degrees": DEGREES_COLUMNS,
    "ncp": NCP_COLUMNS,
    "diameter": DIAMETER_COLUMNS,
    "densify": DENSIFY_COLUMNS,
    "occupancy": OCCUPANCY_COLUMNS,
    "fits": FITS_COLUMNS,
}

EXIT_OK = 0
EXIT_FLAGGED = 1
EXIT_INVALID = 2
EXIT_ERROR = 3
