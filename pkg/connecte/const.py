"""
Constants
"""

# Parameter groups, in checkpoint/initialization order
PARAM_GROUPS = ("E", "T", "R_star", "R_circ", "M")

MODE_E2T = "e2t"
MODE_COMPOSITE = "composite"
MODES = (MODE_E2T, MODE_COMPOSITE)

INIT_GLOROT = "glorot"
INIT_LITERAL = "literal"
INIT_RULES = (INIT_GLOROT, INIT_LITERAL)

HITS_AT = (1, 3, 10)

MATRIX_MAGIC = b"CONEMAT1"
MATRIX_HEADER_SIZE = 24
CHECKPOINT_FORMAT_VERSION = "1.0"

MANIFEST_FILE = "manifest.json"
RUN_MANIFEST_FILE = "run_manifest.json"
LOSS_HISTORY_FILE = "loss_history.csv"
VOCAB_FILE = "vocab_{kind}.tsv"
MATRIX_FILE = "{group}.bin"

TRIPLES_FILE = "triples.tsv"
TYPES_FILE = "types.tsv"
TYPE_TRIPLES_FILE = "type_triples.tsv"
VALID_TYPES_FILE = "valid_types.tsv"
TEST_TYPES_FILE = "test_types.tsv"

TYPING_REPORT_FILE = "typing_report.json"
RANKS_FILE = "ranks.tsv"
CLASSIFY_REPORT_FILE = "classify_report.json"
PR_CURVE_FILE = "pr_curve.tsv"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3
