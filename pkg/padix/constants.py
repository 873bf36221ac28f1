from pathlib import Path

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])

CONF_PATH = Path("conf")
CONFIG_FILE_STEM = "padix"
CONFIG_EXTENSIONS = ["json", "yml", "yaml", "json.j2", "yaml.j2", "yml.j2"]

DEFAULT_PRIME = 3

SUITE_CHOICES = ["ops", "gauss", "mellin", "lambda", "epsilon", "all"]
OUTPUT_FORMATS = ["json", "csv"]

DEFAULT_PRECISION = 20
MINIMAL_PRECISION = 4
DEFAULT_M_DELTA = 1

# extra p-adic digits carried by intermediate computations on top of the requested precision
GUARD_DIGITS = 3

# hard cap on the number of Mahler coefficients computed by the oracle
MAHLER_HARD_CAP = 20000

OUTSIDE_DOMAIN_MARKER = "outside U_D"

CSV_HEADER = ["char", "component", "value", "certified_mod"]
CSV_DELIMITER = ";"

EXIT_IDENTITY_FAILURE = 1

# number of radii 1/(p^j (p - 1)), j = 0, 1, ..., at which series error bounds are tracked
RADIUS_GRID_SIZE = 10

# largest exponent span converted to the T basis with dense binomial rows
DENSE_SPAN_LIMIT = 50000

# identity suites of `padix verify`
SUITE_SEED = 4217
OPS_SAMPLES = 100
OPS_DEGREE = 400
COLEMAN_FIXED_POINT_SPAN = 400
MELLIN_CHECK_PRECISION = 15
LAMBDA_CHECK_PRECISION = 8
