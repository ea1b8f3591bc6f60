"""Constantes de la aplicación"""

# Códigos de salida de la CLI
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3

# Tolerancias numéricas
ZERO_COEFFICIENT_TOL = 1e-12
UNIFORM_GRID_RTOL = 1e-9
COTH_LAURENT_THRESHOLD = 1e-3
POLE_GUARD_RAD = 0.05
CONSISTENCY_RTOL = 1e-6
GAUSS_LEGENDRE_NODES = 16
EULER_AVERAGING_DEPTH = 24
NEAR_FIELD_QUAD_LIMIT = 2000
ENVELOPE_SKIP_PEAKS = 2
MIN_FIT_POINTS = 5
MIN_ENVELOPE_POINTS = 3
MIN_STENCIL_POINTS = 5
MIN_CHAIN_SITES = 2

# Formato de resultados
CSV_COLUMNS = ("t", "j_t", "j_ti", "e_t", "e_ti")
FLAGS_COLUMN = "flags"
DIVERGENT_TOKEN = "DIVERGENT"
FLOAT_FORMAT = "%.17e"
METADATA_PREFIX = "# "
SWEEP_INDEX_NAME = "index.json"

# Mensajes de error comunes
ERROR_NON_FINITE = "Input contains non-finite values"
ERROR_OFFDIAGONAL_LENGTH = "Off-diagonal must have exactly one entry less than the diagonal"
ERROR_BESSEL_ORDER = "Bessel order must be a nonnegative integer"
ERROR_TOO_FEW_POINTS = "Not enough points: need at least {minimum}, got {actual}"
ERROR_NON_UNIFORM_GRID = "Time grid must be uniform"
ERROR_NON_POSITIVE_VALUES = "Envelope values must be strictly positive"
ERROR_EMPTY_WINDOW = "Fit window must satisfy t_min < t_max"
ERROR_NEGATIVE_FREQUENCY = "Frequency must be nonnegative"
ERROR_MISSING_BETA = "Kernel {kind} needs an inverse temperature"
ERROR_SITE_INDEX = "Site index out of range 1..{n_sites}"
ERROR_CHAIN_SIZE = "Chain needs at least two sites"
ERROR_BATH_MISMATCH = "Formula requires a {expected} bath, got {actual}"
ERROR_CHAIN_MISMATCH = "Formula requires a {expected} chain, got {actual}"
ERROR_OSCILLATION_SIZE = "Oscillating current formula is undefined for N < 4"
ERROR_POLE_PROXIMITY = "Evaluation point within {guard} rad of a tangent pole"
ERROR_NON_CONVERGENT = "Regulated quadrature did not converge: extrapolants differ by {spread:.3e}"
ERROR_INCREASING_GRID = "Time grid must be strictly increasing"
ERROR_CONFIG_NOT_FOUND = "Config file not found: {path}"
ERROR_CONFIG_DECODE = "Config file is not valid JSON: {detail}"
ERROR_UNKNOWN_COLUMN = "Column {column} not present in {path}"
ERROR_DIVERGENT_COLUMN = "Column {column} is divergent and cannot be fitted"
ERROR_NON_NUMERIC_COLUMN = "Column {column} in {path} holds a non-numeric cell: {detail}"
