"""Constants for geodesic-crossings.

All tolerances and numeric defaults centralized here.
Per-run parameters are passed via ExperimentConfig.
"""

import math

# Tool identity (written into every artifact header)
TOOL_NAME = "geodesic-crossings"

# Geometric tolerances
NORM_EPS = 1e-12  # |x²+y²+z² - 1| for a UnitVec
SIGN_EPS = 1e-12  # sign tests of the crossing predicate
PLANE_EPS = 1e-10  # point_on_arc distance to the great-circle plane
DEGENERATE_EPS = 1e-12  # |a×b| of a segment
GENERAL_POSITION_EPS = 1e-12
ANGLE_SUM_TOL = 1e-12

# Blow-up tolerance scale: eps = min(GENERAL_POSITION_EPS, scale·sin(r)²·(π/n)³)
BLOWUP_EPS_SCALE = 1e-3

# Rotation offsets
GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
GOLDEN_ANGLE = 2 * math.pi * (1 - 1 / GOLDEN_RATIO)  # ~2.39996 rad

# Default circle radius for the r << 1/n regime: min(cap, 1/(10n))
DEFAULT_RADIUS_CAP = 1e-3

# Blow-up node order and names
NODE_COUNT = 8
NODE_LABELS = ("v1", "v1_bar", "v2", "v2_bar", "w1", "w1_bar", "w2", "w2_bar")


# Sampling
REJECTION_FACTOR = 100  # TooManyRejections after REJECTION_FACTOR·n redraws
SAMPLE_CHUNK = 65536  # samples per RNG stream in Monte-Carlo estimation
CONFIDENCE_Z = 4.0
MAX_PATTERN_VERTICES = 8
MAX_EXACT_PATTERN_VERTICES = 3

# Random base configurations
CONFIG_MAX_ATTEMPTS = 1000
CONFIG_MIN_SEPARATION = 0.05  # radians between node centers

# Default sweep family
SWEEP_STEPS = 20
SWEEP_EPSILON = 0.01

# Reserved RNG stream ids for CLI-derived objects
CONFIG_STREAM = 0xC0FF
DRAWING_STREAM = 0xD2A

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

# Edges with (nearly) antipodal endpoints never cross;
# measured as min |p+q|²/2 over the four cross-edge endpoint pairs
ANTIPODAL_ENDPOINT_EPS = 1e-9
