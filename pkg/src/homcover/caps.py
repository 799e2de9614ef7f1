"""Default resource caps.

Every cap is overridable per call; the closure cap additionally honors the
HOMCOVER_MAX_CLOSURE environment variable.
"""

import os

# Largest group order construct_group will tabulate.
ORDER_CAP = 20_000

# Largest element count a tuple-subgroup closure may reach.
CLOSURE_CAP = 1 << 22

# Hard ceiling on |G|^n candidate tuples for any enumeration.
CANDIDATE_CAP = 10**9

# Above this many candidate tuples, counting switches from streaming
# enumeration to the subgroup-lattice transition count.
STREAM_CAP = 300_000

# Largest |G| for which the full subgroup lattice is computed.
LATTICE_ORDER_CAP = 400

# Groups at or below this order get a dense multiplication table built
# on demand for analysis, whatever their native backend.
ANALYSIS_TABLE_CAP = 1024

# Largest automorphism group materialized as explicit permutations.
AUT_MATERIALIZE_CAP = 100_000


def closure_cap(override=None):
    """Effective closure cap: explicit override, else env var, else default."""
    if override is not None:
        return override
    env = os.environ.get("HOMCOVER_MAX_CLOSURE")
    if env:
        return int(env)
    return CLOSURE_CAP
