"""Runtime caps for the enumerative code paths.

Caps are configuration, not contract constants: the HYPERLAB_MAX_N
environment variable overrides the enumeration caps at import time, and every
capped operation also accepts an explicit override argument.
"""

import os
from dataclasses import dataclass


@dataclass
class Caps:
    # full subset enumeration (2^n - 1 members)
    enumerate_n: int = 20
    # exhaustive all-subset-pair scans at base and set level
    exhaustive_pairs_n: int = 10
    # members of a materialized hyperspace view
    members: int = 4096
    # full O(m^3) triangle validation of materialized tables is skipped
    # above this member count unless explicitly requested
    validate_members: int = 400


def _from_env() -> Caps:
    caps = Caps()
    raw = os.environ.get("HYPERLAB_MAX_N")
    if raw is not None:
        n = int(raw)
        caps.enumerate_n = n
        caps.exhaustive_pairs_n = n
    return caps


CAPS = _from_env()
