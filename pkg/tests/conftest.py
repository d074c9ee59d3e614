import sys
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from rimhook.plancherel import parallel_color_lis  # noqa: E402

MC_N = 2000
MC_SAMPLES = 10_000
MC_SEED = 20260101


@lru_cache(maxsize=None)
def desk_scale_lengths(m: int):
    """Per-color LIS lengths at n=2000, 10^4 draws; shared across test modules."""
    return parallel_color_lis(MC_N, m, MC_SAMPLES, MC_SEED + m)
