"""Counter-based random generator keyed only by the seed.

Philox streams are splittable and platform-stable, so identical seeds
reproduce bit-identical spaces, subsets and scan orders everywhere.
"""

import numpy as np


def philox(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))
