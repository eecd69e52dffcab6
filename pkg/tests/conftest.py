"""Shared helpers for the test suite."""

import numpy as np

from boatshape import BoatshapeSpec


def random_boat_spec(rng: np.random.Generator) -> BoatshapeSpec:
    """A random axis-symmetric boat spec guaranteed strictly inside the wedge.

    The contour never exceeds ``a``, so ``a < (eta0_lo + 2) / 2`` keeps the
    whole set clear of the wedge for every abscissa.
    """
    eta0_lo = rng.uniform(-1.8, 6.0)
    eta0_hi = eta0_lo + rng.uniform(0.5, 25.0)
    a = rng.uniform(0.05, 0.45) * (eta0_lo + 2.0)
    b = rng.uniform(0.05, 2.5)
    return BoatshapeSpec(eta0_lo=eta0_lo, eta0_hi=eta0_hi, a=a, b=b, y_c=0.5)
