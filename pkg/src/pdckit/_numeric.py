"""Shared numeric constants derived from closed forms at import time."""

import math


def _sinc_half_point() -> float:
    # positive root of sin(x)/x = 1/2
    lo, hi = 1.0, 3.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if math.sin(mid) / mid > 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


SINC_HALF_POINT = _sinc_half_point()
GAUSS_FWHM_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))
