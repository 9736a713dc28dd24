"""Seeded random streams.

All randomness goes through numpy's PCG64 bit generator.  Gaussian samples
are produced with the Box-Muller transform on the generator's uniform
doubles rather than numpy's ziggurat sampler, so the values depend only on
the documented PCG64 stream and a closed-form transform.
"""

import math

import numpy as np


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def box_muller(rng, mean, sigma, size):
    """Draw ``size`` normal variates from uniform draws of ``rng``."""
    out = []
    while len(out) < size:
        u1, u2 = rng.random(2)
        # 1 - u keeps the log argument in (0, 1]
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        out.append(r * math.cos(2.0 * math.pi * u2))
        out.append(r * math.sin(2.0 * math.pi * u2))
    return [mean + sigma * z for z in out[:size]]
