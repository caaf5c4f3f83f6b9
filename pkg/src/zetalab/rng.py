"""Counter-based deterministic random streams.

Every random quantity in the package is a pure function of
``(seed, stream, index)`` through a splitmix64-style finalizer.  Two
consequences the samplers rely on:

* enlarging a prime schedule never perturbs the angles already drawn for
  existing primes (the prime itself is the stream id);
* estimates are reproducible and independent of any batching or worker
  layout, because nothing is stateful.

The numpy implementations here are the reference; `zetalab.kernels`
re-implements the same mixing inside numba loops.
"""

import numpy as np

# splitmix64 constants
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_STREAM_SALT = np.uint64(0xC2B2AE3D27D4EB4F)

_INV_2_53 = 1.0 / 9007199254740992.0  # 2^-53


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def mix_bits(seed: int, stream, index) -> np.ndarray:
    """64-bit hash of (seed, stream, index); arrays broadcast."""
    s = np.uint64((int(seed) * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF)
    h = _mix(np.asarray(stream, dtype=np.uint64) * _STREAM_SALT + s)
    h = _mix(h ^ (np.asarray(index, dtype=np.uint64) * _GOLDEN + _M2))
    return h


def uniform01(seed: int, stream, index) -> np.ndarray:
    """Uniform doubles in [0, 1) keyed by (seed, stream, index)."""
    return (mix_bits(seed, stream, index) >> np.uint64(11)).astype(np.float64) * _INV_2_53


def uniform(seed: int, stream, index, low: float, high: float) -> np.ndarray:
    return low + (high - low) * uniform01(seed, stream, index)
