"""Deterministic 64-bit pseudo-random streams.

The generator is counter-based splitmix64: draw ``i`` of stream ``seed`` is
``finalize(seed + (i+1) * GOLDEN)`` where ``finalize`` is the splitmix64
output mix (xor-shift / multiply twice).  Being a pure function of
(seed, index) it vectorizes cleanly and needs no carried state.  Sub-seeds
for derived streams come from :func:`mix64`.

Within one build the streams are bitwise reproducible; cross-platform
bit-equality of the Gaussian variates is not promised (libm differences).
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def _finalize(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK
    return z ^ (z >> 31)


def mix64(seed: int, salt: int) -> int:
    """Derive a sub-seed from (seed, salt); splitmix64 step then finalize."""
    return _finalize((seed + (salt + 1) * _GOLDEN) & _MASK)


def uniforms(seed: int, count: int) -> np.ndarray:
    """``count`` doubles in (0, 1], from the counter-based stream ``seed``."""
    if count == 0:
        return np.zeros(0)
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = (np.uint64(seed & _MASK) + idx * np.uint64(_GOLDEN)).astype(np.uint64)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX_A)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX_B)
    z ^= z >> np.uint64(31)
    # top 53 bits, shifted into (0, 1]
    return ((z >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53


def standard_normals(seed: int, count: int) -> np.ndarray:
    """``count`` standard normal deviates via Box-Muller over two uniform
    streams derived from ``seed``."""
    pairs = (count + 1) // 2
    u1 = uniforms(mix64(seed, 0), pairs)
    u2 = uniforms(mix64(seed, 1), pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    out = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])
    return out[:count]
