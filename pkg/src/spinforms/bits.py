"""Bit-index utilities for flat state vectors labeled MSB-first (qubit 1 leftmost)."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

# Exact powers of i, indexed by exponent mod 4.  Multiplying by these is a
# sign/swap operation in IEEE arithmetic, so phase factors never accumulate
# rounding error.
_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)

_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


def i_power(m: int) -> complex:
    """i**m, exact, via mod-4 lookup."""
    return _I_POW[m % 4]


def minus_i_power(m: int) -> complex:
    """(-i)**m, exact, via mod-4 lookup."""
    return _I_POW[(-m) % 4]


def popcount(values) -> np.ndarray:
    """Set-bit count of nonnegative integers below 2**32."""
    x = np.asarray(values, dtype=np.uint32)
    return (_POPCOUNT16[x & np.uint32(0xFFFF)] + _POPCOUNT16[x >> np.uint32(16)]).astype(np.int64)


def parity_signs(n: int) -> np.ndarray:
    """(-1)**popcount(k) for every flat index k in [0, 2**n)."""
    k = np.arange(1 << n, dtype=np.uint32)
    return 1.0 - 2.0 * (popcount(k) & 1)


def complement(k, n: int):
    """Bitwise complement within n bits: every qubit label flipped."""
    return ((1 << n) - 1) ^ k


def index_to_bits(k: int, n: int) -> tuple[int, ...]:
    """Bit label (j_1, ..., j_n) of flat index k; j_1 is the most significant bit."""
    if not 0 <= k < (1 << n):
        raise ValueError(f"index {k} out of range for {n} qubits")
    return tuple((k >> (n - 1 - i)) & 1 for i in range(n))


def bits_to_index(bits: Sequence[int]) -> int:
    """Flat index of a bit label, first bit most significant."""
    k = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bit label entries must be 0 or 1, got {b}")
        k = (k << 1) | b
    return k
