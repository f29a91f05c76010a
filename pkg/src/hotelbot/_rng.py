"""Deterministic random streams shared by the compiled and fallback kernel paths.

All stochastic code in this package draws from an explicitly threaded
splitmix64 state (a 1-element uint64 array, mutated in place). That keeps
every episode bit-reproducible from its seed and lets the numba and
pure-python paths produce identical streams: numba relies on wrapping
uint64 arithmetic, the fallback on Python ints masked to 64 bits, and the
two are parity-tested.

Set HOTELBOT_NO_NUMBA=1 before import to disable compilation everywhere.
"""

from __future__ import annotations

import hashlib
import os

import numpy as np

NUMBA_DISABLED = os.environ.get("HOTELBOT_NO_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
}

if NUMBA_DISABLED:

    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit (fallback mode)."""
        if args and callable(args[0]):
            return args[0]

        def deco(func):
            return func

        return deco

else:
    from numba import njit  # noqa: F401


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
# 2^-53: top 53 bits of the output word map to [0, 1)
_U53_INV = 1.0 / 9007199254740992.0


if NUMBA_DISABLED:

    def rng_next(state):
        s = (int(state[0]) + _GOLDEN) & _MASK64
        state[0] = s
        z = ((s ^ (s >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def rng_uniform(state):
        return (rng_next(state) >> 11) * _U53_INV

    def rng_below(state, n):
        return int(rng_next(state) % n)

else:
    _U_GOLDEN = np.uint64(_GOLDEN)
    _U_MIX1 = np.uint64(_MIX1)
    _U_MIX2 = np.uint64(_MIX2)
    _U30 = np.uint64(30)
    _U27 = np.uint64(27)
    _U31 = np.uint64(31)
    _U11 = np.uint64(11)

    @njit(cache=True)
    def rng_next(state):
        state[0] += _U_GOLDEN
        z = state[0]
        z = (z ^ (z >> _U30)) * _U_MIX1
        z = (z ^ (z >> _U27)) * _U_MIX2
        return z ^ (z >> _U31)

    @njit(cache=True)
    def rng_uniform(state):
        return float(rng_next(state) >> _U11) * _U53_INV

    @njit(cache=True)
    def rng_below(state, n):
        # cast: uint64 would unify with int64 to float64 at call sites
        return np.int64(rng_next(state) % np.uint64(n))


def make_state(seed: int) -> np.ndarray:
    """Fresh splitmix64 state array from a 64-bit seed."""
    return np.array([seed & _MASK64], dtype=np.uint64)


class Rng:
    """Thin object wrapper around a splitmix64 state array.

    The raw ``state`` array is what gets handed to kernels; the methods are
    conveniences for python-level call sites so they stay on the same stream.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = make_state(seed)

    def uniform(self) -> float:
        return rng_uniform(self.state)

    def below(self, n: int) -> int:
        return int(rng_below(self.state, n))

    def spawn(self, *tags) -> "Rng":
        """Independent stream derived from this state and a tag tuple."""
        return Rng(derive_seed(int(self.state[0]), *tags))


def derive_seed(*components) -> int:
    """Stable 64-bit hash of a component tuple (seed splitting).

    Floats are encoded via repr so 0.85 hashes identically everywhere;
    the digest is platform-independent (blake2b), unlike builtin hash().
    """
    h = hashlib.blake2b(digest_size=8)
    for c in components:
        h.update(repr(c).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")
