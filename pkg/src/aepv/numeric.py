"""Modular arithmetic substrate: exponentiation with an operation counter,
inverses, Miller-Rabin primality, and uniform sampling from Z_q^*.

Python ints are already arbitrary precision, so group elements and exponents
are plain ints throughout.  Exponentiation goes through :func:`mod_exp` so a
scoped :class:`ExpCounter` can tally how many exponentiations a protocol step
performs; one call ticks the counter once, whatever the exponent size.
Inversions are deliberately not counted as exponentiations.

Randomness is always injected: callers pass a ``random.Random``-compatible
source (``randrange``/``getrandbits``), so everything above this module is
deterministic under a seeded source.  ``default_rng()`` returns an OS-backed
source for non-test use.
"""

from __future__ import annotations

import random

from .errors import InvalidModulusError, NoInverseError

# 40 Miller-Rabin rounds: error probability <= 4^-40 for a composite survivor
DEFAULT_MR_ROUNDS = 40

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def default_rng() -> random.Random:
    """OS-entropy randomness source with the injected-rng interface."""
    return random.SystemRandom()


class ExpCounter:
    """Counts modular exponentiations performed within one scope.

    Create a fresh counter per measured region; there is no reset, which
    keeps the count monotone within a scope by construction.
    """

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def tick(self) -> None:
        self.count += 1

    def __repr__(self) -> str:
        return f"ExpCounter(count={self.count})"


def mod_exp(base: int, exp: int, modulus: int, counter: ExpCounter | None = None) -> int:
    """base**exp mod modulus, counted as exactly one exponentiation.

    Raises InvalidModulusError if modulus < 2.
    """
    if modulus < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {modulus}")
    if counter is not None:
        counter.tick()
    return pow(base, exp, modulus)


def mod_inv(a: int, modulus: int) -> int:
    """Multiplicative inverse of a mod modulus, in (0, modulus).

    Raises NoInverseError when gcd(a, modulus) != 1 (this includes a == 0).
    """
    if modulus < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {modulus}")
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise NoInverseError(f"{a} has no inverse mod {modulus}") from None


def is_prime(n: int, rounds: int = DEFAULT_MR_ROUNDS, rng: random.Random | None = None) -> bool:
    """Miller-Rabin primality test.

    A composite verdict is always correct; a prime verdict errs with
    probability at most 4**-rounds.  Witnesses come from ``rng`` so the
    verdict is reproducible under a seeded source.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if rng is None:
        rng = default_rng()

    # n - 1 = d * 2^twos with d odd
    d = n - 1
    twos = 0
    while d % 2 == 0:
        d //= 2
        twos += 1

    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(twos - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def sample_zq_star(q: int, rng: random.Random) -> int:
    """Uniform element of Z_q^* = [1, q-1] for prime q."""
    return rng.randrange(1, q)
