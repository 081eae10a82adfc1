"""Shared helpers for the test suite: independent brute-force oracles,
deterministic randomness doubles, bit-flipping, and the transplanted
forgery construction used by the improved-scheme resistance checks.

The oracles deliberately avoid pow() and the package's own numeric code;
scripts/toy_vector_oracle.py is the standalone version that regenerates
every frozen toy constant asserted in these tests.
"""

from __future__ import annotations

import random

from aepv.group import GroupParams, KeyPair
from aepv.hashing import DEFAULT_HASHES, byte_len, int_to_fixed_bytes
from aepv.improved import ImprovedCiphertext, SchnorrSignature
from aepv.numeric import sample_zq_star

# toy keypairs matching the frozen known-answer vectors (x_A=3, x_B=5)
TOY_ALICE = KeyPair(x=3, y=18)
TOY_BOB = KeyPair(x=5, y=12)


def naive_pow(base: int, exp: int, modulus: int) -> int:
    """Repeated multiplication, one step per exponent unit."""
    acc = 1
    base %= modulus
    for _ in range(exp):
        acc = acc * base % modulus
    return acc


def naive_inv(a: int, modulus: int) -> int:
    """Exhaustive search for the inverse."""
    a %= modulus
    for x in range(1, modulus):
        if a * x % modulus == 1:
            return x
    raise ValueError(f"{a} not invertible mod {modulus}")


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class SeqRng:
    """Randomness double that hands out a preset sequence of values.

    Calls beyond the preset fall through to a seeded real generator, so a
    test can force the first few draws (ephemeral k, or the pair a, b) and
    let everything later stay random-but-reproducible.
    """

    def __init__(self, values, tail_seed: int = 0):
        self._values = list(values)
        self._tail = random.Random(tail_seed)

    def randrange(self, start, stop=None):
        if self._values:
            return self._values.pop(0)
        return self._tail.randrange(start, stop)

    def getrandbits(self, k):
        return self._tail.getrandbits(k)


def flip_bit(data: bytes, bit_index: int) -> bytes:
    out = bytearray(data)
    out[bit_index // 8] ^= 1 << (bit_index % 8)
    return bytes(out)


def transplant_forgery(
    params: GroupParams,
    sender_pub: int,
    m: bytes,
    rng,
    hashes=DEFAULT_HASHES,
) -> tuple[ImprovedCiphertext, KeyPair]:
    """Replay the rogue-key recipe against the Schnorr-based scheme.

    Same moves as the Ma-Chen forgery: commit to t1 = g^a * y_A^b, derive
    (r, s, x_B) from (a, b), and encrypt under the forger's own transport
    key t1^x_B.  Verification recomputes t1 from (r, s) alone, which no
    longer involves x_B, so the construction has nothing to steer it with.
    """
    from aepv.numeric import mod_exp, mod_inv

    p, q, g = params.p, params.q, params.g
    while True:
        a = sample_zq_star(q, rng)
        b = sample_zq_star(q, rng)
        t1 = mod_exp(g, a, p) * mod_exp(sender_pub, b, p) % p
        r = hashes.hash_to_zq([m, int_to_fixed_bytes(t1, byte_len(p))], q)
        if r == 0:
            continue
        x_b = (b * mod_inv(r, q) - 1) % q
        if x_b == 0:
            continue
        s = r * a % q * mod_inv(b, q) % q
        y_b = mod_exp(g, x_b, p)
        t2 = mod_exp(t1, x_b, p)
        c = hashes.sym_encrypt(hashes.kdf_h(t2, p), m)
        return ImprovedCiphertext(c=c, sig=SchnorrSignature(r=r, s=s)), KeyPair(x=x_b, y=y_b)
