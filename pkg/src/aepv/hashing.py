"""Hash layer: the scheme hash H in its three output domains (raw digest,
Z_q, Z_p^*), the session-key KDF h, and the keystream cipher pair (E, D).

Neither scheme fixes a concrete hash, so everything is built on SHA-256
behind the :class:`HashSuite` interface.  Multi-part inputs are encoded
unambiguously (every part length-prefixed, ints as minimal big-endian),
and each output domain gets its own separation tag so a value hashed for
one purpose can never collide with another purpose.

:class:`StubHash` is a deliberately weak, hand-computable drop-in used by
the known-answer tests to pin hash outputs to chosen small values.  It is
never selectable from the CLI.
"""

from __future__ import annotations

import hashlib

from .errors import InvalidMessageError
from .numeric import mod_inv

Part = bytes | int

_TAG_RAW = b"H.raw"
_TAG_ZQ = b"H.zq"
_TAG_ZP = b"H.zp*"
_TAG_KDF = b"h.kdf"
_TAG_KS = b"E.ks"

SESSION_KEY_BYTES = 32


def int_to_bytes(value: int) -> bytes:
    """Minimal big-endian magnitude; 0 encodes as the empty string."""
    if value < 0:
        raise ValueError("negative values have no magnitude encoding")
    return value.to_bytes((value.bit_length() + 7) // 8, "big")


def int_to_fixed_bytes(value: int, width: int) -> bytes:
    """Big-endian encoding padded to exactly ``width`` bytes."""
    return value.to_bytes(width, "big")


def byte_len(n: int) -> int:
    """Bytes needed to carry n, i.e. ceil(bitlen/8)."""
    return (n.bit_length() + 7) // 8


def encode_parts(parts: list[Part] | tuple[Part, ...]) -> bytes:
    """Injective encoding of a part list: 4-byte length prefix per part."""
    out = bytearray()
    for part in parts:
        blob = int_to_bytes(part) if isinstance(part, int) else bytes(part)
        out += len(blob).to_bytes(4, "big")
        out += blob
    return bytes(out)


def part_as_int(part: Part) -> int:
    return part if isinstance(part, int) else int.from_bytes(part, "big")


class HashSuite:
    """SHA-256 backed hash functions with per-domain separation tags."""

    name = "sha256"

    def _digest(self, tag: bytes, data: bytes) -> bytes:
        return hashlib.sha256(encode_parts([tag]) + data).digest()

    def hash_H(self, parts: list[Part] | tuple[Part, ...]) -> bytes:
        """Raw 256-bit digest of the encoded part list."""
        return self._digest(_TAG_RAW, encode_parts(parts))

    def hash_to_zq(self, parts: list[Part] | tuple[Part, ...], q: int) -> int:
        """Digest interpreted big-endian and reduced into [0, q-1]."""
        return int.from_bytes(self._digest(_TAG_ZQ, encode_parts(parts)), "big") % q

    def hash_to_zp_star(self, parts: list[Part] | tuple[Part, ...], p: int) -> int:
        """Digest expanded in counter mode to |p| bits, reduced into [1, p-1].

        A zero residue (probability ~2^-|p|) bumps an outer retry counter and
        re-expands, so the result is always invertible mod a prime p.
        """
        enc = encode_parts(parts)
        bits = p.bit_length()
        nbytes = (bits + 7) // 8
        retry = 0
        while True:
            stream = bytearray()
            block = 0
            while len(stream) < nbytes:
                stream += self._digest(
                    _TAG_ZP, retry.to_bytes(4, "big") + block.to_bytes(4, "big") + enc
                )
                block += 1
            value = int.from_bytes(stream[:nbytes], "big") >> (8 * nbytes - bits)
            value %= p
            if value != 0:
                return value
            retry += 1

    def kdf_h(self, t2: int, p: int) -> bytes:
        """Session key from the shared group element t2, encoded at the width of p."""
        if not 1 <= t2 <= p - 1:
            raise InvalidMessageError(f"t2 must lie in [1, p-1], got {t2}")
        return self._digest(_TAG_KDF, int_to_fixed_bytes(t2, byte_len(p)))

    def _keystream(self, key: bytes, length: int) -> bytes:
        out = bytearray()
        block = 0
        while len(out) < length:
            out += self._digest(_TAG_KS, key + block.to_bytes(8, "big"))
            block += 1
        return bytes(out[:length])

    def sym_encrypt(self, key: bytes, plaintext: bytes) -> bytes:
        """Keystream XOR; |ciphertext| = |plaintext|.  Integrity comes from
        the signature layer, not from the cipher."""
        ks = self._keystream(key, len(plaintext))
        return bytes(a ^ b for a, b in zip(plaintext, ks))

    def sym_decrypt(self, key: bytes, ciphertext: bytes) -> bytes:
        return self.sym_encrypt(key, ciphertext)


class StubHash(HashSuite):
    """Hand-computable test double.

    hash_to_zq sums the parts mod q (bytes read big-endian), so it stays
    input-sensitive and mismatch checks remain meaningful; an optional
    ``zq_value`` pins it to a constant instead.  hash_to_zp_star returns the
    fixed ``zp_star_value``.  hash_H returns the minimal big-endian bytes of
    the part sum, so H(m) feeds back into the sum unchanged.  The KDF and
    cipher are inherited unchanged.
    """

    name = "stub"

    def __init__(self, zp_star_value: int = 7, zq_value: int | None = None) -> None:
        self.zp_star_value = zp_star_value
        self.zq_value = zq_value

    def hash_H(self, parts) -> bytes:
        return int_to_bytes(sum(part_as_int(part) for part in parts))

    def hash_to_zq(self, parts, q: int) -> int:
        if self.zq_value is not None:
            return self.zq_value % q
        return sum(part_as_int(part) for part in parts) % q

    def hash_to_zp_star(self, parts, p: int) -> int:
        value = self.zp_star_value % p
        mod_inv(value, p)  # the stub must still produce an invertible element
        return value


DEFAULT_HASHES = HashSuite()
