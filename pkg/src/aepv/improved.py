"""Schnorr-based replacement scheme with free public verifiability.

The sender fuses a standard Schnorr signature with ephemeral key
transport (message m is any byte string):

    t1 = g^k mod p     t2 = y_B^k mod p
    c = E_h(t2)(m)     r = H(m, t1)     s = k + r*x_A mod q

The receiver recomputes t1 = g^s * y_A^-r mod p, derives t2 = t1^x_B,
decrypts, and accepts iff r = H(m, t1).  (r, s) alone is a Schnorr
signature on m, so converting a received ciphertext into public evidence
is just releasing (m, r, s) -- zero exponentiations -- and any verifier
checks it with the two-exponentiation Schnorr equation.

Conventions: the hash input is (m, t1) with m length-prefixed and t1
encoded at the byte width of p.  A post-reduction r = 0 is accepted, as
in standard Schnorr.  y_A^-r costs one exponentiation plus one inversion,
and inversions are not exponentiations under the operation-count
convention used throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import AuthenticationFailureError
from .group import GroupParams, KeyPair
from .hashing import DEFAULT_HASHES, HashSuite, byte_len, int_to_fixed_bytes
from .numeric import ExpCounter, mod_exp, mod_inv, sample_zq_star


@dataclass(frozen=True)
class SchnorrSignature:
    """Standard Schnorr pair: r = H(m, g^k), s = k + r*x mod q."""

    r: int
    s: int


@dataclass(frozen=True)
class ImprovedCiphertext:
    """Symmetric ciphertext (|c| = |m|) plus the Schnorr signature."""

    c: bytes
    sig: SchnorrSignature


@dataclass(frozen=True)
class PublicProof:
    """Everything a third party needs: the message and its signature."""

    m: bytes
    sig: SchnorrSignature


def _hash_r(hashes: HashSuite, params: GroupParams, m: bytes, t1: int) -> int:
    return hashes.hash_to_zq([m, int_to_fixed_bytes(t1, byte_len(params.p))], params.q)


def imp_encrypt_sign(
    params: GroupParams,
    sender: KeyPair,
    receiver_pub: int,
    m: bytes,
    rng: random.Random,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> ImprovedCiphertext:
    """Encrypt-and-sign an arbitrary byte string.  Two exponentiations."""
    p, q, g = params.p, params.q, params.g
    k = sample_zq_star(q, rng)
    t1 = mod_exp(g, k, p, counter)
    t2 = mod_exp(receiver_pub, k, p, counter)
    c = hashes.sym_encrypt(hashes.kdf_h(t2, p), m)
    r = _hash_r(hashes, params, m, t1)
    s = (k + r * sender.x) % q
    return ImprovedCiphertext(c=c, sig=SchnorrSignature(r=r, s=s))


def _recover_t1(
    params: GroupParams,
    sender_pub: int,
    sig: SchnorrSignature,
    counter: ExpCounter | None,
) -> int:
    p = params.p
    return (
        mod_exp(params.g, sig.s, p, counter)
        * mod_exp(mod_inv(sender_pub, p), sig.r, p, counter)
        % p
    )


def imp_decrypt_verify(
    params: GroupParams,
    receiver: KeyPair,
    sender_pub: int,
    ct: ImprovedCiphertext,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> bytes:
    """Recover and authenticate m.  Three exponentiations.

    Raises AuthenticationFailureError on a failed check; the decrypted
    buffer is discarded in that case.
    """
    t1 = _recover_t1(params, sender_pub, ct.sig, counter)
    t2 = mod_exp(t1, receiver.x, params.p, counter)
    m = hashes.sym_decrypt(hashes.kdf_h(t2, params.p), ct.c)
    if ct.sig.r != _hash_r(hashes, params, m, t1):
        del m
        raise AuthenticationFailureError("ciphertext failed the r = H(m, t1) check")
    return m


def imp_release_proof(ct: ImprovedCiphertext, m: bytes) -> PublicProof:
    """Convert an accepted ciphertext into public evidence: release (m, r, s).

    No group operations at all, hence zero exponentiations.
    """
    return PublicProof(m=m, sig=ct.sig)


def imp_public_verify(
    params: GroupParams,
    sender_pub: int,
    proof: PublicProof,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> bool:
    """Standard Schnorr verification of (m, r, s).  Two exponentiations."""
    if not (0 <= proof.sig.r < params.q and 0 <= proof.sig.s < params.q):
        return False
    t1 = _recover_t1(params, sender_pub, proof.sig, counter)
    return proof.sig.r == _hash_r(hashes, params, proof.m, t1)
