"""The original Ma-Chen authenticated encryption scheme, as published.

Sender (message m in Z_p^*, ephemeral k in Z_q^*):

    v = (g*y_B)^k mod p        e = v mod q
    c = m * H(v)^-1 mod p      r = H(e, H(m))      s = k - x_A*r mod q

Receiver: recompute v = (g*y_B)^s * y_A^(r*(x_B+1)) mod p, recover
m = c * H(v) mod p, and accept iff r = H(e, H(m)).

For dispute resolution the receiver reveals (H(m), K1, r, s) with
K1 = (y_B^s * y_A^(r*x_B) mod p) mod q, and the arbiter recomputes
e' = (g^s * y_A^r * K1 mod p) mod q.  That arbiter equation is wrong:
K1 is reduced mod q before it re-enters a mod-p product, so e' != e for
honest runs and the arbiter rejects them.  ``mc_ttp_verify`` implements
the broken check as written; ``mc_ttp_verify_unreduced`` is a
non-normative diagnostic showing the premature reduction is the sole
cause (feed it K1 before the mod-q reduction and honest proofs pass).

This module also carries the two analytical observations about the
scheme: anyone holding the static key y_AB = g^(x_A*x_B) can decrypt
(``mc_decrypt_with_shared_key``), and a single leaked v surrenders y_AB
(``mc_recover_shared_key``) -- which is why v must never be revealed.

The digest r is reduced mod q before every exponent use; the scheme
leaves the digest-to-exponent mapping implicit, and exponents on
order-q elements only matter mod q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import AuthenticationFailureError, InvalidMessageError
from .group import GroupParams, KeyPair
from .hashing import DEFAULT_HASHES, HashSuite
from .numeric import ExpCounter, mod_exp, mod_inv, sample_zq_star


@dataclass(frozen=True)
class MaChenCiphertext:
    """The transmitted triple: c in Z_p^*, r and s in Z_q."""

    c: int
    r: int
    s: int


@dataclass(frozen=True)
class MaChenProof:
    """Dispute bundle (H(m), K1, r, s) released to the arbiter.

    Deliberately excludes v and any t-value: revealing v would leak the
    static key y_AB.  K1 sits in [0, q-1] for normative proofs; the
    unreduced diagnostic variant stores the pre-reduction Z_p value.
    """

    m_digest: bytes
    k1: int
    r: int
    s: int


@dataclass(frozen=True)
class SharedStaticKey:
    """The static Diffie-Hellman value y_AB = g^(x_A*x_B) mod p."""

    y_ab: int


def _check_message_range(params: GroupParams, m: int) -> None:
    if not 1 <= m <= params.p - 1:
        raise InvalidMessageError(f"message must lie in [1, p-1], got bit length {m.bit_length()}")


def mc_encrypt_sign(
    params: GroupParams,
    sender: KeyPair,
    receiver_pub: int,
    m: int,
    rng: random.Random,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> MaChenCiphertext:
    """Encrypt-and-sign m for the receiver.  One exponentiation."""
    _check_message_range(params, m)
    p, q, g = params.p, params.q, params.g
    k = sample_zq_star(q, rng)
    v = mod_exp(g * receiver_pub % p, k, p, counter)
    e = v % q
    c = m * mod_inv(hashes.hash_to_zp_star([v], p), p) % p
    r = hashes.hash_to_zq([e, hashes.hash_H([m])], q)
    s = (k - sender.x * r) % q
    return MaChenCiphertext(c=c, r=r, s=s)


def _receiver_v(
    params: GroupParams,
    receiver: KeyPair,
    sender_pub: int,
    ct: MaChenCiphertext,
    counter: ExpCounter | None,
) -> int:
    p, q, g = params.p, params.q, params.g
    lhs = mod_exp(g * receiver.y % p, ct.s, p, counter)
    rhs = mod_exp(sender_pub, ct.r * (receiver.x + 1) % q, p, counter)
    return lhs * rhs % p


def _open_and_check(
    params: GroupParams,
    v: int,
    ct: MaChenCiphertext,
    hashes: HashSuite,
) -> int:
    p, q = params.p, params.q
    e = v % q
    m = ct.c * hashes.hash_to_zp_star([v], p) % p
    if ct.r != hashes.hash_to_zq([e, hashes.hash_H([m])], q):
        raise AuthenticationFailureError("ciphertext failed the r = H(e, H(m)) check")
    return m


def mc_decrypt_verify(
    params: GroupParams,
    receiver: KeyPair,
    sender_pub: int,
    ct: MaChenCiphertext,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> int:
    """Recover and authenticate m.  Two exponentiations.

    Raises AuthenticationFailureError on a failed check; no plaintext is
    released in that case.
    """
    v = _receiver_v(params, receiver, sender_pub, ct, counter)
    return _open_and_check(params, v, ct, hashes)


def mc_make_proof(
    params: GroupParams,
    receiver: KeyPair,
    sender_pub: int,
    ct: MaChenCiphertext,
    m: int,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> MaChenProof:
    """Dispute bundle with K1 reduced mod q, exactly as specified.

    Call only after ``mc_decrypt_verify`` accepted ct and returned m.
    Two exponentiations.
    """
    k1 = _k1_unreduced(params, receiver, sender_pub, ct, counter) % params.q
    return MaChenProof(m_digest=hashes.hash_H([m]), k1=k1, r=ct.r, s=ct.s)


def mc_make_proof_unreduced(
    params: GroupParams,
    receiver: KeyPair,
    sender_pub: int,
    ct: MaChenCiphertext,
    m: int,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> MaChenProof:
    """Diagnostic bundle carrying K1 before the mod-q reduction (a Z_p value).

    Non-normative: exists to isolate the arbiter design error.
    """
    k1_star = _k1_unreduced(params, receiver, sender_pub, ct, counter)
    return MaChenProof(m_digest=hashes.hash_H([m]), k1=k1_star, r=ct.r, s=ct.s)


def _k1_unreduced(
    params: GroupParams,
    receiver: KeyPair,
    sender_pub: int,
    ct: MaChenCiphertext,
    counter: ExpCounter | None,
) -> int:
    p, q = params.p, params.q
    return (
        mod_exp(receiver.y, ct.s, p, counter)
        * mod_exp(sender_pub, ct.r * receiver.x % q, p, counter)
        % p
    )


def _ttp_e(
    params: GroupParams,
    sender_pub: int,
    proof: MaChenProof,
    counter: ExpCounter | None,
) -> int:
    p, q, g = params.p, params.q, params.g
    return (
        mod_exp(g, proof.s, p, counter)
        * mod_exp(sender_pub, proof.r, p, counter)
        * proof.k1
        % p
        % q
    )


def mc_ttp_verify(
    params: GroupParams,
    sender_pub: int,
    proof: MaChenProof,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> bool:
    """The arbiter check as written: e' = (g^s * y_A^r * K1 mod p) mod q.

    Broken by design: K1 was reduced mod q, so e' != e and honest proofs
    are rejected (up to accidental residue collisions at toy sizes).
    Two exponentiations.
    """
    e_prime = _ttp_e(params, sender_pub, proof, counter)
    return proof.r == hashes.hash_to_zq([e_prime, proof.m_digest], params.q)


def mc_ttp_verify_unreduced(
    params: GroupParams,
    sender_pub: int,
    proof: MaChenProof,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> bool:
    """Diagnostic arbiter check fed the unreduced K1 (from
    ``mc_make_proof_unreduced``).  Accepts honest proofs, pinning the
    failure of ``mc_ttp_verify`` on the premature mod-q reduction alone.
    """
    e_prime = _ttp_e(params, sender_pub, proof, counter)
    return proof.r == hashes.hash_to_zq([e_prime, proof.m_digest], params.q)


def mc_decrypt_with_shared_key(
    params: GroupParams,
    shared: SharedStaticKey,
    sender_pub: int,
    receiver_pub: int,
    ct: MaChenCiphertext,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
) -> int:
    """Decrypt and verify without x_B, using only y_AB:
    v = (g*y_B)^s * y_AB^r * y_A^r mod p.  Agrees with mc_decrypt_verify.
    """
    p, q, g = params.p, params.q, params.g
    v = (
        mod_exp(g * receiver_pub % p, ct.s, p, counter)
        * mod_exp(shared.y_ab, ct.r, p, counter)
        * mod_exp(sender_pub, ct.r, p, counter)
        % p
    )
    return _open_and_check(params, v, ct, hashes)


def mc_recover_shared_key(
    params: GroupParams,
    v: int,
    ct: MaChenCiphertext,
    sender_pub: int,
    receiver_pub: int,
    counter: ExpCounter | None = None,
) -> SharedStaticKey:
    """Recover y_AB from a single leaked v:

        y_AB = y_A^-1 * v^(r^-1) * (g*y_B)^(-s*r^-1) mod p

    This is the leakage that forces the dispute bundle to exclude v.
    Raises NoInverseError when r = 0.
    """
    p, q, g = params.p, params.q, params.g
    r_inv = mod_inv(ct.r, q)
    y_ab = (
        mod_inv(sender_pub, p)
        * mod_exp(v, r_inv, p, counter)
        * mod_exp(g * receiver_pub % p, (-ct.s * r_inv) % q, p, counter)
        % p
    )
    return SharedStaticKey(y_ab=y_ab)
