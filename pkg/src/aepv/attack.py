"""Rogue-key forgery against the Ma-Chen scheme.

A malicious receiver who registers (or re-registers) his public key AFTER
seeing the sender's key y_A can fabricate a ciphertext that the scheme's
own verification attributes to the sender, without her involvement:

    pick a, b in Z_q^*         v = g^a * y_A^b mod p
    e = v mod q                c = m * H(v)^-1 mod p
    r = H(e, H(m))             s = r*a*b^-1 mod q
    x_B = b*r^-1 - 1 mod q     register y_B = g^x_B

Receiver verification then recomputes (g*y_B)^s * y_A^(r*(x_B+1))
= g^((1+x_B)*s) * y_A^(r*(1+x_B)) = g^a * y_A^b = v, so the forgery is
accepted.  Everything the forger needs is public; only the registration
ordering assumption matters.  Note that a proof-of-possession check at the
CA does NOT stop this: the forger legitimately knows x_B.  Only binding
registration to a time before y_A was published would.

``forge`` builds one forgery; ``run_attack_scenario`` plays out the whole
story against a CA registry and reports each step's outcome.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import AuthenticationFailureError, ForgeryFailureError, RejectedKeyError
from .group import CaRegistry, GroupParams, KeyPair, pop_prove
from .hashing import DEFAULT_HASHES, HashSuite
from .machen import (
    MaChenCiphertext,
    mc_decrypt_verify,
    mc_make_proof,
    mc_ttp_verify,
)
from .numeric import ExpCounter, mod_exp, mod_inv, sample_zq_star

DEFAULT_MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class ForgeryOutput:
    """A forged ciphertext plus the keypair manufactured to validate it."""

    ciphertext: MaChenCiphertext
    rogue_keypair: KeyPair
    a: int
    b: int
    target_message: int


def forge(
    params: GroupParams,
    sender_pub: int,
    m: int,
    rng: random.Random,
    hashes: HashSuite = DEFAULT_HASHES,
    counter: ExpCounter | None = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> ForgeryOutput:
    """Forge a ciphertext for m using only the sender's PUBLIC key.

    Resamples (a, b) in the measure-zero cases r = 0 (r must be invertible)
    or x_B = 0; raises ForgeryFailureError if the attempt budget runs out.
    """
    p, q, g = params.p, params.q, params.g
    if not 1 <= m <= p - 1:
        raise ForgeryFailureError("target message must lie in [1, p-1]")
    for _ in range(max_attempts):
        a = sample_zq_star(q, rng)
        b = sample_zq_star(q, rng)
        v = mod_exp(g, a, p, counter) * mod_exp(sender_pub, b, p, counter) % p
        e = v % q
        r = hashes.hash_to_zq([e, hashes.hash_H([m])], q)
        if r == 0:
            continue
        x_b = (b * mod_inv(r, q) - 1) % q
        if x_b == 0:
            continue
        c = m * mod_inv(hashes.hash_to_zp_star([v], p), p) % p
        s = r * a % q * mod_inv(b, q) % q
        y_b = mod_exp(g, x_b, p, counter)
        return ForgeryOutput(
            ciphertext=MaChenCiphertext(c=c, r=r, s=s),
            rogue_keypair=KeyPair(x=x_b, y=y_b),
            a=a,
            b=b,
            target_message=m,
        )
    raise ForgeryFailureError(f"no usable (a, b) after {max_attempts} attempts")


@dataclass(frozen=True)
class AttackReport:
    """Outcome of each step of the registration-ordering attack."""

    ca_strict_pop: bool
    victim_seq: int
    rogue_seq: int | None
    pop_provided: bool
    blocked: bool
    receiver_accepted: bool
    recovered_message_matches: bool
    arbiter_accepted: bool | None
    rogue_public_key: int | None

    def render(self) -> str:
        lines = [
            "rogue-key attack scenario",
            f"  CA mode: {'strict (proof of possession required)' if self.ca_strict_pop else 'default (subgroup check only)'}",
            f"  victim key registered with sequence number {self.victim_seq}",
        ]
        if self.blocked:
            lines += [
                "  rogue key registration: REJECTED by the CA",
                "  outcome: ATTACK BLOCKED at registration time",
            ]
            return "\n".join(lines)
        lines.append(
            f"  rogue key registered with sequence number {self.rogue_seq}"
            f" (after the victim's: {self.rogue_seq > self.victim_seq})"
        )
        if self.ca_strict_pop and self.pop_provided:
            lines.append(
                "  note: proof of possession was demanded and SUPPLIED -- the forger"
            )
            lines.append(
                "  really knows the rogue secret key, so possession checks do not block this attack"
            )
        lines.append(
            f"  receiver verification of the forged triple: "
            f"{'FORGERY ACCEPTED' if self.receiver_accepted else 'rejected'}"
        )
        lines.append(
            f"  recovered plaintext equals the forger's chosen message: "
            f"{self.recovered_message_matches}"
        )
        if self.arbiter_accepted is not None:
            lines.append(
                f"  arbiter check of the dispute bundle: "
                f"{'accepted' if self.arbiter_accepted else 'rejected'}"
                " (the arbiter equation rejects honest bundles too)"
            )
        return "\n".join(lines)


def run_attack_scenario(
    params: GroupParams,
    registry: CaRegistry,
    alice: KeyPair | int,
    m: int,
    rng: random.Random,
    hashes: HashSuite = DEFAULT_HASHES,
    victim_identity: str = "alice",
    attacker_identity: str = "bob",
    provide_pop: bool = True,
) -> AttackReport:
    """Play the full attack against a registry where the victim is already
    registered: forge, late-register the rogue key, verify as the receiver,
    then try the arbiter.  ``alice`` may be the bare public key; when a full
    keypair is passed, only its public half is ever read -- the victim's
    secret takes no part in any step.
    """
    alice_y = alice.y if isinstance(alice, KeyPair) else int(alice)
    victim = registry.lookup(victim_identity)
    if victim is None or victim.y != alice_y:
        raise ValueError(f"victim {victim_identity!r} must be registered before the attack")

    forgery = forge(params, alice_y, m, rng, hashes)
    rogue = forgery.rogue_keypair

    pop = None
    if registry.require_pop and provide_pop:
        pop = pop_prove(params, rogue, attacker_identity, rng, hashes)
    try:
        rogue_seq = registry.register(attacker_identity, rogue.y, pop=pop)
    except RejectedKeyError:
        return AttackReport(
            ca_strict_pop=registry.require_pop,
            victim_seq=victim.seq,
            rogue_seq=None,
            pop_provided=pop is not None,
            blocked=True,
            receiver_accepted=False,
            recovered_message_matches=False,
            arbiter_accepted=None,
            rogue_public_key=None,
        )

    try:
        recovered = mc_decrypt_verify(params, rogue, alice_y, forgery.ciphertext, hashes)
        receiver_accepted = True
    except AuthenticationFailureError:
        recovered = None
        receiver_accepted = False

    arbiter_accepted = None
    if receiver_accepted:
        proof = mc_make_proof(params, rogue, alice_y, forgery.ciphertext, recovered, hashes)
        arbiter_accepted = mc_ttp_verify(params, alice_y, proof, hashes)

    return AttackReport(
        ca_strict_pop=registry.require_pop,
        victim_seq=victim.seq,
        rogue_seq=rogue_seq,
        pop_provided=pop is not None,
        blocked=False,
        receiver_accepted=receiver_accepted,
        recovered_message_matches=recovered == m,
        arbiter_accepted=arbiter_accepted,
        rogue_public_key=rogue.y,
    )
