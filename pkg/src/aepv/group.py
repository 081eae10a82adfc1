"""Schnorr-group parameters, keypairs, and a simulated certification authority.

The group is the prime-order-q subgroup of Z_p^* with q | (p-1), generated
by g.  Parameter generation uses the standard construction p = q*t + 1 with
random even t, then g = h^((p-1)/q) mod p for random h until g != 1.

The CA registry models the registration-order assumption the rogue-key
forgery relies on: by default it checks only subgroup membership, so an
adversarially chosen key is accepted as long as it lands in the right
subgroup.  A strict mode additionally demands a proof of possession (a
Schnorr self-signature over the identity and key); note the forgery still
passes strict mode, because the attacker genuinely knows his secret key.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GenerationFailureError, RejectedKeyError
from .hashing import DEFAULT_HASHES, HashSuite
from .numeric import ExpCounter, is_prime, mod_exp, mod_inv, sample_zq_star

DEFAULT_BITS_P = 1024
DEFAULT_BITS_Q = 160


@dataclass(frozen=True)
class GroupParams:
    """The shared triple (p, q, g): primes p, q with q | (p-1), g of order q."""

    p: int
    q: int
    g: int

    @property
    def p_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    @property
    def q_bytes(self) -> int:
        return (self.q.bit_length() + 7) // 8


@dataclass(frozen=True)
class KeyPair:
    """Discrete-log keypair: secret x in [1, q-1], public y = g^x mod p."""

    x: int
    y: int


# Hand-verifiable toy preset: 11 | 22, and 4 has order 11 in Z_23^*.
TOY_PARAMS = GroupParams(p=23, q=11, g=4)


@dataclass(frozen=True)
class Verdict:
    """Validation outcome; falsy iff some named invariant failed."""

    ok: bool
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def generate_params(
    bits_p: int = DEFAULT_BITS_P,
    bits_q: int = DEFAULT_BITS_Q,
    rng: random.Random | None = None,
    max_attempts: int = 100_000,
) -> GroupParams:
    """Generate a fresh Schnorr group with |p| = bits_p and |q| = bits_q."""
    if bits_q < 8 or bits_p < bits_q + 8:
        raise ValueError(f"need bits_q >= 8 and bits_p >= bits_q + 8, got ({bits_p}, {bits_q})")
    if rng is None:
        rng = random.SystemRandom()

    q = _random_prime(bits_q, rng, max_attempts)

    # p = q*t + 1 for random even t sized so p lands on exactly bits_p bits
    t_lo = ((1 << (bits_p - 1)) - 1) // q + 1
    t_hi = ((1 << bits_p) - 2) // q
    for _ in range(max_attempts):
        t = rng.randrange(t_lo, t_hi + 1) & ~1
        if t < t_lo:
            continue
        p = q * t + 1
        if p.bit_length() == bits_p and is_prime(p, rng=rng):
            break
    else:
        raise GenerationFailureError(f"no prime p found in {max_attempts} attempts")

    for _ in range(max_attempts):
        h = rng.randrange(2, p - 1)
        g = pow(h, (p - 1) // q, p)
        if g != 1:
            return GroupParams(p=p, q=q, g=g)
    raise GenerationFailureError(f"no generator found in {max_attempts} attempts")


def _random_prime(bits: int, rng: random.Random, max_attempts: int) -> int:
    for _ in range(max_attempts):
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime(candidate, rng=rng):
            return candidate
    raise GenerationFailureError(f"no {bits}-bit prime found in {max_attempts} attempts")


def validate_params(params: GroupParams, rng: random.Random | None = None) -> Verdict:
    """Check every group invariant; report the first failure by name."""
    if not is_prime(params.p, rng=rng):
        return Verdict(False, "p_not_prime")
    if not is_prime(params.q, rng=rng):
        return Verdict(False, "q_not_prime")
    if (params.p - 1) % params.q != 0:
        return Verdict(False, "q_does_not_divide_p_minus_1")
    if not 2 <= params.g <= params.p - 1:
        return Verdict(False, "generator_out_of_range")
    if pow(params.g, params.q, params.p) != 1:
        return Verdict(False, "generator_order_not_q")
    return Verdict(True)


def keygen(params: GroupParams, rng: random.Random, counter: ExpCounter | None = None) -> KeyPair:
    """Fresh keypair with x uniform in [1, q-1]."""
    x = sample_zq_star(params.q, rng)
    return KeyPair(x=x, y=mod_exp(params.g, x, params.p, counter))


def is_subgroup_element(params: GroupParams, y: int) -> bool:
    """Membership test for the order-q subgroup (1 is a member)."""
    return 1 <= y <= params.p - 1 and pow(y, params.q, params.p) == 1


# --- proof of possession: Schnorr self-signature over (identity, y) ---------

def pop_prove(
    params: GroupParams,
    keypair: KeyPair,
    identity: str,
    rng: random.Random,
    hashes: HashSuite = DEFAULT_HASHES,
) -> tuple[int, int]:
    k = sample_zq_star(params.q, rng)
    t = mod_exp(params.g, k, params.p)
    e = hashes.hash_to_zq([b"ca-pop", identity.encode(), keypair.y, t], params.q)
    return e, (k + e * keypair.x) % params.q


def pop_check(
    params: GroupParams,
    y: int,
    identity: str,
    pop: tuple[int, int],
    hashes: HashSuite = DEFAULT_HASHES,
) -> bool:
    e, s = pop
    if not (0 <= e < params.q and 0 <= s < params.q):
        return False
    t = (mod_exp(params.g, s, params.p) * mod_exp(mod_inv(y, params.p), e, params.p)) % params.p
    return e == hashes.hash_to_zq([b"ca-pop", identity.encode(), y, t], params.q)


@dataclass(frozen=True)
class RegistryEntry:
    identity: str
    y: int
    seq: int


class CaRegistry:
    """Key registrar with strictly increasing registration sequence numbers.

    An identity may re-register; the newest entry wins on lookup and the full
    history stays queryable.  Membership in the order-q subgroup is always
    enforced; ``require_pop=True`` additionally demands a valid proof of
    possession at registration time.
    """

    def __init__(
        self,
        params: GroupParams,
        require_pop: bool = False,
        hashes: HashSuite = DEFAULT_HASHES,
    ) -> None:
        self.params = params
        self.require_pop = require_pop
        self.hashes = hashes
        self._entries: list[RegistryEntry] = []
        self._next_seq = 1

    def register(self, identity: str, y: int, pop: tuple[int, int] | None = None) -> int:
        if not is_subgroup_element(self.params, y):
            raise RejectedKeyError(f"key for {identity!r} is not in the order-q subgroup")
        if self.require_pop:
            if pop is None:
                raise RejectedKeyError(f"strict mode: {identity!r} supplied no proof of possession")
            if not pop_check(self.params, y, identity, pop, self.hashes):
                raise RejectedKeyError(f"strict mode: proof of possession for {identity!r} is invalid")
        seq = self._next_seq
        self._next_seq += 1
        self._entries.append(RegistryEntry(identity=identity, y=y, seq=seq))
        return seq

    def lookup(self, identity: str) -> RegistryEntry | None:
        """Newest entry for the identity, or None."""
        for entry in reversed(self._entries):
            if entry.identity == identity:
                return entry
        return None

    def history(self, identity: str) -> list[RegistryEntry]:
        return [entry for entry in self._entries if entry.identity == identity]

    def all_entries(self) -> list[RegistryEntry]:
        return list(self._entries)

    # --- persistence (used by the CLI registry file) -------------------------

    def to_json_obj(self) -> dict:
        return {
            "p": str(self.params.p),
            "q": str(self.params.q),
            "g": str(self.params.g),
            "require_pop": self.require_pop,
            "next_seq": self._next_seq,
            "entries": [
                {"identity": e.identity, "y": str(e.y), "seq": e.seq} for e in self._entries
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: dict, hashes: HashSuite = DEFAULT_HASHES) -> "CaRegistry":
        params = GroupParams(p=int(obj["p"]), q=int(obj["q"]), g=int(obj["g"]))
        registry = cls(params, require_pop=bool(obj["require_pop"]), hashes=hashes)
        registry._next_seq = int(obj["next_seq"])
        registry._entries = [
            RegistryEntry(identity=e["identity"], y=int(e["y"]), seq=int(e["seq"]))
            for e in obj["entries"]
        ]
        return registry
