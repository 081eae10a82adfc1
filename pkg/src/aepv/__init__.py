"""Authenticated encryption with public verifiability.

Implements the Ma-Chen authenticated encryption scheme exactly as
published (so its rogue-key forgeability and broken arbiter equation can
be demonstrated), the registration-ordering forgery against it, and the
Schnorr-based replacement scheme whose proof release is free and publicly
verifiable.
"""

from .attack import AttackReport, ForgeryOutput, forge, run_attack_scenario
from .errors import (
    AepvError,
    AuthenticationFailureError,
    ForgeryFailureError,
    GenerationFailureError,
    RejectedKeyError,
)
from .group import (
    CaRegistry,
    GroupParams,
    KeyPair,
    TOY_PARAMS,
    generate_params,
    keygen,
    validate_params,
)
from .hashing import DEFAULT_HASHES, HashSuite, StubHash
from .improved import (
    ImprovedCiphertext,
    PublicProof,
    SchnorrSignature,
    imp_decrypt_verify,
    imp_encrypt_sign,
    imp_public_verify,
    imp_release_proof,
)
from .machen import (
    MaChenCiphertext,
    MaChenProof,
    SharedStaticKey,
    mc_decrypt_verify,
    mc_decrypt_with_shared_key,
    mc_encrypt_sign,
    mc_make_proof,
    mc_make_proof_unreduced,
    mc_recover_shared_key,
    mc_ttp_verify,
    mc_ttp_verify_unreduced,
)
from .numeric import ExpCounter, is_prime, mod_exp, mod_inv, sample_zq_star

__version__ = "0.1.0"

__all__ = [
    "AepvError",
    "AttackReport",
    "AuthenticationFailureError",
    "CaRegistry",
    "DEFAULT_HASHES",
    "ExpCounter",
    "ForgeryFailureError",
    "ForgeryOutput",
    "GenerationFailureError",
    "GroupParams",
    "HashSuite",
    "ImprovedCiphertext",
    "KeyPair",
    "MaChenCiphertext",
    "MaChenProof",
    "PublicProof",
    "RejectedKeyError",
    "SchnorrSignature",
    "SharedStaticKey",
    "StubHash",
    "TOY_PARAMS",
    "forge",
    "generate_params",
    "imp_decrypt_verify",
    "imp_encrypt_sign",
    "imp_public_verify",
    "imp_release_proof",
    "is_prime",
    "keygen",
    "mc_decrypt_verify",
    "mc_decrypt_with_shared_key",
    "mc_encrypt_sign",
    "mc_make_proof",
    "mc_make_proof_unreduced",
    "mc_recover_shared_key",
    "mc_ttp_verify",
    "mc_ttp_verify_unreduced",
    "mod_exp",
    "mod_inv",
    "run_attack_scenario",
    "sample_zq_star",
    "validate_params",
]
