"""Command-line frontend for the full workflow.

Subcommands: gen-params, keygen, register, encrypt, decrypt, prove,
verify, attack-demo, design-error-demo, bench.

Exit codes are a stable contract: 0 = success / verdict accepted,
1 = verification failure (including adversarial inputs that fail to
parse), 2 = usage or input error.  Secret-key material is written only
to files, never to stdout.  Seeded runs are reproducible byte-for-byte
but must be explicitly marked insecure (--seed requires
--insecure-test-seed).  The environment variable AEPV_CONFIG may point
at a JSON file providing defaults for --params / --registry / --scheme /
--ca-mode.

Ma-Chen carries group elements, not byte strings, so this layer embeds
byte messages as integers (sentinel byte, 2-byte length header, then the
payload) and rejects messages too long for the modulus.  The improved
scheme takes byte strings natively.
"""

from __future__ import annotations

import argparse
import contextlib
import fcntl
import json
import os
import random
import sys
from pathlib import Path

from . import codec
from .attack import run_attack_scenario
from .errors import AepvError, AuthenticationFailureError, CodecError
from .group import (
    CaRegistry,
    GroupParams,
    KeyPair,
    TOY_PARAMS,
    generate_params,
    keygen,
    pop_prove,
    validate_params,
)
from .improved import imp_decrypt_verify, imp_encrypt_sign, imp_public_verify, imp_release_proof
from .machen import mc_decrypt_verify, mc_encrypt_sign, mc_make_proof, mc_ttp_verify
from .numeric import ExpCounter, default_rng

CONFIG_ENV_VAR = "AEPV_CONFIG"

_EMBED_OVERHEAD = 3  # sentinel byte + 2-byte length header


class UsageError(Exception):
    """Raised for bad flag combinations or unusable inputs; exits 2."""


def embed_message(data: bytes, p: int) -> int:
    """Pack a byte message into [1, p-1]: 0x01 || len(2) || data, big-endian."""
    limit = max_message_bytes(p)
    if len(data) > limit:
        raise UsageError(f"message too long for this group: {len(data)} > {limit} bytes")
    return int.from_bytes(b"\x01" + len(data).to_bytes(2, "big") + data, "big")


def extract_message(m: int, p: int) -> bytes:
    blob = m.to_bytes((m.bit_length() + 7) // 8, "big")
    if len(blob) < _EMBED_OVERHEAD or blob[0] != 1:
        raise AuthenticationFailureError("recovered group element is not an embedded message")
    length = int.from_bytes(blob[1:3], "big")
    if length != len(blob) - _EMBED_OVERHEAD:
        raise AuthenticationFailureError("embedded message length header mismatch")
    return blob[3:]


def max_message_bytes(p: int) -> int:
    return (p.bit_length() - 1) // 8 - _EMBED_OVERHEAD


# --- file helpers ------------------------------------------------------------

def _write_armored(path: str, kind: str, data: bytes) -> None:
    Path(path).write_text(codec.armor(kind, data))


def _read_armored(path: str, kind: str) -> bytes:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    _, data = codec.dearmor(text, expected_kind=kind)
    return data


def _load_params(path: str) -> GroupParams:
    params = codec.decode_group_params(_read_armored(path, codec.KIND_GROUP_PARAMS))
    verdict = validate_params(params)
    if not verdict:
        raise UsageError(f"invalid group parameters in {path}: {verdict.failed}")
    return params


def _load_secret(path: str) -> KeyPair:
    return codec.decode_keypair(_read_armored(path, codec.KIND_SECRET_KEY))


def _load_public(path: str) -> int:
    return codec.decode_public_key(_read_armored(path, codec.KIND_PUBLIC_KEY))


@contextlib.contextmanager
def _registry_lock(registry_path: str):
    lock_path = registry_path + ".lock"
    fd = os.open(lock_path, os.O_CREAT | os.O_RDWR, 0o600)
    try:
        fcntl.flock(fd, fcntl.LOCK_EX)
        yield
    finally:
        fcntl.flock(fd, fcntl.LOCK_UN)
        os.close(fd)


def _load_registry(path: str, params: GroupParams, ca_mode: str) -> CaRegistry:
    if os.path.exists(path):
        with open(path) as fh:
            registry = CaRegistry.from_json_obj(json.load(fh))
        if registry.params != params:
            raise UsageError(f"registry {path} belongs to a different group")
        return registry
    return CaRegistry(params, require_pop=(ca_mode == "strict-pop"))


def _save_registry(path: str, registry: CaRegistry) -> None:
    with open(path, "w") as fh:
        json.dump(registry.to_json_obj(), fh, indent=1, sort_keys=True)
        fh.write("\n")


def _make_rng(args) -> random.Random:
    if args.seed is not None:
        if not args.insecure_test_seed:
            raise UsageError("--seed is for reproducible tests only; add --insecure-test-seed")
        return random.Random(args.seed)
    return default_rng()


# --- subcommands -------------------------------------------------------------

def cmd_gen_params(args) -> int:
    if args.toy:
        params = TOY_PARAMS
    else:
        try:
            params = generate_params(args.bits_p, args.bits_q, _make_rng(args))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    _write_armored(args.out, codec.KIND_GROUP_PARAMS, codec.encode_group_params(params))
    print(f"wrote group parameters (|p|={params.p.bit_length()}, |q|={params.q.bit_length()}) to {args.out}")
    return 0


def cmd_keygen(args) -> int:
    params = _load_params(args.params)
    pair = keygen(params, _make_rng(args))
    _write_armored(args.out_secret, codec.KIND_SECRET_KEY, codec.encode_keypair(pair))
    os.chmod(args.out_secret, 0o600)
    _write_armored(args.out_public, codec.KIND_PUBLIC_KEY, codec.encode_public_key(pair.y))
    print(f"wrote secret key to {args.out_secret} and public key to {args.out_public}")
    return 0


def cmd_register(args) -> int:
    params = _load_params(args.params)
    if args.secret:
        pair = _load_secret(args.secret)
        y = pair.y
    else:
        pair = None
        y = _load_public(args.public)
    with _registry_lock(args.registry):
        registry = _load_registry(args.registry, params, args.ca_mode)
        pop = None
        if registry.require_pop and pair is not None:
            pop = pop_prove(params, pair, args.identity, _make_rng(args))
        seq = registry.register(args.identity, y, pop=pop)
        _save_registry(args.registry, registry)
    print(f"registered {args.identity!r} with sequence number {seq}")
    return 0


def cmd_encrypt(args) -> int:
    params = _load_params(args.params)
    sender = _load_secret(args.sender_secret)
    receiver_pub = _load_public(args.receiver_public)
    data = _read_input_bytes(args)
    rng = _make_rng(args)
    if args.scheme == "machen":
        ct = mc_encrypt_sign(params, sender, receiver_pub, embed_message(data, params.p), rng)
        _write_armored(args.out, codec.KIND_MC_CIPHERTEXT, codec.encode_mc_ciphertext(ct))
    else:
        ct = imp_encrypt_sign(params, sender, receiver_pub, data, rng)
        _write_armored(args.out, codec.KIND_IMP_CIPHERTEXT, codec.encode_imp_ciphertext(ct))
    print(f"wrote {args.scheme} ciphertext to {args.out}")
    return 0


def cmd_decrypt(args) -> int:
    params = _load_params(args.params)
    receiver = _load_secret(args.receiver_secret)
    sender_pub = _load_public(args.sender_public)
    try:
        data = _decrypt_to_bytes(args, params, receiver, sender_pub)
    except (AuthenticationFailureError, CodecError) as exc:
        print(f"REJECTED: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_bytes(data)
        print(f"accepted; wrote plaintext to {args.out}")
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


def _decrypt_to_bytes(args, params, receiver, sender_pub) -> bytes:
    if args.scheme == "machen":
        raw = _read_armored(args.infile, codec.KIND_MC_CIPHERTEXT)
        ct = codec.decode_mc_ciphertext(raw, params)
        return extract_message(mc_decrypt_verify(params, receiver, sender_pub, ct), params.p)
    raw = _read_armored(args.infile, codec.KIND_IMP_CIPHERTEXT)
    ct = codec.decode_imp_ciphertext(raw, params)
    return imp_decrypt_verify(params, receiver, sender_pub, ct)


def cmd_prove(args) -> int:
    params = _load_params(args.params)
    receiver = _load_secret(args.receiver_secret)
    sender_pub = _load_public(args.sender_public)
    if args.scheme == "machen":
        raw = _read_armored(args.infile, codec.KIND_MC_CIPHERTEXT)
        ct = codec.decode_mc_ciphertext(raw, params)
        try:
            m = mc_decrypt_verify(params, receiver, sender_pub, ct)
        except AuthenticationFailureError as exc:
            print(f"REJECTED: cannot prove an unverified ciphertext: {exc}", file=sys.stderr)
            return 1
        proof = mc_make_proof(params, receiver, sender_pub, ct, m)
        _write_armored(args.out, codec.KIND_MC_PROOF, codec.encode_mc_proof(proof))
    else:
        raw = _read_armored(args.infile, codec.KIND_IMP_CIPHERTEXT)
        ct = codec.decode_imp_ciphertext(raw, params)
        try:
            m = imp_decrypt_verify(params, receiver, sender_pub, ct)
        except AuthenticationFailureError as exc:
            print(f"REJECTED: cannot prove an unverified ciphertext: {exc}", file=sys.stderr)
            return 1
        proof = imp_release_proof(ct, m)
        blob = codec.encode_public_proof(
            proof, fingerprint=codec.params_fingerprint(params), sender=args.sender_id
        )
        _write_armored(args.out, codec.KIND_PROOF, blob)
    print(f"wrote {args.scheme} proof to {args.out}")
    return 0


def cmd_verify(args) -> int:
    params = _load_params(args.params)
    sender_pub = _load_public(args.sender_public)
    if args.scheme == "machen":
        try:
            raw = _read_armored(args.infile, codec.KIND_MC_PROOF)
            proof = codec.decode_mc_proof(raw, params)
        except CodecError as exc:
            print(f"REJECTED: unreadable proof: {exc}", file=sys.stderr)
            return 1
        if mc_ttp_verify(params, sender_pub, proof):
            print("ACCEPTED: arbiter equation matched")
            return 0
        print(
            "REJECTED: arbiter equation did not match. This is the scheme's known\n"
            "arbiter flaw: K1 is reduced mod q before re-entering a mod-p product,\n"
            "so honest dispute bundles fail public verification.",
            file=sys.stderr,
        )
        return 1
    try:
        raw = _read_armored(args.infile, codec.KIND_PROOF)
        proof, fingerprint, sender_id = codec.decode_public_proof(raw)
    except CodecError as exc:
        print(f"REJECTED: unreadable proof: {exc}", file=sys.stderr)
        return 1
    if fingerprint and fingerprint != codec.params_fingerprint(params):
        raise UsageError("proof was issued under different group parameters")
    if imp_public_verify(params, sender_pub, proof):
        label = f" (sender id: {sender_id!r})" if sender_id else ""
        print(f"ACCEPTED: valid Schnorr signature over the released message{label}")
        return 0
    print("REJECTED: Schnorr verification failed", file=sys.stderr)
    return 1


def cmd_attack_demo(args) -> int:
    params = _load_params(args.params)
    alice_pub = _load_public(args.alice_public)
    rng = _make_rng(args)
    m = embed_message(args.message.encode(), params.p)
    with _registry_lock(args.registry):
        registry = _load_registry(args.registry, params, args.ca_mode)
        if registry.lookup("alice") is None:
            registry.register("alice", alice_pub)
        report = run_attack_scenario(params, registry, alice_pub, m, rng)
        _save_registry(args.registry, registry)
    print(report.render())
    return 0 if report.receiver_accepted else 1


def cmd_design_error_demo(args) -> int:
    from .machen import mc_make_proof_unreduced, mc_ttp_verify_unreduced

    params = _load_params(args.params)
    rng = _make_rng(args)
    alice = keygen(params, rng)
    bob = keygen(params, rng)
    rejected = accepted_diag = 0
    for i in range(args.runs):
        m = embed_message(f"honest run {i}".encode(), params.p)
        ct = mc_encrypt_sign(params, alice, bob.y, m, rng)
        recovered = mc_decrypt_verify(params, bob, alice.y, ct)
        assert recovered == m
        proof = mc_make_proof(params, bob, alice.y, ct, m)
        if not mc_ttp_verify(params, alice.y, proof):
            rejected += 1
        diag = mc_make_proof_unreduced(params, bob, alice.y, ct, m)
        if mc_ttp_verify_unreduced(params, alice.y, diag):
            accepted_diag += 1
    print("arbiter design-error demonstration")
    print(f"  honest runs: {args.runs} (every ciphertext accepted by the receiver)")
    print(f"  arbiter check as specified: rejected {rejected}/{args.runs} honest dispute bundles")
    print(f"  diagnostic with unreduced K1: accepted {accepted_diag}/{args.runs}")
    print("  conclusion: the premature mod-q reduction of K1 alone breaks public verification")
    return 0 if rejected == args.runs and accepted_diag == args.runs else 1


def cmd_bench(args) -> int:
    params = _load_params(args.params)
    rng = _make_rng(args)
    alice = keygen(params, rng)
    bob = keygen(params, rng)

    mc_msg = embed_message(b"bench", params.p)
    enc = ExpCounter()
    ct = mc_encrypt_sign(params, alice, bob.y, mc_msg, rng, counter=enc)
    dec = ExpCounter()
    m = mc_decrypt_verify(params, bob, alice.y, ct, counter=dec)
    prove = ExpCounter()
    proof = mc_make_proof(params, bob, alice.y, ct, m, counter=prove)
    ver = ExpCounter()
    mc_ttp_verify(params, alice.y, proof, counter=ver)
    mc_bits = len(codec.packed_encode_mc(ct, params)) * 8

    imp_msg = bytes(params.p_bytes)  # |m| = |p| so both numeric payloads compare
    ienc = ExpCounter()
    ict = imp_encrypt_sign(params, alice, bob.y, imp_msg, rng, counter=ienc)
    idec = ExpCounter()
    im = imp_decrypt_verify(params, bob, alice.y, ict, counter=idec)
    iprove = ExpCounter()
    iproof = imp_release_proof(ict, im)
    iver = ExpCounter()
    imp_public_verify(params, alice.y, iproof, counter=iver)
    imp_bits = len(codec.packed_encode_imp(ict, params)) * 8

    print(f"efficiency report (|p|={params.p.bit_length()}, |q|={params.q.bit_length()})")
    print(f"{'':22}{'ma-chen':>10}{'improved':>10}")
    print(f"{'encrypt+verify exps':22}{enc.count + dec.count:>10}{ienc.count + idec.count:>10}")
    print(f"{'proof conversion exps':22}{prove.count:>10}{iprove.count:>10}")
    print(f"{'public verify exps':22}{ver.count:>10}{iver.count:>10}")
    print(f"{'ciphertext bits':22}{mc_bits:>10}{imp_bits:>10}")
    return 0


def _read_input_bytes(args) -> bytes:
    try:
        return Path(args.infile).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {args.infile}: {exc}") from None


# --- parser ------------------------------------------------------------------

def _env_defaults() -> dict:
    path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return {}
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad config file {path}: {exc}") from None
    allowed = {"params", "registry", "scheme", "ca_mode"}
    return {k: v for k, v in obj.items() if k in allowed}


def _add_seed_flags(sub) -> None:
    sub.add_argument("--seed", type=int, default=None, help="deterministic RNG seed (tests only)")
    sub.add_argument(
        "--insecure-test-seed",
        action="store_true",
        help="acknowledge that a seeded run is not secure",
    )


def build_parser(defaults: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aepv",
        description="Authenticated encryption with public verifiability: "
        "the Ma-Chen scheme, its rogue-key forgery, and the Schnorr-based improvement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scheme_flag(p):
        p.add_argument(
            "--scheme",
            choices=["machen", "improved"],
            default=defaults.get("scheme"),
            required="scheme" not in defaults,
        )

    def params_flag(p):
        p.add_argument("--params", default=defaults.get("params"), required="params" not in defaults)

    p = sub.add_parser("gen-params", help="generate and write group parameters")
    p.add_argument("--bits-p", type=int, default=1024)
    p.add_argument("--bits-q", type=int, default=160)
    p.add_argument("--toy", action="store_true", help="emit the hand-checkable toy group (23, 11, 4)")
    p.add_argument("--out", required=True)
    _add_seed_flags(p)
    p.set_defaults(func=cmd_gen_params)

    p = sub.add_parser("keygen", help="generate a keypair")
    params_flag(p)
    p.add_argument("--out-secret", required=True)
    p.add_argument("--out-public", required=True)
    _add_seed_flags(p)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("register", help="register a public key with the CA registry")
    params_flag(p)
    p.add_argument("--registry", default=defaults.get("registry"), required="registry" not in defaults)
    p.add_argument("--identity", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--public", help="public key file (no proof of possession)")
    group.add_argument("--secret", help="secret key file (proof of possession generated)")
    p.add_argument("--ca-mode", choices=["default", "strict-pop"], default=defaults.get("ca_mode", "default"))
    _add_seed_flags(p)
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("encrypt", help="encrypt-and-sign a message file")
    scheme_flag(p)
    params_flag(p)
    p.add_argument("--sender-secret", required=True)
    p.add_argument("--receiver-public", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    _add_seed_flags(p)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt and authenticate a ciphertext file")
    scheme_flag(p)
    params_flag(p)
    p.add_argument("--receiver-secret", required=True)
    p.add_argument("--sender-public", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", help="write plaintext here instead of stdout")
    _add_seed_flags(p)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("prove", help="convert an accepted ciphertext into a dispute proof")
    scheme_flag(p)
    params_flag(p)
    p.add_argument("--receiver-secret", required=True)
    p.add_argument("--sender-public", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--sender-id", default="", help="sender label embedded in improved-scheme proofs")
    _add_seed_flags(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="publicly verify a dispute proof")
    scheme_flag(p)
    params_flag(p)
    p.add_argument("--sender-public", required=True)
    p.add_argument("--in", dest="infile", required=True)
    _add_seed_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("attack-demo", help="run the rogue-key forgery end to end")
    params_flag(p)
    p.add_argument("--alice-public", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--registry", default=defaults.get("registry"), required="registry" not in defaults)
    p.add_argument("--ca-mode", choices=["default", "strict-pop"], default=defaults.get("ca_mode", "default"))
    _add_seed_flags(p)
    p.set_defaults(func=cmd_attack_demo)

    p = sub.add_parser("design-error-demo", help="show the arbiter equation rejecting honest runs")
    params_flag(p)
    p.add_argument("--runs", type=int, default=10)
    _add_seed_flags(p)
    p.set_defaults(func=cmd_design_error_demo)

    p = sub.add_parser("bench", help="exponentiation counts and ciphertext sizes")
    params_flag(p)
    _add_seed_flags(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        defaults = _env_defaults()
        parser = build_parser(defaults)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CodecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AepvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
