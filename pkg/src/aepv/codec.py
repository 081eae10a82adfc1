"""Bit-exact serialization for parameters, keys, ciphertexts, and proofs.

Two encodings:

* TLV (default file form, wrapped in armored text): every field is a
  record ``tag(1) || length(4, big-endian) || value``, integers as minimal
  big-endian magnitudes.  Extensible, self-describing, strict -- unknown
  tags, non-minimal integers, truncation, and trailing garbage are all
  distinct errors.

* packed: ciphertext numeric payloads only, no framing at all.  c takes
  exactly ceil(|p|/8) bytes and r, s exactly ceil(|q|/8) bytes each, which
  realizes the |p| + 2|q|-bit ciphertext size (1344 bits at 1024/160).

Armored text is the PEM-style ``-----BEGIN <KIND>-----`` / base64 body /
footer sandwich; round-trips are byte-exact, tolerant only of trailing
newline variations.
"""

from __future__ import annotations

import base64
import binascii
import hashlib
import re

from .errors import ArmorError, BadTagError, InvalidFieldError, TruncatedInputError
from .group import GroupParams, KeyPair
from .improved import ImprovedCiphertext, PublicProof, SchnorrSignature
from .machen import MaChenCiphertext, MaChenProof

KIND_GROUP_PARAMS = "GROUP PARAMS"
KIND_PUBLIC_KEY = "PUBLIC KEY"
KIND_SECRET_KEY = "SECRET KEY"
KIND_MC_CIPHERTEXT = "MC CIPHERTEXT"
KIND_IMP_CIPHERTEXT = "IMP CIPHERTEXT"
KIND_PROOF = "PROOF"
KIND_MC_PROOF = "MC PROOF"

FILE_EXTENSIONS = {
    KIND_GROUP_PARAMS: ".gp",
    KIND_PUBLIC_KEY: ".pk",
    KIND_SECRET_KEY: ".sk",
    KIND_MC_CIPHERTEXT: ".ct",
    KIND_IMP_CIPHERTEXT: ".ct",
    KIND_PROOF: ".proof",
    KIND_MC_PROOF: ".proof",
}

FINGERPRINT_BYTES = 16


# --- TLV primitives ----------------------------------------------------------

def _encode_int(value: int) -> bytes:
    if value < 0:
        raise InvalidFieldError("negative integer field")
    return value.to_bytes((value.bit_length() + 7) // 8, "big")


def _decode_int(blob: bytes) -> int:
    if len(blob) > 0 and blob[0] == 0:
        raise InvalidFieldError("integer field not minimally encoded")
    return int.from_bytes(blob, "big")


def _emit(tag: int, value: bytes) -> bytes:
    return bytes([tag]) + len(value).to_bytes(4, "big") + value


def _parse_records(data: bytes, expected_tags: tuple[int, ...]) -> list[bytes]:
    """Parse a TLV stream against an exact, ordered tag schema."""
    values: list[bytes] = []
    offset = 0
    for tag in expected_tags:
        if offset >= len(data):
            raise TruncatedInputError(f"record with tag 0x{tag:02x} missing")
        got = data[offset]
        if got != tag:
            raise BadTagError(f"expected tag 0x{tag:02x}, found 0x{got:02x}")
        if offset + 5 > len(data):
            raise TruncatedInputError("record header cut short")
        length = int.from_bytes(data[offset + 1 : offset + 5], "big")
        offset += 5
        if offset + length > len(data):
            raise TruncatedInputError(f"record with tag 0x{tag:02x} declares {length} bytes")
        values.append(data[offset : offset + length])
        offset += length
    if offset != len(data):
        raise BadTagError(f"unknown trailing record at offset {offset}")
    return values


def _require_range(name: str, value: int, lo: int, hi: int) -> int:
    if not lo <= value <= hi:
        raise InvalidFieldError(f"{name} out of range [{lo}, {hi}]")
    return value


# --- per-type TLV encodings --------------------------------------------------

_T_P, _T_Q, _T_G = 0x01, 0x02, 0x03
_T_Y = 0x10
_T_X = 0x11
_T_C, _T_R, _T_S = 0x20, 0x21, 0x22
_T_MDIGEST, _T_K1 = 0x40, 0x41
_T_FPR, _T_SENDER, _T_MSG = 0x50, 0x51, 0x52


def encode_group_params(params: GroupParams) -> bytes:
    return (
        _emit(_T_P, _encode_int(params.p))
        + _emit(_T_Q, _encode_int(params.q))
        + _emit(_T_G, _encode_int(params.g))
    )


def decode_group_params(data: bytes) -> GroupParams:
    p_raw, q_raw, g_raw = _parse_records(data, (_T_P, _T_Q, _T_G))
    p, q, g = _decode_int(p_raw), _decode_int(q_raw), _decode_int(g_raw)
    _require_range("p", p, 3, 1 << 65536)
    _require_range("q", q, 2, p)
    _require_range("g", g, 2, p - 1)
    return GroupParams(p=p, q=q, g=g)


def params_fingerprint(params: GroupParams) -> bytes:
    return hashlib.sha256(encode_group_params(params)).digest()[:FINGERPRINT_BYTES]


def encode_public_key(y: int) -> bytes:
    return _emit(_T_Y, _encode_int(y))


def decode_public_key(data: bytes) -> int:
    (y_raw,) = _parse_records(data, (_T_Y,))
    return _require_range("y", _decode_int(y_raw), 1, 1 << 65536)


def encode_keypair(keypair: KeyPair) -> bytes:
    return _emit(_T_X, _encode_int(keypair.x)) + _emit(_T_Y, _encode_int(keypair.y))


def decode_keypair(data: bytes) -> KeyPair:
    x_raw, y_raw = _parse_records(data, (_T_X, _T_Y))
    return KeyPair(x=_decode_int(x_raw), y=_decode_int(y_raw))


def encode_mc_ciphertext(ct: MaChenCiphertext) -> bytes:
    return (
        _emit(_T_C, _encode_int(ct.c))
        + _emit(_T_R, _encode_int(ct.r))
        + _emit(_T_S, _encode_int(ct.s))
    )


def decode_mc_ciphertext(data: bytes, params: GroupParams | None = None) -> MaChenCiphertext:
    c_raw, r_raw, s_raw = _parse_records(data, (_T_C, _T_R, _T_S))
    c, r, s = _decode_int(c_raw), _decode_int(r_raw), _decode_int(s_raw)
    if params is not None:
        _require_range("c", c, 1, params.p - 1)
        _require_range("r", r, 0, params.q - 1)
        _require_range("s", s, 0, params.q - 1)
    return MaChenCiphertext(c=c, r=r, s=s)


def encode_imp_ciphertext(ct: ImprovedCiphertext) -> bytes:
    return (
        _emit(_T_C, ct.c)
        + _emit(_T_R, _encode_int(ct.sig.r))
        + _emit(_T_S, _encode_int(ct.sig.s))
    )


def decode_imp_ciphertext(data: bytes, params: GroupParams | None = None) -> ImprovedCiphertext:
    c, r_raw, s_raw = _parse_records(data, (_T_C, _T_R, _T_S))
    r, s = _decode_int(r_raw), _decode_int(s_raw)
    if params is not None:
        _require_range("r", r, 0, params.q - 1)
        _require_range("s", s, 0, params.q - 1)
    return ImprovedCiphertext(c=c, sig=SchnorrSignature(r=r, s=s))


def encode_mc_proof(proof: MaChenProof) -> bytes:
    return (
        _emit(_T_MDIGEST, proof.m_digest)
        + _emit(_T_K1, _encode_int(proof.k1))
        + _emit(_T_R, _encode_int(proof.r))
        + _emit(_T_S, _encode_int(proof.s))
    )


def decode_mc_proof(data: bytes, params: GroupParams | None = None) -> MaChenProof:
    m_digest, k1_raw, r_raw, s_raw = _parse_records(data, (_T_MDIGEST, _T_K1, _T_R, _T_S))
    k1, r, s = _decode_int(k1_raw), _decode_int(r_raw), _decode_int(s_raw)
    if params is not None:
        # k1 is checked against p, not q: the unreduced diagnostic bundle
        # legitimately carries a Z_p value in this slot.
        _require_range("k1", k1, 0, params.p - 1)
        _require_range("r", r, 0, params.q - 1)
        _require_range("s", s, 0, params.q - 1)
    return MaChenProof(m_digest=m_digest, k1=k1, r=r, s=s)


def encode_public_proof(
    proof: PublicProof, fingerprint: bytes = b"", sender: str = ""
) -> bytes:
    """Self-contained proof file: group fingerprint + sender label + (m, r, s)."""
    return (
        _emit(_T_FPR, fingerprint)
        + _emit(_T_SENDER, sender.encode())
        + _emit(_T_MSG, proof.m)
        + _emit(_T_R, _encode_int(proof.sig.r))
        + _emit(_T_S, _encode_int(proof.sig.s))
    )


def decode_public_proof(data: bytes) -> tuple[PublicProof, bytes, str]:
    fpr, sender_raw, m, r_raw, s_raw = _parse_records(
        data, (_T_FPR, _T_SENDER, _T_MSG, _T_R, _T_S)
    )
    proof = PublicProof(m=m, sig=SchnorrSignature(r=_decode_int(r_raw), s=_decode_int(s_raw)))
    return proof, fpr, sender_raw.decode()


# --- generic dispatch --------------------------------------------------------

def encode(obj) -> tuple[str, bytes]:
    """Encode any domain object, returning its (kind, TLV bytes)."""
    if isinstance(obj, GroupParams):
        return KIND_GROUP_PARAMS, encode_group_params(obj)
    if isinstance(obj, KeyPair):
        return KIND_SECRET_KEY, encode_keypair(obj)
    if isinstance(obj, MaChenCiphertext):
        return KIND_MC_CIPHERTEXT, encode_mc_ciphertext(obj)
    if isinstance(obj, ImprovedCiphertext):
        return KIND_IMP_CIPHERTEXT, encode_imp_ciphertext(obj)
    if isinstance(obj, MaChenProof):
        return KIND_MC_PROOF, encode_mc_proof(obj)
    if isinstance(obj, PublicProof):
        return KIND_PROOF, encode_public_proof(obj)
    raise TypeError(f"no encoding for {type(obj).__name__}")


_DECODERS = {
    KIND_GROUP_PARAMS: lambda data, params: decode_group_params(data),
    KIND_PUBLIC_KEY: lambda data, params: decode_public_key(data),
    KIND_SECRET_KEY: lambda data, params: decode_keypair(data),
    KIND_MC_CIPHERTEXT: decode_mc_ciphertext,
    KIND_IMP_CIPHERTEXT: decode_imp_ciphertext,
    KIND_MC_PROOF: decode_mc_proof,
    KIND_PROOF: lambda data, params: decode_public_proof(data)[0],
}


def decode(kind: str, data: bytes, params: GroupParams | None = None):
    if kind not in _DECODERS:
        raise BadTagError(f"unknown kind {kind!r}")
    return _DECODERS[kind](data, params)


# --- packed numeric mode -----------------------------------------------------

def packed_encode_mc(ct: MaChenCiphertext, params: GroupParams) -> bytes:
    """Frameless c || r || s at fixed widths: ceil(|p|/8) + 2*ceil(|q|/8) bytes."""
    return (
        ct.c.to_bytes(params.p_bytes, "big")
        + ct.r.to_bytes(params.q_bytes, "big")
        + ct.s.to_bytes(params.q_bytes, "big")
    )


def packed_decode_mc(data: bytes, params: GroupParams) -> MaChenCiphertext:
    expected = params.p_bytes + 2 * params.q_bytes
    if len(data) != expected:
        raise TruncatedInputError(f"packed record must be {expected} bytes, got {len(data)}")
    wp, wq = params.p_bytes, params.q_bytes
    c = int.from_bytes(data[:wp], "big")
    r = int.from_bytes(data[wp : wp + wq], "big")
    s = int.from_bytes(data[wp + wq :], "big")
    _require_range("c", c, 1, params.p - 1)
    _require_range("r", r, 0, params.q - 1)
    _require_range("s", s, 0, params.q - 1)
    return MaChenCiphertext(c=c, r=r, s=s)


def packed_encode_imp(ct: ImprovedCiphertext, params: GroupParams) -> bytes:
    """c is carried verbatim (|c| = |m|); r and s at fixed ceil(|q|/8) widths."""
    return (
        ct.c
        + ct.sig.r.to_bytes(params.q_bytes, "big")
        + ct.sig.s.to_bytes(params.q_bytes, "big")
    )


def packed_decode_imp(data: bytes, params: GroupParams) -> ImprovedCiphertext:
    wq = params.q_bytes
    if len(data) < 2 * wq:
        raise TruncatedInputError(f"packed record needs at least {2 * wq} bytes, got {len(data)}")
    c = data[: len(data) - 2 * wq]
    r = int.from_bytes(data[len(c) : len(c) + wq], "big")
    s = int.from_bytes(data[len(c) + wq :], "big")
    _require_range("r", r, 0, params.q - 1)
    _require_range("s", s, 0, params.q - 1)
    return ImprovedCiphertext(c=c, sig=SchnorrSignature(r=r, s=s))


# --- armored text ------------------------------------------------------------

_ARMOR_LINE = 64
_KIND_RE = re.compile(r"^[A-Z ]+$")


def armor(kind: str, data: bytes) -> str:
    if not _KIND_RE.match(kind):
        raise ArmorError(f"bad kind {kind!r}")
    body = base64.b64encode(data).decode()
    lines = [body[i : i + _ARMOR_LINE] for i in range(0, len(body), _ARMOR_LINE)]
    return "\n".join([f"-----BEGIN {kind}-----", *lines, f"-----END {kind}-----"]) + "\n"


def dearmor(text: str, expected_kind: str | None = None) -> tuple[str, bytes]:
    lines = text.rstrip("\n").split("\n")
    if len(lines) < 2:
        raise ArmorError("armored text needs a header and a footer")
    header = re.fullmatch(r"-----BEGIN ([A-Z ]+)-----", lines[0])
    if not header:
        raise ArmorError(f"bad armor header: {lines[0]!r}")
    kind = header.group(1)
    if lines[-1] != f"-----END {kind}-----":
        raise ArmorError(f"bad armor footer: {lines[-1]!r}")
    if expected_kind is not None and kind != expected_kind:
        raise ArmorError(f"expected {expected_kind!r} armor, found {kind!r}")
    body = "".join(lines[1:-1])
    if any(len(line) > _ARMOR_LINE for line in lines[1:-1]):
        raise ArmorError("armor body lines must be at most 64 characters")
    try:
        data = base64.b64decode(body, validate=True)
    except (ValueError, binascii.Error) as exc:
        raise ArmorError(f"bad armor body: {exc}") from None
    return kind, data
