"""Canonical transcript encoding, hash-derived challenges, pluggable challenge sources.

Every protocol message is a (tag, payload) pair encoded as tag byte, 4-byte
big-endian length, payload.  The encoding is injective, so hashing the
concatenation commits to the whole conversation so far.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .field import UniPoly

MAGIC = b"SEQPROOF"

TAG_MODE = 0x01
TAG_SC_PRIME = 0x02
TAG_SC_FORMULA = 0x03
TAG_SC_CLAIM = 0x04
TAG_SC_POLY = 0x05
TAG_SC_CHALLENGE = 0x06
TAG_VDF_PP = 0x10
TAG_VDF_INPUT = 0x11
TAG_VDF_OUTPUT = 0x12
TAG_VDF_CHALLENGE = 0x13
TAG_VDF_PROOF = 0x14

TAG_NAMES = {
    TAG_MODE: "mode",
    TAG_SC_PRIME: "sc-prime",
    TAG_SC_FORMULA: "sc-formula",
    TAG_SC_CLAIM: "sc-claim",
    TAG_SC_POLY: "sc-poly",
    TAG_SC_CHALLENGE: "sc-challenge",
    TAG_VDF_PP: "vdf-pp",
    TAG_VDF_INPUT: "vdf-input",
    TAG_VDF_OUTPUT: "vdf-output",
    TAG_VDF_CHALLENGE: "vdf-challenge",
    TAG_VDF_PROOF: "vdf-proof",
}

MODE_INTERACTIVE = b"interactive"
MODE_FIAT_SHAMIR = b"fiat-shamir"

# reducing a 256-bit digest mod sizes below this keeps the bias negligible
MAX_CHALLENGE_RANGE = 1 << 128


class DecodeError(ValueError):
    """Malformed transcript bytes."""


@dataclass(frozen=True)
class Message:
    tag: int
    payload: bytes

    def __post_init__(self):
        if self.tag not in TAG_NAMES:
            raise ValueError(f"unregistered message tag {self.tag:#x}")
        if len(self.payload) >= 1 << 32:
            raise ValueError("payload too large for 4-byte length prefix")


def encode_message(tag: int, payload: bytes) -> bytes:
    if tag not in TAG_NAMES:
        raise ValueError(f"unregistered message tag {tag:#x}")
    return bytes([tag]) + len(payload).to_bytes(4, "big") + payload


def transcript_encode(messages) -> bytes:
    return b"".join(encode_message(m.tag, m.payload) for m in messages)


def transcript_decode(data: bytes) -> list[Message]:
    out = []
    pos = 0
    while pos < len(data):
        if pos + 5 > len(data):
            raise DecodeError("truncated message header")
        tag = data[pos]
        if tag not in TAG_NAMES:
            raise DecodeError(f"unregistered message tag {tag:#x}")
        length = int.from_bytes(data[pos + 1 : pos + 5], "big")
        pos += 5
        if pos + length > len(data):
            raise DecodeError("truncated message payload")
        out.append(Message(tag, data[pos : pos + length]))
        pos += length
    return out


def encode_file(messages) -> bytes:
    return MAGIC + transcript_encode(messages)


def decode_file(data: bytes) -> list[Message]:
    if data[: len(MAGIC)] != MAGIC:
        raise DecodeError("bad magic header")
    return transcript_decode(data[len(MAGIC) :])


# ── fixed-width payload codecs ─────────────────────────────────────────────


def encode_u64(n: int) -> bytes:
    return n.to_bytes(8, "big")


def decode_u64(data: bytes) -> int:
    if len(data) != 8:
        raise DecodeError(f"expected 8 bytes, got {len(data)}")
    return int.from_bytes(data, "big")


def encode_poly(poly: UniPoly) -> bytes:
    return len(poly.coeffs).to_bytes(4, "big") + b"".join(
        encode_u64(c) for c in poly.coeffs
    )


def decode_poly(data: bytes, p: int) -> UniPoly:
    if len(data) < 4:
        raise DecodeError("truncated polynomial")
    count = int.from_bytes(data[:4], "big")
    if len(data) != 4 + 8 * count:
        raise DecodeError("polynomial length mismatch")
    coeffs = [int.from_bytes(data[4 + 8 * i : 12 + 8 * i], "big") for i in range(count)]
    if any(c >= p for c in coeffs):
        raise DecodeError("coefficient outside the field")
    if coeffs and coeffs[-1] == 0:
        raise DecodeError("non-canonical trailing zero coefficient")
    return UniPoly(coeffs, p)


def decode_residue(data: bytes, p: int) -> int:
    v = decode_u64(data)
    if v >= p:
        raise DecodeError("residue outside the field")
    return v


# ── random oracle ──────────────────────────────────────────────────────────


@dataclass(frozen=True)
class OracleSpec:
    """Hash algorithm plus domain separator; distinct protocols never share one."""

    algorithm: str = "sha256"
    domain_separator: bytes = b""


TQBF_ORACLE = OracleSpec("sha256", b"TQBF-SC-v1")
VDF_ORACLE = OracleSpec("sha256", b"SHVDF-v1")


def ro_challenge(spec: OracleSpec, transcript: bytes, size: int, lo: int = 0) -> int:
    """Deterministic challenge in [lo, lo+size) from the transcript so far."""
    if not 1 <= size < MAX_CHALLENGE_RANGE:
        raise ValueError(f"challenge range size {size} out of bounds")
    h = hashlib.new(spec.algorithm)
    h.update(spec.domain_separator)
    h.update(transcript)
    return lo + int.from_bytes(h.digest(), "big") % size


# ── challenge sources fed to the protocol drivers ──────────────────────────


class InteractiveChallenges:
    """Fresh verifier coins from a seeded rng; ignores the conversation."""

    def __init__(self, rng: random.Random | int):
        self.rng = rng if isinstance(rng, random.Random) else random.Random(rng)

    def absorb(self, tag: int, payload: bytes) -> None:
        pass

    def challenge_mod(self, p: int) -> int:
        return self.rng.randrange(p)

    def challenge_interval(self, lo: int, size: int) -> int:
        return lo + self.rng.randrange(size)


class FiatShamirChallenges:
    """Challenges derived by hashing everything absorbed so far."""

    def __init__(self, spec: OracleSpec):
        self.spec = spec
        self._parts: list[bytes] = []

    def absorb(self, tag: int, payload: bytes) -> None:
        self._parts.append(encode_message(tag, payload))

    def transcript_bytes(self) -> bytes:
        return b"".join(self._parts)

    def challenge_mod(self, p: int) -> int:
        return ro_challenge(self.spec, self.transcript_bytes(), p)

    def challenge_interval(self, lo: int, size: int) -> int:
        return ro_challenge(self.spec, self.transcript_bytes(), size, lo)


class RecordedChallenges:
    """Replays challenges already fixed in a transcript."""

    def __init__(self, challenges):
        self._queue = list(challenges)
        self._next = 0

    def absorb(self, tag: int, payload: bytes) -> None:
        pass

    def _pop(self) -> int:
        if self._next >= len(self._queue):
            raise DecodeError("transcript ran out of recorded challenges")
        r = self._queue[self._next]
        self._next += 1
        return r

    def challenge_mod(self, p: int) -> int:
        return self._pop()

    def challenge_interval(self, lo: int, size: int) -> int:
        return self._pop()
