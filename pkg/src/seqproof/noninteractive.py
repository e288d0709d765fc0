"""One-message proofs via hashed challenges, plus on-disk artifact formats.

The interactive protocols become single objects by drawing every verifier
coin from a hash of the conversation so far.  This module wraps the provers
and verifiers accordingly and fixes byte formats for shipping sum-check
transcripts and delay-function opening bundles between processes.  Every
decoder is strict: unknown tags, out-of-order messages, trailing bytes and
semantically broken payloads all raise DecodeError.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .fiatshamir import (
    TAG_MODE,
    TAG_NAMES,
    TAG_SC_CHALLENGE,
    TAG_SC_CLAIM,
    TAG_SC_FORMULA,
    TAG_SC_POLY,
    TAG_SC_PRIME,
    TAG_VDF_CHALLENGE,
    TAG_VDF_INPUT,
    TAG_VDF_OUTPUT,
    TAG_VDF_PP,
    TAG_VDF_PROOF,
    TQBF_ORACLE,
    VDF_ORACLE,
    DecodeError,
    FiatShamirChallenges,
    Message,
    decode_file,
    decode_poly,
    decode_u64,
    encode_file,
    encode_message,
    encode_poly,
    encode_u64,
    ro_challenge,
)
from .qbf import Qbf, QbfParseError, parse_qbf, to_qdimacs
from .shvdf import (
    VdfParams,
    VdfProof,
    VdfVerdict,
    params_from_bytes,
    params_to_bytes,
    proof_from_bytes,
    proof_to_bytes,
    vdf_eval,
    vdf_open,
    vdf_verify,
)
from .sumcheck import (
    MODE_FIAT_SHAMIR,
    MODE_INTERACTIVE,
    RoundMessage,
    Transcript,
    Verdict,
    build_operator_chain,
    default_prime,
    sumcheck_prove,
    sumcheck_verify,
)


def _decode_mode(payload: bytes) -> str:
    try:
        mode = payload.decode()
    except UnicodeDecodeError:
        raise DecodeError("unreadable mode payload")
    if mode not in (MODE_INTERACTIVE, MODE_FIAT_SHAMIR):
        raise DecodeError(f"unknown mode {mode!r}")
    return mode


def _expect(msgs: list[Message], i: int, tag: int) -> Message:
    if i >= len(msgs):
        raise DecodeError(f"transcript ends before the {TAG_NAMES[tag]} message")
    if msgs[i].tag != tag:
        raise DecodeError(
            f"expected {TAG_NAMES[tag]} message, found {TAG_NAMES[msgs[i].tag]}"
        )
    return msgs[i]


# ── hashed-challenge sum-check ─────────────────────────────────────────────


def fs_prove_tqbf(formula: Qbf, p: int | None = None) -> Transcript:
    """Prove membership with all challenges drawn from the hash oracle."""
    if p is None:
        p = default_prime(formula)
    return sumcheck_prove(formula, p, FiatShamirChallenges(TQBF_ORACLE))


def fs_verify_tqbf(formula: Qbf, transcript: Transcript, p: int | None = None) -> Verdict:
    """Re-derive every challenge from the hash and check the transcript.

    The prime travels with the transcript; an inadmissible one (wrong size,
    composite) rejects rather than raising.  Recorded challenges that do not
    match the re-derived ones reject, so interactive transcripts fail here.
    """
    if p is None:
        p = transcript.p
    try:
        return sumcheck_verify(formula, p, transcript, FiatShamirChallenges(TQBF_ORACLE))
    except ValueError:
        return Verdict(False, "statement-mismatch")


def transcript_to_messages(transcript: Transcript) -> list[Message]:
    msgs = [
        Message(TAG_MODE, transcript.mode.encode()),
        Message(TAG_SC_PRIME, encode_u64(transcript.p)),
        Message(TAG_SC_FORMULA, to_qdimacs(transcript.formula).encode()),
        Message(TAG_SC_CLAIM, encode_u64(transcript.claimed_value)),
    ]
    for rm in transcript.rounds:
        msgs.append(Message(TAG_SC_POLY, encode_poly(rm.poly)))
        msgs.append(Message(TAG_SC_CHALLENGE, encode_u64(rm.challenge)))
    return msgs


def transcript_from_messages(msgs: list[Message]) -> Transcript:
    mode = _decode_mode(_expect(msgs, 0, TAG_MODE).payload)
    p = decode_u64(_expect(msgs, 1, TAG_SC_PRIME).payload)
    if p < 2:
        raise DecodeError("modulus too small")
    raw = _expect(msgs, 2, TAG_SC_FORMULA).payload
    try:
        formula = parse_qbf(raw.decode())
    except (UnicodeDecodeError, QbfParseError) as exc:
        raise DecodeError(f"bad formula payload: {exc}")
    claim = decode_u64(_expect(msgs, 3, TAG_SC_CLAIM).payload)
    ops = build_operator_chain(formula)
    if len(msgs) != 4 + 2 * len(ops):
        raise DecodeError("round count does not match the formula")
    rounds = []
    bindings: list[int | None] = [None] * formula.num_vars
    for k, op in enumerate(ops):
        poly = decode_poly(_expect(msgs, 4 + 2 * k, TAG_SC_POLY).payload, p)
        r = decode_u64(_expect(msgs, 5 + 2 * k, TAG_SC_CHALLENGE).payload)
        rounds.append(RoundMessage(k, op, poly, r))
        bindings[op.var - 1] = r
    return Transcript(formula, p, claim, tuple(rounds), tuple(bindings), mode)


def transcript_to_bytes(transcript: Transcript) -> bytes:
    return encode_file(transcript_to_messages(transcript))


def transcript_from_bytes(data: bytes) -> Transcript:
    return transcript_from_messages(decode_file(data))


def save_transcript(path, transcript: Transcript) -> None:
    Path(path).write_bytes(transcript_to_bytes(transcript))


def load_transcript(path) -> Transcript:
    return transcript_from_bytes(Path(path).read_bytes())


# ── hashed-challenge delay-function openings ───────────────────────────────


@dataclass(frozen=True)
class VdfBundle:
    """Self-contained opening: parameters, input, output, challenge, proof."""

    params: VdfParams
    x: str
    output_value: int
    challenge: int
    proof: VdfProof
    mode: str = MODE_FIAT_SHAMIR


def fs_vdf_challenge(pp: VdfParams, x: str, output_value: int) -> int:
    """Hash parameters, input and output into a challenge step."""
    transcript = (
        encode_message(TAG_VDF_PP, params_to_bytes(pp))
        + encode_message(TAG_VDF_INPUT, x.encode())
        + encode_message(TAG_VDF_OUTPUT, encode_u64(output_value))
    )
    return ro_challenge(VDF_ORACLE, transcript, pp.lam, pp.num_steps - pp.lam)


def fs_vdf_open(pp: VdfParams, x: str) -> VdfBundle:
    """Evaluate, derive the challenge from the hash, and open at it."""
    out = vdf_eval(pp, x)
    t = fs_vdf_challenge(pp, x, out.value)
    return VdfBundle(pp, x, out.value, t, vdf_open(pp, x, t))


def fs_vdf_verify(bundle: VdfBundle) -> VdfVerdict:
    """Check the recorded challenge against the hash, then replay."""
    if bundle.mode != MODE_FIAT_SHAMIR:
        return VdfVerdict(False, 0, "mode-mismatch")
    t = fs_vdf_challenge(bundle.params, bundle.x, bundle.output_value)
    if t != bundle.challenge:
        return VdfVerdict(False, 0, "challenge-mismatch")
    return vdf_verify(bundle.params, bundle.x, bundle.output_value, t, bundle.proof)


def verify_bundle(bundle: VdfBundle) -> VdfVerdict:
    """Dispatch on the bundle's mode; interactive bundles trust their coin."""
    if bundle.mode == MODE_FIAT_SHAMIR:
        return fs_vdf_verify(bundle)
    return vdf_verify(
        bundle.params, bundle.x, bundle.output_value, bundle.challenge, bundle.proof
    )


def bundle_to_messages(bundle: VdfBundle) -> list[Message]:
    return [
        Message(TAG_MODE, bundle.mode.encode()),
        Message(TAG_VDF_PP, params_to_bytes(bundle.params)),
        Message(TAG_VDF_INPUT, bundle.x.encode()),
        Message(TAG_VDF_OUTPUT, encode_u64(bundle.output_value)),
        Message(TAG_VDF_CHALLENGE, encode_u64(bundle.challenge)),
        Message(TAG_VDF_PROOF, proof_to_bytes(bundle.params, bundle.proof)),
    ]


def bundle_from_messages(msgs: list[Message]) -> VdfBundle:
    if len(msgs) != 6:
        raise DecodeError(f"expected six bundle messages, found {len(msgs)}")
    mode = _decode_mode(_expect(msgs, 0, TAG_MODE).payload)
    pp = params_from_bytes(_expect(msgs, 1, TAG_VDF_PP).payload)
    try:
        x = _expect(msgs, 2, TAG_VDF_INPUT).payload.decode()
    except UnicodeDecodeError:
        raise DecodeError("unreadable input payload")
    if any(c not in "01" for c in x):
        raise DecodeError("input must be a bit string")
    if len(x) > pp.space - 1:
        raise DecodeError("input does not fit on the tape")
    y = decode_u64(_expect(msgs, 3, TAG_VDF_OUTPUT).payload)
    if y >= pp.num_states:
        raise DecodeError("output outside the machine")
    t = decode_u64(_expect(msgs, 4, TAG_VDF_CHALLENGE).payload)
    proof = proof_from_bytes(pp, _expect(msgs, 5, TAG_VDF_PROOF).payload)
    return VdfBundle(pp, x, y, t, proof, mode)


def bundle_to_bytes(bundle: VdfBundle) -> bytes:
    return encode_file(bundle_to_messages(bundle))


def bundle_from_bytes(data: bytes) -> VdfBundle:
    return bundle_from_messages(decode_file(data))


def save_bundle(path, bundle: VdfBundle) -> None:
    Path(path).write_bytes(bundle_to_bytes(bundle))


def load_bundle(path) -> VdfBundle:
    return bundle_from_bytes(Path(path).read_bytes())
