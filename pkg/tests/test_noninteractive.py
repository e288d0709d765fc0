import random

import pytest

from seqproof.fiatshamir import MAGIC, DecodeError, InteractiveChallenges, Message, TAG_MODE
from seqproof.noninteractive import (
    VdfBundle,
    bundle_from_bytes,
    bundle_from_messages,
    bundle_to_bytes,
    bundle_to_messages,
    fs_prove_tqbf,
    fs_vdf_challenge,
    fs_vdf_open,
    fs_vdf_verify,
    fs_verify_tqbf,
    load_bundle,
    load_transcript,
    save_bundle,
    save_transcript,
    transcript_from_bytes,
    transcript_to_bytes,
)
from seqproof.qbf import parse_qbf
from seqproof.shvdf import VdfParams, vdf_eval, vdf_open
from seqproof.sumcheck import sumcheck_prove

ALT_TRUE = parse_qbf("p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n")
GOLDEN = VdfParams(8, 16, 4, 8, b"golden")


def test_fs_prove_verify_roundtrip():
    tr = fs_prove_tqbf(ALT_TRUE, 37)
    assert tr.mode == "fiat-shamir"
    assert fs_verify_tqbf(ALT_TRUE, tr)
    # the whole object is a deterministic function of the statement
    assert fs_prove_tqbf(ALT_TRUE, 37) == tr


def test_fs_uses_default_prime():
    tr = fs_prove_tqbf(ALT_TRUE)
    assert tr.p == 37  # smallest prime >= 2^2 * 3^2
    assert fs_verify_tqbf(ALT_TRUE, tr)


def test_fs_rejects_interactive_coins():
    tr = sumcheck_prove(ALT_TRUE, 37, InteractiveChallenges(5))
    assert tr.mode == "interactive"
    verdict = fs_verify_tqbf(ALT_TRUE, tr)
    assert not verdict and verdict.reason == "challenge-mismatch"


def test_fs_rejects_bad_prime():
    tr = fs_prove_tqbf(ALT_TRUE, 37)
    verdict = fs_verify_tqbf(ALT_TRUE, tr, p=36)
    assert verdict.reason == "statement-mismatch"


def test_transcript_file_roundtrip(tmp_path):
    tr = fs_prove_tqbf(ALT_TRUE, 37)
    path = tmp_path / "alt.transcript"
    save_transcript(path, tr)
    assert load_transcript(path) == tr
    blob = transcript_to_bytes(tr)
    assert blob.startswith(MAGIC)
    assert transcript_from_bytes(blob) == tr


def test_transcript_decode_errors():
    tr = fs_prove_tqbf(ALT_TRUE, 37)
    blob = transcript_to_bytes(tr)
    with pytest.raises(DecodeError, match="magic"):
        transcript_from_bytes(b"NOTMAGIC" + blob[8:])
    with pytest.raises(DecodeError, match="truncated"):
        transcript_from_bytes(blob[:-3])
    # a trailing well-formed message (the final challenge repeated) is refused
    with pytest.raises(DecodeError, match="round count"):
        transcript_from_bytes(blob + blob[-13:])

    from seqproof.noninteractive import transcript_from_messages, transcript_to_messages

    msgs = transcript_to_messages(tr)
    with pytest.raises(DecodeError, match="expected mode"):
        transcript_from_messages(msgs[1:] + msgs[:1])
    with pytest.raises(DecodeError, match="unknown mode"):
        transcript_from_messages([Message(TAG_MODE, b"other")] + msgs[1:])
    with pytest.raises(DecodeError, match="round count"):
        transcript_from_messages(msgs[:-2])
    with pytest.raises(DecodeError, match="modulus"):
        bad = [msgs[0], Message(msgs[1].tag, (1).to_bytes(8, "big"))] + msgs[2:]
        transcript_from_messages(bad)
    with pytest.raises(DecodeError, match="bad formula"):
        bad = msgs[:2] + [Message(msgs[2].tag, b"p cnf oops")] + msgs[3:]
        transcript_from_messages(bad)


def test_fs_vdf_challenge_in_window_and_binding():
    t = fs_vdf_challenge(GOLDEN, "101", 4)
    assert t in GOLDEN.challenge_window()
    assert fs_vdf_challenge(GOLDEN, "101", 4) == t
    others = {
        fs_vdf_challenge(GOLDEN, "100", 4),
        fs_vdf_challenge(GOLDEN, "101", 5),
        fs_vdf_challenge(VdfParams(8, 16, 4, 8, b"other"), "101", 4),
    }
    assert all(u in GOLDEN.challenge_window() for u in others)


def test_fs_vdf_open_verify_roundtrip(tmp_path):
    bundle = fs_vdf_open(GOLDEN, "101")
    assert bundle.output_value == 4
    assert bundle.challenge == fs_vdf_challenge(GOLDEN, "101", 4)
    assert fs_vdf_verify(bundle)
    path = tmp_path / "opening.bundle"
    save_bundle(path, bundle)
    assert load_bundle(path) == bundle
    assert bundle_from_bytes(bundle_to_bytes(bundle)) == bundle


def test_interactive_bundle_dispatch():
    from seqproof.noninteractive import verify_bundle

    rng = random.Random(3)
    t = rng.randrange(8, 16)
    out = vdf_eval(GOLDEN, "101")
    bundle = VdfBundle(GOLDEN, "101", out.value, t, vdf_open(GOLDEN, "101", t), "interactive")
    assert verify_bundle(bundle)
    # the fs checker refuses to trust externally supplied coins
    assert fs_vdf_verify(bundle).reason == "mode-mismatch"
    assert bundle_from_bytes(bundle_to_bytes(bundle)) == bundle


def test_fs_vdf_verify_rejects_tampering():
    bundle = fs_vdf_open(GOLDEN, "101")
    wrong_coin = VdfBundle(
        bundle.params, bundle.x, bundle.output_value, bundle.challenge ^ 1, bundle.proof
    )
    assert fs_vdf_verify(wrong_coin).reason == "challenge-mismatch"
    # a changed output moves the hash-derived challenge, so the recorded one fails
    wrong_out = VdfBundle(
        bundle.params, bundle.x, bundle.output_value + 1, bundle.challenge, bundle.proof
    )
    assert fs_vdf_verify(wrong_out).reason == "challenge-mismatch"


def test_bundle_decode_errors():
    bundle = fs_vdf_open(GOLDEN, "101")
    msgs = bundle_to_messages(bundle)
    with pytest.raises(DecodeError, match="six bundle messages"):
        bundle_from_messages(msgs[:-1])
    with pytest.raises(DecodeError, match="bit string"):
        bad = msgs[:2] + [Message(msgs[2].tag, b"10x")] + msgs[3:]
        bundle_from_messages(bad)
    with pytest.raises(DecodeError, match="does not fit"):
        bad = msgs[:2] + [Message(msgs[2].tag, b"0101")] + msgs[3:]
        bundle_from_messages(bad)
    with pytest.raises(DecodeError, match="outside the machine"):
        bad = msgs[:3] + [Message(msgs[3].tag, (1 << 20).to_bytes(8, "big"))] + msgs[4:]
        bundle_from_messages(bad)


def _flip_rejects(blob: bytes, pos: int, mask: int, decode, check) -> bool:
    tampered = blob[:pos] + bytes([blob[pos] ^ mask]) + blob[pos + 1 :]
    try:
        obj = decode(tampered)
    except DecodeError:
        return True
    return not check(obj)


def test_transcript_tamper_sampling():
    tr = fs_prove_tqbf(ALT_TRUE, 37)
    blob = transcript_to_bytes(tr)
    rng = random.Random(2026)
    rejected = sum(
        _flip_rejects(
            blob,
            rng.randrange(len(blob)),
            rng.randrange(1, 256),
            transcript_from_bytes,
            lambda obj: fs_verify_tqbf(obj.formula, obj).accepted,
        )
        for _ in range(60)
    )
    assert rejected == 60


def test_bundle_tamper_sampling():
    blob = bundle_to_bytes(fs_vdf_open(GOLDEN, "101"))
    rng = random.Random(2027)
    rejected = sum(
        _flip_rejects(
            blob,
            rng.randrange(len(blob)),
            rng.randrange(1, 256),
            bundle_from_bytes,
            lambda obj: fs_vdf_verify(obj).accepted,
        )
        for _ in range(60)
    )
    # an input flip that leaves the hash-derived coin unchanged slips through
    # the input-blind replay; anything near that is a broken run
    assert rejected >= 59
