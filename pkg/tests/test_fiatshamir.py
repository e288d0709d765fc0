"""Message framing, payload codecs, and the three challenge sources."""

import random

import pytest
from hypothesis import given, strategies as st

from seqproof.field import UniPoly
from seqproof.fiatshamir import (
    MAGIC,
    MODE_FIAT_SHAMIR,
    MODE_INTERACTIVE,
    TAG_NAMES,
    TAG_SC_CHALLENGE,
    TAG_SC_CLAIM,
    TAG_SC_POLY,
    TQBF_ORACLE,
    VDF_ORACLE,
    DecodeError,
    FiatShamirChallenges,
    InteractiveChallenges,
    Message,
    RecordedChallenges,
    decode_file,
    decode_poly,
    decode_residue,
    decode_u64,
    encode_file,
    encode_message,
    encode_poly,
    encode_u64,
    ro_challenge,
    transcript_decode,
    transcript_encode,
)


def test_message_wire_format():
    # tag byte, 4-byte big-endian length, payload
    assert encode_message(TAG_SC_CLAIM, b"hi") == b"\x04\x00\x00\x00\x02hi"
    assert encode_message(TAG_SC_CLAIM, encode_u64(7)).hex() == (
        "04000000080000000000000007"
    )


def test_unregistered_tags_rejected():
    with pytest.raises(ValueError, match="unregistered"):
        encode_message(0xEE, b"")
    with pytest.raises(ValueError, match="unregistered"):
        Message(0xEE, b"")
    with pytest.raises(DecodeError, match="unregistered"):
        transcript_decode(b"\xee\x00\x00\x00\x00")


@given(
    st.lists(
        st.tuples(st.sampled_from(sorted(TAG_NAMES)), st.binary(max_size=40)),
        max_size=12,
    )
)
def test_framing_roundtrip(pairs):
    messages = [Message(tag, payload) for tag, payload in pairs]
    assert transcript_decode(transcript_encode(messages)) == messages
    assert decode_file(encode_file(messages)) == messages


def test_decode_rejects_malformed_streams():
    good = encode_message(TAG_SC_POLY, b"1234")
    with pytest.raises(DecodeError, match="magic"):
        decode_file(b"SEQPLOOF" + good)
    with pytest.raises(DecodeError, match="truncated message header"):
        transcript_decode(good + b"\x05\x00")
    with pytest.raises(DecodeError, match="truncated message payload"):
        transcript_decode(good[:-1])
    assert decode_file(MAGIC) == []


def test_u64_codec():
    assert decode_u64(encode_u64(2**64 - 1)) == 2**64 - 1
    with pytest.raises(DecodeError, match="8 bytes"):
        decode_u64(b"\x00" * 7)


def test_poly_codec_is_canonical():
    poly = UniPoly([3, 0, 5], 7)
    assert decode_poly(encode_poly(poly), 7).coeffs == (3, 0, 5)
    assert encode_poly(UniPoly([], 7)) == b"\x00\x00\x00\x00"
    with pytest.raises(DecodeError, match="trailing zero"):
        decode_poly(b"\x00\x00\x00\x01" + encode_u64(0), 7)
    with pytest.raises(DecodeError, match="outside the field"):
        decode_poly(b"\x00\x00\x00\x01" + encode_u64(9), 7)
    with pytest.raises(DecodeError, match="length mismatch"):
        decode_poly(b"\x00\x00\x00\x02" + encode_u64(1), 7)
    with pytest.raises(DecodeError, match="truncated"):
        decode_poly(b"\x00\x00", 7)


def test_residue_codec_checks_range():
    assert decode_residue(encode_u64(6), 7) == 6
    with pytest.raises(DecodeError, match="outside the field"):
        decode_residue(encode_u64(7), 7)


def test_ro_challenge_frozen_values():
    # sha256(domain || transcript) reduced mod the range, derived by hand
    assert ro_challenge(TQBF_ORACLE, b"abc", 97) == 58
    assert ro_challenge(VDF_ORACLE, b"abc", 97) == 54
    claim = encode_message(TAG_SC_CLAIM, encode_u64(7))
    assert ro_challenge(TQBF_ORACLE, claim, 1009) == 837
    assert ro_challenge(VDF_ORACLE, b"xyz", 32, lo=100) == 103


def test_ro_challenge_range_checks():
    assert ro_challenge(TQBF_ORACLE, b"", 1, lo=41) == 41
    with pytest.raises(ValueError, match="out of bounds"):
        ro_challenge(TQBF_ORACLE, b"", 0)
    with pytest.raises(ValueError, match="out of bounds"):
        ro_challenge(TQBF_ORACLE, b"", 1 << 128)


def test_domain_separation():
    sizes = (97, 1009, 2**40)
    assert all(
        ro_challenge(TQBF_ORACLE, b"shared", s) != ro_challenge(VDF_ORACLE, b"shared", s)
        for s in sizes
    )


def test_fiat_shamir_source_is_deterministic_and_order_sensitive():
    def run(order):
        src = FiatShamirChallenges(TQBF_ORACLE)
        for tag, payload in order:
            src.absorb(tag, payload)
        return src.challenge_mod(1009)

    a = [(TAG_SC_CLAIM, b"one"), (TAG_SC_POLY, b"two")]
    assert run(a) == run(a)
    assert run(a) != run(list(reversed(a)))
    # the tag participates, not just the payload bytes
    assert run([(TAG_SC_CLAIM, b"x")]) != run([(TAG_SC_POLY, b"x")])


def test_fiat_shamir_challenges_chain():
    src = FiatShamirChallenges(TQBF_ORACLE)
    src.absorb(TAG_SC_CLAIM, b"start")
    first = src.challenge_mod(1009)
    src.absorb(TAG_SC_CHALLENGE, encode_u64(first))
    second = src.challenge_interval(10, 50)
    assert 10 <= second < 60
    assert ro_challenge(
        TQBF_ORACLE,
        encode_message(TAG_SC_CLAIM, b"start")
        + encode_message(TAG_SC_CHALLENGE, encode_u64(first)),
        50,
        10,
    ) == second


def test_interactive_source_ignores_absorbs():
    a = InteractiveChallenges(5)
    b = InteractiveChallenges(random.Random(5))
    a.absorb(TAG_SC_CLAIM, b"noise")
    draws_a = [a.challenge_mod(101), a.challenge_interval(20, 10)]
    draws_b = [b.challenge_mod(101), b.challenge_interval(20, 10)]
    assert draws_a == draws_b
    assert 20 <= draws_a[1] < 30


def test_recorded_source_replays_then_runs_dry():
    src = RecordedChallenges([4, 9])
    src.absorb(TAG_SC_POLY, b"ignored")
    assert src.challenge_mod(101) == 4
    assert src.challenge_interval(0, 101) == 9
    with pytest.raises(DecodeError, match="ran out"):
        src.challenge_mod(101)


def test_mode_labels_distinct():
    assert MODE_INTERACTIVE != MODE_FIAT_SHAMIR
