"""A delay function from seeded bounded-space machine runs, plus its break.

Eval runs a pseudorandomly wired machine for a fixed number of steps and
outputs the final control state; sequential work is measured in machine
steps throughout.  Open answers a challenge near the end of the run by
revealing the control state at the challenged step and the scanned symbols
from there on.  Verify replays that suffix through the transition rule
alone: it never re-derives the tape from the input, so the check costs at
most `lam` steps - and nothing ties the revealed symbols to the input.
vdf_attack exploits exactly that gap, forging accepting outputs after
`lam` steps of work instead of `num_steps`.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .fiatshamir import DecodeError, decode_u64, encode_u64
from .turing import (
    SYM_MARK,
    TmDescription,
    initial_configuration,
    tm_run,
)

FORMAT_VERSION = 1
MIN_SECURITY = 8
# state id plus write bit plus move bits must fit the 128-bit prf output
MAX_STATE_BITS = 120
DEFAULT_LOG2T_FACTOR = 1.0


# ── parameters and the seeded machine ──────────────────────────────────────


def _seeded_delta(seed: bytes, state_bits: int):
    """Transition rule keyed by (state, symbol) through sha256."""
    mask = (1 << state_bits) - 1

    def delta(q: int, sym: int) -> tuple[int, int, int]:
        digest = hashlib.sha256(seed + q.to_bytes(16, "big") + bytes([sym])).digest()
        bits = int.from_bytes(digest[:16], "big")
        next_q = bits & mask
        write = (bits >> state_bits) & 1
        move = ((bits >> (state_bits + 1)) % 3) - 1
        return next_q, write, move

    return delta


@dataclass(frozen=True)
class VdfParams:
    """Public parameters; `seed` wires the machine's transition rule.

    States are `state_bits`-bit integers, 0 is initial and 1..lam-1 are
    final (absorbing).  Challenges index one of the last `lam` steps of a
    `num_steps`-step run.
    """

    lam: int
    num_steps: int
    space: int
    state_bits: int
    seed: bytes

    def __post_init__(self):
        if self.lam < MIN_SECURITY:
            raise ValueError(f"security parameter must be at least {MIN_SECURITY}")
        if not 1 <= self.state_bits <= MAX_STATE_BITS:
            raise ValueError(f"state_bits must be in [1, {MAX_STATE_BITS}]")
        if self.lam >= (1 << self.state_bits):
            raise ValueError("final states would cover the whole state space")
        if self.num_steps <= self.lam:
            raise ValueError("step count must exceed the challenge window")
        if self.space < 2:
            raise ValueError("need at least one work cell beyond the mark")
        if not isinstance(self.seed, bytes):
            raise ValueError("seed must be bytes")

    @property
    def num_states(self) -> int:
        return 1 << self.state_bits

    def is_final(self, q: int) -> bool:
        return 0 < q < self.lam

    def challenge_window(self) -> range:
        return range(self.num_steps - self.lam, self.num_steps)

    def machine(self) -> TmDescription:
        return TmDescription(
            self.num_states,
            _seeded_delta(self.seed, self.state_bits),
            self.is_final,
        )


def vdf_setup(
    lam: int,
    log2_steps: int,
    space: int,
    seed: bytes | str,
    state_bits: int | None = None,
    max_log2_factor: float = DEFAULT_LOG2T_FACTOR,
) -> VdfParams:
    """Fix parameters for runs of 2**log2_steps steps.

    The exponent is capped at max_log2_factor * lam so the run length stays
    polynomial in the window size; raise the factor to go past it.
    """
    if isinstance(seed, str):
        seed = seed.encode()
    if log2_steps > max_log2_factor * lam:
        raise ValueError(
            f"log2 step count {log2_steps} exceeds {max_log2_factor} * lam; "
            "pass a larger max_log2_factor to override"
        )
    bits = lam if state_bits is None else state_bits
    return VdfParams(lam, 1 << log2_steps, space, bits, seed)


# ── outputs, proofs, verdicts ──────────────────────────────────────────────


@dataclass(frozen=True)
class VdfOutput:
    """Final control state plus the sequential steps spent producing it."""

    value: int
    steps: int


@dataclass(frozen=True)
class VdfProof:
    """Opening at challenge t: the control state after t steps and the
    scanned symbols at offsets t..num_steps (one per step plus the start)."""

    state_at_challenge: int
    scanned: tuple[int, ...]
    steps: int = field(default=0, compare=False)


@dataclass(frozen=True)
class VdfVerdict:
    accepted: bool
    steps: int
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


# ── evaluate / open / verify ───────────────────────────────────────────────


def vdf_eval(pp: VdfParams, x: str) -> VdfOutput:
    """Run the machine on input x for the full step count."""
    config = initial_configuration(x, pp.space)
    res = tm_run(pp.machine(), config, pp.num_steps)
    return VdfOutput(res.config.state, res.steps)


def vdf_open(pp: VdfParams, x: str, t: int) -> VdfProof:
    """Recompute the run and reveal the suffix the challenge asks for."""
    if t not in pp.challenge_window():
        raise ValueError(
            f"challenge {t} outside [{pp.num_steps - pp.lam}, {pp.num_steps - 1}]"
        )
    desc = pp.machine()
    config = initial_configuration(x, pp.space)
    prefix = tm_run(desc, config, t)
    state_at_t = config.state
    suffix = tm_run(desc, config, pp.num_steps - t, record_trace=True)
    return VdfProof(
        state_at_t, tuple(suffix.trace.scanned), steps=prefix.steps + suffix.steps
    )


def vdf_verify(pp: VdfParams, x: str, y: int, t: int, proof: VdfProof) -> VdfVerdict:
    """Replay the revealed suffix and compare the end state against y.

    The input x is part of the statement but the replay never consults it:
    the scanned symbols are taken from the proof on faith, which is the gap
    vdf_attack drives through.  Replay cost is at most `lam` steps.
    """
    if t not in pp.challenge_window():
        return VdfVerdict(False, 0, "challenge-out-of-range")
    span = pp.num_steps - t
    if len(proof.scanned) != span + 1:
        return VdfVerdict(False, 0, "trace-length")
    if not 0 <= proof.state_at_challenge < pp.num_states:
        return VdfVerdict(False, 0, "state-out-of-range")
    if any(not 0 <= s <= SYM_MARK for s in proof.scanned):
        return VdfVerdict(False, 0, "bad-symbol")
    desc = pp.machine()
    state = proof.state_at_challenge
    steps = 0
    for j in range(span):
        if not desc.is_halting(state):
            # the write and move have no tape to act on here; state is all
            # the verifier tracks
            state, _, _ = desc.delta(state, proof.scanned[j])
        steps += 1
    if state != y:
        return VdfVerdict(False, steps, "output-mismatch")
    return VdfVerdict(True, steps, None)


def sample_challenge(pp: VdfParams, rng: random.Random) -> int:
    return rng.randrange(pp.num_steps - pp.lam, pp.num_steps)


# ── the break ──────────────────────────────────────────────────────────────


@dataclass
class VdfForgery:
    """An accepting output built from a short run, plus its responder."""

    params: VdfParams
    output: VdfOutput
    start_state: int
    states: tuple[int, ...]
    scanned: tuple[int, ...]
    steps: int

    def respond(self, t: int) -> VdfProof:
        """Answer any in-window challenge from the recorded short run."""
        pp = self.params
        if t not in pp.challenge_window():
            raise ValueError("challenge outside the window")
        start = pp.lam - (pp.num_steps - t)
        return VdfProof(self.states[start], self.scanned[start : pp.lam + 1])


def vdf_attack(pp: VdfParams, x: str, rng: random.Random) -> VdfForgery:
    """Forge an accepting output with lam instead of num_steps steps of work.

    Start the machine in a random non-final state and run it for just lam
    steps.  Every challenge points into the last lam steps of the claimed
    run, so this short run already contains everything respond() must
    reveal, and the verifier's input-blind replay accepts it.
    """
    start = rng.randrange(pp.lam, pp.num_states)
    config = initial_configuration(x, pp.space, initial_state=start)
    res = tm_run(pp.machine(), config, pp.lam, record_trace=True)
    forged = VdfOutput(res.config.state, res.steps)
    return VdfForgery(
        pp, forged, start, tuple(res.trace.states), tuple(res.trace.scanned), res.steps
    )


# ── wire formats ───────────────────────────────────────────────────────────


def params_to_bytes(pp: VdfParams) -> bytes:
    return (
        encode_u64(FORMAT_VERSION)
        + encode_u64(pp.lam)
        + encode_u64(pp.num_steps)
        + encode_u64(pp.space)
        + encode_u64(pp.state_bits)
        + encode_u64(len(pp.seed))
        + pp.seed
    )


def params_from_bytes(data: bytes) -> VdfParams:
    if len(data) < 48:
        raise DecodeError("truncated parameters")
    version, lam, num_steps, space, state_bits, seed_len = (
        decode_u64(data[8 * i : 8 * i + 8]) for i in range(6)
    )
    if version != FORMAT_VERSION:
        raise DecodeError(f"unsupported parameter format version {version}")
    if len(data) != 48 + seed_len:
        raise DecodeError("parameter length mismatch")
    try:
        return VdfParams(lam, num_steps, space, state_bits, data[48:])
    except ValueError as exc:
        raise DecodeError(str(exc))


def _pack_symbols(syms) -> bytes:
    out = bytearray((len(syms) + 3) // 4)
    for i, s in enumerate(syms):
        out[i >> 2] |= s << ((i & 3) << 1)
    return bytes(out)


def proof_to_bytes(pp: VdfParams, proof: VdfProof) -> bytes:
    """Challenge state big-endian, then a count and two bits per symbol."""
    width = (pp.state_bits + 7) // 8
    return (
        proof.state_at_challenge.to_bytes(width, "big")
        + len(proof.scanned).to_bytes(4, "big")
        + _pack_symbols(proof.scanned)
    )


def proof_from_bytes(pp: VdfParams, data: bytes) -> VdfProof:
    width = (pp.state_bits + 7) // 8
    if len(data) < width + 4:
        raise DecodeError("truncated proof")
    state = int.from_bytes(data[:width], "big")
    if state >= pp.num_states:
        raise DecodeError("challenge state outside the machine")
    count = int.from_bytes(data[width : width + 4], "big")
    packed = data[width + 4 :]
    if len(packed) != (count + 3) // 4:
        raise DecodeError("proof length mismatch")
    syms = []
    for i in range(count):
        s = (packed[i >> 2] >> ((i & 3) << 1)) & 3
        if s > SYM_MARK:
            raise DecodeError("bad tape symbol")
        syms.append(s)
    if _pack_symbols(syms) != packed:
        raise DecodeError("nonzero padding bits")
    return VdfProof(state, tuple(syms))
