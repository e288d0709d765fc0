"""Interactive proof that a quantified 3-CNF formula is true, over a prime field.

The statement "formula is true" becomes "a chained sum/product/linearization
of the arithmetized matrix evaluates to a nonzero field element".  The chain
interleaves one quantifier operator per variable with re-linearization passes
that keep round polynomials at low degree, so each round message is a short
univariate polynomial and the verifier's work stays polynomial.

Soundness rests on random verifier challenges; completeness is exact.  Three
cheating provers are included to measure the soundness error empirically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .field import PrimeField, UniPoly, lagrange_interpolate, sqrt_mod
from .fiatshamir import (
    TAG_SC_CHALLENGE,
    TAG_SC_CLAIM,
    TAG_SC_FORMULA,
    TAG_SC_POLY,
    TAG_SC_PRIME,
    FiatShamirChallenges,
    RecordedChallenges,
    TQBF_ORACLE,
    encode_poly,
    encode_u64,
)
from .qbf import Qbf, Quantifier, to_qdimacs

# reference evaluation is exponential in the quantifier count; keep it desk-scale
MAX_PROTOCOL_VARS = 12

MODE_INTERACTIVE = "interactive"
MODE_FIAT_SHAMIR = "fiat-shamir"


class OpKind(Enum):
    SUM = "sum"
    PROD = "prod"
    LIN = "lin"


@dataclass(frozen=True)
class Operator:
    """One chain entry: quantify or re-linearize variable `var` (1-based).

    `block` is the index of the quantifier whose pass this operator belongs
    to; the pass for the last variable is the final block, where round
    polynomials may reach degree 3m.
    """

    kind: OpKind
    var: int
    block: int


class ArithPoly:
    """Arithmetization of the 3-CNF matrix: product over clauses of
    1 - prod_literals (1 - value(literal)), with value(x)=x, value(not x)=1-x.

    On Boolean points this is exactly the 0/1 truth of the matrix; elsewhere
    it extends it to F_p with degree at most 3 per clause in each variable.
    """

    def __init__(self, formula: Qbf, p: int):
        self.formula = formula
        self.p = PrimeField(p).p
        self._clauses = tuple(
            tuple((lit.var - 1, lit.negated) for lit in cl.literals)
            for cl in formula.clauses
        )

    def evaluate(self, point) -> int:
        """Value at a full point; point[i-1] is the value bound to x_i."""
        p = self.p
        acc = 1
        for cl in self._clauses:
            miss = 1
            for idx, neg in cl:
                v = point[idx]
                lv = (1 - v) if neg else v
                miss = miss * (1 - lv) % p
            acc = acc * (1 - miss) % p
        return acc


def arithmetize(formula: Qbf, p: int) -> ArithPoly:
    return ArithPoly(formula, p)


def build_operator_chain(formula: Qbf) -> tuple[Operator, ...]:
    """Quantifier for x_i, then re-linearization of x_1..x_i, for each i.

    The chain has exactly n(n+3)/2 operators for n variables.
    """
    ops = []
    for i, q in enumerate(formula.quantifiers, start=1):
        kind = OpKind.SUM if q is Quantifier.EXISTS else OpKind.PROD
        ops.append(Operator(kind, i, i))
        for j in range(1, i + 1):
            ops.append(Operator(OpKind.LIN, j, i))
    return tuple(ops)


def round_degree_bound(op: Operator, formula: Qbf) -> int:
    """Largest degree the honest round polynomial can reach.

    Quantifier rounds follow a full linearization pass, so degree 1.  A
    linearization inside an inner block sees one later product, so degree 2.
    In the final block the raw matrix shows through: degree up to 3m.
    """
    if op.kind is not OpKind.LIN:
        return 1
    if op.block == formula.num_vars:
        return 3 * formula.num_clauses
    return 2


def eval_chain(ops, bindings, f: ArithPoly, start: int = 0) -> int:
    """Reference value of the operator suffix ops[start:] under bindings.

    bindings is a mutable list with bindings[i-1] holding the current value of
    x_i (None if unbound); it is restored before returning.  Sum and Prod bind
    their variable to both Booleans; Lin combines the two Boolean branches
    weighted by the current binding, collapsing to a single branch when that
    binding is itself Boolean.  Cost is 2^(remaining quantifiers) evaluations
    of f.
    """
    if start == len(ops):
        return f.evaluate(bindings)
    p = f.p
    op = ops[start]
    i = op.var - 1
    saved = bindings[i]
    if op.kind is OpKind.LIN:
        if saved is None:
            raise ValueError(f"Lin over unbound variable x{op.var}")
        if saved == 0 or saved == 1:
            return eval_chain(ops, bindings, f, start + 1)
        bindings[i] = 0
        g0 = eval_chain(ops, bindings, f, start + 1)
        bindings[i] = 1
        g1 = eval_chain(ops, bindings, f, start + 1)
        bindings[i] = saved
        return (saved * g1 + (1 - saved) * g0) % p
    bindings[i] = 0
    g0 = eval_chain(ops, bindings, f, start + 1)
    bindings[i] = 1
    g1 = eval_chain(ops, bindings, f, start + 1)
    bindings[i] = saved
    if op.kind is OpKind.SUM:
        return (g0 + g1) % p
    return g0 * g1 % p


def chain_value(formula: Qbf, p: int) -> int:
    """Value of the full chain; nonzero exactly when the formula is true
    (guaranteed for small formulas, where the integer value stays below p)."""
    f = arithmetize(formula, p)
    ops = build_operator_chain(formula)
    return eval_chain(ops, [None] * formula.num_vars, f)


def compute_round_poly(ops, k: int, bindings, f: ArithPoly, formula: Qbf) -> UniPoly:
    """Honest message for round k: the suffix after ops[k] as a univariate
    polynomial in ops[k]'s variable, built by interpolation at 0..degree."""
    op = ops[k]
    d = round_degree_bound(op, formula)
    i = op.var - 1
    saved = bindings[i]
    points = []
    for t in range(d + 1):
        bindings[i] = t
        points.append((t, eval_chain(ops, bindings, f, k + 1)))
    bindings[i] = saved
    return lagrange_interpolate(points, f.p)


# ── transcripts ────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class RoundMessage:
    position: int
    operator: Operator
    poly: UniPoly
    challenge: int


@dataclass(frozen=True)
class Transcript:
    formula: Qbf
    p: int
    claimed_value: int
    rounds: tuple[RoundMessage, ...]
    final_point: tuple[int, ...]
    mode: str = MODE_INTERACTIVE


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


def _check_statement(formula: Qbf, p: int) -> PrimeField:
    if formula.num_vars > MAX_PROTOCOL_VARS:
        raise ValueError(f"protocol capped at {MAX_PROTOCOL_VARS} variables")
    fld = PrimeField(p)
    least = (1 << formula.num_vars) * 3**formula.num_clauses
    if p < least:
        raise ValueError(f"prime {p} below the required 2^n*3^m = {least}")
    return fld


def default_prime(formula: Qbf) -> int:
    from .field import next_prime_at_least

    return next_prime_at_least((1 << formula.num_vars) * 3**formula.num_clauses)


def _combine(op: Operator, s: UniPoly, bindings, p: int) -> int:
    """What the running claim must equal if s is consistent with the chain."""
    if op.kind is OpKind.SUM:
        return (s.evaluate(0) + s.evaluate(1)) % p
    if op.kind is OpKind.PROD:
        return s.evaluate(0) * s.evaluate(1) % p
    r = bindings[op.var - 1]
    return (r * s.evaluate(1) + (1 - r) * s.evaluate(0)) % p


# ── prover sessions ────────────────────────────────────────────────────────


class HonestProver:
    """Round-by-round prover; subclasses override messages to cheat."""

    def __init__(self, formula: Qbf, p: int):
        _check_statement(formula, p)
        self.formula = formula
        self.p = p
        self.field = PrimeField(p)
        self.f = arithmetize(formula, p)
        self.ops = build_operator_chain(formula)
        self.bindings: list[int | None] = [None] * formula.num_vars
        self.honest_value = eval_chain(self.ops, self.bindings, self.f)

    def claimed_value(self) -> int:
        return self.honest_value

    def _honest_poly(self, k: int) -> UniPoly:
        return compute_round_poly(self.ops, k, self.bindings, self.f, self.formula)

    def round_poly(self, k: int) -> UniPoly:
        return self._honest_poly(k)

    def receive_challenge(self, k: int, r: int) -> None:
        self.bindings[self.ops[k].var - 1] = r


class _WrongClaimProver(HonestProver):
    """Announces honest value + 1, then at every round minimally bends the
    honest polynomial so the current check passes, falling back to honest play
    whenever a challenge happens to cancel the accumulated error."""

    def __init__(self, formula: Qbf, p: int):
        super().__init__(formula, p)
        self.claim = (self.honest_value + 1) % p
        self.running = self.claim
        self._sent: UniPoly | None = None

    def claimed_value(self) -> int:
        return self.claim

    def round_poly(self, k: int) -> UniPoly:
        op = self.ops[k]
        s = self._honest_poly(k)
        if _combine(op, s, self.bindings, self.p) != self.running:
            s = self._bend(op, s)
        self._sent = s
        return s

    def receive_challenge(self, k: int, r: int) -> None:
        self.running = self._sent.evaluate(r)
        super().receive_challenge(k, r)

    def _bend(self, op: Operator, s: UniPoly) -> UniPoly:
        fld = self.field
        target = self.running
        d = round_degree_bound(op, self.formula)
        v = [s.evaluate(j) for j in range(d + 1)]
        if op.kind is OpKind.SUM:
            v[0] = fld.sub(target, v[1])
        elif op.kind is OpKind.PROD:
            if v[1] != 0:
                v[0] = fld.div(target, v[1])
            elif v[0] != 0:
                v[1] = fld.div(target, v[0])
            else:
                v[0], v[1] = 1, target
        else:
            r_i = self.bindings[op.var - 1]
            if r_i != 1:
                v[0] = fld.div(fld.sub(target, fld.mul(r_i, v[1])), fld.sub(1, r_i))
            else:
                v[1] = target
        return lagrange_interpolate(list(enumerate(v)), self.p)


class _RandomRoundProver(HonestProver):
    """Honest everywhere except round k, where it sends a uniformly random
    polynomial within the degree bound."""

    def __init__(self, formula: Qbf, p: int, k: int, rng: random.Random):
        super().__init__(formula, p)
        if not 0 <= k < len(self.ops):
            raise ValueError(f"round {k} outside the chain of length {len(self.ops)}")
        self.k_target = k
        self.rng = rng

    def claimed_value(self) -> int:
        return self.honest_value if self.honest_value != 0 else 1

    def round_poly(self, k: int) -> UniPoly:
        if k == self.k_target:
            d = round_degree_bound(self.ops[k], self.formula)
            return UniPoly([self.rng.randrange(self.p) for _ in range(d + 1)], self.p)
        return self._honest_poly(k)


class _ConstantPolyProver(HonestProver):
    """Lazy prover: never evaluates the matrix, just sends the constant that
    splits the expected check value (square root for product rounds, where one
    exists)."""

    def __init__(self, formula: Qbf, p: int):
        super().__init__(formula, p)
        self.running = self.claimed_value()
        self._sent: UniPoly | None = None

    def claimed_value(self) -> int:
        return self.honest_value if self.honest_value != 0 else 1

    def round_poly(self, k: int) -> UniPoly:
        op = self.ops[k]
        y = self.running
        if op.kind is OpKind.SUM:
            c = self.field.div(y, 2)
        elif op.kind is OpKind.PROD:
            root = sqrt_mod(y, self.p)
            c = y if root is None else root
        else:
            c = y
        self._sent = UniPoly((c,), self.p)
        return self._sent

    def receive_challenge(self, k: int, r: int) -> None:
        self.running = self._sent.evaluate(r)
        super().receive_challenge(k, r)


# ── protocol drivers ───────────────────────────────────────────────────────


def _drive(session, formula: Qbf, p: int, challenges) -> Transcript:
    mode = MODE_FIAT_SHAMIR if isinstance(challenges, FiatShamirChallenges) else MODE_INTERACTIVE
    challenges.absorb(TAG_SC_PRIME, encode_u64(p))
    challenges.absorb(TAG_SC_FORMULA, to_qdimacs(formula).encode())
    y = session.claimed_value()
    challenges.absorb(TAG_SC_CLAIM, encode_u64(y))
    ops = build_operator_chain(formula)
    bindings: list[int | None] = [None] * formula.num_vars
    rounds = []
    for k, op in enumerate(ops):
        s = session.round_poly(k)
        challenges.absorb(TAG_SC_POLY, encode_poly(s))
        r = challenges.challenge_mod(p)
        challenges.absorb(TAG_SC_CHALLENGE, encode_u64(r))
        session.receive_challenge(k, r)
        bindings[op.var - 1] = r
        rounds.append(RoundMessage(k, op, s, r))
    return Transcript(formula, p, y, tuple(rounds), tuple(bindings), mode)


def sumcheck_prove(formula: Qbf, p: int, challenges) -> Transcript:
    """Honest prover against the given challenge source (verifier coins or a
    hash of the conversation).  The claim may be 0 for a false formula, in
    which case no verifier will accept the transcript."""
    return _drive(HonestProver(formula, p), formula, p, challenges)


def cheat_prover(
    strategy: str,
    formula: Qbf,
    p: int,
    challenges,
    prover_rng: random.Random | None = None,
) -> Transcript:
    """Run a dishonest prover; strategy is "wrong-claim", "constant-poly", or
    "random-round(k)" with k a 0-based round index."""
    name = strategy.strip()
    if name == "wrong-claim":
        session = _WrongClaimProver(formula, p)
    elif name == "constant-poly":
        session = _ConstantPolyProver(formula, p)
    elif name.startswith("random-round"):
        inner = name[len("random-round") :]
        if inner.startswith("(") and inner.endswith(")"):
            k = int(inner[1:-1])
        elif not inner:
            k = 0
        else:
            raise ValueError(f"unknown cheat strategy {strategy!r}")
        rng = prover_rng if prover_rng is not None else random.Random(0)
        session = _RandomRoundProver(formula, p, k, rng)
    else:
        raise ValueError(f"unknown cheat strategy {strategy!r}")
    return _drive(session, formula, p, challenges)


class _ReplaySession:
    def __init__(self, transcript: Transcript):
        self.transcript = transcript

    def claimed_value(self) -> int:
        return self.transcript.claimed_value

    def round_poly(self, k: int) -> UniPoly:
        return self.transcript.rounds[k].poly

    def receive_challenge(self, k: int, r: int) -> None:
        pass


def sumcheck_verify(formula: Qbf, p: int, prover, challenges=None) -> Verdict:
    """Check a completed transcript or interrogate a live prover session.

    For a transcript, challenges defaults to the recorded coins (interactive
    mode) or to re-derivation from the conversation hash (Fiat-Shamir mode,
    where any mismatch with the recorded challenge rejects).  For a live
    session a challenge source must be supplied.
    """
    _check_statement(formula, p)
    ops = build_operator_chain(formula)
    recorded = None

    if isinstance(prover, Transcript):
        t = prover
        if t.formula != formula or t.p != p:
            return Verdict(False, "statement-mismatch")
        if len(t.rounds) != len(ops) or not 0 <= t.claimed_value < p:
            return Verdict(False, "malformed-transcript")
        for k, (rm, op) in enumerate(zip(t.rounds, ops)):
            if rm.position != k or rm.operator != op:
                return Verdict(False, "malformed-transcript")
            if rm.poly.p != p or not 0 <= rm.challenge < p:
                return Verdict(False, "malformed-transcript")
        recorded = [rm.challenge for rm in t.rounds]
        session = _ReplaySession(t)
        if challenges is None:
            if t.mode == MODE_FIAT_SHAMIR:
                challenges = FiatShamirChallenges(TQBF_ORACLE)
            else:
                challenges = RecordedChallenges(recorded)
    else:
        session = prover
        if challenges is None:
            raise ValueError("a live prover session needs a challenge source")

    f = arithmetize(formula, p)
    challenges.absorb(TAG_SC_PRIME, encode_u64(p))
    challenges.absorb(TAG_SC_FORMULA, to_qdimacs(formula).encode())
    y = session.claimed_value()
    challenges.absorb(TAG_SC_CLAIM, encode_u64(y))
    if y % p == 0:
        return Verdict(False, "zero-claim")

    bindings: list[int | None] = [None] * formula.num_vars
    for k, op in enumerate(ops):
        s = session.round_poly(k)
        if s.degree > round_degree_bound(op, formula):
            return Verdict(False, "degree-overflow")
        if _combine(op, s, bindings, p) != y % p:
            return Verdict(False, "round-check")
        challenges.absorb(TAG_SC_POLY, encode_poly(s))
        r = challenges.challenge_mod(p)
        challenges.absorb(TAG_SC_CHALLENGE, encode_u64(r))
        if recorded is not None and recorded[k] != r:
            return Verdict(False, "challenge-mismatch")
        session.receive_challenge(k, r)
        bindings[op.var - 1] = r
        y = s.evaluate(r)

    if recorded is not None and prover.final_point != tuple(bindings):
        return Verdict(False, "malformed-transcript")
    if f.evaluate(bindings) != y:
        return Verdict(False, "final-check")
    return Verdict(True)
