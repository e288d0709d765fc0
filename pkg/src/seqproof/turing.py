"""Single-tape bounded-space Turing machines with step-exact execution traces.

The tape alphabet is {0, 1, left-end mark}; cell 0 always holds the mark and
is never overwritten, the head is clamped to [0, space).  Halting states are
absorbing: stepping a halted machine consumes a step and changes nothing,
which keeps run lengths exact for the delay-function cost model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

SYM_ZERO = 0
SYM_ONE = 1
SYM_MARK = 2

_SYM_TEXT = {SYM_ZERO: "0", SYM_ONE: "1", SYM_MARK: "^"}
_TEXT_SYM = {v: k for k, v in _SYM_TEXT.items()}
_DIR_TEXT = {-1: "L", 0: "S", 1: "R"}
_TEXT_DIR = {v: k for k, v in _DIR_TEXT.items()}

# configuration-count guard for the halting decider: |Q| * S * 2^S
MAX_DECIDER_BOUND = 1 << 28


class TmDescription:
    """A machine: state count, transition rule, halting predicate.

    `delta(q, sym) -> (q', sym', direction)` with direction in {-1, 0, +1};
    it is only consulted on non-halting states.  `table` and `halt_states`
    are populated for machines built from explicit rule tables.
    """

    def __init__(
        self,
        num_states: int,
        delta: Callable[[int, int], tuple[int, int, int]],
        is_halting: Callable[[int], bool],
        initial_state: int = 0,
        table: dict | None = None,
        halt_states: frozenset[int] | None = None,
    ):
        if num_states < 1:
            raise ValueError("need at least one state")
        if not 0 <= initial_state < num_states:
            raise ValueError("initial state out of range")
        self.num_states = num_states
        self.delta = delta
        self.is_halting = is_halting
        self.initial_state = initial_state
        self.table = table
        self.halt_states = halt_states

    @classmethod
    def from_table(
        cls,
        num_states: int,
        rules: dict[tuple[int, int], tuple[int, int, int]],
        halt_states,
        initial_state: int = 0,
    ) -> TmDescription:
        halt = frozenset(halt_states)
        for q in halt:
            if not 0 <= q < num_states:
                raise ValueError(f"halting state {q} out of range")
        for (q, sym), (q2, sym2, d) in rules.items():
            if not 0 <= q < num_states or not 0 <= q2 < num_states:
                raise ValueError(f"rule ({q},{sym}) references a state out of range")
            if q in halt:
                raise ValueError(f"rule from halting state {q}")
            if sym not in _SYM_TEXT or sym2 not in _SYM_TEXT:
                raise ValueError(f"rule ({q},{sym}) uses an unknown symbol")
            if d not in (-1, 0, 1):
                raise ValueError(f"rule ({q},{sym}) has direction {d}")
        table = dict(rules)

        def delta(q: int, sym: int) -> tuple[int, int, int]:
            try:
                return table[(q, sym)]
            except KeyError:
                raise ValueError(f"machine has no rule for state {q} reading {_SYM_TEXT[sym]}")

        return cls(
            num_states,
            delta,
            lambda q: q in halt,
            initial_state,
            table=table,
            halt_states=halt,
        )


@dataclass
class TmConfiguration:
    """Full machine state; owned by a single execution at a time."""

    state: int
    tape: list[int]
    head: int

    def __post_init__(self):
        if not self.tape or self.tape[0] != SYM_MARK:
            raise ValueError("tape must start with the left-end mark")
        if not 0 <= self.head < len(self.tape):
            raise ValueError("head outside the tape")

    def copy(self) -> TmConfiguration:
        return TmConfiguration(self.state, list(self.tape), self.head)


@dataclass
class StepTrace:
    """Per-step record: entry j is the value after j steps (entry 0 initial)."""

    states: list[int]
    scanned: list[int]


@dataclass
class RunResult:
    config: TmConfiguration
    trace: StepTrace | None
    steps: int


def initial_configuration(x: str, space: int, initial_state: int = 0) -> TmConfiguration:
    """Mark, then the input bits, zero-padded to the full tape; head at 0."""
    if space < 2:
        raise ValueError("need at least one work cell beyond the mark")
    if len(x) > space - 1:
        raise ValueError(f"input of {len(x)} bits does not fit in {space - 1} work cells")
    if any(c not in "01" for c in x):
        raise ValueError("input must be a bit string")
    tape = [SYM_MARK] + [int(c) for c in x] + [SYM_ZERO] * (space - 1 - len(x))
    return TmConfiguration(initial_state, tape, 0)


def tm_step(desc: TmDescription, config: TmConfiguration) -> TmConfiguration:
    """One step in place; a halting state absorbs (identical configuration)."""
    if desc.is_halting(config.state):
        return config
    q2, w, d = desc.delta(config.state, config.tape[config.head])
    if config.head:  # cell 0 keeps the mark
        config.tape[config.head] = w
    config.state = q2
    head = config.head + d
    last = len(config.tape) - 1
    config.head = 0 if head < 0 else last if head > last else head
    return config


def tm_run(
    desc: TmDescription,
    config: TmConfiguration,
    steps: int,
    record_trace: bool = False,
) -> RunResult:
    """Exactly `steps` steps (absorbing steps included), mutating `config`.

    With record_trace the result carries the state and the scanned symbol at
    every time offset 0..steps, which is what proof openings replay.
    """
    if steps < 0:
        raise ValueError("negative step count")
    delta = desc.delta
    halting = desc.is_halting
    state = config.state
    tape = config.tape
    head = config.head
    last = len(tape) - 1
    states = [state] if record_trace else None
    scanned = [tape[head]] if record_trace else None
    executed = 0
    while executed < steps:
        if halting(state):
            # absorbing: burn the remaining steps in one go
            remaining = steps - executed
            executed = steps
            if record_trace:
                states.extend([state] * remaining)
                scanned.extend([tape[head]] * remaining)
            break
        q2, w, d = delta(state, tape[head])
        if head:
            tape[head] = w
        state = q2
        head += d
        if head < 0:
            head = 0
        elif head > last:
            head = last
        executed += 1
        if record_trace:
            states.append(state)
            scanned.append(tape[head])
    config.state = state
    config.head = head
    trace = StepTrace(states, scanned) if record_trace else None
    return RunResult(config, trace, executed)


def decide_spacehalt(desc: TmDescription, x: str, space: int) -> bool:
    """Does the machine halt on x within `space` cells?

    Simulates for |Q| * S * 2^S steps: a run that long must revisit a
    configuration, so a machine not yet halted never halts.  The bound counts
    configurations of machines that never write the mark; keep inputs small,
    the product is capped at 2^28.
    """
    bound = desc.num_states * space * (1 << space)
    if bound > MAX_DECIDER_BOUND:
        raise ValueError(f"configuration bound {bound} exceeds 2^28")
    config = initial_configuration(x, space, desc.initial_state)
    delta = desc.delta
    halting = desc.is_halting
    state, tape, head = config.state, config.tape, config.head
    last = len(tape) - 1
    for _ in range(bound):
        if halting(state):
            return True
        q2, w, d = delta(state, tape[head])
        if head:
            tape[head] = w
        state = q2
        head += d
        if head < 0:
            head = 0
        elif head > last:
            head = last
    return halting(state)


# ── explicit machine text format ───────────────────────────────────────────


def parse_machine(text: str) -> TmDescription:
    """Parse the explicit machine format.

    Lines: 'states <count>', optional 'halt <q> ...', then rules
    'q sym -> q2 sym2 d' with sym in {0,1,^} ('^' is the left-end mark) and
    d in {L,S,R}.  '#' starts a comment.  State 0 is initial.
    """
    num_states = None
    halt_states: set[int] = set()
    rules: dict[tuple[int, int], tuple[int, int, int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "states":
            if num_states is not None:
                raise ValueError(f"line {line_no}: duplicate states line")
            if len(parts) != 2 or not parts[1].isdigit():
                raise ValueError(f"line {line_no}: expected 'states <count>'")
            num_states = int(parts[1])
            continue
        if parts[0] == "halt":
            try:
                halt_states.update(int(t) for t in parts[1:])
            except ValueError:
                raise ValueError(f"line {line_no}: non-integer halting state")
            continue
        if num_states is None:
            raise ValueError(f"line {line_no}: rule before 'states' line")
        if len(parts) != 6 or parts[2] != "->":
            raise ValueError(f"line {line_no}: expected 'q sym -> q2 sym2 d'")
        try:
            q, q2 = int(parts[0]), int(parts[3])
        except ValueError:
            raise ValueError(f"line {line_no}: non-integer state")
        if parts[1] not in _TEXT_SYM or parts[4] not in _TEXT_SYM:
            raise ValueError(f"line {line_no}: symbols must be 0, 1 or ^")
        if parts[5] not in _TEXT_DIR:
            raise ValueError(f"line {line_no}: direction must be L, S or R")
        key = (q, _TEXT_SYM[parts[1]])
        if key in rules:
            raise ValueError(f"line {line_no}: duplicate rule for {parts[0]} {parts[1]}")
        rules[key] = (q2, _TEXT_SYM[parts[4]], _TEXT_DIR[parts[5]])
    if num_states is None:
        raise ValueError("missing 'states' line")
    try:
        return TmDescription.from_table(num_states, rules, halt_states)
    except ValueError as exc:
        raise ValueError(str(exc))


def format_machine(desc: TmDescription) -> str:
    """Serialize a table-backed machine; parse(format(m)) behaves like m."""
    if desc.table is None:
        raise ValueError("only table-backed machines can be serialized")
    lines = [f"states {desc.num_states}"]
    if desc.halt_states:
        lines.append("halt " + " ".join(map(str, sorted(desc.halt_states))))
    for (q, sym), (q2, sym2, d) in sorted(desc.table.items()):
        lines.append(f"{q} {_SYM_TEXT[sym]} -> {q2} {_SYM_TEXT[sym2]} {_DIR_TEXT[d]}")
    return "\n".join(lines) + "\n"
