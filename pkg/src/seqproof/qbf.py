"""Quantified 3-CNF Boolean formulas: model, QDIMACS subset parser, brute-force truth.

The formula model is prenex 3-CNF with the quantifier at position i binding
variable x_i.  Short clauses are padded to exactly three literals by repeating
the last literal, which leaves satisfaction untouched.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

MAX_BRUTEFORCE_VARS = 24


class Quantifier(Enum):
    FORALL = "a"
    EXISTS = "e"


class QbfParseError(ValueError):
    """Raised on malformed QDIMACS input; message carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Literal:
    """A possibly negated variable; var is 1-based."""

    var: int
    negated: bool = False

    def value(self, assignment) -> int:
        """Truth value 0/1 under assignment (list indexed by var-1)."""
        v = assignment[self.var - 1]
        return 1 - v if self.negated else v

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    @classmethod
    def from_int(cls, n: int) -> Literal:
        if n == 0:
            raise ValueError("literal 0 is reserved as terminator")
        return cls(abs(n), n < 0)


@dataclass(frozen=True)
class Clause:
    """Disjunction of exactly three literals."""

    literals: tuple[Literal, Literal, Literal]

    def __post_init__(self):
        if len(self.literals) != 3:
            raise ValueError("a clause holds exactly three literals")

    def satisfied(self, assignment) -> bool:
        return any(lit.value(assignment) == 1 for lit in self.literals)


@dataclass(frozen=True)
class Qbf:
    """Prenex quantified 3-CNF formula.

    Attributes:
        num_vars: n >= 1; variables are x_1 .. x_n.
        quantifiers: length-n tuple; entry i-1 binds x_i.
        clauses: m >= 1 padded clauses over x_1 .. x_n.
    """

    num_vars: int
    quantifiers: tuple[Quantifier, ...]
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if len(self.quantifiers) != self.num_vars:
            raise ValueError("one quantifier per variable required")
        if not self.clauses:
            raise ValueError("need at least one clause")
        for cl in self.clauses:
            for lit in cl.literals:
                if not 1 <= lit.var <= self.num_vars:
                    raise ValueError(f"variable x{lit.var} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def _pad_clause(lits: list[Literal]) -> Clause:
    while len(lits) < 3:
        lits.append(lits[-1])
    return Clause(tuple(lits))


def parse_qbf(text: str) -> Qbf:
    """Parse the QDIMACS subset used throughout the package.

    Accepted lines, in order: 'c' comments anywhere, one 'p cnf <n> <m>'
    header, then 'a'/'e' quantifier lines (0-terminated, binding variables in
    increasing order starting at x_1), then m clause lines of one to three
    non-zero literals, each 0-terminated.

    Raises:
        QbfParseError: on any syntax error, a variable out of range, a clause
            longer than three literals, a clause/quantifier count mismatch, or
            a variable left free by the prefix.  Messages name the line.
    """
    n = m = None
    quantifiers: list[Quantifier] = []
    clauses: list[Clause] = []
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("c"):
            continue

        if line.startswith("p"):
            if n is not None:
                raise QbfParseError(line_no, "duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise QbfParseError(line_no, f"malformed header {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise QbfParseError(line_no, f"non-integer counts in header {line!r}")
            if n < 1 or m < 1:
                raise QbfParseError(line_no, "need at least one variable and one clause")
            continue

        if n is None:
            raise QbfParseError(line_no, "content before 'p cnf' header")

        if line[0] in "ae":
            if clauses:
                raise QbfParseError(line_no, "quantifier line after first clause")
            parts = line.split()
            try:
                nums = [int(t) for t in parts[1:]]
            except ValueError:
                raise QbfParseError(line_no, f"non-integer token on quantifier line {line!r}")
            if len(parts[0]) != 1 or not nums or nums[-1] != 0:
                raise QbfParseError(line_no, "quantifier line must end with 0")
            q = Quantifier.FORALL if parts[0] == "a" else Quantifier.EXISTS
            for v in nums[:-1]:
                if v != len(quantifiers) + 1:
                    raise QbfParseError(
                        line_no,
                        f"quantifier lines must bind x1..x{n} in order, got {v} "
                        f"where x{len(quantifiers) + 1} was expected",
                    )
                if v > n:
                    raise QbfParseError(line_no, f"variable x{v} out of range (n={n})")
                quantifiers.append(q)
            continue

        # anything else must be a clause line
        try:
            nums = [int(t) for t in line.split()]
        except ValueError:
            raise QbfParseError(line_no, f"unrecognized line {line!r}")
        if not nums or nums[-1] != 0:
            raise QbfParseError(line_no, "clause line must end with 0")
        body = nums[:-1]
        if not body:
            raise QbfParseError(line_no, "empty clause")
        if len(body) > 3:
            raise QbfParseError(line_no, f"clause has {len(body)} literals, at most 3 allowed")
        if any(v == 0 for v in body):
            raise QbfParseError(line_no, "literal 0 inside clause body")
        for v in body:
            if abs(v) > n:
                raise QbfParseError(line_no, f"variable x{abs(v)} out of range (n={n})")
        clauses.append(_pad_clause([Literal.from_int(v) for v in body]))

    if n is None:
        raise QbfParseError(last_line or 1, "missing 'p cnf' header")
    if len(quantifiers) < n:
        raise QbfParseError(last_line, f"free variable x{len(quantifiers) + 1} (not covered by prefix)")
    if len(clauses) != m:
        raise QbfParseError(last_line, f"header declared {m} clauses, found {len(clauses)}")

    return Qbf(n, tuple(quantifiers), tuple(clauses))


def to_qdimacs(formula: Qbf) -> str:
    """Serialize back to the QDIMACS subset; parse(to_qdimacs(f)) == f."""
    lines = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    run_q = None
    run_vars: list[int] = []
    for i, q in enumerate(formula.quantifiers, start=1):
        if q is not run_q and run_vars:
            lines.append(f"{run_q.value} {' '.join(map(str, run_vars))} 0")
            run_vars = []
        run_q = q
        run_vars.append(i)
    lines.append(f"{run_q.value} {' '.join(map(str, run_vars))} 0")
    for cl in formula.clauses:
        lines.append(f"{' '.join(str(lit.to_int()) for lit in cl.literals)} 0")
    return "\n".join(lines) + "\n"


def eval_qbf_bruteforce(formula: Qbf) -> bool:
    """Ground truth by quantifier recursion over all assignments (n <= 24)."""
    n = formula.num_vars
    if n > MAX_BRUTEFORCE_VARS:
        raise ValueError(f"brute force capped at {MAX_BRUTEFORCE_VARS} variables, got {n}")
    quantifiers = formula.quantifiers
    clauses = formula.clauses
    assignment = [0] * n

    def rec(i: int) -> bool:
        if i == n:
            return all(cl.satisfied(assignment) for cl in clauses)
        exists = quantifiers[i] is Quantifier.EXISTS
        for b in (0, 1):
            assignment[i] = b
            ok = rec(i + 1)
            if exists and ok:
                return True
            if not exists and not ok:
                return False
        return not exists

    return rec(0)


def random_qbf(rng: random.Random, num_vars: int, num_clauses: int) -> Qbf:
    """Uniform-ish random formula: coin-flip quantifiers, 3 uniform literals per clause."""
    quantifiers = tuple(rng.choice((Quantifier.FORALL, Quantifier.EXISTS)) for _ in range(num_vars))
    clauses = []
    for _ in range(num_clauses):
        lits = tuple(
            Literal(rng.randrange(1, num_vars + 1), rng.random() < 0.5) for _ in range(3)
        )
        clauses.append(Clause(lits))
    return Qbf(num_vars, quantifiers, tuple(clauses))


def sample_distinct_qbfs(max_vars: int, max_clauses: int, count: int, seed: int = 0):
    """Deterministic stream of structurally distinct formulas within the size box."""
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < count:
        n = rng.randrange(1, max_vars + 1)
        m = rng.randrange(1, max_clauses + 1)
        f = random_qbf(rng, n, m)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out
