"""Lockstep automaton relating the curve index to its coordinates.

The machine reads triples of digits: one base-4 digit of the index n and
one base-2 digit each of x and y, most significant first, with the three
strings zero-padded to a common length.  It accepts exactly the triples
(n, x_n, y_n).  Because acceptance fixes the other two components once
one is known, the machine answers both lookups: coordinates from an index
and the index from coordinates, in time linear in the digit count.

Transitions not listed are dead; the dead state is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .dfao import from_base, to_base
from .oracle import Point
from .textfmt import ParseError, content_lines, header_fields, parse_int

Triple = tuple[int, int, int]


class NoAcceptingPathError(ValueError):
    """No accepted completion exists (broken automaton or off-relation query)."""


class MultipleAcceptingPathsError(ValueError):
    """Several accepted completions exist; the relation is not a function."""


@dataclass(frozen=True, eq=False)
class SyncAutomaton:
    """Deterministic automaton over digit triples with an implicit dead state."""

    bases: tuple[int, int, int]
    state_count: int
    initial: int
    accepting: frozenset[int]
    transitions: Mapping[tuple[int, Triple], int]
    # per-state arcs indexed by the first (index) digit, built once
    _arcs: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.initial < self.state_count:
            raise ValueError(f"initial state {self.initial} out of range")
        if not all(0 <= q < self.state_count for q in self.accepting):
            raise ValueError("accepting state out of range")
        for (q, triple), target in self.transitions.items():
            if not (0 <= q < self.state_count and 0 <= target < self.state_count):
                raise ValueError(f"transition ({q}, {triple}) -> {target} state out of range")
            if any(not 0 <= d < base for d, base in zip(triple, self.bases)):
                raise ValueError(f"transition digits {triple} out of range for bases {self.bases}")
        arcs = [[[] for _ in range(self.bases[0])] for _ in range(self.state_count)]
        for (q, (i, j, k)), target in sorted(self.transitions.items()):
            arcs[q][i].append((j, k, target))
        object.__setattr__(self, "_arcs", tuple(tuple(tuple(a) for a in per_state) for per_state in arcs))

    def __eq__(self, other):
        if not isinstance(other, SyncAutomaton):
            return NotImplemented
        return (self.bases, self.state_count, self.initial, self.accepting,
                dict(self.transitions)) == (other.bases, other.state_count,
                                            other.initial, other.accepting,
                                            dict(other.transitions))


_HILBERT_SYNC_ROWS: tuple[tuple[int, Triple, int], ...] = (
    (0, (0, 0, 0), 0),
    (0, (1, 0, 1), 3),
    (0, (1, 1, 0), 1),
    (0, (2, 1, 1), 5),
    (0, (3, 0, 1), 4),
    (0, (3, 1, 0), 2),
    (1, (0, 0, 0), 3),
    (1, (1, 1, 0), 6),
    (1, (2, 1, 1), 6),
    (1, (3, 0, 1), 7),
    (2, (0, 1, 1), 4),
    (2, (1, 0, 1), 8),
    (2, (2, 0, 0), 8),
    (2, (3, 1, 0), 9),
    (3, (0, 0, 0), 1),
    (3, (1, 0, 1), 9),
    (3, (2, 1, 1), 9),
    (3, (3, 1, 0), 8),
    (4, (0, 1, 1), 2),
    (4, (1, 1, 0), 7),
    (4, (2, 0, 0), 7),
    (4, (3, 0, 1), 6),
    (5, (0, 0, 0), 5),
    (5, (1, 0, 1), 9),
    (5, (1, 1, 0), 6),
    (5, (2, 1, 1), 0),
    (5, (3, 0, 1), 7),
    (5, (3, 1, 0), 8),
    (6, (0, 0, 0), 9),
    (6, (1, 1, 0), 1),
    (6, (2, 1, 1), 1),
    (6, (3, 0, 1), 4),
    (7, (0, 1, 1), 8),
    (7, (1, 1, 0), 4),
    (7, (2, 0, 0), 4),
    (7, (3, 0, 1), 1),
    (8, (0, 1, 1), 7),
    (8, (1, 0, 1), 2),
    (8, (2, 0, 0), 2),
    (8, (3, 1, 0), 3),
    (9, (0, 0, 0), 6),
    (9, (1, 0, 1), 3),
    (9, (2, 1, 1), 3),
    (9, (3, 1, 0), 2),
)


def hilbert_sync() -> SyncAutomaton:
    """The 10-state machine accepting exactly the (index, x, y) triples."""
    return SyncAutomaton(
        bases=(4, 2, 2),
        state_count=10,
        initial=0,
        accepting=frozenset({0, 2, 3, 5, 6, 7}),
        transitions={(q, triple): target for q, triple, target in _HILBERT_SYNC_ROWS},
    )


def accepts(machine: SyncAutomaton, n: int, x: int, y: int, *, length: int | None = None) -> bool:
    """Whether the triple (n, x, y) is accepted.

    The three digit strings are zero-padded to a common length (at least
    ``length`` when given, which only adds leading zeros).
    """
    bn, bx, by = machine.bases
    dn, dx, dy = to_base(n, bn), to_base(x, bx), to_base(y, by)
    t = max(len(dn), len(dx), len(dy), length or 1)
    dn = (0,) * (t - len(dn)) + dn
    dx = (0,) * (t - len(dx)) + dx
    dy = (0,) * (t - len(dy)) + dy
    state = machine.initial
    for triple in zip(dn, dx, dy):
        nxt = machine.transitions.get((state, triple))
        if nxt is None:
            return False
        state = nxt
    return state in machine.accepting


def _suffix_counts(machine: SyncAutomaton, layers: int, options) -> list[list[int]]:
    """counts[p][q] = number of accepted completions from state q at layer p.

    ``options(p, q)`` yields the successor states available at layer p.
    """
    counts = [[0] * machine.state_count for _ in range(layers + 1)]
    for q in machine.accepting:
        counts[layers][q] = 1
    for p in range(layers - 1, -1, -1):
        nxt = counts[p + 1]
        row = counts[p]
        for q in range(machine.state_count):
            row[q] = sum(nxt[target] for target in options(p, q))
    return counts


def sync_coords(machine: SyncAutomaton, n: int) -> Point:
    """The unique (x, y) accepted with index n.

    Layered search over the digits of n: arcs fix the index digit and
    choose the two coordinate bits, so the work is linear in the digit
    count.  Raises NoAcceptingPathError or MultipleAcceptingPathsError
    when the machine does not define exactly one pair.
    """
    digits = to_base(n, machine.bases[0])
    t = len(digits)
    arcs = machine._arcs

    def options(p, q):
        return (target for _, _, target in arcs[q][digits[p]])

    counts = _suffix_counts(machine, t, options)
    total = counts[0][machine.initial]
    if total == 0:
        raise NoAcceptingPathError(f"no coordinate pair accepted for index {n}")
    if total > 1:
        raise MultipleAcceptingPathsError(f"{total} coordinate pairs accepted for index {n}")
    state = machine.initial
    x = y = 0
    for p in range(t):
        for j, k, target in arcs[state][digits[p]]:
            if counts[p + 1][target]:
                x = 2 * x + j
                y = 2 * y + k
                state = target
                break
    return Point(x, y)


def sync_locate(machine: SyncAutomaton, x: int, y: int) -> int:
    """The unique index n accepted with coordinates (x, y).

    Same layered search with the coordinate bits fixed and the index digit
    chosen.
    """
    bn, bx, by = machine.bases
    dx, dy = to_base(x, bx), to_base(y, by)
    t = max(len(dx), len(dy))
    dx = (0,) * (t - len(dx)) + dx
    dy = (0,) * (t - len(dy)) + dy
    arcs = machine._arcs

    def options(p, q):
        return (target for i in range(bn) for j, k, target in arcs[q][i]
                if j == dx[p] and k == dy[p])

    counts = _suffix_counts(machine, t, options)
    total = counts[0][machine.initial]
    if total == 0:
        raise NoAcceptingPathError(f"no index accepted for coordinates ({x}, {y})")
    if total > 1:
        raise MultipleAcceptingPathsError(f"{total} indices accepted for coordinates ({x}, {y})")
    state = machine.initial
    digits = []
    for p in range(t):
        for i in range(bn):
            hit = next((target for j, k, target in arcs[state][i]
                        if j == dx[p] and k == dy[p] and counts[p + 1][target]), None)
            if hit is not None:
                digits.append(i)
                state = hit
                break
    return from_base(digits, bn)


def sync_to_text(machine: SyncAutomaton) -> str:
    """Serialize to the canonical text form."""
    bases = ",".join(str(b) for b in machine.bases)
    accepting = ",".join(str(q) for q in sorted(machine.accepting))
    lines = [
        f"sync bases={bases} states={machine.state_count} "
        f"initial={machine.initial} accepting={accepting}"
    ]
    for (q, (i, j, k)), target in sorted(machine.transitions.items()):
        lines.append(f"{q} [{i},{j},{k}] -> {target}")
    return "\n".join(lines) + "\n"


def sync_from_text(text: str) -> SyncAutomaton:
    """Parse the text form; raises ParseError with the offending line number."""
    lines = content_lines(text)
    if not lines:
        raise ParseError(0, "empty automaton file")
    lineno, header = lines[0]
    fields = header_fields(header, "sync", lineno)
    for key in ("bases", "states", "initial", "accepting"):
        if key not in fields:
            raise ParseError(lineno, f"missing header field {key!r}")
    bases = tuple(parse_int(tok, lineno, "base") for tok in fields["bases"].split(","))
    if len(bases) != 3:
        raise ParseError(lineno, f"expected three bases, got {fields['bases']!r}")
    count = parse_int(fields["states"], lineno, "state count")
    initial = parse_int(fields["initial"], lineno, "initial state")
    accepting = frozenset(
        parse_int(tok, lineno, "accepting state") for tok in fields["accepting"].split(",") if tok
    )

    transitions: dict[tuple[int, Triple], int] = {}
    for lineno, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 4 or tokens[2] != "->":
            raise ParseError(lineno, f"unrecognized line {line!r}")
        q = parse_int(tokens[0], lineno, "state id")
        raw = tokens[1]
        if not (raw.startswith("[") and raw.endswith("]")):
            raise ParseError(lineno, f"malformed digit triple {raw!r}")
        parts = raw[1:-1].split(",")
        if len(parts) != 3:
            raise ParseError(lineno, f"malformed digit triple {raw!r}")
        triple = tuple(parse_int(tok, lineno, "digit") for tok in parts)
        target = parse_int(tokens[3], lineno, "target state")
        if not (0 <= q < count and 0 <= target < count):
            raise ParseError(lineno, f"state out of range in {line!r}")
        if any(not 0 <= d < base for d, base in zip(triple, bases)):
            raise ParseError(lineno, f"digit triple {triple} out of range for bases {bases}")
        if (q, triple) in transitions:
            raise ParseError(lineno, f"duplicate transition ({q}, {list(triple)})")
        transitions[(q, triple)] = target
    return SyncAutomaton(bases=bases, state_count=count, initial=initial,
                         accepting=accepting, transitions=transitions)
