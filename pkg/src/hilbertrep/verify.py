"""Bounded exhaustive checks tying the four representations together.

Each unbounded statement about the curve is replayed here as an
exhaustive check up to a configurable bound: the letter identities that
pin down the digit automaton, the functional and space-filling properties
of the synchronized automaton, and the cross-representation agreement
battery.  Checks are deterministic, iterate in increasing order so a
failure reports its smallest witness, and are independent of one another.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dfao import Dfao, dfao_equal, eval_dfao, hilbert_dfao
from .linrep import (
    difference_rep,
    eval_linrep,
    hilbert_linrep,
    increment_transducer,
    minimize_rep,
    semigroup_trick,
    transduce_rep,
)
from .oracle import STEP, Coding, Direction, generate_generation, hc_prefix, recode, walk
from .sync import (
    MultipleAcceptingPathsError,
    NoAcceptingPathError,
    SyncAutomaton,
    accepts,
    hilbert_sync,
    sync_coords,
    sync_locate,
)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one bounded check; the witness is the smallest failure."""

    name: str
    bound: int
    passed: bool
    counterexample: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.counterexample is None) != self.passed:
            raise ValueError("counterexample must be present exactly when the check failed")


def format_report(report: VerifyReport) -> str:
    witness = "none" if report.counterexample is None else \
        "(" + ",".join(str(v) for v in report.counterexample) + ")"
    passed = "true" if report.passed else "false"
    return f"name={report.name} bound={report.bound} passed={passed} witness={witness}"


def _report(name: str, bound: int, witness: tuple[int, ...] | None) -> VerifyReport:
    return VerifyReport(name=name, bound=bound, passed=witness is None, counterexample=witness)


def verify_identities(max_gen: int, *, machine: Dfao | None = None) -> list[VerifyReport]:
    """Check the letter identities that characterize the curve word.

    The machine's letters are checked, for every n up to ``max_gen`` with
    x = 4**n, against: the first letter is U; letters x..2x-1 are the
    diagonal recoding of letters 0..x-1; letters 2x..3x-2 likewise recode
    letters 0..x-2; letter 3x-1 is L for odd n and D for even n; letters
    3x..4x-2 are the half-turn recoding of letters 0..x-2; and letter
    x-1 is R for odd n and U for even n.
    """
    m = hilbert_dfao() if machine is None else machine
    length = 4 ** (max_gen + 1) - 1
    letters = [eval_dfao(m, n) for n in range(length)]

    def scan_range(offset_factor: int, upto_minus: int, coding: Coding) -> tuple[int, ...] | None:
        for n in range(max_gen + 1):
            x = 4 ** n
            for t in range(x - upto_minus):
                if letters[offset_factor * x + t] != recode(coding, letters[t]):
                    return (n, t)
        return None

    def scan_point(position, expected_odd: Direction, expected_even: Direction) -> tuple[int, ...] | None:
        for n in range(max_gen + 1):
            expected = expected_odd if n % 2 == 1 else expected_even
            if letters[position(n)] != expected:
                return (n,)
        return None

    reports = [
        _report("origin_letter", max_gen,
                None if letters[0] == Direction.U else (0,)),
        _report("second_quarter_diagonal", max_gen, scan_range(1, 0, Coding.DIAGONAL)),
        _report("third_quarter_diagonal", max_gen, scan_range(2, 1, Coding.DIAGONAL)),
        _report("third_quarter_boundary", max_gen,
                scan_point(lambda n: 3 * 4 ** n - 1, Direction.L, Direction.D)),
        _report("fourth_quarter_rotation", max_gen, scan_range(3, 1, Coding.HALF_TURN)),
        _report("block_boundary", max_gen,
                scan_point(lambda n: 4 ** n - 1, Direction.R, Direction.U)),
    ]
    return sorted(reports, key=lambda r: r.name)


def verify_sync_suite(t: int, *, machine: SyncAutomaton | None = None,
                      letters_machine: Dfao | None = None) -> list[VerifyReport]:
    """Check the synchronized automaton's function and space-filling claims.

    Over all n < 4**t: exactly one coordinate pair is accepted, it matches
    the walked curve, consecutive pairs differ by the unit step named by
    the letter automaton (one check per direction), the map onto the
    2**t x 2**t grid is a bijection, locate inverts the coordinate lookup,
    the origin triple is accepted, and leading-zero padding is inert.
    """
    m = hilbert_sync() if machine is None else machine
    dm = hilbert_dfao() if letters_machine is None else letters_machine
    count = 4 ** t
    side = 2 ** t
    points = walk(generate_generation(t))

    pairs: list[tuple[int, int] | None] = []
    undefined: tuple[int, ...] | None = None
    ambiguous: tuple[int, ...] | None = None
    for n in range(count):
        try:
            pairs.append(tuple(sync_coords(m, n)))
        except NoAcceptingPathError:
            pairs.append(None)
            if undefined is None:
                undefined = (n,)
        except MultipleAcceptingPathsError:
            pairs.append(None)
            if ambiguous is None:
                ambiguous = (n,)

    agreement: tuple[int, ...] | None = None
    for n, pair in enumerate(pairs):
        if pair is not None and pair != tuple(points[n]):
            agreement = (n,)
            break

    step_witness: dict[Direction, tuple[int, ...] | None] = {d: None for d in Direction}
    for n in range(count - 1):
        a, b = pairs[n], pairs[n + 1]
        if a is None or b is None:
            continue
        delta = (b[0] - a[0], b[1] - a[1])
        letter = eval_dfao(dm, n)
        for direction in Direction:
            matches = (letter == direction) == (delta == STEP[direction])
            if not matches and step_witness[direction] is None:
                step_witness[direction] = (n,)

    seen: dict[tuple[int, int], int] = {}
    collision: tuple[int, ...] | None = None
    for n, pair in enumerate(pairs):
        if pair is None:
            continue
        if pair in seen and collision is None:
            collision = (seen[pair], n)
        seen.setdefault(pair, n)
    uncovered: tuple[int, ...] | None = None
    for x in range(side):
        if uncovered:
            break
        for y in range(side):
            if (x, y) not in seen:
                uncovered = (x, y)
                break

    round_trip: tuple[int, ...] | None = None
    for n, pair in enumerate(pairs):
        if pair is None:
            continue
        try:
            back = sync_locate(m, pair[0], pair[1])
        except (NoAcceptingPathError, MultipleAcceptingPathsError):
            back = None
        if back != n:
            round_trip = (n,)
            break

    origin = None if accepts(m, 0, 0, 0) else (0, 0, 0)

    # exact padding transition plus a randomized spot check
    padding: tuple[int, ...] | None = None
    if m.transitions.get((m.initial, (0, 0, 0))) != m.initial:
        padding = (0, 0, 0)
    else:
        rng = random.Random(20)
        for _ in range(200):
            n = rng.randrange(count)
            x = rng.randrange(side)
            y = rng.randrange(side)
            base = accepts(m, n, x, y)
            if any(accepts(m, n, x, y, length=t + extra) != base for extra in (1, 2, 3)):
                padding = (n, x, y)
                break

    reports = [
        _report("coords_defined", t, undefined),
        _report("coords_unique", t, ambiguous),
        _report("oracle_agreement", t, agreement),
        _report("step_up", t, step_witness[Direction.U]),
        _report("step_right", t, step_witness[Direction.R]),
        _report("step_down", t, step_witness[Direction.D]),
        _report("step_left", t, step_witness[Direction.L]),
        _report("grid_covered", t, uncovered),
        _report("grid_unique", t, collision),
        _report("round_trip", t, round_trip),
        _report("origin_accepted", t, origin),
        _report("zero_padding", t, padding),
    ]
    return sorted(reports, key=lambda r: r.name)


def verify_cross(bound_exp: int) -> list[VerifyReport]:
    """Cross-check all representations against the walked curve.

    For every n below 4**bound_exp the walked coordinates, the linear
    representation and the synchronized lookup must agree, and the letter
    automaton must reproduce the stage word.  One further one-shot check:
    the automaton recovered from the minimized step-difference
    representation must be isomorphic to the letter automaton.
    """
    word = hc_prefix(4 ** bound_exp)
    points = walk(word[: 4 ** bound_exp - 1])
    rep = hilbert_linrep()
    machine = hilbert_sync()
    letters = hilbert_dfao()

    coords_witness: tuple[int, ...] | None = None
    for n, point in enumerate(points):
        if tuple(eval_linrep(rep, n)) != tuple(point):
            coords_witness = (n,)
            break
        try:
            looked_up = tuple(sync_coords(machine, n))
        except (NoAcceptingPathError, MultipleAcceptingPathsError):
            looked_up = None
        if looked_up != tuple(point):
            coords_witness = (n,)
            break

    letters_witness: tuple[int, ...] | None = None
    for n, code in enumerate(word):
        if eval_dfao(letters, n) != Direction(code):
            letters_witness = (n,)
            break

    shifted = transduce_rep(rep, increment_transducer(4))
    minimized = minimize_rep(difference_rep(shifted, rep))
    recovered = semigroup_trick(minimized)
    same, _ = dfao_equal(recovered, letters)
    automaton_witness = None if same else ()

    reports = [
        _report("coordinates_agree", bound_exp, coords_witness),
        _report("letters_agree", bound_exp, letters_witness),
        _report("difference_automaton_matches", bound_exp, automaton_witness),
    ]
    return sorted(reports, key=lambda r: r.name)
