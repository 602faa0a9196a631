"""Exact linear representations of the curve's coordinate sequence.

A linear representation computes a vector value for each index n as

    value(n) = v . gamma(d_1) . ... . gamma(d_t) . w

where d_1 ... d_t are the base-k digits of n, most significant first,
v is an out_dim x rank matrix, each gamma(d) is a rank x rank matrix and
w is a rank column vector.  Evaluation therefore costs one small
matrix-vector product per digit, i.e. time linear in the number of digits
of n.  All entries are exact (ints or Fractions); nothing here rounds.

The module provides the reference rank-5 representation of the coordinate
pair sequence, a transducer-composition construction (feeding a
representation the transduced digits, used here to shift the index by
one), a difference construction, exact minimization, the matrix-closure
construction that recovers a finite automaton from a representation whose
reachable row space is finite, and a data-driven guessing procedure for
candidate representations.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .dfao import Dfao, to_base
from .oracle import STEP
from .ratmat import SpanBasis, mat_mul, mat_vec, matrix, transpose, vec_mat, vector
from .textfmt import ParseError, content_lines, format_scalar, header_fields, parse_int, parse_scalar


class NonFunctionalTransducerError(ValueError):
    """A transducer admitted more than one accepting path for some input."""


class StateBudgetExceededError(RuntimeError):
    """Matrix closure kept growing; the sequence is likely not automatic."""


class InsufficientDataError(ValueError):
    """Not enough prefix data to pin down candidate kernel relations."""


@dataclass(frozen=True)
class LinearRep:
    """Exact linear representation (v, gamma, w) over base-k digits."""

    base: int
    v: tuple[tuple, ...]
    gamma: tuple[tuple[tuple, ...], ...]
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "v", matrix(self.v))
        object.__setattr__(self, "gamma", tuple(matrix(g) for g in self.gamma))
        object.__setattr__(self, "w", vector(self.w))
        if len(self.gamma) != self.base:
            raise ValueError(f"need one matrix per digit of base {self.base}")
        rank = len(self.w)
        for row in self.v:
            if len(row) != rank:
                raise ValueError("v must have rank-length rows")
        for digit, g in enumerate(self.gamma):
            if len(g) != rank or any(len(row) != rank for row in g):
                raise ValueError(f"gamma({digit}) must be {rank} x {rank}")

    @property
    def rank(self) -> int:
        return len(self.w)

    @property
    def out_dim(self) -> int:
        return len(self.v)


@dataclass(frozen=True)
class Transducer:
    """Nondeterministic letter-input transducer with word outputs.

    ``moves`` holds (source, input digit, output word, target) tuples;
    acceptance is by final state after the whole input.  The machines used
    here are unambiguous: each input has at most one accepting path.
    """

    base: int
    state_count: int
    initial: int
    final: frozenset[int]
    moves: frozenset[tuple[int, int, tuple[int, ...], int]]

    def __post_init__(self):
        if not 0 <= self.initial < self.state_count:
            raise ValueError(f"initial state {self.initial} out of range")
        if not all(0 <= q < self.state_count for q in self.final):
            raise ValueError("final state out of range")
        for src, digit, out, dst in self.moves:
            if not (0 <= src < self.state_count and 0 <= dst < self.state_count):
                raise ValueError(f"move ({src}, {digit}, {out}, {dst}) state out of range")
            if not 0 <= digit < self.base:
                raise ValueError(f"move input digit {digit} out of range for base {self.base}")
            if any(not 0 <= d < self.base for d in out):
                raise ValueError(f"move output {out} has digits out of range")


def hilbert_linrep() -> LinearRep:
    """The rank-5 base-4 representation of the coordinate pair (x_n, y_n)."""
    v = ((0, 0, 0, 1, 0),
         (0, 0, 1, 1, 0))
    g0 = ((0, 0, 0, 0, -4),
          (1, 0, -1, -1, 4),
          (0, 0, 1, 0, 0),
          (0, 0, 0, 1, 0),
          (0, 1, 1, 1, 1))
    g1 = ((0, 0, 0, 0, -4),
          (0, 0, 0, -1, 0),
          (1, -2, -3, -2, 4),
          (0, 2, 3, 3, 0),
          (0, 1, 1, 1, 1))
    g2 = ((0, 0, 0, 0, -4),
          (0, -2, -2, -3, 0),
          (0, 0, -1, 0, 0),
          (1, 2, 3, 3, 4),
          (0, 1, 1, 1, 1))
    g3 = ((0, 0, 0, 0, -4),
          (1, -3, -2, -2, 1),
          (-1, 2, 1, 2, -4),
          (1, 1, 1, 0, 7),
          (0, 1, 1, 1, 1))
    w = (1, 0, 0, 0, 0)
    return LinearRep(base=4, v=v, gamma=(g0, g1, g2, g3), w=w)


def hilbert_step_rep() -> LinearRep:
    """Reference rank-3 representation of the unit step (next point minus current)."""
    v = ((1, 0, 0),
         (0, 1, 0))
    g0 = ((1, 0, 0),
          (0, 1, 0),
          (0, 1, 0))
    g1 = ((0, 1, 0),
          (1, 0, 0),
          (1, 0, 0))
    g2 = ((0, 0, 1),
          (1, -1, 1),
          (1, -1, 1))
    g3 = ((-1, 1, -1),
          (0, 0, -1),
          (0, -1, 0))
    w = (0, 1, 0)
    return LinearRep(base=4, v=v, gamma=(g0, g1, g2, g3), w=w)


def eval_linrep(rep: LinearRep, n: int) -> tuple:
    """Value at index n, one matrix-vector product per base-k digit of n."""
    col = rep.w
    for digit in reversed(to_base(n, rep.base)):
        col = mat_vec(rep.gamma[digit], col)
    return mat_vec(rep.v, col)


def eval_linrep_digits(rep: LinearRep, digits) -> tuple:
    """Value on an explicit digit string (leading zeros allowed)."""
    col = rep.w
    for digit in reversed(tuple(digits)):
        col = mat_vec(rep.gamma[digit], col)
    return mat_vec(rep.v, col)


def increment_transducer(k: int) -> Transducer:
    """A 3-state transducer turning base-k digits of n into digits of n + 1.

    Guess-the-carry, most significant digit first: from the start or copy
    state the machine either copies the digit, or (guessing that every
    remaining digit is k-1) emits digit + 1 and moves to the carry state,
    which rewrites trailing k-1 digits to 0 and is the only final state.
    A start-state arc on k-1 emits the two digits 1, 0 so that all-(k-1)
    inputs map to their one-digit-longer successor.  Exactly one path
    accepts for every nonempty input: the guess must happen at the last
    digit below k-1, or at the front when there is none.
    """
    if k < 2:
        raise ValueError(f"base must be at least 2, got {k}")
    start, carry, copy = 0, 1, 2
    moves = set()
    for d in range(k):
        moves.add((start, d, (d,), copy))
        moves.add((copy, d, (d,), copy))
        if d < k - 1:
            moves.add((start, d, (d + 1,), carry))
            moves.add((copy, d, (d + 1,), carry))
    moves.add((start, k - 1, (1, 0), carry))
    moves.add((carry, k - 1, (0,), carry))
    return Transducer(base=k, state_count=3, initial=start,
                      final=frozenset({carry}), moves=frozenset(moves))


def _adjacency(trans: Transducer):
    adj = defaultdict(list)
    for src, digit, out, dst in sorted(trans.moves):
        adj[(src, digit)].append((out, dst))
    return adj


def transducer_outputs(trans: Transducer, digits) -> list[tuple[int, ...]]:
    """Outputs of all accepting paths on ``digits``, one entry per path."""
    adj = _adjacency(trans)
    digits = tuple(digits)
    results: list[tuple[int, ...]] = []

    def explore(state: int, pos: int, emitted: tuple[int, ...]):
        if pos == len(digits):
            if state in trans.final:
                results.append(emitted)
            return
        for out, dst in adj[(state, digits[pos])]:
            explore(dst, pos + 1, emitted + out)

    explore(trans.initial, 0, ())
    return results


def check_functional(trans: Transducer, max_length: int = 6) -> None:
    """Raise unless each input up to ``max_length`` has at most one accepting path.

    One accepting path per input is slightly stronger than one output per
    input, and is what the composition construction needs: with several
    accepting paths the block matrices would sum their contributions.
    """
    adj = _adjacency(trans)

    def count(state: int, digits) -> int:
        if not digits:
            return 1 if state in trans.final else 0
        return sum(count(dst, digits[1:]) for _, dst in adj[(state, digits[0])])

    for length in range(1, max_length + 1):
        for digits in itertools.product(range(trans.base), repeat=length):
            if count(trans.initial, digits) > 1:
                raise NonFunctionalTransducerError(
                    f"input {digits} has multiple accepting paths"
                )


def _word_matrix(rep: LinearRep, word) -> tuple[tuple, ...]:
    result = None
    for digit in word:
        g = rep.gamma[digit]
        result = g if result is None else mat_mul(result, g)
    if result is None:
        rank = rep.rank
        return tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
    return result


def transduce_rep(rep: LinearRep, trans: Transducer, *, functional_check_length: int = 6) -> LinearRep:
    """Representation of n -> value(transducer output on digits of n).

    The result has one rank-sized block per transducer state: block (i, j)
    of the new digit matrix accumulates the matrix of the emitted word for
    every move from state i to state j on that digit.  The new v places
    the old v in the initial state's block; the new w carries the old w in
    every final state's block.
    """
    if rep.base != trans.base:
        raise ValueError("representation and transducer must share a base")
    check_functional(trans, functional_check_length)
    s = rep.rank
    size = s * trans.state_count
    mats = []
    for a in range(rep.base):
        rows = [[0] * size for _ in range(size)]
        for src, digit, out, dst in trans.moves:
            if digit != a:
                continue
            block = _word_matrix(rep, out)
            for p in range(s):
                row = rows[src * s + p]
                brow = block[p]
                for q in range(s):
                    row[dst * s + q] += brow[q]
        mats.append(matrix(rows))
    v = []
    for vrow in rep.v:
        row = [0] * size
        row[trans.initial * s:(trans.initial + 1) * s] = vrow
        v.append(row)
    w = [0] * size
    for f in trans.final:
        w[f * s:(f + 1) * s] = rep.w
    return LinearRep(base=rep.base, v=matrix(v), gamma=tuple(mats), w=vector(w))


def difference_rep(a: LinearRep, b: LinearRep) -> LinearRep:
    """Representation of a(n) - b(n) as a block direct sum; ranks add."""
    if a.base != b.base:
        raise ValueError("representations must share a base")
    if a.out_dim != b.out_dim:
        raise ValueError("representations must share an output dimension")
    ra, rb = a.rank, b.rank
    v = tuple(tuple(ar) + tuple(br) for ar, br in zip(a.v, b.v))
    gamma = []
    for d in range(a.base):
        ga, gb = a.gamma[d], b.gamma[d]
        top = tuple(tuple(row) + (0,) * rb for row in ga)
        bottom = tuple((0,) * ra + tuple(row) for row in gb)
        gamma.append(top + bottom)
    w = tuple(a.w) + tuple(-x for x in b.w)
    return LinearRep(base=a.base, v=v, gamma=tuple(gamma), w=w)


def _row_closure(seeds, gammas, dim):
    """Close a set of row vectors under right multiplication by the gammas.

    Returns the span basis and, per digit, the matrix expressing each basis
    row's image in terms of the basis.
    """
    basis = SpanBasis(dim)
    for seed in seeds:
        basis.add_if_new(seed)
    i = 0
    while i < len(basis.vectors):
        row = basis.vectors[i]
        for g in gammas:
            basis.add_if_new(vec_mat(row, g))
        i += 1
    coeffs = []
    size = len(basis.vectors)
    for g in gammas:
        rows = []
        for row in basis.vectors:
            coords = basis.coordinates(vec_mat(row, g))
            rows.append(tuple(coords) + (0,) * (size - len(coords)))
        coeffs.append(matrix(rows))
    return basis, coeffs


def minimize_rep(rep: LinearRep) -> LinearRep:
    """Equivalent sequence representation of minimal rank, exact throughout.

    The input is treated as a representation of its index sequence, so v
    is first replaced by v . gamma(0), which pins the value on the empty
    digit string to the value at index 0.  (Representations built by
    transducer composition compute the right sequence on every digit
    string yet disagree on the empty string alone; without this step that
    single value would cost an extra dimension.)  The caller's values are
    unchanged whenever one extra leading zero does not change them, which
    holds for every representation constructed in this package.

    Two reductions follow: restrict to the span reached from the rows of
    v under the digit matrices, then (on the transposed representation)
    restrict to the span reached from w.  The result is reachable and
    observable, hence of minimal rank; a zero sequence reduces to rank 0.
    """
    rep = LinearRep(base=rep.base, v=mat_mul(rep.v, rep.gamma[0]),
                    gamma=rep.gamma, w=rep.w)
    reach, g1 = _row_closure(rep.v, rep.gamma, rep.rank)
    m = len(reach.vectors)
    v1 = []
    for row in rep.v:
        coords = reach.coordinates(row)
        v1.append(tuple(coords) + (0,) * (m - len(coords)))
    w1 = vector(sum(r * c for r, c in zip(row, rep.w)) for row in reach.vectors)

    observe, g2t = _row_closure([w1], [transpose(g) for g in g1], m)
    p = len(observe.vectors)
    coords = observe.coordinates(w1)
    w2 = tuple(coords) + (0,) * (p - len(coords))
    basis_columns = transpose(observe.vectors) if observe.vectors else tuple(() for _ in range(m))
    v2 = mat_mul(matrix(v1), basis_columns) if m else tuple(() for _ in rep.v)
    gamma2 = tuple(transpose(g) for g in g2t)
    return LinearRep(base=rep.base, v=v2, gamma=gamma2, w=w2)


_STEP_TO_DIRECTION = {vec: direction for direction, vec in STEP.items()}


def semigroup_trick(rep: LinearRep, *, state_budget: int = 512) -> Dfao:
    """Recover a finite automaton from a representation by matrix closure.

    States are the distinct matrices v . gamma(digits); the transition on
    digit a right-multiplies by gamma(a), and a state's output is the
    direction whose unit step equals state . w (the raw vector when it is
    not a unit step).  Exploration is breadth-first in digit order, so the
    state numbering is deterministic.  Exceeding ``state_budget`` raises
    StateBudgetExceededError, the signal that the row space is not finite.
    """
    start = rep.v
    if mat_mul(start, rep.gamma[0]) != start:
        raise ValueError("leading zeros change the start matrix; no automaton exists")
    index: dict[tuple, int] = {start: 0}
    order = [start]
    transitions = []
    for state_matrix in order:
        row = []
        for a in range(rep.base):
            succ = mat_mul(state_matrix, rep.gamma[a])
            if succ not in index:
                if len(order) >= state_budget:
                    raise StateBudgetExceededError(
                        f"more than {state_budget} distinct state matrices"
                    )
                index[succ] = len(order)
                order.append(succ)
            row.append(index[succ])
        transitions.append(tuple(row))
    outputs = []
    for state_matrix in order:
        value = mat_vec(state_matrix, rep.w)
        outputs.append(_STEP_TO_DIRECTION.get(value, value))
    return Dfao(base=rep.base, transitions=tuple(transitions), outputs=tuple(outputs))


@dataclass(frozen=True)
class GuessedLinearRep:
    """Uncertified candidate representation fitted to prefix data.

    ``spanning`` lists the kernel subsequences n -> a(k**e * n + i), as
    (e, i) pairs, whose samples were admitted as the basis.  Certification
    is up to the caller (replay, minimization, matrix closure).
    """

    rep: LinearRep
    spanning: tuple[tuple[int, int], ...]


def guess_linrep(prefix, k: int, depth: int) -> GuessedLinearRep:
    """Fit a candidate representation to a value prefix.

    Kernel subsequences n -> a(k**e * n + i) with e <= depth are scanned
    in lexicographic (e, i) order; each one whose sample vector extends
    the span so far becomes a basis element.  The digit matrices then come
    from expressing every basis element's digit-refinements (level
    depth + 1) in that basis.  Entries of ``prefix`` may be numbers or
    equal-length tuples.  Raises InsufficientDataError when the prefix is
    shorter than k**(depth + 2) terms or the refinements escape the span.
    """
    values = [tuple(entry) if isinstance(entry, (tuple, list)) else (entry,) for entry in prefix]
    if not values:
        raise InsufficientDataError("empty prefix")
    out_dim = len(values[0])
    if any(len(entry) != out_dim for entry in values):
        raise ValueError("prefix entries must all have the same dimension")
    if len(values) < k ** (depth + 2):
        raise InsufficientDataError(
            f"need at least {k ** (depth + 2)} terms to overdetermine relations, got {len(values)}"
        )
    samples = len(values) // k ** (depth + 1)

    def sample_vector(e: int, i: int) -> tuple:
        stride = k ** e
        return tuple(values[stride * n + i][c] for n in range(samples) for c in range(out_dim))

    basis = SpanBasis(samples * out_dim)
    spanning: list[tuple[int, int]] = []
    for e in range(depth + 1):
        for i in range(k ** e):
            if basis.add_if_new(sample_vector(e, i)):
                spanning.append((e, i))

    rank = len(spanning)
    if rank == 0:  # identically zero on the sampled range
        empty = tuple(() for _ in range(out_dim))
        return GuessedLinearRep(
            LinearRep(base=k, v=empty, gamma=tuple(() for _ in range(k)), w=()),
            (),
        )

    gamma = []
    for d in range(k):
        rows = []
        for e, i in spanning:
            coords = basis.coordinates(sample_vector(e + 1, d * k ** e + i))
            if coords is None:
                raise InsufficientDataError(
                    f"refinement of kernel element ({e}, {i}) on digit {d} "
                    f"escapes the spanned space; increase depth or data"
                )
            rows.append(tuple(coords) + (0,) * (rank - len(coords)))
        gamma.append(transpose(matrix(rows)))
    v = tuple(tuple(values[i][c] for (_, i) in spanning) for c in range(out_dim))
    w = (1,) + (0,) * (rank - 1)
    return GuessedLinearRep(LinearRep(base=k, v=v, gamma=tuple(gamma), w=w), tuple(spanning))


def linrep_to_text(rep: LinearRep) -> str:
    """Serialize to the canonical text form."""
    lines = [f"linrep base={rep.base} out={rep.out_dim} rank={rep.rank}"]
    lines.append("v")
    lines.extend(" ".join(format_scalar(x) for x in row) for row in rep.v)
    for d, g in enumerate(rep.gamma):
        lines.append(f"gamma {d}")
        lines.extend(" ".join(format_scalar(x) for x in row) for row in g)
    lines.append("w")
    lines.extend(format_scalar(x) for x in rep.w)
    return "\n".join(lines) + "\n"


def linrep_from_text(text: str) -> LinearRep:
    """Parse the text form; raises ParseError with the offending line number."""
    lines = content_lines(text)
    if not lines:
        raise ParseError(0, "empty representation file")
    lineno, header = lines[0]
    fields = header_fields(header, "linrep", lineno)
    for key in ("base", "out", "rank"):
        if key not in fields:
            raise ParseError(lineno, f"missing header field {key!r}")
    base = parse_int(fields["base"], lineno, "base")
    out_dim = parse_int(fields["out"], lineno, "output dimension")
    rank = parse_int(fields["rank"], lineno, "rank")

    sections: dict[str, list] = {}
    current: str | None = None
    expected = {"v": (out_dim, rank)}
    for d in range(base):
        expected[f"gamma {d}"] = (rank, rank)
    expected["w"] = (rank, 1)
    for lineno, line in lines[1:]:
        tokens = line.split()
        label = None
        if tokens[0] == "v" and len(tokens) == 1:
            label = "v"
        elif tokens[0] == "w" and len(tokens) == 1:
            label = "w"
        elif tokens[0] == "gamma" and len(tokens) == 2:
            label = f"gamma {parse_int(tokens[1], lineno, 'digit')}"
        if label is not None:
            if label not in expected:
                raise ParseError(lineno, f"unexpected section {label!r}")
            if label in sections:
                raise ParseError(lineno, f"duplicate section {label!r}")
            sections[label] = []
            current = label
            continue
        if current is None:
            raise ParseError(lineno, f"value line {line!r} before any section")
        row = [parse_scalar(token, lineno) for token in tokens]
        rows_needed, width = expected[current]
        if len(row) != width:
            raise ParseError(lineno, f"expected {width} values in section {current!r}, got {len(row)}")
        if len(sections[current]) >= rows_needed:
            raise ParseError(lineno, f"too many rows in section {current!r}")
        sections[current].append(tuple(row))

    last = lines[-1][0]
    for label, (rows_needed, _) in expected.items():
        if label not in sections:
            raise ParseError(last, f"missing section {label!r}")
        if len(sections[label]) != rows_needed:
            raise ParseError(last, f"section {label!r} has {len(sections[label])} rows, expected {rows_needed}")
    gamma = tuple(tuple(sections[f"gamma {d}"]) for d in range(base))
    w = tuple(row[0] for row in sections["w"])
    return LinearRep(base=base, v=tuple(sections["v"]), gamma=gamma, w=w)
