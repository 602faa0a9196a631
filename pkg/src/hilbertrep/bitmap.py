"""Bitmap rendering of curve stages.

A stage-g image doubles the coordinate grid: lattice points sit at
even-even pixels (all of them are visited, so all are lit) and the pixel
between two adjacent lattice points is lit exactly when the curve visits
them consecutively.  The resulting image is square with side
2**(g+1) - 1.  Output is plain-text PBM, chosen over the packed binary
variant so golden files diff cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .oracle import DEFAULT_MAX_GENERATION, GenerationBudgetError, generate_generation, walk
from .sync import hilbert_sync, sync_locate


@dataclass(frozen=True)
class Bitmap:
    """Row-major boolean grid; bits[y][x] with y = 0 at the bottom."""

    width: int
    height: int
    bits: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        if len(self.bits) != self.height or any(len(row) != self.width for row in self.bits):
            raise ValueError("bit grid does not match width x height")


def _check_stage(g: int, max_generation: int | None) -> None:
    budget = DEFAULT_MAX_GENERATION if max_generation is None else max_generation
    if g < 1:
        raise ValueError(f"stage index must be at least 1, got {g}")
    if g > budget:
        raise GenerationBudgetError(f"stage {g} image exceeds the budget of stage {budget}")


def render_generation(g: int, *, max_generation: int | None = None) -> Bitmap:
    """Render stage g via index lookups on the synchronized automaton.

    A connector pixel is lit when the indices of its two neighbouring
    lattice points differ by one (in either order) and both fall inside
    the stage, i.e. below 4**g.
    """
    _check_stage(g, max_generation)
    machine = hilbert_sync()
    side = 2 ** (g + 1) - 1
    limit = 4 ** g
    index_cache: dict[tuple[int, int], int] = {}

    def index_of(px: int, py: int) -> int:
        key = (px, py)
        if key not in index_cache:
            index_cache[key] = sync_locate(machine, px, py)
        return index_cache[key]

    rows = []
    for y in range(side):
        row = []
        for x in range(side):
            if x % 2 == 0 and y % 2 == 0:
                lit = True
            elif x % 2 == 0:  # between (x/2, (y-1)/2) and (x/2, (y+1)/2)
                a = index_of(x // 2, (y - 1) // 2)
                b = index_of(x // 2, (y + 1) // 2)
                lit = abs(a - b) == 1 and max(a, b) < limit
            elif y % 2 == 0:  # between ((x-1)/2, y/2) and ((x+1)/2, y/2)
                a = index_of((x - 1) // 2, y // 2)
                b = index_of((x + 1) // 2, y // 2)
                lit = abs(a - b) == 1 and max(a, b) < limit
            else:
                lit = False
            row.append(lit)
        rows.append(tuple(row))
    return Bitmap(width=side, height=side, bits=tuple(rows))


def render_from_walk(g: int, *, max_generation: int | None = None) -> Bitmap:
    """Render stage g from the walked stage word; the independent route."""
    _check_stage(g, max_generation)
    side = 2 ** (g + 1) - 1
    grid = [[False] * side for _ in range(side)]
    points = walk(generate_generation(g, max_generation=max_generation))
    for p in points:
        grid[2 * p.y][2 * p.x] = True
    for a, b in zip(points, points[1:]):
        grid[a.y + b.y][a.x + b.x] = True
    return Bitmap(width=side, height=side, bits=tuple(tuple(row) for row in grid))


def count_lit(bitmap: Bitmap) -> int:
    return sum(sum(row) for row in bitmap.bits)


def write_pbm(bitmap: Bitmap) -> bytes:
    """Plain PBM bytes: rows written top-down, '1' for a lit pixel."""
    lines = [f"P1\n{bitmap.width} {bitmap.height}\n"]
    for row in reversed(bitmap.bits):
        lines.append(" ".join("1" if bit else "0" for bit in row) + "\n")
    return "".join(lines).encode("ascii")


def parse_pbm(data: bytes) -> Bitmap:
    """Parse plain PBM; the inverse of write_pbm (comments tolerated)."""
    tokens: list[str] = []
    for raw in data.decode("ascii").splitlines():
        tokens.extend(raw.split("#", 1)[0].split())
    if not tokens or tokens[0] != "P1":
        raise ValueError("not a plain PBM stream")
    if len(tokens) < 3:
        raise ValueError("truncated PBM header")
    width, height = int(tokens[1]), int(tokens[2])
    cells = "".join(tokens[3:])
    if len(cells) != width * height or set(cells) - {"0", "1"}:
        raise ValueError(f"expected {width * height} binary pixels")
    rows_top_down = [
        tuple(ch == "1" for ch in cells[r * width:(r + 1) * width]) for r in range(height)
    ]
    return Bitmap(width=width, height=height, bits=tuple(reversed(rows_top_down)))
