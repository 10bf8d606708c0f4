"""Grid-refinement greedy construction of bijective rational Costas clouds.

Stage n divides the working square into 4**n half-open cells and places one
point with previously unused rational coordinates in each, keeping every
difference vector of the cumulative point set distinct.  At every stage the
smallest-index unused rational (under the canonical enumeration) is forced
in as an x-coordinate and as a y-coordinate, which is what drives
bijectivity in the limit.  The whole build is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .enumeration import all_rationals, rationals_in, unit_interval_rationals

__all__ = [
    "CloudPoint",
    "CloudReport",
    "CloudState",
    "CandidateCapExceeded",
    "verify_cloud",
    "build_cloud",
    "expanding_cloud",
    "cell_occupancy",
]

CELL_CANDIDATE_CAP = 10**6


class CandidateCapExceeded(RuntimeError):
    """Tripped the per-cell candidate cap; a square always contains a valid
    rational point, so this flags an enumeration bug rather than a dead end."""


@dataclass(frozen=True)
class CloudPoint:
    x: Fraction
    y: Fraction
    stage: int
    cell: tuple  # (column j, row k) within the stage grid


@dataclass
class CloudReport:
    ok: bool
    collisions: list = field(default_factory=list)  # (pair_a, pair_b, vector)


def verify_cloud(points) -> CloudReport:
    """Distinct-difference-vector test over all ordered pairs of points.

    Associative scan: vector -> first ordered pair seen; every later pair
    sharing a vector is reported."""
    pts = [(p.x, p.y) if isinstance(p, CloudPoint) else (p[0], p[1]) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    seen = {}
    collisions = []
    for a in pts:
        for b in pts:
            if a == b:
                continue
            vec = (b[0] - a[0], b[1] - a[1])
            if vec in seen:
                collisions.append((seen[vec], (a, b), vec))
            else:
                seen[vec] = (a, b)
    return CloudReport(ok=not collisions, collisions=collisions)


@dataclass
class CloudState:
    stage: int
    points: list
    used_x: set
    used_y: set
    expanding: bool = False

    def coordinates(self):
        return [(p.x, p.y) for p in self.points]


class _Builder:
    def __init__(self, expanding: bool, cap: int = CELL_CANDIDATE_CAP):
        self.expanding = expanding
        self.cap = cap
        self.points = []
        self.used_x = set()
        self.used_y = set()
        self.diffs = set()  # every ordered difference vector, both orientations
        self._enum = all_rationals() if expanding else unit_interval_rationals()
        self._rats = []

    # -- canonical enumeration bookkeeping --------------------------------

    def _rat(self, i):
        while len(self._rats) <= i:
            self._rats.append(next(self._enum))
        return self._rats[i]

    def _first_unused(self, used):
        i = 0
        while True:
            r = self._rat(i)
            if r not in used:
                return r
            i += 1

    # -- geometry ---------------------------------------------------------

    def _grid(self, n):
        """(origin, cell side, cells per axis) of the stage-n grid."""
        if self.expanding:
            return Fraction(-(2**n)), Fraction(2), 2**n
        return Fraction(0), Fraction(1, 2**n), 2**n

    def _cell_bounds(self, n, j, k):
        origin, side, _ = self._grid(n)
        return (
            origin + j * side,
            origin + (j + 1) * side,
            origin + k * side,
            origin + (k + 1) * side,
        )

    def _locate(self, n, value):
        """Column (or row) index of the cell containing `value`, or None if
        the value falls outside the stage square."""
        origin, side, cells = self._grid(n)
        idx = (value - origin) // side
        return int(idx) if 0 <= idx < cells else None

    # -- difference-vector test -------------------------------------------

    def _fits(self, x, y):
        if x in self.used_x or y in self.used_y:
            return False
        new = set()
        for p in self.points:
            v = (x - p.x, y - p.y)
            nv = (-v[0], -v[1])
            if v in self.diffs or v in new or nv in self.diffs or nv in new:
                return False
            new.add(v)
            new.add(nv)
        return True

    def _commit(self, x, y, stage, cell):
        for p in self.points:
            v = (x - p.x, y - p.y)
            self.diffs.add(v)
            self.diffs.add((-v[0], -v[1]))
        self.points.append(CloudPoint(x, y, stage, cell))
        self.used_x.add(x)
        self.used_y.add(y)

    # -- point placement ---------------------------------------------------

    def _place_fixed_x(self, x, n, j, k):
        _, _, ylo, yhi = self._cell_bounds(n, j, k)
        for tried, y in enumerate(rationals_in(ylo, yhi)):
            if tried >= self.cap:
                raise CandidateCapExceeded(f"stage {n} cell ({j},{k}), fixed x={x}")
            if self._fits(x, y):
                self._commit(x, y, n, (j, k))
                return
        raise AssertionError("unreachable: cell enumeration is infinite")

    def _place_fixed_y(self, y, n, j, k):
        xlo, xhi, _, _ = self._cell_bounds(n, j, k)
        for tried, x in enumerate(rationals_in(xlo, xhi)):
            if tried >= self.cap:
                raise CandidateCapExceeded(f"stage {n} cell ({j},{k}), fixed y={y}")
            if self._fits(x, y):
                self._commit(x, y, n, (j, k))
                return
        raise AssertionError("unreachable")

    def _place_free(self, n, j, k):
        xlo, xhi, ylo, yhi = self._cell_bounds(n, j, k)
        xs = rationals_in(xlo, xhi)
        ys = rationals_in(ylo, yhi)
        xcands, ycands = [], []
        tried = 0
        # diagonal sweep over the (x candidate, y candidate) index grid
        for total in range(self.cap):
            xcands.append(next(xs))
            ycands.append(next(ys))
            for i in range(total + 1):
                tried += 1
                if tried > self.cap:
                    raise CandidateCapExceeded(f"stage {n} cell ({j},{k})")
                x, y = xcands[i], ycands[total - i]
                if self._fits(x, y):
                    self._commit(x, y, n, (j, k))
                    return
        raise CandidateCapExceeded(f"stage {n} cell ({j},{k})")

    # -- one stage ---------------------------------------------------------

    def run_stage(self, n):
        _, _, cells = self._grid(n)
        occupied = set()

        # coverage first: the smallest-index unused rational must appear as
        # an x-coordinate this stage (row 0 of its column), then likewise
        # for y (first free column of its row).
        rx = self._first_unused(self.used_x)
        jx = self._locate(n, rx)
        if jx is not None:
            self._place_fixed_x(rx, n, jx, 0)
            occupied.add((jx, 0))

        ry = self._first_unused(self.used_y)
        if ry not in self.used_y:
            ky = self._locate(n, ry)
            if ky is not None:
                jy = next(j for j in range(cells) if (j, ky) not in occupied)
                self._place_fixed_y(ry, n, jy, ky)
                occupied.add((jy, ky))

        # remaining cells in row-major order
        for k in range(cells):
            for j in range(cells):
                if (j, k) not in occupied:
                    self._place_free(n, j, k)

    def state(self, stage):
        return CloudState(
            stage=stage,
            points=self.points,
            used_x=self.used_x,
            used_y=self.used_y,
            expanding=self.expanding,
        )


def build_cloud(stages: int, cap: int = CELL_CANDIDATE_CAP) -> CloudState:
    """Unit-square cloud: stage n uses the 2**-n dyadic grid on [0,1)**2.

    Point count after stage n is 4 + 16 + ... + 4**n; stages=0 gives the
    empty state."""
    if stages < 0:
        raise ValueError("stages must be >= 0")
    builder = _Builder(expanding=False, cap=cap)
    for n in range(1, stages + 1):
        builder.run_stage(n)
    return builder.state(stages)


def expanding_cloud(stages: int, cap: int = CELL_CANDIDATE_CAP) -> CloudState:
    """Expanding-grid variant over all of Q**2: stage n covers the square
    [-2**n, 2**n)**2 with 4**n cells of side 2."""
    if stages < 0:
        raise ValueError("stages must be >= 0")
    if stages > 4:
        raise ValueError("expanding build capped at 4 stages")
    builder = _Builder(expanding=True, cap=cap)
    for n in range(1, stages + 1):
        builder.run_stage(n)
    return builder.state(stages)


def cell_occupancy(state: CloudState) -> dict:
    """Per-stage boolean occupancy matrices (the finite-resolution density
    certificate): matrix[k][j] is True iff some stage-n point sits in cell
    (j, k)."""
    matrices = {}
    for n in range(1, state.stage + 1):
        cells = 2**n
        matrix = [[False] * cells for _ in range(cells)]
        for p in state.points:
            if p.stage == n:
                j, k = p.cell
                matrix[k][j] = True
        matrices[n] = matrix
    return matrices
