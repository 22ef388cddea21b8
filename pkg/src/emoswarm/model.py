"""Agents, emotions, parameters, and the toroidal grid.

The population lives on a width x height torus with one agent per cell.
Agent state is stored as flat row-major numpy arrays (decision code,
valence, arousal) so the step engine can run compiled; `Agent` /
`EmotionState` objects are materialized on access as read-only views.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

# Decision codes used in the packed population arrays.
UNCOMMITTED = 0
OPTION_A = 1
OPTION_B = 2

# Emotion assigned to agents that start uncommitted.
UNCOMMITTED_VALENCE = 0.0
UNCOMMITTED_AROUSAL = 0.5

# Offsets of the 8 Moore neighbors, fixed scan order.
MOORE_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


class DecisionState(IntEnum):
    """Commitment state of an agent: option A, option B, or uncommitted."""

    U = UNCOMMITTED
    A = OPTION_A
    B = OPTION_B


@dataclass(frozen=True)
class EmotionState:
    """Valence in [-1, 1] and arousal in [0, 1]."""

    valence: float
    arousal: float

    def __post_init__(self):
        if not -1.0 <= self.valence <= 1.0:
            raise ValueError(f"valence {self.valence} outside [-1, 1]")
        if not 0.0 <= self.arousal <= 1.0:
            raise ValueError(f"arousal {self.arousal} outside [0, 1]")


@dataclass
class Agent:
    """One grid cell's occupant: a decision state plus an emotion."""

    decision: DecisionState
    emotion: EmotionState


@dataclass(frozen=True)
class GridDims:
    """Torus dimensions. Both sides must be >= 3 so the Moore
    neighborhood always yields 8 distinct cells."""

    width: int
    height: int

    def __post_init__(self):
        if self.width < 3 or self.height < 3:
            raise ValueError(f"grid must be at least 3x3, got {self.width}x{self.height}")

    @property
    def n(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class ModelParams:
    """The eight rate and sensitivity constants of the emotional model.

    Defaults are the baseline operating point: recruitment and inhibition
    baselines 0.02 per step, all four emotion sensitivities 0.5, and
    contagion rates 0.1 for both dimensions.
    """

    r0: float = 0.02
    sigma0: float = 0.02
    alpha_v: float = 0.5
    alpha_a: float = 0.5
    beta_v: float = 0.5
    beta_a: float = 0.5
    gamma_v: float = 0.1
    gamma_a: float = 0.1

    def __post_init__(self):
        if self.r0 < 0.0:
            raise ValueError("r0 must be >= 0")
        if self.sigma0 < 0.0:
            raise ValueError("sigma0 must be >= 0")
        if not 0.0 <= self.gamma_v <= 1.0:
            raise ValueError("gamma_v must be in [0, 1]")
        if not 0.0 <= self.gamma_a <= 1.0:
            raise ValueError("gamma_a must be in [0, 1]")


@dataclass(frozen=True)
class GroupEmotionSpec:
    """Initial emotion distribution for one committed group: truncated
    normals centered at (mean_v, mean_a) with shared standard deviation
    sd (sd=0 means fixed values)."""

    mean_v: float
    mean_a: float
    sd: float = 0.05

    def __post_init__(self):
        if not -1.0 <= self.mean_v <= 1.0:
            raise ValueError(f"mean_v {self.mean_v} outside [-1, 1]")
        if not 0.0 <= self.mean_a <= 1.0:
            raise ValueError(f"mean_a {self.mean_a} outside [0, 1]")
        if self.sd < 0.0:
            raise ValueError("sd must be >= 0")


@dataclass(frozen=True)
class InitSpec:
    """Initial condition: committed fractions for each option plus the
    emotion distribution of each committed group. Uncommitted agents
    always start at valence 0, arousal 0.5."""

    frac_a: float
    frac_b: float
    emotion_a: GroupEmotionSpec
    emotion_b: GroupEmotionSpec

    def __post_init__(self):
        if not 0.0 <= self.frac_a <= 1.0 or not 0.0 <= self.frac_b <= 1.0:
            raise ValueError("committed fractions must be in [0, 1]")
        if self.frac_a + self.frac_b > 1.0:
            raise ValueError(f"frac_a + frac_b = {self.frac_a + self.frac_b} exceeds 1")


@dataclass
class Population:
    """Full grid state: packed per-agent arrays plus cached commitment counts.

    `decisions`, `valence`, `arousal` are flat row-major arrays of length
    dims.n (cell (row, col) lives at index row * width + col). The cached
    counts must always match a fresh recount; the step engine maintains them.
    """

    dims: GridDims
    decisions: np.ndarray
    valence: np.ndarray
    arousal: np.ndarray
    n_a: int
    n_b: int

    def __post_init__(self):
        n = self.dims.n
        if not (len(self.decisions) == len(self.valence) == len(self.arousal) == n):
            raise ValueError("state arrays must have one entry per cell")

    @property
    def n(self) -> int:
        return self.dims.n

    @property
    def n_u(self) -> int:
        return self.n - self.n_a - self.n_b

    @property
    def counts(self) -> tuple[int, int, int]:
        return self.n_a, self.n_b, self.n_u

    def recount(self) -> tuple[int, int, int]:
        """Count decision states directly from the array (bypasses the cache)."""
        n_a = int(np.count_nonzero(self.decisions == OPTION_A))
        n_b = int(np.count_nonzero(self.decisions == OPTION_B))
        return n_a, n_b, self.n - n_a - n_b

    def agent_at(self, row: int, col: int) -> Agent:
        """Read-only snapshot of the agent at (row, col)."""
        if not (0 <= row < self.dims.height and 0 <= col < self.dims.width):
            raise ValueError(f"cell ({row}, {col}) outside grid {self.dims}")
        i = row * self.dims.width + col
        return Agent(
            decision=DecisionState(int(self.decisions[i])),
            emotion=EmotionState(float(self.valence[i]), float(self.arousal[i])),
        )

    @property
    def agents(self) -> list[Agent]:
        """Row-major snapshot of every agent (read-only views)."""
        return [
            Agent(
                decision=DecisionState(int(d)),
                emotion=EmotionState(float(v), float(a)),
            )
            for d, v, a in zip(self.decisions, self.valence, self.arousal)
        ]


def neighbors(dims: GridDims, cell: tuple[int, int]) -> list[tuple[int, int]]:
    """The 8 Moore neighbors of `cell` under periodic boundaries.

    Returns (row, col) pairs in the fixed MOORE_OFFSETS scan order; the
    cell itself is excluded. Raises ValueError for out-of-range cells.
    """
    row, col = cell
    if not (0 <= row < dims.height and 0 <= col < dims.width):
        raise ValueError(f"cell {cell} outside grid {dims.width}x{dims.height}")
    return [((row + dr) % dims.height, (col + dc) % dims.width) for dr, dc in MOORE_OFFSETS]


@functools.lru_cache(maxsize=None)
def neighbor_table(dims: GridDims) -> np.ndarray:
    """Precomputed (n, 8) table of flat neighbor indices, cached per dims."""
    table = np.empty((dims.n, 8), dtype=np.int64)
    for row in range(dims.height):
        for col in range(dims.width):
            i = row * dims.width + col
            for k, (nr, nc) in enumerate(neighbors(dims, (row, col))):
                table[i, k] = nr * dims.width + nc
    table.setflags(write=False)
    return table


def fractions(pop: Population) -> tuple[float, float, float]:
    """Committed and uncommitted fractions (phi_A, phi_B, u).

    phi_A and phi_B are exact integer-count ratios. The uncommitted
    fraction is computed as the complement 1 - (phi_A + phi_B), which
    keeps phi_A + phi_B + u == 1.0 exact in floating point for every
    count triple (dividing each count separately does not).
    """
    n = pop.n
    phi_a = pop.n_a / n
    phi_b = pop.n_b / n
    return phi_a, phi_b, 1.0 - (phi_a + phi_b)


def sample_truncated_normal(
    mean: float, sd: float, lo: float, hi: float, rng: np.random.Generator
) -> float:
    """One draw from a normal(mean, sd) truncated to [lo, hi].

    Rejection sampling, capped at 1000 attempts after which the last draw
    is clamped into range. sd=0 degenerates to clamp(mean) without
    consuming randomness.
    """
    if lo >= hi:
        raise ValueError(f"truncation interval [{lo}, {hi}] is empty")
    if sd < 0.0:
        raise ValueError("sd must be >= 0")
    if sd == 0.0:
        return min(max(mean, lo), hi)
    x = mean
    for _ in range(1000):
        x = rng.normal(mean, sd)
        if lo <= x <= hi:
            return x
    return min(max(x, lo), hi)


def init_population(
    dims: GridDims,
    spec: InitSpec,
    rng: np.random.Generator,
    *,
    swap_labels: bool = False,
) -> Population:
    """Build the initial population for one run.

    round(frac_a * n) agents commit to A and round(frac_b * n) to B (B is
    reduced if rounding overshoots n), placed on uniformly random distinct
    cells. Committed agents draw valence and arousal from their group's
    truncated normals; everyone else starts at (0, 0.5).

    With swap_labels=True the two decision labels are exchanged at
    assignment time while the placement and emotion draws consume the
    random stream identically, so the result is the exact A<->B mirror of
    the swap_labels=False population for the same generator state. This
    is the hook for label-symmetry experiments.
    """
    n = dims.n
    n_a = round(spec.frac_a * n)
    n_b = round(spec.frac_b * n)
    if n_a + n_b > n:
        n_b = n - n_a

    perm = rng.permutation(n)
    decisions = np.zeros(n, dtype=np.int8)
    first_label, second_label = (OPTION_B, OPTION_A) if swap_labels else (OPTION_A, OPTION_B)
    decisions[perm[:n_a]] = first_label
    decisions[perm[n_a : n_a + n_b]] = second_label

    valence = np.full(n, UNCOMMITTED_VALENCE, dtype=np.float64)
    arousal = np.full(n, UNCOMMITTED_AROUSAL, dtype=np.float64)
    for group_spec, cells in (
        (spec.emotion_a, perm[:n_a]),
        (spec.emotion_b, perm[n_a : n_a + n_b]),
    ):
        for cell in cells:
            valence[cell] = sample_truncated_normal(group_spec.mean_v, group_spec.sd, -1.0, 1.0, rng)
            arousal[cell] = sample_truncated_normal(group_spec.mean_a, group_spec.sd, 0.0, 1.0, rng)

    count_a, count_b = (n_b, n_a) if swap_labels else (n_a, n_b)
    return Population(
        dims=dims,
        decisions=decisions,
        valence=valence,
        arousal=arousal,
        n_a=count_a,
        n_b=count_b,
    )


_DUMP_CHARS = {UNCOMMITTED: ".", OPTION_A: "A", OPTION_B: "B"}


def dump_grid(pop: Population) -> str:
    """Text rendering of the grid, one row per line: 'A', 'B', '.' per cell."""
    w = pop.dims.width
    lines = []
    for row in range(pop.dims.height):
        cells = pop.decisions[row * w : (row + 1) * w]
        lines.append("".join(_DUMP_CHARS[int(c)] for c in cells))
    return "\n".join(lines)
