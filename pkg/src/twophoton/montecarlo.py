"""Click-level Monte Carlo sampling of pair-detection outcomes.

Pairs are independent: each drawn pair selects one outcome from an
`OutcomeDistribution`, then every detector of that outcome fires
independently with the configured efficiency, and the outcome is recorded
only if all its detectors fired.

Determinism and sharding: the run is cut into fixed blocks of
`BLOCK_PAIRS` pairs.  Block j uses the counter-based Philox generator keyed
by SeedSequence(seed, spawn_key=(j,)) — algorithm id "philox4x64/block-v1".
Blocks are the atomic unit of work, so distributing them over any number of
workers and adding the counts reproduces the single-process result exactly.
Within a block the uniform draws are consumed in a fixed order (outcome
draw, then one efficiency draw per detector), and efficiency draws are made
even at efficiency 1 so that runs with the same seed share their random
numbers across efficiency settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import Outcome, OutcomeDistribution

BLOCK_PAIRS = 1 << 16

RNG_ALGORITHM = "philox4x64/block-v1"


@dataclass(frozen=True)
class RunConfig:
    """Simulated run: emitted pair count, detector efficiency, coincidence
    window (retained for reporting; the source emits one pair per window),
    and the seed that fully determines the run."""

    n_pairs: int
    efficiency: float = 1.0
    window_ns: float = 5.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_pairs < 0:
            raise ValueError(f"n_pairs must be >= 0, got {self.n_pairs}")
        if not (0.0 <= self.efficiency <= 1.0):
            raise ValueError(f"efficiency must lie in [0, 1], got {self.efficiency!r}")
        if not (math.isfinite(self.window_ns) and self.window_ns > 0.0):
            raise ValueError(f"window_ns must be positive, got {self.window_ns!r}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True)
class CountTable:
    """Recorded counts per outcome, plus the run bookkeeping needed to turn
    them back into probabilities."""

    counts: dict[Outcome, int]
    n_emitted: int
    efficiency: float


@dataclass(frozen=True)
class OutcomeEstimate:
    """Efficiency-corrected probability estimate for one outcome."""

    probability: float
    stderr: float
    n_recorded: int
    zero_count: bool  # no events recorded; estimate is a lower-bound 0


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample_run(dist: OutcomeDistribution, cfg: RunConfig) -> CountTable:
    """Draw cfg.n_pairs pairs from `dist` and tally recorded outcomes."""
    if not dist.is_normalized():
        raise ValueError(f"distribution must be normalized to sample, total={dist.total()!r}")
    outcomes = sorted(dist.probabilities, key=Outcome.sort_key)
    probs = np.array([max(0.0, dist.probabilities[o]) for o in outcomes])
    edges = np.cumsum(probs)
    edges[-1] = 1.0  # guard the final edge against rounding
    counts = np.zeros(len(outcomes), dtype=np.int64)
    n_blocks = (cfg.n_pairs + BLOCK_PAIRS - 1) // BLOCK_PAIRS
    for block in range(n_blocks):
        start = block * BLOCK_PAIRS
        m = min(BLOCK_PAIRS, cfg.n_pairs - start)
        rng = _block_rng(cfg.seed, block)
        drawn = np.searchsorted(edges, rng.random(m), side="right")
        fired = rng.random(m) < cfg.efficiency
        fired &= rng.random(m) < cfg.efficiency
        counts += np.bincount(drawn[fired], minlength=len(outcomes))
    return CountTable(
        counts={o: int(c) for o, c in zip(outcomes, counts)},
        n_emitted=cfg.n_pairs,
        efficiency=cfg.efficiency,
    )


def estimate(table: CountTable) -> dict[Outcome, OutcomeEstimate]:
    """Efficiency-corrected probability estimates with binomial standard errors.

    The correction divides by efficiency**n_detectors (all detectors of an
    outcome must fire for it to be recorded).  Outcomes with zero recorded
    counts are flagged; their estimate and error are reported as 0.
    """
    if table.n_emitted <= 0:
        raise ValueError("cannot estimate from a run with no emitted pairs")
    n = table.n_emitted
    out: dict[Outcome, OutcomeEstimate] = {}
    for outcome, count in table.counts.items():
        correction = table.efficiency**outcome.n_detectors
        if count == 0:
            out[outcome] = OutcomeEstimate(0.0, 0.0, 0, True)
            continue
        if correction <= 0.0:
            raise ValueError("recorded counts with zero efficiency")
        p_rec = count / n
        se_rec = math.sqrt(p_rec * (1.0 - p_rec) / n)
        out[outcome] = OutcomeEstimate(p_rec / correction, se_rec / correction, count, False)
    return out


def consistency_z(est: OutcomeEstimate, p_true: float, n_emitted: int, efficiency: float) -> float:
    """Deviation of an estimate from a reference probability in units of the
    binomial standard deviation of the recorded rate."""
    p_rec = p_true * efficiency**2
    sigma = math.sqrt(p_rec * (1.0 - p_rec) / n_emitted) / efficiency**2
    if sigma == 0.0:
        return 0.0 if est.probability == p_true else math.inf
    return (est.probability - p_true) / sigma
