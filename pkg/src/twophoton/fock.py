"""Two-photon Fock space over eight optical modes.

A mode is a triple (side, polarization, frequency slot).  Photon pairs enter
the beam splitter from opposite sides, one photon per side, and each side
carries its own frequency slot, so the physically occupied input modes are
four of the eight; the full eight-mode space is kept so that every occupation
pattern with at most two photons is representable (36 two-photon patterns,
8 one-photon patterns, vacuum).

States are sparse maps from occupation tuples to complex amplitudes.
Operators are sums of products of at most two annihilators; applying a
product works right-to-left, and lowering |n> contributes the usual sqrt(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

TOL = 1e-12  # repo-wide numeric tolerance


class Arm(Enum):
    """Input/output side of the beam splitter."""

    SIDE1 = 0
    SIDE2 = 1


class Pol(Enum):
    """Linear polarization axis."""

    X = 0
    Y = 1


class FreqSlot(Enum):
    """Frequency slot label; side 1 carries W1, side 2 carries W2."""

    W1 = 0
    W2 = 1


@dataclass(frozen=True)
class Mode:
    """One optical mode: (arm, polarization, frequency slot)."""

    arm: Arm
    pol: Pol
    freq: FreqSlot

    @property
    def index(self) -> int:
        """Position of this mode in the fixed total order (0..7)."""
        return self.arm.value * 4 + self.pol.value * 2 + self.freq.value

    def label(self) -> str:
        return f"{self.arm.name.lower()}:{self.pol.name.lower()}:{self.freq.name.lower()}"


MODES: tuple[Mode, ...] = tuple(
    sorted(
        (Mode(a, p, f) for a in Arm for p in Pol for f in FreqSlot),
        key=lambda m: m.index,
    )
)

N_MODES = len(MODES)

# Occupation pattern: tuple of 8 photon counts, indexed by Mode.index.
OccupationConfig = tuple[int, ...]

VACUUM: OccupationConfig = (0,) * N_MODES


def occupy(*modes: Mode) -> OccupationConfig:
    """Occupation pattern with one photon added per listed mode."""
    counts = [0] * N_MODES
    for m in modes:
        counts[m.index] += 1
    return tuple(counts)


def _check_config(config: OccupationConfig) -> None:
    if len(config) != N_MODES:
        raise ValueError(f"occupation pattern must have {N_MODES} entries, got {len(config)}")
    if any(n < 0 for n in config):
        raise ValueError(f"negative occupation in {config}")
    if sum(config) > 2:
        raise ValueError(f"more than two photons in {config}")


@dataclass(frozen=True)
class TwoPhotonState:
    """Sparse state over occupation patterns with at most two photons total.

    Treat instances as immutable: every operation returns a new state.
    """

    amplitudes: Mapping[OccupationConfig, complex]

    def __post_init__(self) -> None:
        for config in self.amplitudes:
            _check_config(config)

    def amplitude(self, config: OccupationConfig) -> complex:
        return self.amplitudes.get(config, 0.0 + 0.0j)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def is_normalized(self, tol: float = TOL) -> bool:
        return abs(self.norm_sq() - 1.0) <= tol


ZERO_STATE = TwoPhotonState({})


@dataclass(frozen=True)
class IncidentPolarization:
    """Linear polarization angles (radians) of the photons on side 1 and side 2."""

    theta1: float
    theta2: float

    def __post_init__(self) -> None:
        for name in ("theta1", "theta2"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")


def product_state(inc: IncidentPolarization) -> TwoPhotonState:
    """Normalized product of two linearly polarized one-photon wave packets.

    The side-1 photon occupies (side1, ., w1) and the side-2 photon
    (side2, ., w2); the polarization of each is cos(theta)|x> + sin(theta)|y>.
    """
    c1, s1 = math.cos(inc.theta1), math.sin(inc.theta1)
    c2, s2 = math.cos(inc.theta2), math.sin(inc.theta2)
    amps: dict[OccupationConfig, complex] = {}
    for p1, w1 in ((Pol.X, c1), (Pol.Y, s1)):
        for p2, w2 in ((Pol.X, c2), (Pol.Y, s2)):
            amp = w1 * w2
            if amp != 0.0:
                m1 = Mode(Arm.SIDE1, p1, FreqSlot.W1)
                m2 = Mode(Arm.SIDE2, p2, FreqSlot.W2)
                amps[occupy(m1, m2)] = complex(amp)
    return TwoPhotonState(amps)


def apply_annihilation(state: TwoPhotonState, mode: Mode) -> TwoPhotonState:
    """Lower the occupation of `mode` by one, with the bosonic sqrt(n) factor.

    Patterns with no photon in `mode` are dropped; annihilating the vacuum
    gives the zero state.
    """
    idx = mode.index
    out: dict[OccupationConfig, complex] = {}
    for config, amp in state.amplitudes.items():
        n = config[idx]
        if n == 0:
            continue
        lowered = config[:idx] + (n - 1,) + config[idx + 1 :]
        out[lowered] = out.get(lowered, 0.0 + 0.0j) + amp * math.sqrt(n)
    return TwoPhotonState(out)


@dataclass(frozen=True)
class OperatorExpr:
    """Sum of complex-weighted products of at most two annihilators.

    `terms` holds (coefficient, modes) pairs; `modes` is an ordered tuple and
    application is right-to-left, matching operator composition.
    """

    terms: tuple[tuple[complex, tuple[Mode, ...]], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        for _, modes in self.terms:
            if len(modes) > 2:
                raise ValueError("operator products beyond two annihilators are not supported")

    @classmethod
    def zero(cls) -> "OperatorExpr":
        return cls(())

    @classmethod
    def annihilator(cls, mode: Mode, coeff: complex = 1.0) -> "OperatorExpr":
        if coeff == 0:
            return cls(())
        return cls(((complex(coeff), (mode,)),))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[complex, tuple[Mode, ...]]]) -> "OperatorExpr":
        return cls(tuple((complex(c), tuple(ms)) for c, ms in terms if c != 0))

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(self.terms + other.terms)

    def scaled(self, factor: complex) -> "OperatorExpr":
        if factor == 0:
            return OperatorExpr(())
        return OperatorExpr(tuple((c * factor, ms) for c, ms in self.terms))

    def __mul__(self, other):
        """Operator product (right factor applies first) or scalar multiple."""
        if isinstance(other, OperatorExpr):
            return OperatorExpr.from_terms(
                (c1 * c2, ms1 + ms2) for c1, ms1 in self.terms for c2, ms2 in other.terms
            )
        return self.scaled(other)

    def __rmul__(self, factor: complex) -> "OperatorExpr":
        return self.scaled(factor)

    def coefficient_map(self) -> dict[tuple[Mode, ...], complex]:
        """Collected coefficients keyed by mode product (for structural tests)."""
        out: dict[tuple[Mode, ...], complex] = {}
        for c, ms in self.terms:
            out[ms] = out.get(ms, 0.0 + 0.0j) + c
        return {ms: c for ms, c in out.items() if c != 0}


def apply_operator_expr(state: TwoPhotonState, expr: OperatorExpr) -> TwoPhotonState:
    """Apply a sum of annihilator products to a state (linear extension)."""
    total: dict[OccupationConfig, complex] = {}
    for coeff, modes in expr.terms:
        partial = state
        for mode in reversed(modes):
            partial = apply_annihilation(partial, mode)
        for config, amp in partial.amplitudes.items():
            total[config] = total.get(config, 0.0 + 0.0j) + coeff * amp
    return TwoPhotonState(total)


def vacuum_amplitude(state: TwoPhotonState) -> complex:
    """Overlap <0|state>; squared magnitude is a joint detection probability."""
    return state.amplitude(VACUUM)
