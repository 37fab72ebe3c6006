"""Detection probabilities computed by brute-force operator algebra.

Every probability here comes from one mechanism: build the input state,
apply a product of detector operators, and take the squared magnitude of
the vacuum amplitude.  No closed-form trigonometric shortcuts are used, so
this module serves as the independent oracle for `formulas`.

Unpolarized input is handled as an incoherent, equal-weight mixture of the
four basis polarization products; probabilities, never amplitudes, are
averaged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

from .elements import (
    AnalyzerSetting,
    BeamSplitterSpec,
    PhaseGeometry,
    Port,
    detector_operator,
    same_arm_operator_pair,
)
from .fock import (
    TOL,
    Arm,
    IncidentPolarization,
    apply_operator_expr,
    product_state,
    vacuum_amplitude,
)

HALF_PI = math.pi / 2.0

# The four equally weighted polarization products that make up unpolarized
# light on both sides: (x,x), (x,y), (y,x), (y,y).
_UNPOLARIZED_COMPONENTS = tuple(
    IncidentPolarization(a, b) for a in (0.0, HALF_PI) for b in (0.0, HALF_PI)
)


@dataclass(frozen=True)
class InputSpec:
    """Input light: a definite polarization product, or unpolarized on both sides."""

    polarization: IncidentPolarization | None

    @classmethod
    def polarized(cls, theta1: float, theta2: float) -> "InputSpec":
        return cls(IncidentPolarization(theta1, theta2))

    @classmethod
    def unpolarized(cls) -> "InputSpec":
        return cls(None)

    @property
    def is_polarized(self) -> bool:
        return self.polarization is not None

    def components(self) -> Iterator[tuple[float, IncidentPolarization]]:
        """Weighted pure components for probability averaging."""
        if self.polarization is not None:
            yield 1.0, self.polarization
        else:
            for inc in _UNPOLARIZED_COMPONENTS:
                yield 0.25, inc


class OutcomeKind(Enum):
    OPPOSITE = 0
    SAME_ARM = 1


@dataclass(frozen=True)
class Outcome:
    """One exclusive pair-detection outcome.

    OPPOSITE: one click on each side; port1/port2 are the side-1/side-2
    analyzer ports.  SAME_ARM: both clicks on `arm`; port1/port2 are the
    ports of its two frequency channels (w1, w2).
    """

    kind: OutcomeKind
    port1: Port
    port2: Port
    arm: Arm | None = None

    def __post_init__(self) -> None:
        if self.kind is OutcomeKind.SAME_ARM and self.arm is None:
            raise ValueError("same-arm outcome needs an arm")
        if self.kind is OutcomeKind.OPPOSITE and self.arm is not None:
            raise ValueError("opposite-arm outcome must not carry an arm")

    @property
    def n_detectors(self) -> int:
        """Detectors that must fire to record this outcome."""
        return 2

    def sort_key(self) -> tuple[int, int, int, int]:
        return (
            self.kind.value,
            -1 if self.arm is None else self.arm.value,
            self.port1.value,
            self.port2.value,
        )

    def label(self) -> str:
        p = {Port.PARALLEL: "par", Port.PERPENDICULAR: "perp"}
        if self.kind is OutcomeKind.OPPOSITE:
            return f"side1[{p[self.port1]}]+side2[{p[self.port2]}]"
        return f"{self.arm.name.lower()}[w1:{p[self.port1]}+w2:{p[self.port2]}]"


def all_outcomes() -> tuple[Outcome, ...]:
    """The twelve exclusive pair outcomes in canonical order."""
    out = [
        Outcome(OutcomeKind.OPPOSITE, p1, p2) for p1 in Port for p2 in Port
    ]
    for arm in Arm:
        out.extend(Outcome(OutcomeKind.SAME_ARM, pa, pb, arm) for pa in Port for pb in Port)
    return tuple(sorted(out, key=Outcome.sort_key))


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities over the twelve exclusive pair outcomes."""

    probabilities: Mapping[Outcome, float]

    def __post_init__(self) -> None:
        for outcome, p in self.probabilities.items():
            if p < -TOL:
                raise ValueError(f"negative probability {p!r} for {outcome.label()}")

    def total(self) -> float:
        return sum(self.probabilities.values())

    def is_normalized(self, tol: float = TOL) -> bool:
        return abs(self.total() - 1.0) <= tol

    def subtotal(self, kind: OutcomeKind) -> float:
        return sum(p for o, p in self.probabilities.items() if o.kind is kind)


def _pure_coincidence(
    inc: IncidentPolarization,
    set1: AnalyzerSetting,
    set2: AnalyzerSetting,
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
) -> float:
    state = product_state(inc)
    op = detector_operator(set1, bs, geom) * detector_operator(set2, bs, geom)
    return abs(vacuum_amplitude(apply_operator_expr(state, op))) ** 2


def coincidence_probability(
    inp: InputSpec,
    theta1: float,
    theta2: float,
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
    ports: tuple[Port, Port] = (Port.PARALLEL, Port.PARALLEL),
) -> float:
    """Joint click probability, one detector on each side.

    Side-1 analyzer at theta1, side-2 at theta2 (given ports); the fringe
    phase `geom.phi` sets the relative phase of the two contributing paths.
    """
    set1 = AnalyzerSetting(Arm.SIDE1, theta1, ports[0])
    set2 = AnalyzerSetting(Arm.SIDE2, theta2, ports[1])
    return sum(w * _pure_coincidence(inc, set1, set2, bs, geom) for w, inc in inp.components())


def coincidence_no_polarizers(
    inp: InputSpec,
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
    dummy_thetas: tuple[float, float] = (0.0, 0.0),
) -> float:
    """Opposite-side coincidence with analyzers removed.

    Removing an analyzer is summing its two ports, so this is the four-port
    sum of `coincidence_probability`; the result does not depend on the
    dummy analyzer angles.
    """
    return sum(
        coincidence_probability(inp, dummy_thetas[0], dummy_thetas[1], bs, geom, (p1, p2))
        for p1 in Port
        for p2 in Port
    )


def _pure_same_arm(
    inc: IncidentPolarization,
    arm: Arm,
    thetas: tuple[float, float],
    ports: tuple[Port, Port],
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
) -> float:
    state = product_state(inc)
    op_a, op_b = same_arm_operator_pair(arm, thetas, bs, geom, ports)
    amp = vacuum_amplitude(apply_operator_expr(state, op_a * op_b))
    # The leading 1/2 accounts for the pair bookkeeping of a one-sided
    # detection (the pair could equally have taken the other side).
    return 0.5 * abs(amp) ** 2


def same_arm_probability(
    inp: InputSpec,
    arm: Arm,
    theta_a: float,
    theta_b: float,
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
    ports: tuple[Port, Port] = (Port.PARALLEL, Port.PARALLEL),
) -> float:
    """Probability that both photons exit on `arm` and its two frequency-channel
    detectors fire at analyzer angles (theta_a, theta_b).

    `geom.psi` is the relative phase between the two photon-to-detector
    pairings.
    """
    return sum(
        w * _pure_same_arm(inc, arm, (theta_a, theta_b), ports, bs, geom)
        for w, inc in inp.components()
    )


def same_arm_both_arms(
    inp: InputSpec,
    theta_a: float,
    theta_b: float,
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
    ports: tuple[Port, Port] = (Port.PARALLEL, Port.PARALLEL),
) -> float:
    """Same-side pair probability summed over both sides at fixed port angles."""
    return sum(
        same_arm_probability(inp, arm, theta_a, theta_b, bs, geom, ports) for arm in Arm
    )


def same_arm_no_polarizers(
    inp: InputSpec,
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
    dummy_thetas: tuple[float, float] = (0.0, 0.0),
) -> float:
    """Same-side pair probability, both sides, analyzers removed (all ports summed)."""
    return sum(
        same_arm_both_arms(inp, dummy_thetas[0], dummy_thetas[1], bs, geom, (pa, pb))
        for pa in Port
        for pb in Port
    )


def double_trigger_probability(
    inp: InputSpec, arm: Arm, theta: float, bs: BeamSplitterSpec
) -> float:
    """Probability that a single detector on `arm` behind a theta analyzer
    registers both photons.

    Both photons reach one detector, so the two pairings share one position
    and their relative phase is identically zero.  The squared vacuum
    amplitude of the repeated operator counts the ordered pairings twice and
    is halved, and the same one-sided 1/2 bookkeeping as in
    `same_arm_probability` applies.
    """
    geom = PhaseGeometry(0.0, 0.0)
    total = 0.0
    for w, inc in inp.components():
        state = product_state(inc)
        op, _ = same_arm_operator_pair(arm, (theta, theta), bs, geom)
        amp = vacuum_amplitude(apply_operator_expr(state, op * op))
        total += w * 0.25 * abs(amp) ** 2
    return total


def full_outcome_distribution(
    inp: InputSpec,
    theta1: float,
    theta2: float,
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
) -> OutcomeDistribution:
    """Distribution over the twelve exclusive pair outcomes.

    All analyzers on side 1 sit at theta1 and all on side 2 at theta2.
    Opposite-side entries use `geom.phi`, same-side entries `geom.psi`; the
    partition sums to one exactly when the two fringe phases agree
    (cos(phi) = cos(psi), e.g. the symmetric geometry phi = psi), which is
    the regime where the twelve outcomes are one experiment's event space.
    Single-detector double triggers are a different event space and are not
    part of this partition.
    """
    probs: dict[Outcome, float] = {}
    for outcome in all_outcomes():
        if outcome.kind is OutcomeKind.OPPOSITE:
            p = coincidence_probability(
                inp, theta1, theta2, bs, geom, (outcome.port1, outcome.port2)
            )
        else:
            base = theta1 if outcome.arm is Arm.SIDE1 else theta2
            p = same_arm_probability(
                inp, outcome.arm, base, base, bs, geom, (outcome.port1, outcome.port2)
            )
        probs[outcome] = p
    return OutcomeDistribution(probs)
