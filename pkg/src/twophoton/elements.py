"""Beam splitter, polarization analyzers, and detector operators.

Conventions fixed here and relied on everywhere else:

* Splitter action per polarization axis:  a1_out = t*a1_in + i*r*a2_in and
  a2_out = i*r*a1_in + t*a2_in, i.e. reflection carries a fixed factor i.
* Analyzer ports: the parallel port projects onto (cos t, sin t), the
  perpendicular port onto (-sin t, cos t); the perpendicular port equals the
  parallel port rotated by pi/2.
* Geometry enters only through two relative phases.  `phi` is the fringe
  phase between the both-transmitted and the both-reflected path of an
  opposite-side coincidence; it is attached to the reflected term of the
  side-1 detector operator.  `psi` is the fringe phase between the two
  pairings of a same-side pair detection; it is attached to the transmitted
  term of the first operator of the pair.  Equal displacement of both
  detectors leaves these relative phases (and hence all probabilities)
  unchanged; `phase_from_positions` is the documented fold-in map.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .fock import TOL, Arm, FreqSlot, Mode, OperatorExpr, Pol


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Lossless splitter amplitudes per polarization axis (all real, in [0, 1])."""

    tx: float
    ty: float
    rx: float
    ry: float

    def __post_init__(self) -> None:
        for name in ("tx", "ty", "rx", "ry"):
            v = getattr(self, name)
            if not (math.isfinite(v) and -TOL <= v <= 1.0 + TOL):
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
        if abs(self.tx**2 + self.rx**2 - 1.0) > TOL:
            raise ValueError(f"lossy x axis: tx^2 + rx^2 = {self.tx**2 + self.rx**2!r}")
        if abs(self.ty**2 + self.ry**2 - 1.0) > TOL:
            raise ValueError(f"lossy y axis: ty^2 + ry^2 = {self.ty**2 + self.ry**2!r}")

    @classmethod
    def from_transmission(cls, tx: float, ty: float) -> "BeamSplitterSpec":
        """Build a lossless splitter from transmission amplitudes alone."""
        if not (0.0 <= tx <= 1.0 and 0.0 <= ty <= 1.0):
            raise ValueError(f"transmissions must lie in [0, 1], got {(tx, ty)!r}")
        return cls(tx, ty, math.sqrt(max(0.0, 1.0 - tx * tx)), math.sqrt(max(0.0, 1.0 - ty * ty)))

    @classmethod
    def fifty_fifty(cls) -> "BeamSplitterSpec":
        """Polarization-independent 50:50 splitter."""
        s = 1.0 / math.sqrt(2.0)
        return cls(s, s, s, s)

    def t(self, pol: Pol) -> float:
        return self.tx if pol is Pol.X else self.ty

    def r(self, pol: Pol) -> float:
        return self.rx if pol is Pol.X else self.ry


class Port(Enum):
    """Output port of a two-channel (birefringent) analyzer."""

    PARALLEL = 0
    PERPENDICULAR = 1


@dataclass(frozen=True)
class AnalyzerSetting:
    """One detector channel: side, analyzer angle (radians), and port."""

    arm: Arm
    theta: float
    port: Port = Port.PARALLEL

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta):
            raise ValueError(f"analyzer angle must be finite, got {self.theta!r}")

    def weights(self) -> tuple[float, float]:
        """Projection weights (wx, wy) of this port."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        if self.port is Port.PARALLEL:
            return c, s
        return -s, c


@dataclass(frozen=True)
class PhaseGeometry:
    """Folded detector-position phases (radians); see module docstring."""

    phi: float = 0.0
    psi: float = 0.0

    def __post_init__(self) -> None:
        for name in ("phi", "psi"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def phase_from_positions(z1: float, z2: float, fringe_spacing: float) -> float:
    """Fold two detector positions into a relative fringe phase.

    Returns 2*pi*(z2 - z1)/fringe_spacing; shifting both positions equally
    leaves the result unchanged.
    """
    if fringe_spacing == 0 or not math.isfinite(fringe_spacing):
        raise ValueError(f"fringe_spacing must be finite and nonzero, got {fringe_spacing!r}")
    return 2.0 * math.pi * (z2 - z1) / fringe_spacing


def _input_mode(arm: Arm, pol: Pol) -> Mode:
    """Occupied input mode on a given side (side 1 carries W1, side 2 W2)."""
    freq = FreqSlot.W1 if arm is Arm.SIDE1 else FreqSlot.W2
    return Mode(arm, pol, freq)


def _other(arm: Arm) -> Arm:
    return Arm.SIDE2 if arm is Arm.SIDE1 else Arm.SIDE1


def bs_output_ops(bs: BeamSplitterSpec) -> dict[tuple[Arm, Pol], OperatorExpr]:
    """Substitution table: each output-side annihilator as input annihilators.

    For output side j and polarization p:  t_p * (same-side input) +
    i * r_p * (other-side input).  The frequency slot rides with the input
    side, since each source feeds one side with one frequency.
    """
    table: dict[tuple[Arm, Pol], OperatorExpr] = {}
    for arm in Arm:
        for pol in Pol:
            expr = OperatorExpr.from_terms(
                [
                    (bs.t(pol), (_input_mode(arm, pol),)),
                    (1j * bs.r(pol), (_input_mode(_other(arm), pol),)),
                ]
            )
            table[(arm, pol)] = expr
    return table


def detector_operator(
    setting: AnalyzerSetting, bs: BeamSplitterSpec, geom: PhaseGeometry
) -> OperatorExpr:
    """Field operator for one analyzer port behind the splitter.

    Transmitted and reflected input terms are combined with the analyzer
    projection weights; the side-1 operator's reflected term carries
    exp(i*phi) so that the two-path relative phase of an opposite-side
    coincidence is exactly `phi`.
    """
    wx, wy = setting.weights()
    refl_phase = cmath.exp(1j * geom.phi) if setting.arm is Arm.SIDE1 else 1.0
    terms = []
    for pol, w in ((Pol.X, wx), (Pol.Y, wy)):
        terms.append((w * bs.t(pol), (_input_mode(setting.arm, pol),)))
        terms.append((1j * refl_phase * w * bs.r(pol), (_input_mode(_other(setting.arm), pol),)))
    return OperatorExpr.from_terms(terms)


def same_arm_operator_pair(
    arm: Arm,
    thetas: tuple[float, float],
    bs: BeamSplitterSpec,
    geom: PhaseGeometry,
    ports: tuple[Port, Port] = (Port.PARALLEL, Port.PARALLEL),
) -> tuple[OperatorExpr, OperatorExpr]:
    """Operators for the two detectors of a same-side pair measurement.

    Both detectors sit on `arm`; the first analyzes at thetas[0], the second
    at thetas[1].  The first operator's transmitted term carries exp(i*psi),
    which makes `psi` the relative phase between the two pairings
    (which photon reaches which detector) of a same-side pair detection.
    """
    ops = []
    for theta, port, t_phase in (
        (thetas[0], ports[0], cmath.exp(1j * geom.psi)),
        (thetas[1], ports[1], 1.0),
    ):
        wx, wy = AnalyzerSetting(arm, theta, port).weights()
        terms = []
        for pol, w in ((Pol.X, wx), (Pol.Y, wy)):
            terms.append((t_phase * w * bs.t(pol), (_input_mode(arm, pol),)))
            terms.append((1j * w * bs.r(pol), (_input_mode(_other(arm), pol),)))
        ops.append(OperatorExpr.from_terms(terms))
    return ops[0], ops[1]
