"""Point-by-point agreement checks between the operator engine and the
closed forms.

The default grid steps every angle by pi/12 over a half turn (all
probabilities are pi-periodic in every angle), crosses the fringe phases
{0, pi/2, pi, 2pi/3} and four splitters (50:50, an asymmetric one, a clear
window, a perfect mirror), and interleaves the phase/splitter combinations
through the four-angle grids so each family covers everything at tractable
cost.  A comparison fails if any |engine - closed form| exceeds the
tolerance (1e-12 unless overridden).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable

from . import formulas
from .elements import BeamSplitterSpec, PhaseGeometry
from .engine import (
    Arm,
    InputSpec,
    coincidence_no_polarizers,
    coincidence_probability,
    double_trigger_probability,
    same_arm_both_arms,
    same_arm_no_polarizers,
    same_arm_probability,
)

DEFAULT_TOL = 1e-12

ANGLE_STEP = math.pi / 12.0
ANGLES = tuple(k * ANGLE_STEP for k in range(12))  # [0, pi), step pi/12
PHASES = (0.0, math.pi / 2.0, math.pi, 2.0 * math.pi / 3.0)


def standard_splitters() -> tuple[BeamSplitterSpec, ...]:
    return (
        BeamSplitterSpec.fifty_fifty(),
        BeamSplitterSpec.from_transmission(0.9, 0.6),
        BeamSplitterSpec.from_transmission(1.0, 1.0),  # clear window
        BeamSplitterSpec.from_transmission(0.0, 0.0),  # perfect mirror
    )


@dataclass(frozen=True)
class CheckResult:
    """Summary of one engine-versus-closed-form comparison."""

    name: str
    n_points: int
    max_dev: float
    mean_dev: float

    def passed(self, tol: float = DEFAULT_TOL) -> bool:
        return self.max_dev <= tol


def _summarize(name: str, deviations: Iterable[float]) -> CheckResult:
    worst = 0.0
    total = 0.0
    n = 0
    for d in deviations:
        n += 1
        total += d
        if d > worst:
            worst = d
    return CheckResult(name, n, worst, total / n if n else 0.0)


def _interleaved_combos(
    point_grids: Iterable[tuple[float, ...]],
    combos: tuple,
) -> Iterable[tuple[tuple[float, ...], object]]:
    for i, point in enumerate(point_grids):
        yield point, combos[i % len(combos)]


def check_coincidence(step: int = 1) -> CheckResult:
    combos = tuple(itertools.product(PHASES, standard_splitters()))
    points = itertools.islice(itertools.product(ANGLES, repeat=4), 0, None, step)

    def devs():
        for (pol1, pol2, ana1, ana2), (phi, bs) in _interleaved_combos(points, combos):
            geom = PhaseGeometry(phi=phi)
            eng = coincidence_probability(
                InputSpec.polarized(pol1, pol2), ana1, ana2, bs, geom
            )
            ana = formulas.p_coincidence(pol1, pol2, ana1, ana2, bs, phi)
            yield abs(eng - ana)

    return _summarize("coincidence", devs())


def check_same_arm(step: int = 1) -> CheckResult:
    combos = tuple(itertools.product(PHASES, standard_splitters()))
    points = itertools.islice(itertools.product(ANGLES, repeat=4), 0, None, step)

    def devs():
        for (pol1, pol2, ana_a, ana_b), (psi, bs) in _interleaved_combos(points, combos):
            geom = PhaseGeometry(psi=psi)
            eng = same_arm_probability(
                InputSpec.polarized(pol1, pol2), Arm.SIDE2, ana_a, ana_b, bs, geom
            )
            ana = formulas.p_same_arm(pol1, pol2, ana_a, ana_b, bs, psi)
            yield abs(eng - ana)

    return _summarize("same_arm", devs())


def check_unpolarized() -> CheckResult:
    def devs():
        unpol = InputSpec.unpolarized()
        for ana1, ana2 in itertools.product(ANGLES, repeat=2):
            for phi in PHASES:
                for bs in standard_splitters():
                    eng = coincidence_probability(unpol, ana1, ana2, bs, PhaseGeometry(phi=phi))
                    ana = formulas.p_unpolarized(ana1, ana2, bs, phi)
                    yield abs(eng - ana)

    return _summarize("unpolarized", devs())


def check_unpolarized_5050(prefactor: float = 0.125) -> CheckResult:
    def devs():
        unpol = InputSpec.unpolarized()
        bs = BeamSplitterSpec.fifty_fifty()
        for ana1, ana2 in itertools.product(ANGLES, repeat=2):
            for phi in PHASES:
                eng = coincidence_probability(unpol, ana1, ana2, bs, PhaseGeometry(phi=phi))
                ana = formulas.p_unpolarized_5050(ana1, ana2, phi, prefactor=prefactor)
                yield abs(eng - ana)

    return _summarize("unpolarized_5050", devs())


def check_no_polarizers() -> CheckResult:
    def devs():
        bs = BeamSplitterSpec.fifty_fifty()
        for pol1, pol2 in itertools.product(ANGLES, repeat=2):
            for phi in PHASES:
                eng = coincidence_no_polarizers(
                    InputSpec.polarized(pol1, pol2), bs, PhaseGeometry(phi=phi)
                )
                ana = formulas.p_no_polarizers(pol1, pol2, phi)
                yield abs(eng - ana)

    return _summarize("no_polarizers", devs())


def check_same_arm_no_polarizers() -> CheckResult:
    def devs():
        bs = BeamSplitterSpec.fifty_fifty()
        geom = PhaseGeometry()
        for pol1, pol2 in itertools.product(ANGLES, repeat=2):
            eng = same_arm_no_polarizers(InputSpec.polarized(pol1, pol2), bs, geom)
            ana = formulas.p_same_arm_no_polarizers(pol1, pol2)
            yield abs(eng - ana)

    return _summarize("same_arm_no_polarizers", devs())


def check_unpolarized_same_arm() -> CheckResult:
    def devs():
        bs = BeamSplitterSpec.fifty_fifty()
        geom = PhaseGeometry()
        unpol = InputSpec.unpolarized()
        for ana_a, ana_b in itertools.product(ANGLES, repeat=2):
            eng = same_arm_both_arms(unpol, ana_a, ana_b, bs, geom)
            ana = formulas.p_unpolarized_same_arm(ana_a, ana_b)
            yield abs(eng - ana)

    return _summarize("unpolarized_same_arm", devs())


def check_double_trigger() -> CheckResult:
    def devs():
        bs = BeamSplitterSpec.fifty_fifty()
        for pol1, pol2, theta in itertools.product(ANGLES, repeat=3):
            for arm in Arm:
                eng = double_trigger_probability(
                    InputSpec.polarized(pol1, pol2), arm, theta, bs
                )
                ana = formulas.p_double_trigger(pol1, pol2, theta)
                yield abs(eng - ana)

    return _summarize("double_trigger", devs())


def run_comparison(
    perturbations: dict[str, float] | None = None, step: int = 1
) -> list[CheckResult]:
    """Run every check; `perturbations` may override named constants (used as
    a negative control), and `step` thins the four-angle grids."""
    perturbations = perturbations or {}
    unknown = set(perturbations) - {"unpolarized_5050_prefactor"}
    if unknown:
        raise ValueError(f"unknown perturbation(s): {sorted(unknown)}")
    prefactor = perturbations.get("unpolarized_5050_prefactor", 0.125)
    checks: list[Callable[[], CheckResult]] = [
        lambda: check_coincidence(step),
        lambda: check_same_arm(step),
        check_unpolarized,
        lambda: check_unpolarized_5050(prefactor),
        check_no_polarizers,
        check_same_arm_no_polarizers,
        check_unpolarized_same_arm,
        check_double_trigger,
    ]
    return [c() for c in checks]
