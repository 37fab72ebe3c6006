import cmath
import math

import numpy as np
import pytest

from twophoton.elements import (
    AnalyzerSetting,
    BeamSplitterSpec,
    PhaseGeometry,
    Port,
    bs_output_ops,
    detector_operator,
    phase_from_positions,
    same_arm_operator_pair,
)
from twophoton.fock import TOL, Arm, FreqSlot, Mode, Pol

RNG = np.random.default_rng(411)


def test_beam_splitter_rejects_lossy_amplitudes():
    with pytest.raises(ValueError):
        BeamSplitterSpec(0.9, 0.6, 0.9, 0.8)  # tx^2 + rx^2 != 1
    with pytest.raises(ValueError):
        BeamSplitterSpec(1.2, 0.0, 0.0, 1.0)  # out of range


def test_from_transmission_is_lossless():
    for tx, ty in ((0.9, 0.6), (1.0, 1.0), (0.0, 0.0), (0.3, 0.95)):
        bs = BeamSplitterSpec.from_transmission(tx, ty)
        assert abs(bs.tx**2 + bs.rx**2 - 1.0) < TOL
        assert abs(bs.ty**2 + bs.ry**2 - 1.0) < TOL
    with pytest.raises(ValueError):
        BeamSplitterSpec.from_transmission(1.5, 0.5)


def test_fifty_fifty_amplitudes():
    bs = BeamSplitterSpec.fifty_fifty()
    s = 1.0 / math.sqrt(2.0)
    assert (bs.tx, bs.ty, bs.rx, bs.ry) == (s, s, s, s)
    assert bs.t(Pol.X) == bs.tx and bs.t(Pol.Y) == bs.ty
    assert bs.r(Pol.X) == bs.rx and bs.r(Pol.Y) == bs.ry


def test_splitter_transform_is_unitary_per_polarization():
    # columns of (t, ir; ir, t) are orthonormal for every lossless splitter
    for tx, ty in ((0.5, 0.5), (0.9, 0.6), (1.0, 1.0), (0.0, 0.0), (0.33, 0.77)):
        bs = BeamSplitterSpec.from_transmission(tx, ty)
        for t, r in ((bs.tx, bs.rx), (bs.ty, bs.ry)):
            m = np.array([[t, 1j * r], [1j * r, t]])
            assert np.max(np.abs(m @ m.conj().T - np.eye(2))) < TOL


def test_parallel_port_projects_along_analyzer_angle():
    theta = 0.7
    wx, wy = AnalyzerSetting(Arm.SIDE1, theta).weights()
    assert abs(wx - math.cos(theta)) < TOL
    assert abs(wy - math.sin(theta)) < TOL


def test_perpendicular_port_is_parallel_rotated_quarter_turn():
    for theta in RNG.uniform(-math.pi, math.pi, size=25):
        perp = AnalyzerSetting(Arm.SIDE2, theta, Port.PERPENDICULAR).weights()
        rotated = AnalyzerSetting(Arm.SIDE2, theta + math.pi / 2.0).weights()
        assert abs(perp[0] - rotated[0]) < TOL
        assert abs(perp[1] - rotated[1]) < TOL


def test_analyzer_and_phase_validation():
    with pytest.raises(ValueError):
        AnalyzerSetting(Arm.SIDE1, math.nan)
    with pytest.raises(ValueError):
        PhaseGeometry(phi=math.inf)
    with pytest.raises(ValueError):
        PhaseGeometry(psi=math.nan)


def test_phase_from_positions_depends_only_on_separation():
    spacing = 0.8
    base = phase_from_positions(0.1, 0.5, spacing)
    assert abs(base - 2.0 * math.pi * 0.4 / spacing) < TOL
    for shift in RNG.uniform(-5.0, 5.0, size=10):
        assert abs(phase_from_positions(0.1 + shift, 0.5 + shift, spacing) - base) < TOL
    with pytest.raises(ValueError):
        phase_from_positions(0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        phase_from_positions(0.0, 1.0, math.inf)


def test_splitter_output_mixes_sides_with_i_reflection():
    bs = BeamSplitterSpec.from_transmission(0.9, 0.6)
    table = bs_output_ops(bs)
    out = table[(Arm.SIDE1, Pol.X)].coefficient_map()
    same = (Mode(Arm.SIDE1, Pol.X, FreqSlot.W1),)
    other = (Mode(Arm.SIDE2, Pol.X, FreqSlot.W2),)
    assert abs(out[same] - bs.tx) < TOL
    assert abs(out[other] - 1j * bs.rx) < TOL
    out2 = table[(Arm.SIDE2, Pol.Y)].coefficient_map()
    assert abs(out2[(Mode(Arm.SIDE2, Pol.Y, FreqSlot.W2),)] - bs.ty) < TOL
    assert abs(out2[(Mode(Arm.SIDE1, Pol.Y, FreqSlot.W1),)] - 1j * bs.ry) < TOL


def test_frequency_slot_rides_with_input_side():
    table = bs_output_ops(BeamSplitterSpec.fifty_fifty())
    for (arm, pol), expr in table.items():
        for _, modes in expr.terms:
            (mode,) = modes
            expected = FreqSlot.W1 if mode.arm is Arm.SIDE1 else FreqSlot.W2
            assert mode.freq is expected
            assert mode.pol is pol


def test_detector_operator_phase_sits_on_side1_reflected_terms():
    bs = BeamSplitterSpec.fifty_fifty()
    phi = 1.2
    theta = 0.4
    op1 = detector_operator(AnalyzerSetting(Arm.SIDE1, theta), bs, PhaseGeometry(phi=phi))
    plain = detector_operator(AnalyzerSetting(Arm.SIDE1, theta), bs, PhaseGeometry())
    got = op1.coefficient_map()
    ref = plain.coefficient_map()
    for modes, coeff in ref.items():
        (mode,) = modes
        factor = cmath.exp(1j * phi) if mode.arm is Arm.SIDE2 else 1.0  # reflected into side 1
        assert abs(got[modes] - coeff * factor) < TOL


def test_side2_detector_operator_ignores_phi():
    bs = BeamSplitterSpec.from_transmission(0.8, 0.7)
    op_a = detector_operator(AnalyzerSetting(Arm.SIDE2, 0.3), bs, PhaseGeometry(phi=2.0))
    op_b = detector_operator(AnalyzerSetting(Arm.SIDE2, 0.3), bs, PhaseGeometry(phi=0.0))
    assert op_a.coefficient_map() == op_b.coefficient_map()


def test_detector_operator_matches_weighted_splitter_outputs():
    bs = BeamSplitterSpec.from_transmission(0.9, 0.6)
    theta = 1.1
    setting = AnalyzerSetting(Arm.SIDE2, theta, Port.PERPENDICULAR)
    op = detector_operator(setting, bs, PhaseGeometry())
    wx, wy = setting.weights()
    table = bs_output_ops(bs)
    combo = table[(Arm.SIDE2, Pol.X)].scaled(wx) + table[(Arm.SIDE2, Pol.Y)].scaled(wy)
    got, want = op.coefficient_map(), combo.coefficient_map()
    assert set(got) == set(want)
    for modes in got:
        assert abs(got[modes] - want[modes]) < TOL


def test_same_arm_pair_phase_sits_on_first_transmitted_term():
    bs = BeamSplitterSpec.fifty_fifty()
    psi = 0.9
    thetas = (0.2, 1.3)
    op_a, op_b = same_arm_operator_pair(Arm.SIDE2, thetas, bs, PhaseGeometry(psi=psi))
    ref_a, ref_b = same_arm_operator_pair(Arm.SIDE2, thetas, bs, PhaseGeometry())
    for modes, coeff in ref_a.coefficient_map().items():
        (mode,) = modes
        factor = cmath.exp(1j * psi) if mode.arm is Arm.SIDE2 else 1.0  # transmitted term
        assert abs(op_a.coefficient_map()[modes] - coeff * factor) < TOL
    # second operator of the pair carries no psi
    assert op_b.coefficient_map() == ref_b.coefficient_map()


def test_same_arm_pair_honors_ports_and_angles():
    bs = BeamSplitterSpec.fifty_fifty()
    op_perp, _ = same_arm_operator_pair(
        Arm.SIDE1, (0.5, 0.5), bs, PhaseGeometry(), ports=(Port.PERPENDICULAR, Port.PARALLEL)
    )
    op_rot, _ = same_arm_operator_pair(
        Arm.SIDE1, (0.5 + math.pi / 2.0, 0.5), bs, PhaseGeometry()
    )
    got, want = op_perp.coefficient_map(), op_rot.coefficient_map()
    assert set(got) == set(want)
    for modes in got:
        assert abs(got[modes] - want[modes]) < TOL
