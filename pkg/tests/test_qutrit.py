import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplebraid.qutrit import (
    X3,
    dressed_block,
    equal_up_to_global_phase,
    successive_phase_ratios,
    synth_x3,
    synth_z3,
    z3,
)


def test_x3_pattern(frame):
    r = synth_x3(frame)
    assert r.pattern_distance <= 1e-12
    block = r.triple_block
    assert np.allclose(np.abs(block), X3, atol=1e-12)
    # one unit-modulus entry per row and column
    assert np.all(np.sum(np.abs(block) > 0.5, axis=0) == 1)
    assert np.all(np.sum(np.abs(block) > 0.5, axis=1) == 1)
    np.testing.assert_allclose(block.conj().T @ block, np.eye(3), atol=1e-12)


def test_x3_cubed_is_identity(frame):
    u = synth_x3(frame).unitary
    block = dressed_block(u @ u @ u, frame)
    assert equal_up_to_global_phase(block, np.eye(3)) <= 1e-10


def test_x3_leaves_lambda4(frame):
    u = synth_x3(frame).unitary
    l4 = frame.state(4)
    assert abs(np.vdot(l4, u @ l4)) == pytest.approx(1.0, abs=1e-12)
    p4 = np.outer(l4, l4.conj())
    np.testing.assert_allclose(u @ p4, p4 @ u, atol=1e-12)


def test_z3_identity_at_zero(frame):
    r = synth_z3(0.0, frame)
    assert equal_up_to_global_phase(r.triple_block, np.eye(3)) <= 1e-12
    assert r.phase_sign is None


def test_z3_quarter_turn(frame):
    r = synth_z3(math.pi / 2, frame)
    r1, r2 = successive_phase_ratios(r.triple_block)
    assert abs(r1) == pytest.approx(math.pi / 2, abs=1e-12)
    assert abs(r2) == pytest.approx(math.pi / 2, abs=1e-12)
    assert r.phase_sign == -1
    # the sequence realizes Z3(-phi3) up to a global phase
    assert equal_up_to_global_phase(r.triple_block, z3(-math.pi / 2)) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(phi3=st.floats(min_value=-3.0, max_value=3.0))
def test_z3_diagonal_and_inverse(phi3):
    r = synth_z3(phi3)
    off = r.triple_block - np.diag(np.diag(r.triple_block))
    assert np.max(np.abs(off)) <= 1e-12
    inv = synth_z3(-phi3)
    assert equal_up_to_global_phase(r.triple_block @ inv.triple_block, np.eye(3)) <= 1e-12


def test_gates_commute_with_lambda4_projector(frame):
    l4 = frame.state(4)
    p4 = np.outer(l4, l4.conj())
    for u in (synth_x3(frame).unitary, synth_z3(0.7, frame).unitary):
        np.testing.assert_allclose(u @ p4 - p4 @ u, 0, atol=1e-12)
