import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplebraid.braiding import (
    BraidLetter,
    PulseEvent,
    Schedule,
    assemble_generator,
    dressed_populations,
    ideal_pi,
    letter,
    mixed_input,
    propagate,
    propagate_density,
    pulse_hamiltonian,
    schedule_unitary,
    sequential_schedule,
    two_pulse_schedule,
)
from triplebraid.errors import EtaOutOfRange, NotNormalized, OutOfRange
from triplebraid.model import BASE_POINT, ControlParams, dressed_frame, hamiltonian
from triplebraid.numerics import expm_ih, unitarity_error

S2 = math.sqrt(2.0)
PAIRS = [(1, 2), (2, 3), (1, 3)]


def eq8(phase, rabi=1.0):
    e = np.exp(1j * phase)
    return rabi / 4 * np.array(
        [[0, 0, -S2 * e, 0], [0, 0, S2 * e, 0], [-S2 / e, S2 / e, 0, 0], [0, 0, 0, 0]]
    )


def eq9(phase, rabi=1.0):
    e = np.exp(1j * phase)
    return rabi / 2 * np.array([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, e], [0, 0, 1 / e, 0]])


def test_letter_parsing():
    assert letter("pi12o") == BraidLetter((1, 2), "o")
    assert letter("23u", 0.5) == BraidLetter((2, 3), "u", 0.5)
    with pytest.raises(ValueError):
        BraidLetter((1, 1))
    with pytest.raises(ValueError):
        BraidLetter((1, 4))
    with pytest.raises(ValueError):
        BraidLetter((1, 2), "x")


def test_over_acts_on_lambda1(frame):
    out = ideal_pi(letter("12o"), frame) @ frame.state(1)
    np.testing.assert_allclose(out, -1j * frame.state(2), atol=1e-15)


@pytest.mark.parametrize("pair", PAIRS)
@pytest.mark.parametrize("phase", [0.0, 0.4, math.pi / 2, 2.9])
def test_pi_algebra(frame, pair, phase):
    over = ideal_pi(BraidLetter(pair, "o", phase), frame)
    under = ideal_pi(BraidLetter(pair, "u", phase), frame)
    np.testing.assert_allclose(over @ under, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(under @ over, np.eye(4), atol=1e-12)
    k, j = pair
    l = ({1, 2, 3} - set(pair)).pop()
    v = frame.vectors
    sign = np.zeros(4)
    sign[[k - 1, j - 1]] = -1
    sign[[l - 1, 3]] = 1
    expected = v @ np.diag(sign) @ v.conj().T
    np.testing.assert_allclose(over @ over, expected, atol=1e-12)
    np.testing.assert_allclose(under @ under, expected, atol=1e-12)


@pytest.mark.parametrize("phase", [0.0, math.pi / 2, 1.1, -2.0])
def test_pulse_hamiltonians_reproduce_literal_forms(frame, phase):
    np.testing.assert_allclose(pulse_hamiltonian(letter("12o", phase), 1.0, frame), eq8(phase), atol=1e-15)
    np.testing.assert_allclose(pulse_hamiltonian(letter("23o", phase), 1.0, frame), eq9(phase), atol=1e-15)
    np.testing.assert_allclose(pulse_hamiltonian(letter("23u", phase), 2.5, frame), eq9(phase, 2.5), atol=1e-15)


@pytest.mark.parametrize("pair", PAIRS)
@pytest.mark.parametrize("orientation", ["o", "u"])
@pytest.mark.parametrize("rabi", [1.0, 0.3])
def test_propagator_equals_ideal_pi(frame, pair, orientation, rabi):
    lt = BraidLetter(pair, orientation, 0.77)
    h = pulse_hamiltonian(lt, rabi, frame)
    u = expm_ih(lt.sign * h, math.pi / rabi)
    assert np.max(np.abs(u - ideal_pi(lt, frame))) <= 1e-10


def test_general_frame_pulses():
    f = dressed_frame(ControlParams(1.0, 0.8, 0.3))
    lt = letter("13u", 0.2)
    u = expm_ih(-pulse_hamiltonian(lt, 1.0, f), math.pi)
    np.testing.assert_allclose(u, ideal_pi(lt, f), atol=1e-10)


def test_pulse_event_area():
    assert PulseEvent(letter("12o"), 0.0, math.pi, 1.0).is_ideal_pi
    assert not PulseEvent(letter("12o"), 0.0, math.pi, 0.9).is_ideal_pi
    with pytest.raises(ValueError):
        PulseEvent(letter("12o"), 0.0, -1.0)
    with pytest.raises(ValueError):
        Schedule((PulseEvent(letter("12o"), 1.0),), total_time=2.0)


def test_assemble_generator(frame):
    a = PulseEvent(letter("12o", 0.3), 1.0, math.pi)
    b = PulseEvent(letter("23u", 0.3), 2.0, math.pi)
    s = Schedule((a, b), BASE_POINT, 10.0)
    np.testing.assert_allclose(assemble_generator(s, 0.5), hamiltonian(BASE_POINT))
    np.testing.assert_allclose(assemble_generator(s, 1.5), pulse_hamiltonian(a.letter, 1.0, frame))
    both = pulse_hamiltonian(a.letter, 1.0, frame) - pulse_hamiltonian(b.letter, 1.0, frame)
    np.testing.assert_allclose(assemble_generator(s, 3.0), both)
    np.testing.assert_allclose(assemble_generator(s, 9.0), hamiltonian(BASE_POINT))
    with pytest.raises(OutOfRange):
        assemble_generator(s, 10.5)


def test_two_pulse_order_dependence(frame, psi0):
    for phase in (0.0, math.pi / 2, 2.2):
        first = sequential_schedule([letter("12o", phase), letter("23u", phase)])
        second = sequential_schedule([letter("23u", phase), letter("12o", phase)])
        p1 = dressed_populations(propagate(first, psi0).final, frame)
        p2 = dressed_populations(propagate(second, psi0).final, frame)
        np.testing.assert_allclose(p1, [0.3, 0.2, 0.4, 0.1], atol=1e-9)
        np.testing.assert_allclose(p2, [0.2, 0.4, 0.3, 0.1], atol=1e-9)


def test_final_state_is_ordered_product(frame, psi0):
    s = sequential_schedule([letter("12o", 0.5), letter("23u", 0.5)], gap=1.3, lead=0.7, tail=0.2)
    bg = hamiltonian(BASE_POINT)
    h12 = pulse_hamiltonian(letter("12o", 0.5), 1.0, frame)
    h23 = pulse_hamiltonian(letter("23u", 0.5), 1.0, frame)
    u = (expm_ih(bg, 0.2) @ expm_ih(-h23, math.pi) @ expm_ih(bg, 1.3)
         @ expm_ih(h12, math.pi) @ expm_ih(bg, 0.7))
    traj = propagate(s, psi0, samples=37)
    np.testing.assert_allclose(traj.final, u @ psi0, atol=1e-12)
    np.testing.assert_allclose(schedule_unitary(s), u, atol=1e-12)
    assert len(traj.times) == 37 and len(traj.states) == 37
    for psi in traj.states:
        assert abs(np.vdot(psi, psi).real - 1) <= 1e-12


def test_background_only_keeps_populations(frame, psi0):
    s = Schedule((), BASE_POINT, 12.0)
    traj = propagate(s, psi0, samples=50)
    for psi in traj.states:
        np.testing.assert_allclose(dressed_populations(psi, frame), [0.4, 0.3, 0.2, 0.1], atol=1e-10)


def test_general_background_is_stationary():
    p = ControlParams(1.2, 0.9, 0.4)
    f = dressed_frame(p)
    psi = f.to_bare(np.sqrt([0.1, 0.2, 0.3, 0.4]))
    traj = propagate(Schedule((), p, 7.0), psi, samples=20)
    for x in traj.states:
        np.testing.assert_allclose(dressed_populations(x, f), [0.1, 0.2, 0.3, 0.4], atol=1e-10)


def test_non_normalized_state_rejected():
    with pytest.raises(NotNormalized):
        propagate(Schedule((), BASE_POINT, 1.0), [1, 1, 0, 0])


def test_mixed_input_limits():
    c = np.sqrt([0.4, 0.3, 0.2, 0.1])
    np.testing.assert_allclose(mixed_input(c, 1.0), np.outer(c, c))
    np.testing.assert_allclose(mixed_input(c, 0.0), np.diag([0.4, 0.3, 0.2, 0.1]))
    rho = mixed_input(c, 0.5)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.linalg.eigvalsh(rho).min() >= -1e-15
    assert np.linalg.matrix_rank(mixed_input(c, 1.0)) == 1
    with pytest.raises(EtaOutOfRange):
        mixed_input(c, 1.2)
    with pytest.raises(NotNormalized):
        mixed_input([1, 1, 0, 0], 0.5)


def test_literal_mixed_input_layout():
    c = np.array([0.5, 0.5j, -0.5, 0.5 * np.exp(0.3j)])
    eta = 0.37
    rho = mixed_input(c, eta)
    for i in range(4):
        for j in range(4):
            want = abs(c[i]) ** 2 if i == j else eta * c[i] * np.conj(c[j])
            assert rho[i, j] == pytest.approx(want)


@settings(max_examples=40, deadline=None)
@given(eta=st.floats(min_value=0, max_value=1), seed=st.integers(0, 2**32 - 1))
def test_mixed_input_psd(eta, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=4) + 1j * rng.normal(size=4)
    c /= np.linalg.norm(c)
    rho = mixed_input(c, eta)
    assert np.linalg.eigvalsh(rho).min() >= -1e-12
    assert abs(np.trace(rho) - 1) <= 1e-12


def test_density_propagation(frame, psi0):
    s = two_pulse_schedule(letter("12o", 0.9), letter("23u", 0.9), 1.0, 1.2)
    psi_f = propagate(s, psi0).final
    rho_f = propagate_density(s, np.outer(psi0, psi0.conj())).final
    np.testing.assert_allclose(rho_f, np.outer(psi_f, psi_f.conj()), atol=1e-10)

    c = np.sqrt([0.4, 0.3, 0.2, 0.1])
    for eta in (0.0, 0.5):
        rho0 = mixed_input(c, eta)
        w0 = np.linalg.eigvalsh(rho0)
        traj = propagate_density(s, rho0, samples=30)
        for rho in traj.states:
            assert abs(np.trace(rho) - 1) <= 1e-10
            assert abs(np.trace(rho @ rho) - np.trace(rho0 @ rho0)) <= 1e-10
            np.testing.assert_allclose(np.linalg.eigvalsh(rho), w0, atol=1e-10)


def test_dressed_populations_examples(frame, psi0):
    np.testing.assert_allclose(dressed_populations(frame.state(2), frame), [0, 1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(dressed_populations(psi0, frame), [0.4, 0.3, 0.2, 0.1], atol=1e-15)
    np.testing.assert_allclose(dressed_populations(np.eye(4) / 4, frame), [0.25] * 4, atol=1e-15)


word_letters = st.lists(
    st.builds(BraidLetter, pair=st.sampled_from(PAIRS), orientation=st.sampled_from(["o", "u"])),
    min_size=1,
    max_size=4,
)


@settings(max_examples=30, deadline=None)
@given(
    letters=word_letters,
    phase=st.floats(min_value=0, max_value=2 * math.pi),
    lead=st.floats(min_value=0, max_value=5),
    gap=st.floats(min_value=0, max_value=5),
)
def test_sequential_populations_are_phase_and_timing_free(letters, phase, lead, gap):
    frame = dressed_frame(BASE_POINT)
    psi0 = frame.to_bare(np.sqrt([0.4, 0.3, 0.2, 0.1]))
    ref = sequential_schedule(letters)
    moved = sequential_schedule([lt.with_phase(phase) for lt in letters], lead=lead, gap=gap)
    p_ref = dressed_populations(schedule_unitary(ref) @ psi0, frame)
    p_new = dressed_populations(schedule_unitary(moved) @ psi0, frame)
    np.testing.assert_allclose(p_new, p_ref, atol=1e-8)


@settings(max_examples=30, deadline=None)
@given(pair=st.sampled_from(PAIRS), phase=st.floats(0, 6.3), seed=st.integers(0, 2**32 - 1))
def test_pi_algebra_on_states(pair, phase, seed):
    frame = dressed_frame(BASE_POINT)
    rng = np.random.default_rng(seed)
    over = ideal_pi(BraidLetter(pair, "o", phase), frame)
    under = ideal_pi(BraidLetter(pair, "u", phase), frame)
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    psi = a[0] * frame.state(pair[0]) + a[1] * frame.state(pair[1])
    np.testing.assert_allclose(over @ over @ psi, -psi, atol=1e-12)
    phi = rng.normal(size=4) + 1j * rng.normal(size=4)
    np.testing.assert_allclose(over @ under @ phi, phi, atol=1e-12)
    assert unitarity_error(over) <= 1e-12
