"""Smoke tests for the python module against independent references."""

import cmath
import math

import pytest

import obhgreen as og


def test_bessel_against_scipy():
    scipy_special = pytest.importorskip("scipy.special")
    for n, z in [(0, 1.0), (2, 3.7 + 0.4j), (11, 9.0 + 2.0j), (40, 80.0 + 5.0j)]:
        got = og.bessel_j(n, z)
        ref = complex(scipy_special.jv(n, z))
        assert abs(got - ref) <= 1e-9 * abs(ref)
        got_h = og.hankel1(n, z)
        ref_h = complex(scipy_special.hankel1(n, z))
        assert abs(got_h - ref_h) <= 1e-9 * abs(ref_h)


def test_wronskian_identity():
    z = 2.3 + 1.1j
    for n in (0, 3, 17):
        jv, jd = og.deriv_pair("J", n, z)
        hv, hd = og.deriv_pair("H1", n, z)
        w = jv * hd - jd * hv
        assert abs(w - 2j / (math.pi * z)) < 1e-12 * abs(w)


def test_lorentz_on_resonance():
    model = og.LorentzModel()
    eps = og.lorentz_permittivity(1.0, model)
    assert abs(eps - (1 + 1j)) < 1e-12


def test_vacuum_rates_match_closed_form():
    stack = og.LayerStack.vacuum(0.45)
    atoms = og.AtomPair()
    atoms.omega_a = 1.0
    atoms.r = 0.81 * math.pi
    rates = og.decay_rates(atoms, stack)
    x = 1.62 * math.pi
    assert rates.gamma == pytest.approx(1.0, abs=1e-9)
    assert rates.gamma_ab == pytest.approx(og.vacuum_gamma_ab(x), abs=1e-9)
    assert rates.gamma_ab == pytest.approx(-0.242, abs=5e-4)

    shifts = og.dipole_shift(atoms, stack)
    assert shifts.delta_ab == pytest.approx(og.vacuum_delta_ab(x), abs=1e-9)


def test_negativity_dynamics():
    rates = og.RateSet()
    rates.gamma_plus = 0.758
    rates.gamma_minus = 1.242
    rates.gamma = 1.0
    rates.gamma_ab = -0.242
    shifts = og.ShiftSet()
    shifts.delta_ab = 0.0791
    shifts.delta_plus = shifts.delta_ab
    shifts.delta_minus = -shifts.delta_ab

    trace = og.negativity_trace(rates, shifts, 10.0, 101)
    assert len(trace) == 101
    assert trace[0].neg_eigen == 0.0
    assert trace[0].neg_closed == 0.0
    for row in trace:
        assert abs(row.neg_eigen - row.neg_closed) < 1e-12
        assert row.neg_eigen >= 0.0
    assert max(row.neg_eigen for row in trace) > 1e-4


def test_scattering_coefficient_vacuum_is_zero():
    stack = og.LayerStack.vacuum(5.0)
    c = og.scattering_coefficient("V", stack, 2, 0.05, 0.1)
    assert abs(c) < 1e-14


def test_freespace_green_normalization():
    om = 0.7
    g = og.freespace_green_zz(1e-4, om)
    assert 6 * math.pi / om * g.imag == pytest.approx(1.0, abs=1e-6)


def test_domain_error_raised():
    with pytest.raises(og.DomainError):
        og.bessel_j(81, 1.0)
    with pytest.raises(og.SingularArgument):
        og.hankel1(0, 0.0)
