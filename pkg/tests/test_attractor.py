import numpy as np
import pytest

from convpow import (AttractorSpec, InvalidKernelError, airy_oracle,
                     attractor_eval, decay_envelope, rescale, vdc_bounds)


def test_spec_validation():
    with pytest.raises(InvalidKernelError):
        AttractorSpec(1, 1.0)
    with pytest.raises(InvalidKernelError):
        AttractorSpec(2, 0.0)
    with pytest.raises(InvalidKernelError):
        AttractorSpec(2, -1.0 + 1j)
    with pytest.raises(InvalidKernelError):
        AttractorSpec(3, 1.0)       # odd m needs purely imaginary beta
    AttractorSpec(3, 1j)            # fine
    AttractorSpec(4, 2.0 + 1j)      # fine


def test_eps_floor(ex1=None):
    with pytest.raises(ValueError, match="floor"):
        attractor_eval(AttractorSpec(2, 1.0), 0.0, eps=1e-15)


def test_heat_kernel_at_zero():
    v, cert = attractor_eval(AttractorSpec(2, 1.0), 0.0)
    assert cert.scheme == "closed_form"
    assert v == pytest.approx((4 * np.pi) ** -0.5, abs=1e-15)


def test_imaginary_heat_kernel_constant_modulus():
    xs = np.linspace(-100, 100, 501)
    v, _ = attractor_eval(AttractorSpec(2, 0.125j), xs)
    assert np.max(np.abs(np.abs(v) - (np.pi / 2) ** -0.5)) < 1e-10
    for tau in (0.5, -2.0):
        v, _ = attractor_eval(AttractorSpec(2, 1j * tau), xs)
        assert np.max(np.abs(np.abs(v) - (4 * np.pi * abs(tau)) ** -0.5)) < 1e-10


def test_airy_oracle_values():
    assert airy_oracle(0.0) == pytest.approx(0.3550280538878172, abs=1e-12)
    assert airy_oracle(1.0) == pytest.approx(0.1352924163128814, abs=1e-12)
    with pytest.raises(ValueError):
        airy_oracle(41.0)


def test_airy_oracle_positive_axis_sign():
    xs = np.linspace(1, 40, 79)
    vals = airy_oracle(xs)
    assert np.all(vals > 0)
    assert np.all(np.diff(vals) < 0)


def test_airy_oracle_seams():
    from convpow.attractor import _airy_asym_neg, _airy_asym_pos, _airy_series
    assert abs(_airy_series(8.0) - _airy_asym_pos(8.0)) < 1e-10
    assert abs(_airy_series(-8.0) - _airy_asym_neg(-8.0)) < 1e-10


def test_attractor_matches_airy():
    xs = np.linspace(-10, 5, 151)
    v, cert = attractor_eval(AttractorSpec(3, 1j / 3), xs, 1e-10)
    assert cert.tail_bound < 1e-10
    assert np.max(np.abs(v - airy_oracle(xs))) < 1e-8
    assert np.max(np.abs(v.imag)) < 1e-10


def test_forced_real_line_matches_closed_form():
    for beta in (1.0, 0.25 + 0.5j, 2.0 - 1.0j):
        spec = AttractorSpec(2, beta)
        xs = np.linspace(-6, 6, 25)
        cf, _ = attractor_eval(spec, xs)
        rl, cert = attractor_eval(spec, xs, 1e-11, scheme="real_line")
        assert cert.scheme == "real_line"
        assert np.max(np.abs(cf - rl)) < 1e-9


def test_forced_rotated_matches_closed_form():
    for tau in (0.125, -0.7):
        spec = AttractorSpec(2, 1j * tau)
        xs = np.linspace(-15, 15, 31)
        cf, _ = attractor_eval(spec, xs)
        rr, cert = attractor_eval(spec, xs, 1e-10, scheme="rotated_rays")
        assert cert.scheme == "rotated_rays"
        assert np.max(np.abs(cf - rr)) < 1e-9


def test_scheme_restrictions():
    with pytest.raises(InvalidKernelError):
        attractor_eval(AttractorSpec(3, 1j), 0.0, scheme="closed_form")
    with pytest.raises(InvalidKernelError):
        attractor_eval(AttractorSpec(3, 1j), 0.0, scheme="real_line")
    with pytest.raises(InvalidKernelError):
        attractor_eval(AttractorSpec(2, 1.0), 0.0, scheme="rotated_rays")


def test_conjugation_symmetry_even():
    xs = np.array([-3.2, -1.0, 0.4, 2.7])
    for beta in (1.0 + 0.8j, 0.5 - 0.2j):
        a, _ = attractor_eval(AttractorSpec(4, beta), xs, 1e-10)
        b, _ = attractor_eval(AttractorSpec(4, np.conj(beta)), xs, 1e-10)
        assert np.max(np.abs(np.conj(a) - b)) < 1e-8
    a, _ = attractor_eval(AttractorSpec(4, 1j), xs, 1e-10)
    b, _ = attractor_eval(AttractorSpec(4, -1j), xs, 1e-10)
    assert np.max(np.abs(np.conj(a) - b)) < 1e-8


def test_conjugation_symmetry_odd():
    # odd m, beta = i tau: -conj(beta) = beta, so conjugation symmetry says
    # the kernel is real; the reflection law pairs beta with -beta.
    xs = np.array([-4.0, -0.5, 1.5, 3.0])
    for tau in (1.0, 1 / 3, -0.6):
        a, _ = attractor_eval(AttractorSpec(3, 1j * tau), xs, 1e-10)
        assert np.max(np.abs(a.imag)) < 1e-8          # conj(H) = H
        b, _ = attractor_eval(AttractorSpec(3, -1j * tau), -xs, 1e-10)
        assert np.max(np.abs(a - b)) < 1e-8           # H^{-beta}(-x) = H^{beta}(x)


def test_evenness_even_m():
    xs = np.array([0.3, 1.7, 4.4])
    for spec in (AttractorSpec(4, 1.0), AttractorSpec(2, 0.5j), AttractorSpec(6, 1j)):
        a, _ = attractor_eval(spec, xs, 1e-10)
        b, _ = attractor_eval(spec, -xs, 1e-10)
        assert np.max(np.abs(a - b)) < 1e-8


def test_rescale_identity_numeric():
    rng = np.random.default_rng(7)
    cases = [(3, 5j / 3), (3, 1j), (4, 1.0 + 0j), (2, 0.125j), (5, -2j)]
    for m, beta in cases:
        spec = AttractorSpec(m, beta)
        s = float(rng.uniform(0.4, 2.5))
        spec2, stmt = rescale(spec, s)
        assert spec2.beta == pytest.approx(s ** m * beta)
        for x in (0.0, 0.8, -2.3):
            lhs, _ = attractor_eval(spec, x, 1e-10)
            rhs, _ = attractor_eval(spec2, s * x, 1e-10)
            assert lhs == pytest.approx(s * rhs, abs=1e-8)
        assert "H[" in stmt


def test_rescale_airy_chain():
    # (m=3, 5i/3) rescaled by 5^(-1/3) is the standard Airy kernel
    spec2, _ = rescale(AttractorSpec(3, 5j / 3), 5.0 ** (-1 / 3))
    assert spec2.beta == pytest.approx(1j / 3)
    x = 1.3
    lhs, _ = attractor_eval(AttractorSpec(3, 5j / 3), x, 1e-10)
    assert lhs == pytest.approx(5.0 ** (-1 / 3) * airy_oracle(x / 5 ** (1 / 3)),
                                abs=1e-9)


def test_rescale_rejects_bad_scale():
    with pytest.raises(ValueError):
        rescale(AttractorSpec(2, 1.0), 0.0)


def test_decay_envelope_shape():
    assert decay_envelope(3, 16.0, 1.0, 0.0) == pytest.approx(16.0 ** -0.25)
    assert decay_envelope(4, 8.0, 1.0, 0.0) == pytest.approx(8.0 ** (-1 / 3))
    assert decay_envelope(3, 10.0, 0.0, 2.0) == pytest.approx(0.2)
    with pytest.raises(ValueError):
        decay_envelope(3, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        decay_envelope(2, 1.0, 1.0, 1.0)


def test_decay_envelope_bounds_kernel():
    # anchor on one oscillation around |x| = 10 (a pointwise anchor can land
    # on a zero of the oscillating kernel), then bound the whole range
    for m in (3, 4):
        spec = AttractorSpec(m, 1j)
        anchor = np.concatenate([np.linspace(10, 13, 31), -np.linspace(10, 13, 31)])
        ref = float(np.abs(attractor_eval(spec, anchor, 1e-10)[0]).max())
        expo = (m - 2) / (2.0 * (m - 1))
        A = 2.0 * ref * 10.0 ** expo
        B = 2.0 * ref * 10.0
        xs = np.concatenate([np.geomspace(10, 200, 25), -np.geomspace(10, 200, 25)])
        vals, _ = attractor_eval(spec, xs, 1e-9)
        assert np.all(np.abs(vals) <= decay_envelope(m, xs, A, B))


def test_type1_exponential_offdiagonal_bound():
    # |H_4^1(x)| <= C exp(-B |x|^{4/3}) with constants fitted on |x| <= 10
    spec = AttractorSpec(4, 1.0)
    xs = np.linspace(0.5, 10, 39)
    vals, _ = attractor_eval(spec, xs, 1e-12)
    mags = np.abs(vals)
    expnt = xs ** (4 / 3)
    slope, icept = np.polyfit(expnt, np.log(mags), 1)
    assert slope < 0
    C = 2.0 * np.exp(icept)
    B = -slope * 0.9
    assert np.all(mags <= C * np.exp(-B * expnt))


def test_contour_matches_truncated_real_line():
    # independent route: resolved panel quadrature on [-U, U] with the
    # first-derivative oscillatory bound certifying the discarded tails
    from convpow.quadrature import panel_points

    lam_target = 2000.0
    for m, tau, x in ((3, 1.0, -4.0), (4, -0.7, 3.0), (5, 0.5, -6.0),
                      (6, 1.0, -2.5)):
        U = ((lam_target + abs(x)) / abs(m * tau)) ** (1.0 / (m - 1))
        rate = abs(m * tau) * U ** (m - 1) + abs(x)
        edges = np.linspace(-U, U, int(np.ceil(2 * U * rate / (3 * np.pi))) + 2)
        u, w = panel_points(edges)
        brute = np.sum(np.exp(-1j * x * u - 1j * tau * u ** m) * w) / (2 * np.pi)
        lam = abs(m * tau) * U ** (m - 1) - abs(x)
        tail_bound = 2 * vdc_bounds(lam, 1.0)[0] / (2 * np.pi)
        v, _ = attractor_eval(AttractorSpec(m, 1j * tau), x, 1e-10)
        assert abs(v - brute) <= tail_bound


def test_vdc_bounds():
    assert vdc_bounds(4.0, 64.0) == (1.0, 1.0)
    assert vdc_bounds(8.0, 16.0) == (0.5, 2.0)
    with pytest.raises(ValueError):
        vdc_bounds(0.0, 1.0)


def test_certificates_report_truncation():
    v, cert = attractor_eval(AttractorSpec(3, 1j), 2.0, 1e-8)
    assert cert.scheme == "rotated_rays"
    assert cert.truncation > 0
    assert cert.tail_bound < 1e-8

    v, cert = attractor_eval(AttractorSpec(4, 1.0), 1.0, 1e-9, scheme="real_line")
    assert cert.truncation >= 1.0
    assert cert.tail_bound < 1e-9


def test_scalar_and_array_forms_agree():
    spec = AttractorSpec(3, 1j / 3)
    arr, _ = attractor_eval(spec, np.array([-2.0, 0.5]), 1e-10)
    s0, _ = attractor_eval(spec, -2.0, 1e-10)
    s1, _ = attractor_eval(spec, 0.5, 1e-10)
    assert s0 == pytest.approx(arr[0], abs=1e-12)
    assert s1 == pytest.approx(arr[1], abs=1e-12)
