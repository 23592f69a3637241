import numpy as np
import pytest

from convpow import (StrongHypothesisError, airy_oracle, analyze,
                     builtin_example, decay_envelope, packet_check, power_dft,
                     residual_report, strong_approx, supnorm_scaling,
                     weak_approx)
from convpow import make_lattice_function as cp_make


@pytest.fixture(scope="module")
def sa_ex1(ex1):
    return analyze(ex1).normalized()


@pytest.fixture(scope="module")
def sa_airy(airy_fn):
    return analyze(airy_fn).normalized()


@pytest.fixture(scope="module")
def sa_lazy(lazywalk):
    return analyze(lazywalk).normalized()


def test_strong_approx_requires_hypothesis(sa_ex1):
    with pytest.raises(StrongHypothesisError, match="weak_approx"):
        strong_approx(sa_ex1, 100, 0.0)


def test_strong_approx_requires_normalized(ex1):
    with pytest.raises(ValueError, match="normalized"):
        strong_approx(analyze(ex1.scaled(2.0)), 10, 0.0)


def test_strong_approx_lazywalk_center(sa_lazy):
    # single Gaussian-type kernel: n^{-1/2} H_2^{1/4}(0) = n^{-1/2} / sqrt(pi)
    v = strong_approx(sa_lazy, 10 ** 4, 0)
    assert v == pytest.approx(1e-2 * np.pi ** -0.5, abs=1e-12)


def test_strong_approx_decays_off_packet(sa_lazy):
    n = 400
    v = strong_approx(sa_lazy, n, 10.0 * np.sqrt(n) * 5)
    assert abs(v) < 1e-12


def test_weak_approx_ex1_closed_form(sa_ex1):
    n = 1000
    zs = np.array([-2.0, -0.5, 0.0, 1.25, 3.0])
    x, val = weak_approx(sa_ex1, n, 0, zs)
    assert x.tolist() == [int(np.floor(z * np.sqrt(n))) for z in zs]
    expected = n ** -0.5 / np.sqrt(np.pi * 1j / 2) * np.exp(2j * zs ** 2)
    assert np.max(np.abs(val - expected)) < 1e-12


def test_weak_approx_floor_at_zero(sa_ex1, sa_airy):
    x, _ = weak_approx(sa_ex1, 123, 0, 0.0)
    assert x == 0
    x, _ = weak_approx(sa_airy, 500, 1, 0.0)   # right packet drifts at 2n
    assert x == 1000


def test_weak_approx_airy_right_packet(sa_airy):
    n = 500
    x, val = weak_approx(sa_airy, n, 1, 0.0)
    expected = (5.0 * n) ** (-1 / 3) * (-1.0) ** n * airy_oracle(0.0)
    assert val == pytest.approx(expected, abs=1e-9)


def test_weak_matches_strong_up_to_far_packet(sa_airy):
    # the difference is the other packet's kernel tail, bounded by the
    # polynomial decay envelope evaluated at the cross-packet argument
    n = 500
    zs = np.arange(-3.0, 3.01, 0.5)
    x, wk = weak_approx(sa_airy, n, 1, zs)
    st = strong_approx(sa_airy, n, x.astype(float))
    diff = np.abs(st - wk) * n ** (1 / 3)
    envelope_pts = np.linspace(10, 13, 31)
    ref = np.abs(strong_approx(sa_airy, n, 2 * n + envelope_pts * n ** (1 / 3))
                 ).max() * n ** (1 / 3)
    far = (x + 2.0 * n) * float(n) ** (-1 / 3)   # left-packet kernel argument
    A = 2.2 * ref * 10.0 ** 0.25
    B = 2.2 * ref * 10.0
    assert np.all(diff <= decay_envelope(3, far, A, B))


def test_residual_report_weak_ex1_decreases(ex1):
    rep = residual_report(ex1, [100, 1000], "weak")
    assert rep.mode == "weak"
    r = [row[1] for row in rep.rows]
    assert r[1] < r[0]
    assert rep.metadata["m_phi"] == 2


def test_residual_report_strong_needs_hypothesis(ex1):
    with pytest.raises(StrongHypothesisError):
        residual_report(ex1, [100], "strong")


def test_residual_report_strong_airy_small(airy_fn):
    rep = residual_report(airy_fn, [200, 500], "strong", kernel_eps=1e-6)
    r = [row[1] for row in rep.rows]
    assert r[1] < r[0] * 1.05
    assert all(np.isfinite(v) for v in r)


def test_residual_report_rejects_bad_mode(ex1):
    with pytest.raises(ValueError):
        residual_report(ex1, [10], "nope")


def test_supnorm_scaling_lazywalk(lazywalk):
    rep = supnorm_scaling(lazywalk, [100, 1000, 10000])
    s = [row[2] for row in rep.rows]
    assert s[-1] == pytest.approx(np.pi ** -0.5, rel=1e-3)
    assert rep.metadata["s_max"] / rep.metadata["s_min"] < 5


def test_supnorm_scaling_covariant(ex1):
    r1 = supnorm_scaling(ex1, [100, 1000])
    r2 = supnorm_scaling(ex1.scaled(2.0), [100, 1000])
    assert r2.metadata["A"] == pytest.approx(2.0, rel=1e-12)
    for a, b in zip(r1.rows, r2.rows):
        assert a[2] == pytest.approx(b[2], rel=1e-9)


def test_packet_check_airy(airy_fn):
    ok, argmax, packets = packet_check(airy_fn, 2000, 10.0)
    assert ok
    assert len(packets) == 2
    assert all(abs(abs(x) - 4000) < 10 * 2000 ** (1 / 3) for x in argmax)
    ok_small, _, _ = packet_check(airy_fn, 2000, 0.01)
    assert not ok_small


def test_packet_check_lazywalk(lazywalk):
    ok, argmax, packets = packet_check(lazywalk, 500, 10.0)
    assert ok
    assert all(abs(x) <= 10 * 500 ** 0.5 for x in argmax)


def test_packet_check_requires_hypothesis(ex1):
    with pytest.raises(StrongHypothesisError):
        packet_check(ex1, 100)


def test_packet_check_threepoint():
    f = builtin_example("threepoint", 8, 2, -1)
    for n in (500, 1000):
        ok, argmax, packets = packet_check(f, n, 10.0)
        assert ok
        assert all(abs(x - n / 3) <= 10 * n ** (1 / 3) + 1 for x in argmax)


def test_report_rows_sorted_and_finite(ex1):
    rep = residual_report(ex1, [1000, 100], "weak")
    assert [r[0] for r in rep.rows] == [100, 1000]


def test_mixed_order_strong_residual_decreases():
    # dominant order 4 at 0 plus a subdominant order-2 point at pi: the
    # single-kernel sum still approximates uniformly, and only it should
    f = cp_make([(0, 0.25), (1, 0.5), (-1, 0.5), (2, -0.125), (-2, -0.125)])
    rep = residual_report(f, [200, 1000, 4000], "strong")
    r = [row[1] for row in rep.rows]
    assert r[2] < r[1] < r[0]
    assert r[2] < 0.05


def test_sublattice_walk_two_point_drift_group():
    # support on the even integers: maxima at 0 and pi share drift 0, so
    # one drift group holds two points whose kernel sum carries the parity
    # structure (mass only on even sites, doubled density)
    f = cp_make([(0, 0.5), (2, 0.25), (-2, 0.25)])
    sa = analyze(f)
    assert len(sa.omega) == 2
    assert sa.drift_groups == ((0, 1),)
    assert all(p.point_type == "type1" and p.order == 2 and
               p.beta == pytest.approx(1.0, abs=1e-10) for p in sa.omega)

    san = sa.normalized()
    n = 10000
    pw = power_dft(san.function, n).result
    zs = np.arange(-3.0, 3.01, 0.25)
    x, val = weak_approx(san, n, 0, zs)
    odd = x % 2 != 0
    assert np.max(np.abs(val[odd])) < 1e-12         # vanishes off the sublattice
    emp = np.array([pw.value_at(int(xi)) for xi in x])
    assert np.sqrt(n) * np.max(np.abs(emp - val)) < 1e-4

    rep = residual_report(f, [100, 1000, 10000], "weak")
    r = [row[1] for row in rep.rows]
    assert r[2] < r[1] < r[0]


def test_weak_residuals_decrease_for_all_builtins():
    # 5% slack between adjacent rows, per the report contract
    cases = [("ex1", 0), ("airy", 1), ("lazywalk", 0)]
    for name, q in cases:
        f = builtin_example(name)
        rep = residual_report(f, [100, 1000, 10000], "weak", q=q)
        r = [row[1] for row in rep.rows]
        assert r[1] <= r[0] * 1.05 and r[2] <= r[1] * 1.05, (name, r)


def test_supnorm_ratio_bounded_for_all_builtins():
    for name, params in (("ex1", ()), ("airy", ()), ("lazywalk", ()),
                         ("threepoint", (8, 2, -1))):
        rep = supnorm_scaling(builtin_example(name, *params),
                              [100, 300, 1000, 3000, 10000])
        assert rep.metadata["s_max"] / rep.metadata["s_min"] < 5, name


def test_packet_check_all_strong_builtins():
    for name, params in (("airy", ()), ("lazywalk", ()),
                         ("threepoint", (8, 2, -1))):
        f = builtin_example(name, *params)
        for n in (500, 1000, 2000):
            ok, _, _ = packet_check(f, n, 10.0)
            assert ok, (name, n)


def test_strong_approx_matches_power_on_packet(sa_airy):
    # direct small-n sanity: the approximant tracks the true power near a
    # packet maximum to the expected leading-order size
    n = 500
    pw = power_dft(sa_airy.function, n).result
    xs = np.arange(2 * n - 30, 2 * n + 30).astype(float)
    ap = strong_approx(sa_airy, n, xs)
    emp = np.array([pw.value_at(int(x)) for x in xs])
    assert np.max(np.abs(emp - ap)) * n ** (1 / 3) < 0.2
