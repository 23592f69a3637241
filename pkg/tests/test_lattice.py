import numpy as np
import pytest

from convpow import (convolve, delta, evaluate_symbol, make_lattice_function,
                     symbol_derivative, total_mass, zero_function)
from convpow.lattice import abs_sum, allclose, conj_reflect


def test_delta_construction():
    f = make_lattice_function([(0, 1)])
    assert f.offset == 0
    assert f.values.tolist() == [1 + 0j]
    assert not f.admissible


def test_ex1_construction(ex1):
    assert ex1.offset == -2
    assert ex1.values.size == 5
    assert ex1.admissible
    assert ex1.value_at(0) == (5 - 2j) / 8
    assert ex1.value_at(2) == -1 / 16


def test_zero_entries_trimmed():
    f = make_lattice_function([(3, 0), (5, 2)])
    assert f.offset == 5
    assert f.values.tolist() == [2 + 0j]


def test_duplicate_x_rejected():
    with pytest.raises(ValueError, match="index 2"):
        make_lattice_function([(0, 1), (1, 2), (0, 3)])


def test_zero_function():
    f = make_lattice_function([(4, 0.0)])
    assert f.is_zero
    assert total_mass(f) == 0


def test_values_immutable(ex1):
    with pytest.raises(ValueError):
        ex1.values[0] = 5.0


def test_convolve_identity(ex1):
    assert allclose(convolve(delta(0), ex1), ex1, rtol=0)


def test_convolve_binomial():
    step = make_lattice_function([(0, 1), (1, 1)])
    sq = convolve(step, step)
    assert sq.offset == 0
    assert sq.values.tolist() == [1, 2, 1]


def test_convolve_ex1_corner(ex1):
    sq = convolve(ex1, ex1)
    assert sq.value_at(4) == pytest.approx(1 / 256)
    assert sq.value_at(-4) == pytest.approx(1 / 256)
    assert sq.offset == -4 and sq.values.size == 9


def test_convolve_zero(ex1):
    assert convolve(ex1, zero_function()).is_zero


def test_convolve_commutative_associative(corpus):
    small = [f for f in corpus if f.width <= 4][:12]
    for i in range(0, len(small) - 2, 3):
        f, g, h = small[i], small[i + 1], small[i + 2]
        scale = abs_sum(f) * abs_sum(g)
        assert allclose(convolve(f, g), convolve(g, f), rtol=1e-12)
        fg_h = convolve(convolve(f, g), h)
        f_gh = convolve(f, convolve(g, h))
        assert allclose(fg_h, f_gh, atol=1e-14 * scale * abs_sum(h), rtol=1e-12)


def test_mass_multiplicative(corpus):
    for f, g in zip(corpus[:10], corpus[10:20]):
        lhs = total_mass(convolve(f, g))
        rhs = total_mass(f) * total_mass(g)
        assert abs(lhs - rhs) <= 1e-12 * abs_sum(f) * abs_sum(g)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_symbol_values_ex1(ex1):
    # closed form 1 - (i/2) sin^2(xi/2) - sin^4(xi/2)
    assert evaluate_symbol(ex1, 0.0) == pytest.approx(1.0)
    assert evaluate_symbol(ex1, np.pi) == pytest.approx(-0.5j)
    for xi in np.linspace(-np.pi, np.pi, 29):
        s = np.sin(xi / 2)
        expected = 1 - 0.5j * s ** 2 - s ** 4
        assert evaluate_symbol(ex1, xi) == pytest.approx(expected, abs=1e-14)


def test_symbol_airy_at_half_pi(airy_fn):
    assert evaluate_symbol(airy_fn, np.pi / 2) == pytest.approx(1.0, abs=1e-15)


def test_symbol_periodic(ex1):
    xi = 1.2345
    assert evaluate_symbol(ex1, xi) == pytest.approx(
        evaluate_symbol(ex1, xi + 2 * np.pi), abs=1e-13)


def test_symbol_multiplicative(corpus):
    xis = np.linspace(-np.pi, np.pi, 64, endpoint=False)
    for f, g in zip(corpus[:8], corpus[8:16]):
        fg = convolve(f, g)
        lhs = evaluate_symbol(fg, xis)
        rhs = evaluate_symbol(f, xis) * evaluate_symbol(g, xis)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * abs_sum(f) * abs_sum(g)


def test_symbol_bounded_by_l1(corpus):
    xis = np.linspace(-np.pi, np.pi, 101)
    for f in corpus[:20]:
        assert np.all(np.abs(evaluate_symbol(f, xis)) <= abs_sum(f) * (1 + 1e-12))


def test_symbol_derivative_trivial():
    assert symbol_derivative(delta(0), 0.7, 1) == 0


def test_symbol_derivative_lazywalk(lazywalk):
    assert symbol_derivative(lazywalk, 0.0, 2) == pytest.approx(-0.5)


def test_symbol_derivative_ex1_first(ex1):
    assert symbol_derivative(ex1, 0.0, 1) == pytest.approx(0.0, abs=1e-15)


def test_symbol_derivative_matches_j0(ex1):
    for xi in (0.0, 0.3, -2.2):
        assert symbol_derivative(ex1, xi, 0) == pytest.approx(
            evaluate_symbol(ex1, xi), abs=1e-15)


def test_symbol_derivative_finite_difference(corpus):
    h = 1e-5
    for f in corpus[:6]:
        for j in (1, 2, 3):
            for xi in (0.1, -1.3):
                fd = (symbol_derivative(f, xi + h, j - 1)
                      - symbol_derivative(f, xi - h, j - 1)) / (2 * h)
                assert abs(symbol_derivative(f, xi, j) - fd) < 1e-6 * max(
                    1.0, abs(fd))


def test_total_mass_values(ex1):
    assert total_mass(delta(0)) == 1
    assert total_mass(ex1) == pytest.approx(1.0)
    f = make_lattice_function([(0, 2), (1, 3)])
    assert total_mass(f) == 5


def test_conj_reflect_symbol(ex1):
    xis = np.linspace(-3, 3, 11)
    lhs = evaluate_symbol(conj_reflect(ex1), xis)
    rhs = np.conj(evaluate_symbol(ex1, xis))
    assert np.max(np.abs(lhs - rhs)) < 1e-14
