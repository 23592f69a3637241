import numpy as np
import pytest

from convpow import builtin_example, make_lattice_function


@pytest.fixture(scope="session")
def ex1():
    return builtin_example("ex1")


@pytest.fixture(scope="session")
def airy_fn():
    return builtin_example("airy")


@pytest.fixture(scope="session")
def lazywalk():
    return builtin_example("lazywalk")


def random_function(rng, max_width=4, l1_cap=2.0, min_mass_frac=0.3):
    """Random admissible function with bounded l1 norm.

    The total mass is kept comparable to the l1 norm so that mass-product
    identities are testable in floating point (relative error amplifies
    like (sum|f| / |sum f|)^n otherwise).
    """
    for _ in range(1000):
        width = rng.integers(1, max_width + 1)
        vals = rng.normal(size=width + 1) + 1j * rng.normal(size=width + 1)
        if np.count_nonzero(vals) < 2:
            continue
        vals *= l1_cap * rng.uniform(0.3, 1.0) / np.abs(vals).sum()
        if abs(vals.sum()) < min_mass_frac * np.abs(vals).sum():
            continue
        offset = int(rng.integers(-3, 4))
        return make_lattice_function(
            [(offset + i, v) for i, v in enumerate(vals)])
    raise RuntimeError("corpus generation failed")


@pytest.fixture(scope="session")
def corpus():
    rng = np.random.default_rng(20240817)
    return [random_function(rng) for _ in range(50)]
