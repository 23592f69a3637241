"""Built-in example functions used throughout the tests and the CLI."""

from __future__ import annotations

from .lattice import LatticeFunction, make_lattice_function

EXAMPLE_NAMES = ("ex1", "airy", "lazywalk", "threepoint")


def _ex1() -> LatticeFunction:
    return make_lattice_function([
        (0, (5 - 2j) / 8),
        (1, (2 + 1j) / 8),
        (-1, (2 + 1j) / 8),
        (2, -1 / 16),
        (-2, -1 / 16),
    ])


def _airy() -> LatticeFunction:
    return make_lattice_function([
        (0, 3 / 8),
        (2, -1 / 4), (-2, -1 / 4),
        (3, 1j / 3), (-3, 1j / 3),
        (4, 1 / 16), (-4, 1 / 16),
    ])


def _lazywalk() -> LatticeFunction:
    return make_lattice_function([(0, 0.5), (1, 0.25), (-1, 0.25)])


def threepoint(a0: float, a_plus: float, a_minus: float) -> LatticeFunction:
    """Real function on {-1, 0, 1}: value a0 at 0 and a_plus/a_minus at +/-1."""
    if not a0 > 0:
        raise ValueError(f"threepoint requires a0 > 0, got {a0}")
    if a_plus == 0 and a_minus == 0:
        raise ValueError("threepoint requires a_plus != 0 or a_minus != 0")
    return make_lattice_function([(0, a0), (1, a_plus), (-1, a_minus)])


def builtin_example(name: str, *params: float) -> LatticeFunction:
    """Fetch a built-in function by name; threepoint takes (a0, a+, a-)."""
    if name == "ex1":
        return _ex1()
    if name == "airy":
        return _airy()
    if name == "lazywalk":
        return _lazywalk()
    if name == "threepoint":
        if len(params) != 3:
            raise ValueError("threepoint needs exactly three parameters (a0, a+, a-)")
        return threepoint(*params)
    raise ValueError(f"unknown example {name!r}; choose from {EXAMPLE_NAMES}")
