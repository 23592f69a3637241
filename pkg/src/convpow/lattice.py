"""Finitely supported complex-valued functions on the integer lattice.

A function is stored densely as a contiguous block of complex values
together with the integer coordinate of its first entry.  Canonical form
keeps the first and last stored values nonzero (the identically zero
function has an empty value block).  All operations are pure; instances
are immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _as_canonical(offset: int, values: np.ndarray) -> tuple[int, np.ndarray]:
    """Trim exactly-zero entries from both ends; never epsilon-trims."""
    nz = np.flatnonzero(values != 0)
    if nz.size == 0:
        return 0, np.zeros(0, dtype=np.complex128)
    lo, hi = nz[0], nz[-1]
    return offset + int(lo), values[lo : hi + 1]


@dataclass(frozen=True, eq=False)
class LatticeFunction:
    """Dense block of values starting at ``offset``; canonical ends nonzero."""

    offset: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        object.__setattr__(self, "values", vals)
        vals.flags.writeable = False

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0

    @property
    def support_min(self) -> int:
        if self.is_zero:
            raise ValueError("zero function has empty support")
        return self.offset

    @property
    def support_max(self) -> int:
        if self.is_zero:
            raise ValueError("zero function has empty support")
        return self.offset + self.values.size - 1

    @property
    def width(self) -> int:
        """Diameter of the support (0 for a single point or the zero function)."""
        return 0 if self.values.size <= 1 else self.values.size - 1

    @property
    def admissible(self) -> bool:
        """True iff the support contains at least two points."""
        return int(np.count_nonzero(self.values)) >= 2

    def support_points(self) -> np.ndarray:
        return self.offset + np.arange(self.values.size)

    def value_at(self, x: int) -> complex:
        j = int(x) - self.offset
        if 0 <= j < self.values.size:
            return complex(self.values[j])
        return 0j

    def scaled(self, c: complex) -> "LatticeFunction":
        if c == 0:
            return zero_function()
        return LatticeFunction(self.offset, self.values * c)

    def shifted(self, d: int) -> "LatticeFunction":
        return LatticeFunction(self.offset + int(d), self.values)

    def modulated(self, theta: float) -> "LatticeFunction":
        """Pointwise multiplication by exp(i*theta*x)."""
        x = self.support_points()
        return LatticeFunction(self.offset, self.values * np.exp(1j * theta * x))

    def __repr__(self):
        if self.is_zero:
            return "LatticeFunction(zero)"
        return f"LatticeFunction(offset={self.offset}, n_values={self.values.size})"


def zero_function() -> LatticeFunction:
    return LatticeFunction(0, np.zeros(0, dtype=np.complex128))


def delta(x: int = 0, v: complex = 1.0) -> LatticeFunction:
    return make_lattice_function([(x, v)])


def make_lattice_function(entries) -> LatticeFunction:
    """Build a canonical LatticeFunction from (x, value) pairs.

    Duplicate x values are rejected, naming the offending entry index.
    Zero values are dropped.
    """
    entries = list(entries)
    if not entries:
        return zero_function()
    seen = {}
    for i, (x, _) in enumerate(entries):
        x = int(x)
        if x in seen:
            raise ValueError(f"duplicate support point x={x} at entry index {i} "
                             f"(first seen at index {seen[x]})")
        seen[x] = i
    xs = np.array([int(x) for x, _ in entries], dtype=np.int64)
    vs = np.array([complex(v) for _, v in entries], dtype=np.complex128)
    lo, hi = int(xs.min()), int(xs.max())
    dense = np.zeros(hi - lo + 1, dtype=np.complex128)
    dense[xs - lo] = vs
    return LatticeFunction(*_as_canonical(lo, dense))


def convolve(f: LatticeFunction, g: LatticeFunction) -> LatticeFunction:
    """(f*g)(x) = sum_y f(x-y) g(y); support adds, exact-zero ends trimmed."""
    if f.is_zero or g.is_zero:
        return zero_function()
    out = np.convolve(f.values, g.values)
    return LatticeFunction(*_as_canonical(f.offset + g.offset, out))


def conj_reflect(f: LatticeFunction) -> LatticeFunction:
    """x -> conj(f(-x)); its symbol is the complex conjugate of f's."""
    if f.is_zero:
        return zero_function()
    return LatticeFunction(-(f.offset + f.values.size - 1), np.conj(f.values[::-1]))


def evaluate_symbol(f: LatticeFunction, xi):
    """Fourier symbol sum_x f(x) e^{i x xi}; 2*pi periodic. Accepts arrays."""
    xi_arr = np.asarray(xi, dtype=np.float64)
    if f.is_zero:
        out = np.zeros(xi_arr.shape, dtype=np.complex128)
        return out if xi_arr.shape else 0j
    x = f.support_points()
    out = np.exp(1j * np.multiply.outer(xi_arr, x)) @ f.values
    return out if xi_arr.shape else complex(out)


def symbol_derivative(f: LatticeFunction, xi, j: int):
    """j-th derivative of the symbol: sum_x (i x)^j f(x) e^{i x xi}, exact."""
    if j < 0:
        raise ValueError("derivative order must be nonnegative")
    xi_arr = np.asarray(xi, dtype=np.float64)
    if f.is_zero:
        out = np.zeros(xi_arr.shape, dtype=np.complex128)
        return out if xi_arr.shape else 0j
    x = f.support_points()
    w = (1j * x) ** j * f.values
    out = np.exp(1j * np.multiply.outer(xi_arr, x)) @ w
    return out if xi_arr.shape else complex(out)


def total_mass(f: LatticeFunction) -> complex:
    """sum_x f(x), i.e. the symbol at 0."""
    return complex(f.values.sum()) if not f.is_zero else 0j


def abs_sum(f: LatticeFunction) -> float:
    return float(np.abs(f.values).sum()) if not f.is_zero else 0.0


def allclose(f: LatticeFunction, g: LatticeFunction, *, atol=0.0, rtol=1e-12) -> bool:
    """Entrywise comparison on the union of supports."""
    if f.is_zero and g.is_zero:
        return True
    if f.is_zero or g.is_zero:
        other = g if f.is_zero else f
        return bool(np.all(np.abs(other.values) <= atol))
    lo = min(f.offset, g.offset)
    hi = max(f.offset + f.values.size, g.offset + g.values.size)
    a = np.zeros(hi - lo, dtype=np.complex128)
    b = np.zeros(hi - lo, dtype=np.complex128)
    a[f.offset - lo : f.offset - lo + f.values.size] = f.values
    b[g.offset - lo : g.offset - lo + g.values.size] = g.values
    scale = max(np.abs(a).max(), np.abs(b).max())
    return bool(np.all(np.abs(a - b) <= atol + rtol * scale))
