"""Convolution powers: direct and DFT-based computation plus norm/identity helpers.

Two independent routes compute the n-th convolution power: binary
exponentiation over direct convolution, and zero-padded FFT with pointwise
complex powering in polar form.  They are kept algorithmically disjoint so
each can serve as the other's oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DftSizeError
from .lattice import LatticeFunction, convolve, evaluate_symbol, zero_function
from .quadrature import integrate_adaptive

# Transform lengths above this raise DftSizeError (about 1 GiB of complex128).
DEFAULT_MAX_DFT_LEN = 1 << 26


@dataclass(frozen=True)
class PowerResult:
    n: int
    result: LatticeFunction
    method: str  # "direct" | "dft"


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError("convolution powers start at n=1")
    return n


def power_direct(f: LatticeFunction, n: int) -> PowerResult:
    """n-th convolution power by square-and-multiply over direct convolution."""
    n = _check_n(n)
    acc = None
    base = f
    k = n
    while k:
        if k & 1:
            acc = base if acc is None else convolve(acc, base)
        k >>= 1
        if k:
            base = convolve(base, base)
    return PowerResult(n, acc, "direct")


def power_dft(f: LatticeFunction, n: int, *, max_len: int = DEFAULT_MAX_DFT_LEN) -> PowerResult:
    """n-th convolution power via zero-padded FFT.

    The transform length is the next power of two holding the full result
    support, so the circular convolution is exactly linear.  The pointwise
    n-th power is taken in polar form exp(n log r + i n theta), which keeps
    the relative error O(n eps) instead of accumulating over n multiplies.
    """
    n = _check_n(n)
    if f.is_zero:
        return PowerResult(n, zero_function(), "dft")
    out_len = n * (f.values.size - 1) + 1
    fft_len = 1 << max(0, int(np.ceil(np.log2(out_len))))
    if fft_len > max_len:
        raise DftSizeError(
            f"power_dft needs transform length {fft_len} (> cap {max_len}) "
            f"for n={n}, support width {f.values.size - 1}")
    spec = np.fft.fft(f.values, fft_len)
    r = np.abs(spec)
    theta = np.angle(spec)
    with np.errstate(divide="ignore"):
        logr = np.log(r)
    powed = np.where(r == 0.0, 0.0 + 0.0j, np.exp(n * logr + 1j * n * theta))
    vals = np.fft.ifft(powed)[:out_len]
    return PowerResult(n, LatticeFunction(n * f.offset, vals), "dft")


def sup_norm(f: LatticeFunction, *, argmax_rtol: float = 1e-12):
    """Max modulus and every x attaining it within relative tolerance."""
    if f.is_zero:
        return 0.0, []
    mags = np.abs(f.values)
    value = float(mags.max())
    if value == 0.0:
        return 0.0, []
    idx = np.flatnonzero(mags >= value * (1.0 - argmax_rtol))
    return value, [int(f.offset + j) for j in idx]


def parseval_gap(f: LatticeFunction, n: int) -> float:
    """|sum |f^(n)|^2 - (1/2pi) int |symbol|^(2n)|; small iff both routes agree."""
    n = _check_n(n)
    if f.is_zero:
        return 0.0
    vals = power_dft(f, n).result.values
    lhs = float(np.sum(np.abs(vals) ** 2))

    def integrand(xi):
        return np.abs(evaluate_symbol(f, xi)) ** (2 * n)

    # Integrand oscillation scale ~ 2n * support width.
    panels = max(16, int(n * max(1, f.width) / 4))
    rhs, _ = integrate_adaptive(integrand, -np.pi, np.pi,
                                abs_tol=1e-13 * max(1.0, lhs),
                                initial_panels=panels)
    return abs(lhs - float(np.real(rhs)) / (2 * np.pi))


def symbol_power(f: LatticeFunction, xi, n: int):
    """symbol(xi)^n in polar form; exact zeros stay zero."""
    s = evaluate_symbol(f, xi)
    r = np.abs(s)
    with np.errstate(divide="ignore"):
        logr = np.log(r)
    return np.where(r == 0.0, 0.0 + 0.0j, np.exp(n * logr + 1j * n * np.angle(s)))


def evaluate_extension(f: LatticeFunction, n: int, x: float) -> complex:
    """Real-argument extension (1/2pi) int e^{-i x xi} symbol(xi)^n d(xi).

    Agrees with the convolution power at integer x.
    """
    n = _check_n(n)
    if f.is_zero:
        return 0j

    def integrand(xi):
        return np.exp(-1j * x * xi) * symbol_power(f, xi, n)

    # Peak magnitude of |symbol|^n sets the error scale.
    peak = float(np.abs(evaluate_symbol(f, np.linspace(-np.pi, np.pi, 4096))).max())
    panels = max(16, int((abs(x) + n * max(1, f.width)) / 8))
    val, _ = integrate_adaptive(integrand, -np.pi, np.pi,
                                abs_tol=1e-12 * max(1.0, peak ** n),
                                initial_panels=panels)
    return complex(val) / (2 * np.pi)
