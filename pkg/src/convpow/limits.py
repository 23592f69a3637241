"""Empirical verification of the sup-norm scaling and the local limits.

Builds the kernel approximation sums, measures scaled residuals against
exact convolution powers, and checks that the mass of |f^(n)| concentrates
on the drifting packets.  All powering is done on the A-normalized
function so nothing overflows for A > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .attractor import AttractorSpec, attractor_eval
from .engine import power_dft, power_direct, sup_norm
from .errors import StrongHypothesisError
from .lattice import LatticeFunction
from .symbol import SymbolAnalysis, analyze, strong_hypothesis_holds

DEFAULT_Z_WINDOW = (-3.0, 3.0)
DEFAULT_Z_STEP = 0.25
DEFAULT_PACKET_K = 10.0
DEFAULT_KERNEL_EPS = 1e-7
CROSSCHECK_REL_TOL = 1e-9


@dataclass(frozen=True)
class LimitReport:
    """Rows of per-n metrics for one verification mode."""

    mode: str                      # "strong" | "weak" | "supnorm" | "packet"
    rows: tuple[tuple, ...]        # ascending n
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ns = [r[0] for r in self.rows]
        if ns != sorted(ns):
            raise ValueError("rows must be sorted by n")
        for r in self.rows:
            for v in r[1:]:
                if isinstance(v, (int, float)) and not math.isfinite(v):
                    raise ValueError(f"non-finite metric in row {r}")


def _require_normalized(sa: SymbolAnalysis):
    if abs(sa.A - 1.0) > 1e-6:
        raise ValueError("approximation sums assume sup|symbol| = 1; "
                         "use SymbolAnalysis.normalized() first")


def _phase_power(value: complex, n: int) -> complex:
    """value^n for |value| = 1, computed as exp(i n arg): no modulus drift."""
    return complex(np.exp(1j * n * np.angle(value)))


def strong_approx(sa: SymbolAnalysis, n: int, x, *, eps: float = DEFAULT_KERNEL_EPS):
    """Sum over dominant points of n^(-1/m) e^{-i x xi_q} symbol(xi_q)^n
    H_m^{beta_q}((x - drift_q n)/n^(1/m)); valid under the uniform-limit
    hypothesis (dominant order > 2, or every dominant point type 1)."""
    _require_normalized(sa)
    if not strong_hypothesis_holds(sa):
        raise StrongHypothesisError(
            "dominant order 2 with a purely imaginary coefficient: the uniform "
            "approximation does not apply; use weak_approx on a drift group")
    x_arr = np.asarray(x, dtype=np.float64)
    scalar = x_arr.shape == ()
    flat = np.atleast_1d(x_arr).ravel()
    m = sa.m_phi
    scale = n ** (-1.0 / m)
    total = np.zeros(flat.shape, dtype=np.complex128)
    for q in sa.max_order_indices:
        p = sa.omega[q]
        y = (flat - p.drift * n) * n ** (-1.0 / m)
        h, _ = attractor_eval(AttractorSpec(m, p.beta), y, eps)
        total += scale * np.exp(-1j * flat * p.xi) * _phase_power(p.value, n) * h
    if scalar:
        return complex(total[0])
    return total.reshape(x_arr.shape)


def weak_approx(sa: SymbolAnalysis, n: int, q: int, z, *, eps: float = DEFAULT_KERNEL_EPS):
    """Packet-window approximation along drift group q.

    Returns (x, value): x = floor(drift*n + z*n^(1/m)) and the group sum
    n^(-1/m) e^{-i x xi_l} symbol(xi_l)^n H_m^{beta_l}(z).
    """
    _require_normalized(sa)
    group = sa.drift_groups[q]
    drift = sa.omega[group[0]].drift
    z_arr = np.asarray(z, dtype=np.float64)
    scalar = z_arr.shape == ()
    flat = np.atleast_1d(z_arr).ravel()
    m = sa.m_phi
    x = np.floor(drift * n + flat * n ** (1.0 / m)).astype(np.int64)
    total = np.zeros(flat.shape, dtype=np.complex128)
    for l in group:
        p = sa.omega[l]
        h, _ = attractor_eval(AttractorSpec(m, p.beta), flat, eps)
        total += n ** (-1.0 / m) * np.exp(-1j * x * p.xi) * _phase_power(p.value, n) * h
    if scalar:
        return int(x[0]), complex(total[0])
    return x.reshape(z_arr.shape), total.reshape(z_arr.shape)


def _normalized_power_values(g: LatticeFunction, n: int, crosscheck: bool):
    pw = power_dft(g, n).result
    if crosscheck:
        ref = power_direct(g, n).result
        lo = min(pw.offset, ref.offset)
        hi = max(pw.offset + pw.values.size, ref.offset + ref.values.size)
        a = np.zeros(hi - lo, dtype=np.complex128)
        b = np.zeros(hi - lo, dtype=np.complex128)
        a[pw.offset - lo: pw.offset - lo + pw.values.size] = pw.values
        b[ref.offset - lo: ref.offset - lo + ref.values.size] = ref.values
        gap = float(np.max(np.abs(a - b))) / max(float(np.max(np.abs(b))), 1e-300)
        if gap > CROSSCHECK_REL_TOL:
            raise ArithmeticError(
                f"dft/direct power disagreement {gap:.3e} at n={n}")
    return pw


def residual_report(f: LatticeFunction, n_list, mode: str, q: int = 0,
                    z_window=DEFAULT_Z_WINDOW, z_step: float = DEFAULT_Z_STEP,
                    *, kernel_eps: float = DEFAULT_KERNEL_EPS,
                    crosscheck: bool = True) -> LimitReport:
    """Scaled residual sup per n: strong mode over the whole support, weak
    mode over the z grid along drift group q."""
    if mode not in ("strong", "weak"):
        raise ValueError("mode must be 'strong' or 'weak'")
    sa = analyze(f)
    san = sa.normalized()
    g = san.function
    if mode == "strong" and not strong_hypothesis_holds(san):
        raise StrongHypothesisError(
            "strong mode needs the uniform-limit hypothesis; use mode='weak'")
    n_list = sorted(int(n) for n in n_list)
    m = san.m_phi
    rows = []
    for n in n_list:
        pw = _normalized_power_values(g, n, crosscheck and n == n_list[-1])
        if mode == "strong":
            xs = pw.support_points().astype(np.float64)
            approx = strong_approx(san, n, xs, eps=kernel_eps)
            resid = float(np.max(np.abs(pw.values - approx)))
        else:
            zs = np.arange(z_window[0], z_window[1] + 0.5 * z_step, z_step)
            x, val = weak_approx(san, n, q, zs, eps=kernel_eps)
            emp = np.array([pw.value_at(int(xi)) for xi in x])
            resid = float(np.max(np.abs(emp - val)))
        rows.append((n, n ** (1.0 / m) * resid))
    return LimitReport(mode, tuple(rows), {
        "q": q, "window": tuple(z_window), "step": z_step,
        "A": sa.A, "m_phi": m, "analysis": san,
    })


def supnorm_scaling(f: LatticeFunction, n_list) -> LimitReport:
    """Rows (n, A^{-n}||f^(n)||_inf, s_n = n^(1/m) A^{-n}||f^(n)||_inf).

    Norms are reported for the A-normalized function (A in the metadata);
    the raw norm A^n * column would overflow doubles for A > 1 at n ~ 1e4.
    """
    sa = analyze(f)
    san = sa.normalized()
    g = san.function
    m = san.m_phi
    rows = []
    for n in sorted(int(n) for n in n_list):
        val, _ = sup_norm(power_dft(g, n).result)
        rows.append((n, val, n ** (1.0 / m) * val))
    s = [r[2] for r in rows]
    return LimitReport("supnorm", tuple(rows), {
        "A": sa.A, "m_phi": m, "s_min": min(s), "s_max": max(s),
        "analysis": san,
    })


def packet_check(f: LatticeFunction, n: int, K: float = DEFAULT_PACKET_K):
    """Do all argmaxes of |f^(n)| lie in the union of drift packets
    [drift*n - K n^(1/m), drift*n + K n^(1/m)]?  Returns (ok, argmax, packets)."""
    sa = analyze(f).normalized()
    if not strong_hypothesis_holds(sa):
        raise StrongHypothesisError(
            "packet concentration is asserted only under the uniform-limit hypothesis")
    m = sa.m_phi
    _, argmax = sup_norm(power_dft(sa.function, n).result)
    drifts = sorted({sa.omega[i].drift for g in sa.drift_groups for i in g})
    half = K * n ** (1.0 / m)
    packets = [(d * n - half, d * n + half) for d in drifts]
    ok = all(any(lo <= x <= hi for lo, hi in packets) for x in argmax)
    return ok, argmax, packets
