"""Locating and classifying the modulus-maximizing frequencies of the symbol.

The symbol of an admissible lattice function is a trigonometric polynomial
whose modulus attains its supremum A at finitely many frequencies in
(-pi, pi].  At each such frequency the log of the normalized symbol has a
convergent Taylor expansion i*alpha*xi + a_2 xi^2 + ...; the first
non-linear nonzero coefficient (its degree m, and whether it has a real
part) classifies the point and determines the local limit behavior of the
convolution powers.  Two independent routes compute the constants: the
log-series recursion on exact symbol derivatives, and weighted moment sums.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import (ClassificationError, MaxPointClusterWarning,
                     NotAdmissibleError, SingularSymbolError)
from .lattice import (LatticeFunction, abs_sum, conj_reflect, convolve,
                      evaluate_symbol, symbol_derivative)

DEFAULT_SAMPLES_PER_WIDTH = 8192
DEFAULT_MAX_MEMBERSHIP_TOL = 1e-10   # |symbol| >= A(1 - tol) counts as maximal
DEFAULT_DEDUP_SPACING = 1e-8
DEFAULT_COEFF_RTOL = 1e-9            # threshold prefactor for Taylor coefficients
DEFAULT_DRIFT_TOL = 1e-8             # absolute clustering tolerance for drifts
DEFAULT_CROSSCHECK_TOL = 1e-7
MAX_SERIES_ORDER = 64


@dataclass(frozen=True)
class MaxPoint:
    """One modulus-maximizing frequency with its local classification.

    ``taylor[l-1]`` is the l-th Taylor coefficient of log(symbol(xi + xi0)
    / symbol(xi0)).  ``beta`` is minus the order-m coefficient.  For type-2
    points ``k`` is the first order with a nonzero real part and ``gamma``
    is minus that real part.
    """

    xi: float
    value: complex            # symbol at xi (unnormalized)
    point_type: str           # "type1" | "type2"
    order: int                # m >= 2
    drift: float              # alpha
    beta: complex
    k: int | None
    gamma: float | None
    taylor: np.ndarray


@dataclass(frozen=True)
class SymbolAnalysis:
    """Global report: sup-modulus A, the max set, and the dominant-order data."""

    A: float
    omega: tuple[MaxPoint, ...]          # ascending xi
    m_phi: int
    max_order_indices: tuple[int, ...]   # indices q with order == m_phi
    drift_groups: tuple[tuple[int, ...], ...]  # partition of max_order_indices
    function: LatticeFunction

    def normalized(self) -> "SymbolAnalysis":
        """Same analysis for f/A (classification data is scale invariant)."""
        if self.A == 1.0:
            return self
        pts = tuple(replace(p, value=p.value / self.A) for p in self.omega)
        return SymbolAnalysis(1.0, pts, self.m_phi, self.max_order_indices,
                              self.drift_groups, self.function.scaled(1.0 / self.A))


def autocorrelation(f: LatticeFunction) -> LatticeFunction:
    """c(k) = sum_x f(x) conj(f(x-k)); the symbol of c is |symbol of f|^2."""
    return convolve(f, conj_reflect(f))


def _trig_poly_real(c: LatticeFunction, xi, deriv: int = 0) -> np.ndarray:
    """Real value of a Hermitian trig polynomial (or a derivative of it)."""
    return np.real(symbol_derivative(c, xi, deriv))


def _refine_critical(c: LatticeFunction, lo: float, hi: float) -> float:
    """Root of d/dxi |symbol|^2 bracketed in [lo, hi].

    Bisection first; but at a maximum that is flat to order k the
    derivative vanishes like (xi - xi0)^(k-1), so sign evaluations inside
    a basin of width ~eps^(1/(k-1)) are noise and bisection stalls there.
    The polish finds the smallest derivative order j with a clearly
    nonzero value (j = k at the root) and runs Newton on the (j-1)-th
    derivative, where the root is simple; all derivatives are exact sums.
    """
    flo = _trig_poly_real(c, lo, 1)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fmid = _trig_poly_real(c, mid, 1)
        if fmid == 0.0:
            lo = hi = mid
            break
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, abs(lo)):
            break
    root = 0.5 * (lo + hi)

    k_abs = np.abs(c.support_points()).astype(np.float64)
    w_abs = np.abs(c.values)
    j_cap = max(2, 2 * int(k_abs.max()) + 2)
    scales = [float(np.sum(w_abs * k_abs ** j)) for j in range(j_cap + 1)]
    guard = 1e-3
    for _pass in range(3):
        j_star = None
        for j in range(2, j_cap + 1):
            if abs(_trig_poly_real(c, root, j)) > 1e-6 * max(scales[j], 1e-300):
                j_star = j
                break
        if j_star is None:
            break
        polished = root
        for _ in range(60):
            num = _trig_poly_real(c, polished, j_star - 1)
            den = _trig_poly_real(c, polished, j_star)
            if den == 0.0:
                break
            step = num / den
            polished -= step
            if abs(step) < 1e-15 * max(1.0, abs(polished)):
                break
        if abs(polished - root) <= guard:
            root = polished
    return root


def _wrap_interval(xi: float) -> float:
    """Map into (-pi, pi]; a point numerically at -pi is reported as +pi."""
    xi = math.remainder(xi, 2 * math.pi)
    if xi <= -math.pi + 1e-12:
        xi += 2 * math.pi
    return xi


def find_sup(f: LatticeFunction, *, samples_per_width: int = DEFAULT_SAMPLES_PER_WIDTH):
    """Supremum A of |symbol| on (-pi, pi] and the refined critical points.

    Samples the derivative of |symbol|^2 densely and drives each sign
    change to a root (every maximum is bracketed: the derivative vanishes
    to odd order k-1 there, so it does change sign).
    """
    if not f.admissible:
        raise NotAdmissibleError(
            "support has fewer than two points; |symbol| is constant")
    c = autocorrelation(f)
    n_samples = samples_per_width * max(1, f.width)
    grid = -np.pi + 2 * np.pi * (np.arange(n_samples) + 1) / n_samples
    dvals = _trig_poly_real(c, grid, 1)

    crit = []
    exact = grid[dvals == 0.0]
    crit.extend(float(g) for g in exact)
    sign = np.sign(dvals)
    flips = np.flatnonzero(sign[:-1] * sign[1:] < 0)
    for i in flips:
        crit.append(_refine_critical(c, float(grid[i]), float(grid[i + 1])))
    # wraparound pair (last sample is +pi; the seam sits between +pi and first)
    if sign[-1] * sign[0] < 0:
        root = _refine_critical(c, float(grid[-1]), float(grid[0] + 2 * np.pi))
        crit.append(root)

    crit = sorted(_wrap_interval(x) for x in crit)
    if not crit:
        # derivative never flips on the grid: flat-to-sampling polynomial;
        # take the grid argmax as the critical point
        pvals = _trig_poly_real(c, grid, 0)
        crit = [float(grid[int(np.argmax(pvals))])]
    mods = np.abs(evaluate_symbol(f, np.array(crit)))
    A = float(mods.max())
    return A, crit


def find_max_points(f: LatticeFunction, tol: float = DEFAULT_MAX_MEMBERSHIP_TOL,
                    *, dedup_spacing: float = DEFAULT_DEDUP_SPACING) -> list[float]:
    """Frequencies where |symbol| is within A(1 - tol) of the supremum.

    Deduplicated at ``dedup_spacing``; a merged cluster wider than the
    radius triggers MaxPointClusterWarning.
    """
    A, crit = find_sup(f)
    mods = np.abs(evaluate_symbol(f, np.array(crit)))
    cand = [x for x, mod in zip(crit, mods) if mod >= A * (1.0 - tol)]
    cand.sort()
    groups: list[list[float]] = []
    for x in cand:
        if groups and x - groups[-1][-1] <= dedup_spacing:
            groups[-1].append(x)
        else:
            groups.append([x])
    # wraparound: a group at the -pi end merges with one at the +pi end
    if len(groups) > 1 and (groups[0][0] + 2 * np.pi) - groups[-1][-1] <= dedup_spacing:
        groups[-1].extend(g + 2 * np.pi for g in groups[0])
        groups.pop(0)
    out = []
    for g in groups:
        if g[-1] - g[0] > dedup_spacing:
            warnings.warn(
                f"near-maximal critical points span {g[-1] - g[0]:.3e} "
                f"(> dedup radius {dedup_spacing:g}); merged into one point",
                MaxPointClusterWarning)
        out.append(_wrap_interval(float(np.mean(g))))
    return sorted(out)


def gamma_series(f: LatticeFunction, xi0: float, L: int) -> np.ndarray:
    """Taylor coefficients a_1..a_L of log(symbol(xi+xi0)/symbol(xi0)).

    h_l = symbol^(l)(xi0) / (l! symbol(xi0)) are exact finite sums; the
    log-series recursion a_l = h_l - (1/l) sum_{j<l} j a_j h_{l-j} needs no
    quadrature.
    """
    v0 = evaluate_symbol(f, xi0)
    if abs(v0) < 1e-14 * max(1.0, abs_sum(f)):
        raise SingularSymbolError(f"symbol vanishes at xi0={xi0!r}")
    h = np.zeros(L + 1, dtype=np.complex128)
    for l in range(1, L + 1):
        h[l] = symbol_derivative(f, xi0, l) / (math.factorial(l) * v0)
    a = np.zeros(L + 1, dtype=np.complex128)
    for l in range(1, L + 1):
        s = 0j
        for j in range(1, l):
            s += j * a[j] * h[l - j]
        a[l] = h[l] - s / l
    return a[1:]


def _coeff_thresholds(f: LatticeFunction, A: float, L: int,
                      rtol: float = DEFAULT_COEFF_RTOL) -> np.ndarray:
    """Scale-aware noise floors eps_l = rtol * sum|f||x|^l / (l! A)."""
    x = np.abs(f.support_points()).astype(np.float64)
    w = np.abs(f.values)
    eps = np.empty(L)
    for l in range(1, L + 1):
        eps[l - 1] = rtol * float(np.sum(w * x ** l)) / (math.factorial(l) * A)
    # an all-zero-weight degree (support {0,1}, l large) still needs a floor
    return np.maximum(eps, rtol * 1e-6 / A)


def _classify_series(a: np.ndarray, eps: np.ndarray):
    """(m, k, type) from coefficients a_1..a_L, or None when undecided."""
    L = a.size
    m = None
    for l in range(2, L + 1):
        if abs(a[l - 1]) > eps[l - 1]:
            m = l
            break
    if m is None:
        return None
    if abs(a[m - 1].real) > eps[m - 1]:
        return m, m, "type1"
    k = None
    for l in range(m + 1, L + 1):
        if abs(a[l - 1].real) > eps[l - 1]:
            k = l
            break
    if k is None:
        return None
    return m, k, "type2"


def classify_point(f: LatticeFunction, xi0: float, *,
                   coeff_rtol: float = DEFAULT_COEFF_RTOL,
                   _A: float | None = None) -> MaxPoint:
    """Classify a modulus-maximizing frequency per the type-1/type-2 dichotomy.

    Works with the A-normalized symbol; the expansion order starts at
    2*width+4 and doubles until the classification stabilizes.
    """
    A = find_sup(f)[0] if _A is None else _A
    L = min(MAX_SERIES_ORDER, max(8, 2 * f.width + 4))
    prev = None
    a = None
    while True:
        a = gamma_series(f, xi0, L)
        eps = _coeff_thresholds(f, A, L, coeff_rtol)
        cls = _classify_series(a, eps)
        if cls is not None and cls == prev:
            break
        if L >= MAX_SERIES_ORDER:
            if cls is None:
                raise ClassificationError(
                    f"expansion order exhausted at L={L} for xi0={xi0!r}")
            break
        prev = cls
        L = min(MAX_SERIES_ORDER, 2 * L)

    m, k, point_type = cls
    if abs(a[0].real) > max(eps[0], 1e-9):
        raise ClassificationError(
            f"drift coefficient has real part {a[0].real:.3e}; "
            "input is not a modulus-maximizing point")
    drift = float(a[0].imag)
    beta = -a[m - 1]
    if point_type == "type1":
        if m % 2 != 0 or beta.real <= 0:
            raise ClassificationError(
                "classification contradicts the max-point structure "
                f"(type1 needs even order and positive real part; got m={m}, beta={beta})")
        return MaxPoint(xi0, evaluate_symbol(f, xi0), "type1", m, drift, beta,
                        None, None, a)
    gamma = float(-a[k - 1].real)
    if k % 2 != 0 or gamma <= 0 or not (m < k):
        raise ClassificationError(
            "classification contradicts the max-point structure "
            f"(type2 needs even k > m and positive gamma; got m={m}, k={k}, gamma={gamma})")
    # type 2 means Re(beta) = 0 within tolerance; store it exactly imaginary
    beta = complex(0.0, beta.imag)
    return MaxPoint(xi0, evaluate_symbol(f, xi0), "type2", m, drift, beta,
                    k, gamma, a)


def moment_constants(f: LatticeFunction, xi: float, k_max: int):
    """Independent oracle for the classification constants via moment sums.

    a = E[X e^{i xi X}]/symbol(xi), b_k = (i^k/k!)(a^k - E[X^k e^{i xi X}]/symbol(xi));
    then drift = a, order = first k >= 2 with b_k nonzero, beta = b_order.
    Returns (a, array of b_2..b_{k_max}).
    """
    v0 = evaluate_symbol(f, xi)
    if abs(v0) < 1e-14 * max(1.0, abs_sum(f)):
        raise SingularSymbolError(f"symbol vanishes at xi={xi!r}")
    x = f.support_points().astype(np.float64)
    phase = np.exp(1j * xi * x) * f.values
    a = complex(np.sum(x * phase) / v0)
    b = np.zeros(max(0, k_max - 1), dtype=np.complex128)
    for k in range(2, k_max + 1):
        ek = complex(np.sum(x ** k * phase) / v0)
        b[k - 2] = (1j) ** k / math.factorial(k) * (a ** k - ek)
    return a, b


def _crosscheck(f: LatticeFunction, p: MaxPoint, A: float,
                tol: float = DEFAULT_CROSSCHECK_TOL):
    """Verify the series classification against the moment oracle."""
    k_max = p.order + 2
    a, b = moment_constants(f, p.xi, k_max)
    eps = _coeff_thresholds(f, A, k_max)
    if abs(a - p.drift) > tol * max(1.0, abs(p.drift)):
        raise ClassificationError(
            f"moment cross-check failed at xi={p.xi:.12g}: drift {p.drift!r} vs {a!r}")
    for k in range(2, p.order):
        if abs(b[k - 2]) > max(eps[k - 1] * 100, tol):
            raise ClassificationError(
                f"moment cross-check failed at xi={p.xi:.12g}: "
                f"b_{k} = {b[k - 2]!r} should vanish below order {p.order}")
    if abs(b[p.order - 2] - p.beta) > tol * max(1.0, abs(p.beta)):
        raise ClassificationError(
            f"moment cross-check failed at xi={p.xi:.12g}: "
            f"beta {p.beta!r} vs {b[p.order - 2]!r}")


def analyze(f: LatticeFunction, *, tol: float = DEFAULT_MAX_MEMBERSHIP_TOL,
            drift_tol: float = DEFAULT_DRIFT_TOL,
            coeff_rtol: float = DEFAULT_COEFF_RTOL,
            crosscheck: bool = True) -> SymbolAnalysis:
    """Full symbol report: A, the max set with classifications, dominant order,
    and the drift partition of the dominant-order points."""
    A, _ = find_sup(f)
    xis = find_max_points(f, tol)
    pts = [classify_point(f, xi, coeff_rtol=coeff_rtol, _A=A) for xi in xis]
    if crosscheck:
        for p in pts:
            _crosscheck(f, p, A)
    m_phi = max(p.order for p in pts)
    max_idx = tuple(i for i, p in enumerate(pts) if p.order == m_phi)
    groups: list[list[int]] = []
    for i in max_idx:
        placed = False
        for g in groups:
            if abs(pts[g[0]].drift - pts[i].drift) <= drift_tol:
                g.append(i)
                placed = True
                break
        if not placed:
            groups.append([i])
    groups.sort(key=lambda g: min(g))  # ascending xi of first member
    return SymbolAnalysis(A, tuple(pts), m_phi, max_idx,
                          tuple(tuple(g) for g in groups), f)


def strong_hypothesis_holds(sa: SymbolAnalysis) -> bool:
    """True iff the dominant order exceeds 2 or every dominant point is type 1."""
    if sa.m_phi > 2:
        return True
    return all(sa.omega[i].point_type == "type1" for i in sa.max_order_indices)
