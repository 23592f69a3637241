"""The attractor kernels H_m^beta and their certified evaluation.

H_m^beta(x) = (1/2pi) int exp(-i x u - beta u^m) du generalizes the heat
kernel (m=2) and contains the Airy function (m=3, beta=i/3).  For
imaginary beta the integral is oscillatory; the evaluator integrates
through any real stationary point and deflects into the decay sector,
returning a truncation certificate alongside the values.
"""

import numpy as np

import convpow as cp

# m=2: closed form; purely imaginary beta has constant modulus
spec = cp.AttractorSpec(2, 0.125j)
xs = np.linspace(-50, 50, 11)
vals, cert = cp.attractor_eval(spec, xs)
print("|H_2^{i/8}| on [-50, 50]:", np.round(np.abs(vals), 10))
print("   (constant (pi/2)^(-1/2) =", (np.pi / 2) ** -0.5, ")")

# m=3, beta=i/3 is the Airy function; the quadrature and the independent
# series/asymptotics oracle agree
spec = cp.AttractorSpec(3, 1j / 3)
grid = np.linspace(-10, 5, 7)
vals, cert = cp.attractor_eval(spec, grid, 1e-10)
print("\nH_3^{i/3} vs Airy oracle:")
for x, v in zip(grid, vals):
    print(f"  x={x:6.2f}  H={v.real:+.12f}  Ai={cp.airy_oracle(x):+.12f}")
print("certificate:", cert)

# scaling identity: H_m^beta(x) = s * H_m^{s^m beta}(s x)
spec2, stmt = cp.rescale(cp.AttractorSpec(3, 5j / 3), 5.0 ** (-1 / 3))
print("\nrescale:", stmt)
lhs, _ = cp.attractor_eval(cp.AttractorSpec(3, 5j / 3), 1.0, 1e-10)
print("  check at x=1:", lhs, "vs",
      5.0 ** (-1 / 3) * cp.airy_oracle(5.0 ** (-1 / 3)))

# polynomial decay envelope for imaginary beta, m >= 3
for m in (3, 4):
    spec = cp.AttractorSpec(m, 1j)
    big = np.array([-200.0, -50.0, 50.0, 200.0])
    vals, _ = cp.attractor_eval(spec, big, 1e-9)
    expo = (m - 2) / (2 * (m - 1))
    print(f"\n|H_{m}^i| at large |x| (envelope ~ |x|^(-{expo:.3g})):")
    for x, v in zip(big, vals):
        print(f"  x={x:+7.1f}  |H| = {abs(v):.6f}")

# van der Corput constants used by the truncation certificates
print("\nvan der Corput bounds (lambda=8, rho=16):", cp.vdc_bounds(8.0, 16.0))
